//! Dense min-cost perfect bipartite matching (Hungarian method with integer
//! potentials), O(N^3). `None` entries are forbidden pairs.

use crate::cost::Cost;
use crate::error::{Error, Result};

/// Returns `assignment[row] = column` of a minimum-cost perfect matching.
pub fn min_cost_assignment<C: Cost>(costs: &[Vec<Option<C>>]) -> Result<Vec<usize>> {
    let n = costs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    debug_assert!(costs.iter().all(|r| r.len() == n));

    // 1-based with a virtual column 0, as in the classic formulation.
    let mut u = vec![C::zero(); n + 1];
    let mut v = vec![C::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<C>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<C> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                if let Some(c) = costs[i0 - 1][j - 1] {
                    let cur = c - u[i0] - v[j];
                    if minv[j].is_none_or(|m| cur < m) {
                        minv[j] = Some(cur);
                        way[j] = j0;
                    }
                }
                if let Some(m) = minv[j] {
                    if delta.is_none_or(|d| m < d) {
                        delta = Some(m);
                        j1 = j;
                    }
                }
            }
            let delta = delta.ok_or(Error::NoPerfectMatching)?;
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[p[j] - 1] = j - 1;
    }
    Ok(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(costs: &[Vec<Option<i64>>]) -> Option<i64> {
        fn rec(costs: &[Vec<Option<i64>>], row: usize, used: &mut Vec<bool>) -> Option<i64> {
            if row == costs.len() {
                return Some(0);
            }
            let mut best: Option<i64> = None;
            for j in 0..costs.len() {
                if used[j] {
                    continue;
                }
                if let Some(c) = costs[row][j] {
                    used[j] = true;
                    if let Some(rest) = rec(costs, row + 1, used) {
                        best = Some(best.map_or(c + rest, |b| b.min(c + rest)));
                    }
                    used[j] = false;
                }
            }
            best
        }
        rec(costs, 0, &mut vec![false; costs.len()])
    }

    fn total(costs: &[Vec<Option<i64>>], a: &[usize]) -> i64 {
        a.iter().enumerate().map(|(i, &j)| costs[i][j].unwrap()).sum()
    }

    #[test]
    fn small_assignment() {
        let c: Vec<Vec<Option<i64>>> =
            [[4, 1, 3], [2, 0, 5], [3, 2, 2]].iter().map(|r| r.iter().map(|&x| Some(x)).collect()).collect();
        let a = min_cost_assignment(&c).unwrap();
        assert_eq!(total(&c, &a), 5);
    }

    #[test]
    fn forbidden_entries_respected() {
        let c = vec![vec![None, Some(3), Some(1)], vec![Some(1), None, Some(9)], vec![Some(2), Some(2), None]];
        let a = min_cost_assignment(&c).unwrap();
        assert!(a.iter().enumerate().all(|(i, &j)| c[i][j].is_some()));
        assert_eq!(Some(total(&c, &a)), brute(&c));
    }

    #[test]
    fn infeasible_reports_error() {
        let c = vec![vec![Some(1), None], vec![Some(1), None]];
        assert_eq!(min_cost_assignment(&c), Err(Error::NoPerfectMatching));
    }

    #[test]
    fn matches_brute_force_on_random_matrices() {
        use rand::Rng;
        let mut rng = crate::generate::rng(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let c: Vec<Vec<Option<i64>>> = (0..n)
                .map(|_| (0..n).map(|_| if rng.gen_bool(0.2) { None } else { Some(rng.gen_range(0..20)) }).collect())
                .collect();
            match (min_cost_assignment(&c), brute(&c)) {
                (Ok(a), Some(b)) => assert_eq!(total(&c, &a), b),
                (Err(Error::NoPerfectMatching), None) => {}
                (x, y) => panic!("mismatch {x:?} vs {y:?}"),
            }
        }
    }
}
