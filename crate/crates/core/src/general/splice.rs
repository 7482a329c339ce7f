use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::metric::Metric;

/// Crossing points: `u1`, `v2` on `P1` with `v2` equal to `u1` or its
/// successor; `v1`, `u2` likewise on `P2`. Stored as path indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceGuess {
    pub u1: usize,
    pub v2: usize,
    pub v1: usize,
    pub u2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceResult<C> {
    pub q1: Vec<usize>,
    pub q2: Vec<usize>,
    pub guess: SpliceGuess,
    /// `d(u1, u2) + d(v1, v2)` of the chosen guess.
    pub added_cost: C,
    /// Smallest `d(u1, u2) + d(v1, v2)` over all guesses.
    pub min_added_cost: C,
    pub total_cost: C,
}

/// Rewires `P1: s1 -> t2` and `P2: s2 -> t1` into `Q1 = P1[..=u1] P2[u2..]`
/// and `Q2 = P2[..=v1] P1[v2..]`, choosing the guess of least total cost.
pub fn splice_paths<C: Cost>(metric: &Metric<C>, p1: &[usize], p2: &[usize]) -> Result<SpliceResult<C>> {
    if p1.len() < 2 || p2.len() < 2 {
        return Err(Error::InvalidInstance("splice needs paths with two endpoints".into()));
    }
    for &v in p1.iter().chain(p2) {
        metric.check_node(v)?;
    }
    if let Some(v) = p1.iter().find(|v| p2.contains(v)) {
        return Err(Error::InvalidInstance(format!("paths to splice share node {v}")));
    }
    let walk = |a: &[usize], b: &[usize]| metric.walk_cost(a) + metric.walk_cost(b) + metric.d(a[a.len() - 1], b[0]);
    let mut best: Option<SpliceResult<C>> = None;
    let mut min_added: Option<C> = None;
    for u1 in 0..p1.len() {
        for v2 in (u1..=u1 + 1).filter(|&i| i < p1.len()) {
            for v1 in 0..p2.len() {
                for u2 in (v1..=v1 + 1).filter(|&i| i < p2.len()) {
                    let added = metric.d(p1[u1], p2[u2]) + metric.d(p2[v1], p1[v2]);
                    if min_added.is_none_or(|m| added < m) {
                        min_added = Some(added);
                    }
                    let total = walk(&p1[..=u1], &p2[u2..]) + walk(&p2[..=v1], &p1[v2..]);
                    if best.as_ref().is_none_or(|b| total < b.total_cost) {
                        best = Some(SpliceResult {
                            q1: p1[..=u1].iter().chain(&p2[u2..]).copied().collect(),
                            q2: p2[..=v1].iter().chain(&p1[v2..]).copied().collect(),
                            guess: SpliceGuess { u1, v2, v1, u2 },
                            added_cost: added,
                            min_added_cost: C::zero(),
                            total_cost: total,
                        });
                    }
                }
            }
        }
    }
    let mut best = best.expect("at least one guess");
    best.min_added_cost = min_added.unwrap();
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::metric_closure;

    fn uniform(n: usize, c: i64) -> Vec<Vec<i64>> {
        (0..n).map(|u| (0..n).map(|v| if u == v { 0 } else { c }).collect()).collect()
    }

    #[test]
    fn zero_crossing_arcs() {
        // s1 = 0, a = 1, t2 = 2, s2 = 3, b = 4, t1 = 5
        let mut rows = uniform(6, 7);
        rows[1][4] = 0;
        rows[4][1] = 0;
        let m = metric_closure(&rows).unwrap();
        let r = splice_paths(&m, &[0, 1, 2], &[3, 4, 5]).unwrap();
        assert_eq!(r.min_added_cost, 0);
        assert_eq!(r.q1.first(), Some(&0));
        assert_eq!(r.q1.last(), Some(&5));
        assert_eq!(r.q2.first(), Some(&3));
        assert_eq!(r.q2.last(), Some(&2));
    }

    #[test]
    fn bare_endpoints_matches_hand_enumeration() {
        // P1 = [0, 1], P2 = [2, 3]; guesses are tiny enough to list by hand.
        let rows = vec![vec![0i64, 4, 9, 2], vec![3, 0, 5, 8], vec![1, 6, 0, 4], vec![7, 2, 2, 0]];
        let m = metric_closure(&rows).unwrap();
        let r = splice_paths(&m, &[0, 1], &[2, 3]).unwrap();
        let mut best = i64::MAX;
        for (q1, q2) in [
            (vec![0, 2, 3], vec![2, 0, 1]),
            (vec![0, 3], vec![2, 0, 1]),
            (vec![0, 3], vec![2, 3, 0, 1]),
            (vec![0, 2, 3], vec![2, 1]),
            (vec![0, 3], vec![2, 1]),
            (vec![0, 3], vec![2, 3, 1]),
            (vec![0, 1, 2, 3], vec![2, 1]),
            (vec![0, 1, 3], vec![2, 1]),
            (vec![0, 1, 3], vec![2, 3, 1]),
        ] {
            best = best.min(m.walk_cost(&q1) + m.walk_cost(&q2));
        }
        assert_eq!(r.total_cost, best);
        assert_eq!(m.walk_cost(&r.q1) + m.walk_cost(&r.q2), r.total_cost);
    }

    #[test]
    fn shared_nodes_rejected() {
        let m = metric_closure(&uniform(4, 1)).unwrap();
        assert!(splice_paths(&m, &[0, 1, 2], &[3, 1]).is_err());
    }
}
