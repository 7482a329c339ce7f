//! Minimum-cost k-path/cycle covers.
//!
//! A k-path/cycle cover of a node set `W` is an integral flow with unit
//! in- and out-degree at every node of `W - {s, t}`, `k` units leaving `s`
//! and entering `t`, and nothing entering `s` or leaving `t`. It is computed
//! as a perfect matching between `k` copies of `s` plus the internal nodes
//! (tails) and `k` copies of `t` plus the internal nodes (heads).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::IntFlow;
use crate::matching::min_cost_assignment;
use crate::metric::Metric;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult<C> {
    pub flow: IntFlow,
    pub cost: C,
    /// `k` node sequences from `s` to `t`.
    pub paths: Vec<Vec<usize>>,
    /// Node-disjoint cycles, each listed once from its smallest node.
    pub cycles: Vec<Vec<usize>>,
}

pub fn min_cost_kpath_cycle_cover<C: Cost>(
    metric: &Metric<C>,
    active: &BTreeSet<usize>,
    s: usize,
    t: usize,
    k: usize,
) -> Result<CoverResult<C>> {
    if !active.contains(&s) || !active.contains(&t) {
        return Err(Error::InvalidInstance("active set must contain s and t".into()));
    }
    if s == t {
        return Err(Error::InvalidInstance("s and t must differ".into()));
    }
    if k < 1 {
        return Err(Error::InvalidInstance("k must be at least 1".into()));
    }
    for &v in active {
        metric.check_node(v)?;
    }
    let internal: Vec<usize> = active.iter().copied().filter(|&v| v != s && v != t).collect();
    let tails: Vec<usize> = std::iter::repeat_n(s, k).chain(internal.iter().copied()).collect();
    let heads: Vec<usize> = std::iter::repeat_n(t, k).chain(internal.iter().copied()).collect();
    let costs: Vec<Vec<Option<C>>> = tails
        .iter()
        .map(|&u| heads.iter().map(|&v| if u == v { None } else { Some(metric.d(u, v)) }).collect())
        .collect();
    let assignment = min_cost_assignment(&costs)?;

    let mut flow = IntFlow::new();
    for (i, &j) in assignment.iter().enumerate() {
        flow.add(tails[i], heads[j], 1);
    }
    let cost = flow.cost(metric);
    let (paths, cycles) = decompose(&flow, s, t, &internal)?;
    Ok(CoverResult { flow, cost, paths, cycles })
}

/// Splits a cover into its `s`-`t` paths and cycles.
fn decompose(
    flow: &IntFlow,
    s: usize,
    t: usize,
    internal: &[usize],
) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let succ = |v: usize| -> Result<usize> {
        flow.out_arcs(v)
            .next()
            .map(|(w, _)| w)
            .ok_or_else(|| crate::error::invariant(format!("node {v} has no successor in cover")))
    };
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut paths = Vec::new();
    for (first, m) in flow.out_arcs(s) {
        for _ in 0..m {
            let mut path = vec![s];
            let mut v = first;
            while v != t {
                if !seen.insert(v) {
                    return Err(crate::error::invariant("cover path revisits a node"));
                }
                path.push(v);
                v = succ(v)?;
            }
            path.push(t);
            paths.push(path);
        }
    }
    let mut cycles = Vec::new();
    for &start in internal {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        loop {
            seen.insert(v);
            cycle.push(v);
            v = succ(v)?;
            if v == start {
                break;
            }
            if seen.contains(&v) {
                return Err(crate::error::invariant("cover cycle is not simple"));
            }
        }
        cycles.push(cycle);
    }
    Ok((paths, cycles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::metric_closure;

    #[test]
    fn only_st_arcs_when_no_internal_nodes() {
        let m = metric_closure(&[vec![0i64, 5], vec![2, 0]]).unwrap();
        let w: BTreeSet<usize> = [0, 1].into();
        let c = min_cost_kpath_cycle_cover(&m, &w, 0, 1, 3).unwrap();
        assert_eq!(c.flow, IntFlow::from_arcs([((0, 1), 3)]));
        assert_eq!(c.cost, 15);
        assert_eq!(c.paths.len(), 3);
        assert!(c.cycles.is_empty());
    }

    #[test]
    fn gap_instance_two_zero_paths() {
        let inst = crate::generate::gen_gap_instance::<i64>(2);
        let w: BTreeSet<usize> = (0..4).collect();
        let c = min_cost_kpath_cycle_cover(&inst.metric, &w, 0, 3, 2).unwrap();
        assert_eq!(c.cost, 0);
        assert_eq!(c.paths, vec![vec![0, 1, 3], vec![0, 2, 3]]);
        assert!(c.cycles.is_empty());
    }

    #[test]
    fn rejects_missing_endpoint() {
        let m = metric_closure(&[vec![0i64, 5, 1], vec![2, 0, 1], vec![1, 1, 0]]).unwrap();
        let w: BTreeSet<usize> = [0, 2].into();
        assert!(min_cost_kpath_cycle_cover(&m, &w, 0, 1, 1).is_err());
    }

    #[test]
    fn degree_contract_and_cycles() {
        // Two nodes with a free 2-cycle between them and expensive access from s/t.
        let rows = vec![
            vec![0i64, 9, 9, 1],
            vec![9, 0, 0, 9],
            vec![9, 0, 0, 9],
            vec![9, 9, 9, 0],
        ];
        let m = metric_closure(&rows).unwrap();
        let w: BTreeSet<usize> = (0..4).collect();
        let c = min_cost_kpath_cycle_cover(&m, &w, 0, 3, 1).unwrap();
        assert_eq!(c.cost, 1);
        assert_eq!(c.paths, vec![vec![0, 3]]);
        assert_eq!(c.cycles, vec![vec![1, 2]]);
        for v in [1, 2] {
            assert_eq!(c.flow.indeg(v), 1);
            assert_eq!(c.flow.outdeg(v), 1);
        }
    }
}
