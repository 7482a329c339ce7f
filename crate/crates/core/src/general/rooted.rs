use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{invariant, Result};
use crate::euler::eulerian_circuit;
use crate::flow::IntFlow;
use crate::matching::min_cost_assignment;
use crate::metric::Metric;

use super::validate_roots;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedOutput<C> {
    /// Closed walk `[r, ..., r]` per root in input order, or `[r]` if the
    /// root serves nobody.
    pub walks: Vec<Vec<usize>>,
    pub total_cost: C,
    pub iterations: usize,
    /// `|W|` before each iteration.
    pub active_sizes: Vec<usize>,
    /// Cost of each iteration's cycle cover.
    pub cover_costs: Vec<C>,
}

/// Every node on the closed walk of exactly one root, within
/// `floor(log2(n - k)) + 1` times the optimum.
///
/// Repeats a minimum-cost cycle cover of the surviving nodes, where only
/// roots may keep a loop. Each cycle keeps one node: its root, or its
/// smallest node if it has none. A cycle through several roots is shortcut
/// past all but the smallest, which leave it as loops.
pub fn solve_rooted_cycles<C: Cost>(metric: &Metric<C>, roots: &[usize]) -> Result<RootedOutput<C>> {
    validate_roots(metric, roots)?;
    let n = metric.n();
    let is_root = |v: usize| roots.contains(&v);
    let mut active: BTreeSet<usize> = (0..n).collect();
    let mut union = IntFlow::new();
    let mut active_sizes = Vec::new();
    let mut cover_costs = Vec::new();

    while active.len() > roots.len() {
        active_sizes.push(active.len());
        let w: Vec<usize> = active.iter().copied().collect();
        let costs: Vec<Vec<Option<C>>> = w
            .iter()
            .map(|&u| {
                w.iter()
                    .map(|&v| match (u == v, is_root(u)) {
                        (false, _) => Some(metric.d(u, v)),
                        (true, true) => Some(C::zero()),
                        (true, false) => None,
                    })
                    .collect()
            })
            .collect();
        let succ_idx = min_cost_assignment(&costs)?;
        let succ: Vec<usize> = succ_idx.iter().map(|&j| w[j]).collect();
        cover_costs.push((0..w.len()).map(|i| metric.d(w[i], succ[i])).sum());

        let mut seen = vec![false; w.len()];
        for start in 0..w.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(w[i]);
                i = succ_idx[i];
            }
            if cycle.len() < 2 {
                continue;
            }
            let keep_root = cycle.iter().copied().filter(|&v| is_root(v)).min();
            cycle.retain(|&v| !is_root(v) || Some(v) == keep_root);
            if cycle.len() < 2 {
                continue;
            }
            for j in 0..cycle.len() {
                union.add(cycle[j], cycle[(j + 1) % cycle.len()], 1);
            }
            let rep = keep_root.unwrap_or_else(|| *cycle.iter().min().unwrap());
            for v in cycle {
                if v != rep {
                    active.remove(&v);
                }
            }
        }
    }

    let comps = union.weak_components();
    let mut walks = Vec::with_capacity(roots.len());
    for &r in roots {
        let Some(comp) = comps.iter().find(|c| c.contains(&r)) else {
            walks.push(vec![r]);
            continue;
        };
        if let Some(&other) = comp.iter().find(|&&v| v != r && is_root(v)) {
            return Err(invariant(format!("roots {r} and {other} share a component")));
        }
        let part = IntFlow::from_arcs(union.arcs().filter(|((u, _), _)| comp.contains(u)));
        let circuit = eulerian_circuit(&part, r)?;
        let mut seen = BTreeSet::new();
        let mut walk: Vec<usize> = circuit.into_iter().filter(|&v| seen.insert(v)).collect();
        walk.push(r);
        walks.push(walk);
    }
    let covered: BTreeSet<usize> = walks.iter().flatten().copied().collect();
    if covered.len() != n {
        return Err(invariant("rooted walks do not cover every node"));
    }
    let total_cost = walks.iter().map(|w| metric.walk_cost(w)).sum();
    Ok(RootedOutput { walks, total_cost, iterations: active_sizes.len(), active_sizes, cover_costs })
}
