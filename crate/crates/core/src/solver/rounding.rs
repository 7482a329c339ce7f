use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{invariant, Result};
use crate::flow::IntFlow;
use crate::mcf::MinCostFlow;
use crate::metric::Metric;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rounding<C> {
    /// `floor(k * rounds / (rounds - gamma))`.
    pub d_max: usize,
    /// Whether an integral point exists at `d_max`.
    pub upper_feasible: bool,
    pub k_prime: usize,
    /// The integral point `z`, arc-wise bounded by the uniform flow.
    pub selected: IntFlow,
    pub selected_cost: C,
    pub paths: Vec<Vec<usize>>,
}

/// Cheapest integral `s`-`t` flow of value `value` inside `bound` with unit
/// throughput at every internal active node, or `None` if there is none.
///
/// Each internal node is split into an in-copy that must absorb one unit and
/// an out-copy that must emit one unit; the lower bounds become supplies and
/// demands on a super source and super sink.
pub fn integral_point<C: Cost>(
    metric: &Metric<C>,
    bound: &IntFlow,
    active: &BTreeSet<usize>,
    s: usize,
    t: usize,
    value: usize,
) -> Option<(IntFlow, C)> {
    let internal: Vec<usize> = active.iter().copied().filter(|&v| v != s && v != t).collect();
    let n = metric.n();
    // node layout: 0 = super source, 1 = super sink, 2 + v = out-copy, 2 + n + v = in-copy
    let out_copy = |v: usize| 2 + v;
    let in_copy = |v: usize| 2 + n + v;
    let mut net = MinCostFlow::<C>::new(2 + 2 * n);
    net.add_arc(0, out_copy(s), value as u64, C::zero());
    net.add_arc(in_copy(t), 1, value as u64, C::zero());
    for &w in &internal {
        net.add_arc(0, out_copy(w), 1, C::zero());
        net.add_arc(in_copy(w), 1, 1, C::zero());
    }
    let mut arc_ids = Vec::new();
    for ((u, v), m) in bound.arcs() {
        if !active.contains(&u) || !active.contains(&v) || u == t || v == s {
            continue;
        }
        arc_ids.push(((u, v), net.add_arc(out_copy(u), in_copy(v), m, metric.d(u, v))));
    }
    let need = value as u64 + internal.len() as u64;
    let (sent, cost) = net.run(0, 1, need);
    if sent < need {
        return None;
    }
    let z = IntFlow::from_arcs(arc_ids.into_iter().map(|(a, id)| (a, net.flow_on(id))));
    Some((z, cost))
}

/// Decomposes an acyclic `s`-`t` flow with unit internal throughput into paths.
pub fn decompose_paths(flow: &IntFlow, s: usize, t: usize) -> Result<Vec<Vec<usize>>> {
    let mut rest = flow.clone();
    let mut paths = Vec::new();
    while let Some(first) = rest.first_out(s) {
        rest.remove(s, first, 1);
        let mut path = vec![s, first];
        let mut v = first;
        while v != t {
            let Some(w) = rest.first_out(v) else {
                return Err(invariant(format!("path decomposition stuck at node {v}")));
            };
            rest.remove(v, w, 1);
            path.push(w);
            v = w;
            if path.len() > flow.total_units() as usize + 1 {
                return Err(invariant("flow to decompose has a cycle"));
            }
        }
        paths.push(path);
    }
    if !rest.is_empty() {
        return Err(invariant("flow to decompose is not a pure s-t flow"));
    }
    Ok(paths)
}

/// Picks the smallest `D` in `[k, d_max]` for which the polytope of unit
/// throughput flows bounded by `uniform` has an integral point, cheapest
/// among those, and decomposes it into `D` paths.
#[allow(clippy::too_many_arguments)]
pub fn round_to_paths<C: Cost>(
    metric: &Metric<C>,
    uniform: &IntFlow,
    active: &BTreeSet<usize>,
    s: usize,
    t: usize,
    k: usize,
    b: usize,
    rounds: u64,
    gamma: u64,
) -> Result<Rounding<C>> {
    if gamma >= rounds {
        return Err(invariant("rounding needs rounds > gamma"));
    }
    let d_max = (k as u64 * rounds / (rounds - gamma)) as usize;
    if d_max < k || d_max > k + k / b {
        return Err(invariant(format!("d_max = {d_max} outside [k, k + k/b] for k = {k}, b = {b}")));
    }
    let upper = integral_point(metric, uniform, active, s, t, d_max);
    if upper.is_none() {
        return Err(invariant(format!("no integral point at D = {d_max}")));
    }
    let (k_prime, (selected, selected_cost)) = (k..d_max)
        .find_map(|d| integral_point(metric, uniform, active, s, t, d).map(|p| (d, p)))
        .unwrap_or((d_max, upper.unwrap()));
    let paths = decompose_paths(&selected, s, t)?;
    if paths.len() != k_prime {
        return Err(invariant("decomposition path count differs from D"));
    }
    Ok(Rounding { d_max, upper_feasible: true, k_prime, selected, selected_cost, paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::metric_closure;

    fn line() -> Metric<i64> {
        metric_closure(&[vec![0, 1, 2], vec![5, 0, 1], vec![5, 5, 0]]).unwrap()
    }

    #[test]
    fn scales_multiplied_path_down() {
        let f = IntFlow::from_arcs([((0, 1), 3), ((1, 2), 3)]);
        let w: BTreeSet<usize> = (0..3).collect();
        let r = round_to_paths(&line(), &f, &w, 0, 2, 1, 1, 3, 0).unwrap();
        assert_eq!(r.k_prime, 1);
        assert_eq!(r.d_max, 1);
        assert_eq!(r.paths, vec![vec![0, 1, 2]]);
        assert_eq!(r.selected, IntFlow::from_arcs([((0, 1), 1), ((1, 2), 1)]));
        assert_eq!(r.selected_cost, 2);
    }

    #[test]
    fn infeasible_value_detected() {
        let f = IntFlow::from_arcs([((0, 1), 3), ((1, 2), 3)]);
        let w: BTreeSet<usize> = (0..3).collect();
        assert!(integral_point(&line(), &f, &w, 0, 2, 2).is_none());
    }

    #[test]
    fn decompose_rejects_leftovers() {
        let f = IntFlow::from_arcs([((0, 2), 1), ((1, 1), 1)]);
        assert!(decompose_paths(&f, 0, 2).is_err());
    }
}
