//! Covers minimising the most expensive path.
//!
//! Both solvers repeatedly route one salesman through as many uncovered
//! nodes as an oracle allows and retire those nodes: the orienteering cover
//! maximises nodes under a budget `B`, the k-stroll cover visits at least a
//! `1/k` share of the remaining nodes as cheaply as possible. Only exact
//! subset-DP oracles are provided, so paths may overlap only at `s` and `t`.

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{invariant, Error, Result};
use crate::exact::HeldKarp;
use crate::metric::{KatsppInstance, Metric};

/// Largest node set the exact oracles accept.
pub const ORACLE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetCover<C> {
    pub budget: C,
    pub paths: Vec<Vec<usize>>,
    pub iterations_used: usize,
    pub success: bool,
    pub max_cost: C,
    pub total_cost: C,
}

impl<C: Cost> BudgetCover<C> {
    fn new(metric: &Metric<C>, budget: C, paths: Vec<Vec<usize>>, success: bool) -> Self {
        let costs: Vec<C> = paths.iter().map(|p| metric.walk_cost(p)).collect();
        BudgetCover {
            budget,
            iterations_used: paths.len(),
            success,
            max_cost: costs.iter().copied().max().unwrap_or_else(C::zero),
            total_cost: costs.into_iter().sum(),
            paths,
        }
    }
}

/// `ceil(k ln n) + 1`.
pub fn iteration_limit(k: usize, n: usize) -> usize {
    (k as f64 * (n as f64).ln()).ceil() as usize + 1
}

fn check_oracle_size(size: usize) -> Result<()> {
    if size > ORACLE_LIMIT {
        return Err(Error::TooLarge { what: "oracle node set", size, limit: ORACLE_LIMIT });
    }
    Ok(())
}

/// Walk from `s` (ending at `t` if given) of cost at most `budget` that
/// visits the most nodes of `nodes`; among those the cheapest, then the
/// smallest subset in bitmask order. `None` only if even `s -> t` is over
/// budget.
pub fn exact_orienteering<C: Cost>(
    metric: &Metric<C>,
    nodes: &[usize],
    s: usize,
    budget: C,
    t: Option<usize>,
) -> Result<Option<Vec<usize>>> {
    check_oracle_size(nodes.len())?;
    metric.check_node(s)?;
    if let Some(t) = t {
        metric.check_node(t)?;
    }
    let hk = HeldKarp::new(metric, nodes, Some(s), t);
    let values = hk.values();
    let best = (0..values.len())
        .filter(|&mask| values[mask] <= budget)
        .min_by_key(|&mask| (std::cmp::Reverse(mask.count_ones()), values[mask], mask));
    Ok(best.map(|mask| hk.walk(mask)))
}

/// Cheapest `s`-`t` walk through at least `quota` nodes of `nodes`, ties to
/// more nodes, then the smallest subset in bitmask order.
pub fn exact_kstroll<C: Cost>(
    metric: &Metric<C>,
    nodes: &[usize],
    s: usize,
    t: usize,
    quota: usize,
) -> Result<Vec<usize>> {
    check_oracle_size(nodes.len())?;
    if quota > nodes.len() {
        return Err(Error::InvalidInstance(format!("quota {quota} exceeds {} nodes", nodes.len())));
    }
    let hk = HeldKarp::new(metric, nodes, Some(s), Some(t));
    let values = hk.values();
    let mask = (0..values.len())
        .filter(|&mask| mask.count_ones() as usize >= quota)
        .min_by_key(|&mask| (values[mask], std::cmp::Reverse(mask.count_ones()), mask))
        .expect("the full set meets any quota");
    Ok(hk.walk(mask))
}

fn retire(remaining: &mut Vec<usize>, path: &[usize]) -> usize {
    let before = remaining.len();
    remaining.retain(|v| !path.contains(v));
    before - remaining.len()
}

/// Greedy cover with budget `budget`.
///
/// With `with_endpoint` the oracle routes `s -> t` within budget; otherwise
/// it routes from `s` freely and `t` is appended, so paths may exceed the
/// budget by the final hop. Fails once an iteration makes no progress or the
/// iteration limit is spent.
pub fn cover_by_orienteering<C: Cost>(inst: &KatsppInstance<C>, budget: C, with_endpoint: bool) -> Result<BudgetCover<C>> {
    inst.validate()?;
    let (s, t) = (inst.s, inst.t);
    let metric = &inst.metric;
    let mut remaining = inst.internal_nodes();
    check_oracle_size(remaining.len())?;
    if remaining.is_empty() {
        let ok = !with_endpoint || metric.d(s, t) <= budget;
        let paths = if ok { vec![vec![s, t]] } else { Vec::new() };
        return Ok(BudgetCover::new(metric, budget, paths, ok));
    }
    let limit = iteration_limit(inst.k, inst.n());
    let mut paths = Vec::new();
    while !remaining.is_empty() && paths.len() < limit {
        let found = if with_endpoint {
            exact_orienteering(metric, &remaining, s, budget, Some(t))?
        } else {
            exact_orienteering(metric, &remaining, s, budget, None)?.map(|mut p| {
                p.push(t);
                p
            })
        };
        let Some(path) = found else { break };
        if retire(&mut remaining, &path) == 0 {
            break;
        }
        paths.push(path);
    }
    let success = remaining.is_empty();
    Ok(BudgetCover::new(metric, budget, paths, success))
}

/// Smallest budget in `[0, sum of all costs]` the greedy cover succeeds
/// with, found by binary search, and its cover.
pub fn solve_makespan_orienteering<C: Cost>(inst: &KatsppInstance<C>, with_endpoint: bool) -> Result<BudgetCover<C>> {
    inst.validate()?;
    let n = inst.n();
    let mut hi: C = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).map(|(u, v)| inst.metric.d(u, v)).sum();
    let mut lo = C::zero();
    let mut best = cover_by_orienteering(inst, hi, with_endpoint)?;
    if !best.success {
        return Err(invariant("cover fails even with the largest budget"));
    }
    let two = C::one() + C::one();
    while lo < hi {
        let mid = lo + (hi - lo) / two;
        let cover = cover_by_orienteering(inst, mid, with_endpoint)?;
        if cover.success {
            hi = mid;
            best = cover;
        } else {
            lo = mid + C::one();
        }
    }
    Ok(best)
}

/// Repeatedly walks the cheapest `s`-`t` path through at least
/// `ceil(|W| / k)` uncovered nodes.
pub fn solve_makespan_kstroll<C: Cost>(inst: &KatsppInstance<C>) -> Result<BudgetCover<C>> {
    inst.validate()?;
    let (s, t) = (inst.s, inst.t);
    let metric = &inst.metric;
    let mut remaining = inst.internal_nodes();
    check_oracle_size(remaining.len())?;
    let mut paths = Vec::new();
    if remaining.is_empty() {
        paths.push(vec![s, t]);
    }
    let limit = iteration_limit(inst.k, inst.n());
    while !remaining.is_empty() {
        if paths.len() == limit {
            return Err(invariant("k-stroll cover exceeded its iteration limit"));
        }
        let quota = remaining.len().div_ceil(inst.k);
        let path = exact_kstroll(metric, &remaining, s, t, quota)?;
        retire(&mut remaining, &path);
        paths.push(path);
    }
    let mut cover = BudgetCover::new(metric, C::zero(), paths, true);
    cover.budget = cover.max_cost;
    Ok(cover)
}
