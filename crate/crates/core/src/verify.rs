//! Feasibility and cost checks for any solver output.

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::metric::{GeneralInstance, KatsppInstance, Metric};
use crate::solution::PathSolution;
use crate::variants::{EndpointMode, VariantSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every non-endpoint node exactly once, endpoints only at path ends.
    Partition,
    /// Every node at least once.
    Cover,
}

#[derive(Debug, Clone, Copy)]
pub enum Problem<'a, C> {
    Katspp(&'a KatsppInstance<C>),
    General(&'a GeneralInstance<C>),
    /// Open paths obeying an endpoint spec, at least `k` of them.
    Variant { metric: &'a Metric<C>, spec: &'a VariantSpec, k: usize },
    /// Closed walk `i` starts and ends at `roots[i]`; `[r]` is a lone root.
    Rooted { metric: &'a Metric<C>, roots: &'a [usize] },
}

impl<C: Cost> Problem<'_, C> {
    fn metric(&self) -> &Metric<C> {
        match self {
            Problem::Katspp(i) => &i.metric,
            Problem::General(i) => &i.metric,
            Problem::Variant { metric, .. } | Problem::Rooted { metric, .. } => metric,
        }
    }

    fn is_endpoint(&self, v: usize) -> bool {
        match self {
            Problem::Katspp(i) => v == i.s || v == i.t,
            Problem::General(i) => i.is_endpoint(v),
            Problem::Variant { spec, .. } => spec.named_nodes().contains(&v),
            Problem::Rooted { roots, .. } => roots.contains(&v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport<C> {
    pub feasible: bool,
    pub violations: Vec<String>,
    pub recomputed_total_cost: C,
    pub recomputed_max_cost: C,
}

/// Checks endpoints, coverage and the cost fields of `sol` against the
/// metric. Never fails; every problem found is a report entry.
pub fn verify_solution<C: Cost>(problem: Problem<'_, C>, sol: &PathSolution<C>, mode: Mode) -> VerifyReport<C> {
    let metric = problem.metric();
    let n = metric.n();
    let mut violations = Vec::new();
    let valid_ids = sol.paths.iter().flatten().all(|&v| v < n);
    if !valid_ids {
        violations.push(format!("path mentions a node outside 0..{n}"));
    }
    if let Some(i) = sol.paths.iter().position(|p| p.is_empty()) {
        violations.push(format!("path {i} is empty"));
    }

    match problem {
        Problem::Katspp(inst) => {
            for (i, p) in sol.paths.iter().enumerate() {
                if p.first().is_some_and(|&v| v != inst.s) {
                    violations.push(format!("path {i} does not start at s"));
                }
                if p.last().is_some_and(|&v| v != inst.t) {
                    violations.push(format!("path {i} does not end at t"));
                }
            }
            if mode == Mode::Partition && sol.paths.len() < inst.k {
                violations.push(format!("{} paths but k = {}", sol.paths.len(), inst.k));
            }
        }
        Problem::General(inst) => {
            if sol.paths.len() != inst.k() {
                violations.push(format!("{} paths for {} pairs", sol.paths.len(), inst.k()));
            }
            for (i, (p, &(s, t))) in sol.paths.iter().zip(&inst.pairs).enumerate() {
                if p.first().is_some_and(|&v| v != s) {
                    violations.push(format!("path {i} does not start at s_{i}"));
                }
                if p.last().is_some_and(|&v| v != t) {
                    violations.push(format!("path {i} does not end at t_{i}"));
                }
            }
        }
        Problem::Variant { spec, k, .. } => {
            if mode == Mode::Partition && sol.paths.len() < k {
                violations.push(format!("{} paths but k = {k}", sol.paths.len()));
            }
            let ends: Vec<(usize, usize)> =
                sol.paths.iter().filter(|p| !p.is_empty()).map(|p| (p[0], p[p.len() - 1])).collect();
            check_ends(&spec.source, ends.iter().map(|e| e.0), "start", &mut violations);
            check_ends(&spec.sink, ends.iter().map(|e| e.1), "end", &mut violations);
        }
        Problem::Rooted { roots, .. } => {
            if sol.paths.len() != roots.len() {
                violations.push(format!("{} walks for {} roots", sol.paths.len(), roots.len()));
            }
            for (i, (p, &r)) in sol.paths.iter().zip(roots).enumerate() {
                if p.first().is_some_and(|&v| v != r) || p.last().is_some_and(|&v| v != r) {
                    violations.push(format!("walk {i} is not closed at root {r}"));
                }
            }
        }
    }

    if valid_ids {
        let mut count = vec![0usize; n];
        for p in &sol.paths {
            // A closed walk's return to its root is not a second visit.
            let body = match problem {
                Problem::Rooted { .. } if p.len() > 1 && p[0] == p[p.len() - 1] => &p[..p.len() - 1],
                _ => &p[..],
            };
            for &v in body {
                count[v] += 1;
            }
        }
        for v in 0..n {
            let endpoint = problem.is_endpoint(v);
            match mode {
                Mode::Cover if count[v] == 0 => violations.push(format!("node {v} is not visited")),
                Mode::Partition if !endpoint && count[v] != 1 => {
                    violations.push(format!("node {v} is visited {} times", count[v]))
                }
                _ => {}
            }
        }
        if mode == Mode::Partition {
            for (i, p) in sol.paths.iter().enumerate() {
                if p.len() > 2 {
                    if let Some(&v) = p[1..p.len() - 1].iter().find(|&&v| problem.is_endpoint(v)) {
                        violations.push(format!("path {i} passes through endpoint {v}"));
                    }
                }
            }
        }
    }

    let (total, max) = if valid_ids {
        let costs: Vec<C> = sol.paths.iter().map(|p| metric.walk_cost(p)).collect();
        (costs.iter().copied().sum(), costs.iter().copied().max().unwrap_or_else(C::zero))
    } else {
        (C::zero(), C::zero())
    };
    if valid_ids {
        if sol.total_cost != total {
            violations.push(format!("total_cost {} differs from recomputed {total}", sol.total_cost));
        }
        if sol.max_cost != max {
            violations.push(format!("max_cost {} differs from recomputed {max}", sol.max_cost));
        }
    }
    if sol.k_prime != sol.paths.len() {
        violations.push(format!("k_prime {} but {} paths", sol.k_prime, sol.paths.len()));
    }
    VerifyReport { feasible: violations.is_empty(), violations, recomputed_total_cost: total, recomputed_max_cost: max }
}

/// Common ends must all be the node; listed ends must each be used and be
/// the only ends used.
fn check_ends(mode: &EndpointMode, ends: impl Iterator<Item = usize>, which: &str, violations: &mut Vec<String>) {
    let ends: Vec<usize> = ends.collect();
    match mode {
        EndpointMode::None => {}
        EndpointMode::Common { node } => {
            if let Some(i) = ends.iter().position(|v| v != node) {
                violations.push(format!("path {i} does not {which} at {node}"));
            }
        }
        EndpointMode::Multiple { nodes } => {
            if let Some(i) = ends.iter().position(|v| !nodes.contains(v)) {
                violations.push(format!("path {i} does not {which} at a listed node"));
            }
            for v in nodes.iter().filter(|v| !ends.contains(v)) {
                violations.push(format!("no path {which}s at listed node {v}"));
            }
        }
    }
}
