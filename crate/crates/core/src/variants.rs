//! Endpoint variants: no fixed source or sink, or one listed source or sink
//! per salesman.
//!
//! Each variant is reduced to k-ATSPP on a metric with a few gadget nodes:
//!
//! * no source: a new `s` with `d(s, v) = 0` and `d(v, s) = BIG`;
//! * listed sources `s_1..s_k`: a new `s` and gadgets `s'_i` with zero arcs
//!   `s -> s'_i -> s_i` and every other arc at the gadget nodes `BIG`;
//!
//! sinks mirrored. `BIG` exceeds the total of all genuine costs, so a path
//! that pays it can be detected and is rejected.

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{invariant, Error, Result};
use crate::metric::{metric_closure, KatsppInstance, Metric};
use crate::solution::PathSolution;
use crate::solver::{solve_katspp_detailed, SolveOutput};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum EndpointMode {
    /// Every path uses this node.
    Common { node: usize },
    /// Paths may start (or end) anywhere.
    None,
    /// Path `i` uses `nodes[i]`; for sinks the pairing is free.
    Multiple { nodes: Vec<usize> },
}

impl EndpointMode {
    pub fn nodes(&self) -> Vec<usize> {
        match self {
            EndpointMode::Common { node } => vec![*node],
            EndpointMode::None => Vec::new(),
            EndpointMode::Multiple { nodes } => nodes.clone(),
        }
    }

    /// The endpoint path `i` is pinned to, if any.
    pub fn node_for(&self, i: usize) -> Option<usize> {
        match self {
            EndpointMode::Common { node } => Some(*node),
            EndpointMode::None => None,
            EndpointMode::Multiple { nodes } => Some(nodes[i]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariantSpec {
    pub source: EndpointMode,
    pub sink: EndpointMode,
}

impl VariantSpec {
    pub fn common(s: usize, t: usize) -> Self {
        VariantSpec { source: EndpointMode::Common { node: s }, sink: EndpointMode::Common { node: t } }
    }

    /// All nodes the spec pins as path ends.
    pub fn named_nodes(&self) -> Vec<usize> {
        let mut v = self.source.nodes();
        v.extend(self.sink.nodes());
        v
    }

    pub fn validate<C: Cost>(&self, metric: &Metric<C>, k: usize) -> Result<()> {
        if k < 1 {
            return Err(Error::InvalidInstance("k must be at least 1".into()));
        }
        for (side, mode) in [("source", &self.source), ("sink", &self.sink)] {
            if let EndpointMode::Multiple { nodes } = mode {
                if nodes.len() != k {
                    return Err(Error::InvalidInstance(format!(
                        "{side} list has {} nodes but k = {k}",
                        nodes.len()
                    )));
                }
            }
        }
        let named = self.named_nodes();
        for &v in &named {
            metric.check_node(v)?;
        }
        let mut sorted = named.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != named.len() {
            return Err(Error::InvalidInstance("named sources and sinks must be distinct".into()));
        }
        Ok(())
    }
}

/// How to read solutions of the transformed instance on the original metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantMapping<C> {
    pub spec: VariantSpec,
    /// Node count of the original metric; larger ids are gadgets.
    pub original_n: usize,
    pub big: C,
    /// Gadget `s'_i` per listed source, `t'_j` per listed sink.
    pub source_gadgets: Vec<usize>,
    pub sink_gadgets: Vec<usize>,
}

/// Builds the k-ATSPP instance encoding `spec`.
pub fn transform_instance<C: Cost>(
    metric: &Metric<C>,
    spec: &VariantSpec,
    k: usize,
    b: usize,
) -> Result<(KatsppInstance<C>, VariantMapping<C>)> {
    spec.validate(metric, k)?;
    let n = metric.n();
    let big = metric.big();
    let mut size = n;
    let mut alloc = |count: usize| {
        let first = size;
        size += count;
        (first..size).collect::<Vec<usize>>()
    };
    let (s, source_gadgets) = match &spec.source {
        EndpointMode::Common { node } => (*node, Vec::new()),
        EndpointMode::None => (alloc(1)[0], Vec::new()),
        EndpointMode::Multiple { .. } => (alloc(1)[0], alloc(k)),
    };
    let (t, sink_gadgets) = match &spec.sink {
        EndpointMode::Common { node } => (*node, Vec::new()),
        EndpointMode::None => (alloc(1)[0], Vec::new()),
        EndpointMode::Multiple { .. } => (alloc(1)[0], alloc(k)),
    };

    let mut raw = vec![vec![big; size]; size];
    for (u, row) in raw.iter_mut().enumerate() {
        row[u] = C::zero();
        if u < n {
            for (v, cell) in row.iter_mut().enumerate().take(n) {
                *cell = metric.d(u, v);
            }
        }
    }
    match &spec.source {
        EndpointMode::Common { .. } => {}
        EndpointMode::None => (0..n).for_each(|v| raw[s][v] = C::zero()),
        EndpointMode::Multiple { nodes } => {
            for (&g, &si) in source_gadgets.iter().zip(nodes) {
                raw[s][g] = C::zero();
                raw[g][si] = C::zero();
            }
        }
    }
    match &spec.sink {
        EndpointMode::Common { .. } => {}
        EndpointMode::None => (0..n).for_each(|v| raw[v][t] = C::zero()),
        EndpointMode::Multiple { nodes } => {
            for (&g, &tj) in sink_gadgets.iter().zip(nodes) {
                raw[tj][g] = C::zero();
                raw[g][t] = C::zero();
            }
        }
    }
    let closed = metric_closure(&raw)?;
    let inst = KatsppInstance::new(closed, s, t, k, b)?;
    let mapping = VariantMapping { spec: spec.clone(), original_n: n, big, source_gadgets, sink_gadgets };
    Ok((inst, mapping))
}

impl<C: Cost> VariantMapping<C> {
    /// Fails if any consecutive pair of the walks costs at least `BIG` in the
    /// transformed metric.
    pub fn check_no_big_arcs(&self, transformed: &Metric<C>, paths: &[Vec<usize>]) -> Result<()> {
        for p in paths {
            for w in p.windows(2) {
                if transformed.d(w[0], w[1]) >= self.big {
                    return Err(invariant(format!("path uses forbidden arc ({}, {})", w[0], w[1])));
                }
            }
        }
        Ok(())
    }

    /// Strips gadget nodes and pins each path to its spec endpoints.
    ///
    /// A path through gadget `s'_i` starts at `s_i`; any other path starts at
    /// its first real node if that is a listed source, else at the listed
    /// source closest to it. Sinks are mirrored. Listed endpoints are then
    /// removed from path interiors, and empty paths are dropped.
    pub fn map_paths(&self, metric: &Metric<C>, paths: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let n = self.original_n;
        let mut shaped: Vec<(Option<usize>, Vec<usize>, Option<usize>)> = Vec::with_capacity(paths.len());
        for p in paths {
            let mut body: Vec<usize> = p.iter().copied().filter(|&v| v < n).collect();
            let head = match &self.spec.source {
                EndpointMode::Common { node } => {
                    body.retain(|v| v != node);
                    Some(*node)
                }
                EndpointMode::None => None,
                EndpointMode::Multiple { nodes } => {
                    let gadget = p.iter().find_map(|v| self.source_gadgets.iter().position(|g| g == v));
                    let pinned = match gadget {
                        Some(i) => Some(nodes[i]),
                        None => body.first().map(|&x| {
                            if nodes.contains(&x) {
                                x
                            } else {
                                *nodes.iter().min_by_key(|&&si| metric.d(si, x)).unwrap()
                            }
                        }),
                    };
                    if pinned.is_some() && body.first() == pinned.as_ref() {
                        body.remove(0);
                    }
                    pinned
                }
            };
            let tail = match &self.spec.sink {
                EndpointMode::Common { node } => {
                    body.retain(|v| v != node);
                    Some(*node)
                }
                EndpointMode::None => None,
                EndpointMode::Multiple { nodes } => {
                    let gadget = p.iter().find_map(|v| self.sink_gadgets.iter().position(|g| g == v));
                    let pinned = match gadget {
                        Some(j) => Some(nodes[j]),
                        None => body.last().or(head.as_ref()).map(|&y| {
                            if nodes.contains(&y) {
                                y
                            } else {
                                *nodes.iter().min_by_key(|&&tj| metric.d(y, tj)).unwrap()
                            }
                        }),
                    };
                    if pinned.is_some() && body.last() == pinned.as_ref() {
                        body.pop();
                    }
                    pinned
                }
            };
            shaped.push((head, body, tail));
        }
        let pinned: Vec<usize> = shaped.iter().flat_map(|(h, _, t)| h.iter().chain(t.iter()).copied()).collect();
        shaped
            .into_iter()
            .map(|(h, mut body, t)| {
                body.retain(|v| !pinned.contains(v));
                h.into_iter().chain(body).chain(t).collect::<Vec<usize>>()
            })
            .filter(|p| !p.is_empty())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantOutput<C> {
    /// Paths on the original metric.
    pub solution: PathSolution<C>,
    /// Lower bound on the variant optimum with exactly `k` paths.
    pub lower_bound: C,
    pub transformed: KatsppInstance<C>,
    pub mapping: VariantMapping<C>,
    pub inner: SolveOutput<C>,
}

pub fn solve_variant_detailed<C: Cost>(
    metric: &Metric<C>,
    spec: &VariantSpec,
    k: usize,
    b: usize,
) -> Result<VariantOutput<C>> {
    let (transformed, mapping) = transform_instance(metric, spec, k, b)?;
    let inner = solve_katspp_detailed(&transformed)?;
    mapping.check_no_big_arcs(&transformed.metric, &inner.solution.paths)?;
    let paths = mapping.map_paths(metric, &inner.solution.paths);
    let solution = PathSolution::from_paths(metric, paths);
    Ok(VariantOutput { solution, lower_bound: inner.lower_bound, transformed, mapping, inner })
}

/// Paths satisfying `spec`, at most `k + k/b` of them; the solution is the
/// k-ATSPP one of the transformed instance with gadgets stripped.
pub fn solve_variant<C: Cost>(metric: &Metric<C>, spec: &VariantSpec, k: usize, b: usize) -> Result<PathSolution<C>> {
    Ok(solve_variant_detailed(metric, spec, k, b)?.solution)
}
