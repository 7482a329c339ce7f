//! Dense asymmetric metrics and the instance types built on them.

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{Error, Result};

/// A complete digraph with nonnegative integer arc costs satisfying the
/// directed triangle inequality. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Metric<C> {
    n: usize,
    cost: Vec<C>,
}

fn validate_raw<C: Cost>(rows: &[Vec<C>]) -> Result<()> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    for (u, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { row: u, len: row.len(), expected: n });
        }
        for (v, &c) in row.iter().enumerate() {
            if c < C::zero() {
                return Err(Error::NegativeCost { from: u, to: v, value: c.to_string() });
            }
        }
        if row[u] != C::zero() {
            return Err(Error::NonZeroDiagonal(u));
        }
    }
    Ok(())
}

/// Shortest-path closure of a raw nonnegative cost matrix.
///
/// Entry `(u, v)` of the result is the cheapest directed walk from `u` to `v`,
/// so the result satisfies the triangle inequality and is entrywise no larger
/// than the input.
pub fn metric_closure<C: Cost>(rows: &[Vec<C>]) -> Result<Metric<C>> {
    validate_raw(rows)?;
    let n = rows.len();
    let mut cost: Vec<C> = rows.iter().flatten().copied().collect();
    for via in 0..n {
        for u in 0..n {
            let uv = cost[u * n + via];
            for w in 0..n {
                let through = uv.checked_add(&cost[via * n + w]).ok_or(Error::Overflow)?;
                if through < cost[u * n + w] {
                    cost[u * n + w] = through;
                }
            }
        }
    }
    Ok(Metric { n, cost })
}

impl<C: Cost> Metric<C> {
    /// Builds a metric from a matrix that must already satisfy the triangle
    /// inequality.
    pub fn from_closed_rows(rows: &[Vec<C>]) -> Result<Self> {
        validate_raw(rows)?;
        let n = rows.len();
        let m = Metric { n, cost: rows.iter().flatten().copied().collect() };
        if let Some((u, v, w)) = m.triangle_violation() {
            return Err(Error::TriangleViolation(u, v, w));
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self, u: usize, v: usize) -> C {
        self.cost[u * self.n + v]
    }

    pub fn rows(&self) -> Vec<Vec<C>> {
        self.cost.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// First triple `(u, v, w)` of distinct nodes with `d(u,w) > d(u,v) + d(v,w)`.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for u in 0..n {
            for v in 0..n {
                if v == u {
                    continue;
                }
                for w in 0..n {
                    if w == u || w == v {
                        continue;
                    }
                    if self.d(u, w) > self.d(u, v) + self.d(v, w) {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..u).all(|v| self.d(u, v) == self.d(v, u)))
    }

    /// Sum of all entries plus one; strictly dominates any combination of
    /// simple paths on this metric and serves as the finite stand-in for an
    /// absent arc.
    pub fn big(&self) -> C {
        self.cost.iter().copied().sum::<C>() + C::one()
    }

    pub fn check_node(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n })
        }
    }

    /// Cost of walking the node sequence in order.
    pub fn walk_cost(&self, walk: &[usize]) -> C {
        walk.windows(2).map(|w| self.d(w[0], w[1])).sum()
    }

    /// Submetric on `nodes`, relabelled `0..nodes.len()` in the order given.
    pub fn induced(&self, nodes: &[usize]) -> Metric<C> {
        let k = nodes.len();
        let mut cost = Vec::with_capacity(k * k);
        for &u in nodes {
            for &v in nodes {
                cost.push(self.d(u, v));
            }
        }
        Metric { n: k, cost }
    }

    /// Appends a zero-distance copy of `v`; returns the new metric and the
    /// copy's id (always the old node count).
    pub fn duplicate_node(&self, v: usize) -> Result<(Metric<C>, usize)> {
        self.check_node(v)?;
        let n = self.n;
        let m = n + 1;
        let mut cost = vec![C::zero(); m * m];
        let orig = |x: usize| if x == n { v } else { x };
        for x in 0..m {
            for y in 0..m {
                cost[x * m + y] = self.d(orig(x), orig(y));
            }
        }
        Ok((Metric { n: m, cost }, n))
    }
}

/// k-ATSPP instance: `k` salesmen all travelling from `s` to `t`, solved with
/// bicriteria parameter `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KatsppInstance<C> {
    pub metric: Metric<C>,
    pub s: usize,
    pub t: usize,
    pub k: usize,
    pub b: usize,
}

impl<C: Cost> KatsppInstance<C> {
    pub fn new(metric: Metric<C>, s: usize, t: usize, k: usize, b: usize) -> Result<Self> {
        let inst = KatsppInstance { metric, s, t, k, b };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        self.metric.check_node(self.s)?;
        self.metric.check_node(self.t)?;
        if self.s == self.t {
            return Err(Error::InvalidInstance("s and t must differ".into()));
        }
        if self.k < 1 {
            return Err(Error::InvalidInstance("k must be at least 1".into()));
        }
        if self.b < 1 {
            return Err(Error::InvalidInstance("b must be at least 1".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    /// Nodes other than `s` and `t`, ascending.
    pub fn internal_nodes(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| v != self.s && v != self.t).collect()
    }
}

/// General k-ATSPP instance: one salesman per `(s_i, t_i)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralInstance<C> {
    pub metric: Metric<C>,
    pub pairs: Vec<(usize, usize)>,
}

impl<C: Cost> GeneralInstance<C> {
    pub fn new(metric: Metric<C>, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let inst = GeneralInstance { metric, pairs };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::InvalidInstance("at least one pair is required".into()));
        }
        for &(s, t) in &self.pairs {
            self.metric.check_node(s)?;
            self.metric.check_node(t)?;
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_endpoint(&self, v: usize) -> bool {
        self.pairs.iter().any(|&(s, t)| s == v || t == v)
    }

    /// Nodes that are not an endpoint of any pair, ascending.
    pub fn internal_nodes(&self) -> Vec<usize> {
        (0..self.metric.n()).filter(|&v| !self.is_endpoint(v)).collect()
    }

    /// Copies repeated endpoints so that all `2k` endpoint ids are distinct.
    ///
    /// Endpoints are visited in the order `s_1, t_1, s_2, t_2, ...`; every
    /// repeat is replaced by a fresh zero-distance copy. The returned vector
    /// maps each node of the new metric to its original node.
    pub fn with_distinct_endpoints(&self) -> Result<(GeneralInstance<C>, Vec<usize>)> {
        let mut metric = self.metric.clone();
        let mut origin: Vec<usize> = (0..metric.n()).collect();
        let mut used = vec![false; metric.n()];
        let mut pairs = Vec::with_capacity(self.pairs.len());
        let mut fresh = |v: usize, metric: &mut Metric<C>, used: &mut Vec<bool>| -> Result<usize> {
            if !used[v] {
                used[v] = true;
                return Ok(v);
            }
            let (next, copy) = metric.duplicate_node(v)?;
            *metric = next;
            origin.push(origin[v]);
            used.push(true);
            Ok(copy)
        };
        for &(s, t) in &self.pairs {
            let s2 = fresh(s, &mut metric, &mut used)?;
            let t2 = fresh(t, &mut metric, &mut used)?;
            pairs.push((s2, t2));
        }
        Ok((GeneralInstance { metric, pairs }, origin))
    }
}

/// Maps walks on a metric with duplicated nodes back to original ids,
/// collapsing consecutive repeats.
pub fn map_to_origin(walk: &[usize], origin: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    for &v in walk {
        let o = origin[v];
        if out.last() != Some(&o) {
            out.push(o);
        }
    }
    out
}
