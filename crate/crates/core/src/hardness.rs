//! Tripartite triangle packing and its reduction to General k-ATSPP.
//!
//! A balanced tripartite graph on `U, V, W` (each of size `p`) becomes four
//! layers `X1 = U, X2 = V, X3 = W, X4 = copy of U`, with a zero-cost arc for
//! every graph edge directed from one layer to the next. Distances are 0
//! along directed paths and 1 otherwise, and salesman `u` travels from
//! `X1_u` to `X4_u`. The instance has a zero-cost solution exactly when the
//! graph has a perfect triangle packing.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::generate::rng;
use crate::metric::{metric_closure, GeneralInstance};

/// Largest partition size [`brute_triangle_packing`] accepts.
pub const PACKING_LIMIT: usize = 6;

/// Nodes `0..p` form `U`, `p..2p` form `V`, `2p..3p` form `W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TripartiteGraph {
    pub p: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TripartiteGraph {
    pub fn new(p: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = TripartiteGraph { p, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn part(&self, v: usize) -> usize {
        v / self.p
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidInstance("partition size must be positive".into()));
        }
        for &(a, b) in &self.edges {
            for v in [a, b] {
                if v >= 3 * self.p {
                    return Err(Error::NodeOutOfRange { node: v, n: 3 * self.p });
                }
            }
            if self.part(a) == self.part(b) {
                return Err(Error::InvalidInstance(format!("edge ({a}, {b}) lies inside one partition")));
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    }

    /// Adjacency matrix over the `3p` nodes.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = 3 * self.p;
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    pub fn complete(p: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..3 * p {
            for b in a + 1..3 * p {
                if a / p != b / p {
                    edges.push((a, b));
                }
            }
        }
        TripartiteGraph { p, edges }
    }
}

/// Each cross-partition edge present independently with probability
/// `edge_prob`; deterministic given the seed.
pub fn gen_tripartite(p: usize, edge_prob: f64, seed: u64) -> TripartiteGraph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for (a, b) in TripartiteGraph::complete(p).edges {
        if r.gen_bool(edge_prob) {
            edges.push((a, b));
        }
    }
    TripartiteGraph { p, edges }
}

/// Layered General k-ATSPP instance with `k = p`.
///
/// With `pad_len > 0` a zero-cost chain of that many nodes hangs off
/// `X4_{u_0}` and the first salesman's sink moves to the chain's far end.
pub fn reduce_to_general<C: Cost>(g: &TripartiteGraph, pad_len: usize) -> Result<GeneralInstance<C>> {
    g.validate()?;
    let p = g.p;
    let n = 4 * p + pad_len;
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &g.edges {
        let (a, b) = if g.part(a) < g.part(b) { (a, b) } else { (b, a) };
        match (g.part(a), g.part(b)) {
            (0, 1) | (1, 2) => arcs[a].push(b),
            // W -> copy of U
            (0, 2) => arcs[b].push(3 * p + a),
            _ => unreachable!("validated"),
        }
    }
    let mut prev = 3 * p;
    for v in 4 * p..n {
        arcs[prev].push(v);
        prev = v;
    }
    let mut rows = vec![vec![C::one(); n]; n];
    for (src, row) in rows.iter_mut().enumerate() {
        let mut stack = vec![src];
        row[src] = C::zero();
        while let Some(v) = stack.pop() {
            for &w in &arcs[v] {
                if row[w] != C::zero() {
                    row[w] = C::zero();
                    stack.push(w);
                }
            }
        }
    }
    let metric = metric_closure(&rows)?;
    let mut pairs: Vec<(usize, usize)> = (0..p).map(|u| (u, 3 * p + u)).collect();
    if pad_len > 0 {
        pairs[0].1 = n - 1;
    }
    GeneralInstance::new(metric, pairs)
}

/// Whether `g` splits into `p` vertex-disjoint triangles, by backtracking
/// over the `V` and `W` partners of each `u` in turn.
pub fn brute_triangle_packing(g: &TripartiteGraph) -> Result<bool> {
    g.validate()?;
    if g.p > PACKING_LIMIT {
        return Err(Error::TooLarge { what: "partition size", size: g.p, limit: PACKING_LIMIT });
    }
    let adj = g.adjacency();
    fn go(u: usize, p: usize, adj: &[Vec<bool>], used: &mut [bool]) -> bool {
        if u == p {
            return true;
        }
        for v in p..2 * p {
            if used[v] || !adj[u][v] {
                continue;
            }
            for w in 2 * p..3 * p {
                if used[w] || !adj[v][w] || !adj[w][u] {
                    continue;
                }
                used[v] = true;
                used[w] = true;
                let found = go(u + 1, p, adj, used);
                used[v] = false;
                used[w] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    let mut used = vec![false; 3 * g.p];
    Ok(go(0, g.p, &adj, &mut used))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_and_empty() {
        assert!(brute_triangle_packing(&TripartiteGraph::complete(2)).unwrap());
        assert!(!brute_triangle_packing(&TripartiteGraph::new(3, vec![]).unwrap()).unwrap());
    }

    #[test]
    fn intra_partition_edge_rejected() {
        assert!(TripartiteGraph::new(2, vec![(0, 1)]).is_err());
        assert!(reduce_to_general::<i64>(&TripartiteGraph { p: 2, edges: vec![(2, 3)] }, 0).is_err());
    }

    #[test]
    fn oversized_packing_refused() {
        assert!(matches!(
            brute_triangle_packing(&TripartiteGraph::complete(7)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn layered_distances() {
        // p = 1 triangle u=0, v=1, w=2.
        let g = TripartiteGraph::new(1, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = reduce_to_general::<i64>(&g, 0).unwrap();
        assert_eq!(inst.pairs, vec![(0, 3)]);
        let m = &inst.metric;
        assert_eq!(m.d(0, 1), 0);
        assert_eq!(m.d(0, 3), 0);
        assert_eq!(m.d(3, 0), 1);
        assert_eq!(m.walk_cost(&[0, 1, 2, 3]), 0);
    }

    #[test]
    fn padding_moves_first_sink() {
        let g = TripartiteGraph::complete(2);
        let inst = reduce_to_general::<i64>(&g, 3).unwrap();
        assert_eq!(inst.metric.n(), 11);
        assert_eq!(inst.pairs, vec![(0, 10), (1, 7)]);
        assert_eq!(inst.metric.walk_cost(&[6, 8, 9, 10]), 0);
        assert_eq!(inst.metric.d(7, 8), 1);
    }
}
