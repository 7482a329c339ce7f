use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{invariant, Error, Result};
use crate::euler::eulerian_trail_undirected;
use crate::metric::{map_to_origin, GeneralInstance};
use crate::solution::PathSolution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricOutput<C> {
    /// One path per pair, in pair order, on the original node ids.
    pub solution: PathSolution<C>,
    /// Edges of the spanning forest, each tree holding one endpoint.
    pub forest: Vec<(usize, usize)>,
    pub forest_cost: C,
    /// `sum_i d(s_i, t_i)`.
    pub matching_cost: C,
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// General k-ATSPP in a symmetric metric within three times the optimum.
///
/// A minimum spanning forest with one endpoint per tree is the spanning tree
/// of the graph with all endpoints contracted. Each pair's two trees, with
/// their edges doubled and the edge `s_i t_i` added, carry an Euler trail
/// from `s_i` to `t_i`, which is then shortcut.
pub fn solve_symmetric_general<C: Cost>(inst: &GeneralInstance<C>) -> Result<SymmetricOutput<C>> {
    inst.validate()?;
    if !inst.metric.is_symmetric() {
        return Err(Error::InvalidInstance("metric is not symmetric".into()));
    }
    let (dup, origin) = inst.with_distinct_endpoints()?;
    let m = &dup.metric;
    let n = m.n();
    let endpoints: Vec<usize> = dup.pairs.iter().flat_map(|&(s, t)| [s, t]).collect();

    let mut parent: Vec<usize> = (0..n).collect();
    let hub = endpoints[0];
    for &x in &endpoints {
        parent[x] = hub;
    }
    let mut edges: Vec<(C, usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| (m.d(u, v), u, v)).collect();
    edges.sort_unstable();
    let mut forest = Vec::new();
    for (_, u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            forest.push((u, v));
        }
    }
    let forest_cost: C = forest.iter().map(|&(u, v)| m.d(u, v)).sum();

    // Tree of each node: the endpoint it reaches inside the forest.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &forest {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut owner = vec![usize::MAX; n];
    for &x in &endpoints {
        let mut stack = vec![x];
        owner[x] = x;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if owner[w] == usize::MAX {
                    owner[w] = x;
                    stack.push(w);
                }
            }
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(invariant("spanning forest leaves a node without an endpoint"));
    }

    let mut paths = Vec::with_capacity(dup.k());
    let mut matching_cost = C::zero();
    for &(s, t) in &dup.pairs {
        let mut multi: Vec<(usize, usize)> = vec![(s, t)];
        let tree_cost: C = forest
            .iter()
            .filter(|&&(u, _)| owner[u] == s || owner[u] == t)
            .inspect(|&&(u, v)| multi.extend([(u, v), (u, v)]))
            .map(|&(u, v)| m.d(u, v))
            .sum();
        let trail = eulerian_trail_undirected(&multi, s)?;
        if trail.last() != Some(&t) {
            return Err(invariant("Euler trail does not end at the pair's sink"));
        }
        let mut seen = vec![false; n];
        let mut path: Vec<usize> = Vec::new();
        for &v in &trail[..trail.len() - 1] {
            if v != t && !std::mem::replace(&mut seen[v], true) {
                path.push(v);
            }
        }
        path.push(t);
        let bound = tree_cost + tree_cost + m.d(s, t);
        if m.walk_cost(&path) > bound {
            return Err(invariant("shortcut walk costs more than its doubled trees"));
        }
        matching_cost += m.d(s, t);
        paths.push(map_to_origin(&path, &origin));
    }
    Ok(SymmetricOutput { solution: PathSolution::from_paths(&inst.metric, paths), forest, forest_cost, matching_cost })
}
