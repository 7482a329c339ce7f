//! Eulerian circuits and trails (Hierholzer), deterministic by node id.

use crate::error::{invariant, Result};
use crate::flow::IntFlow;

/// Closed walk from `start` using every arc of the balanced multigraph
/// `flow` exactly as many times as its multiplicity. Fails if `flow` is
/// unbalanced or its arcs are not all reachable from `start`.
pub fn eulerian_circuit(flow: &IntFlow, start: usize) -> Result<Vec<usize>> {
    if !flow.is_circulation() {
        return Err(invariant("Eulerian circuit requested on an unbalanced multigraph"));
    }
    let max = flow.nodes().last().map_or(start, |&v| v.max(start)) + 1;
    let mut heads: Vec<Vec<usize>> = vec![Vec::new(); max];
    for ((u, v), m) in flow.arcs() {
        for _ in 0..m {
            heads[u].push(v);
        }
    }
    let mut next = vec![0usize; max];
    let mut stack = vec![start];
    let mut circuit = Vec::new();
    while let Some(&v) = stack.last() {
        if next[v] < heads[v].len() {
            let w = heads[v][next[v]];
            next[v] += 1;
            stack.push(w);
        } else {
            circuit.push(stack.pop().unwrap());
        }
    }
    circuit.reverse();
    if circuit.len() as u64 != flow.total_units() + 1 {
        return Err(invariant("support is not connected: Eulerian circuit misses arcs"));
    }
    Ok(circuit)
}

/// Walk from `start` over an undirected multigraph that uses every edge once.
/// Edges are `(a, b)` pairs; when two nodes have odd degree `start` must be
/// one of them.
pub fn eulerian_trail_undirected(edges: &[(usize, usize)], start: usize) -> Result<Vec<usize>> {
    let max = edges.iter().map(|&(a, b)| a.max(b)).max().map_or(start, |m| m.max(start)) + 1;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); max];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; max];
    let mut stack = vec![start];
    let mut trail = Vec::new();
    while let Some(&v) = stack.last() {
        while next[v] < adj[v].len() && used[adj[v][next[v]].1] {
            next[v] += 1;
        }
        if next[v] < adj[v].len() {
            let (w, e) = adj[v][next[v]];
            used[e] = true;
            stack.push(w);
        } else {
            trail.push(stack.pop().unwrap());
        }
    }
    trail.reverse();
    if trail.len() != edges.len() + 1 {
        return Err(invariant("undirected multigraph is not connected"));
    }
    Ok(trail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grafts_side_cycle() {
        let f = IntFlow::from_arcs([((0, 1), 1), ((1, 3), 1), ((1, 2), 1), ((2, 1), 1), ((3, 0), 1)]);
        let c = eulerian_circuit(&f, 0).unwrap();
        assert_eq!(c, vec![0, 1, 2, 1, 3, 0]);
    }

    #[test]
    fn disconnected_support_fails() {
        let f = IntFlow::from_arcs([((0, 1), 1), ((1, 0), 1), ((2, 3), 1), ((3, 2), 1)]);
        assert!(eulerian_circuit(&f, 0).is_err());
        let g = IntFlow::from_arcs([((0, 1), 1)]);
        assert!(eulerian_circuit(&g, 0).is_err());
    }

    #[test]
    fn undirected_trail_between_odd_nodes() {
        let edges = [(0, 1), (1, 2), (1, 2), (0, 3)];
        let t = eulerian_trail_undirected(&edges, 3).unwrap();
        assert_eq!(t.first(), Some(&3));
        assert_eq!(t.last(), Some(&1));
        assert_eq!(t.len(), 5);
    }
}
