//! Successive-shortest-path min-cost flow on small dense networks.

use std::collections::VecDeque;

use crate::cost::Cost;

#[derive(Debug, Clone)]
struct Edge<C> {
    to: usize,
    cap: u64,
    cost: C,
}

/// Residual network; edge `2i` is the forward arc of the i-th added arc and
/// `2i + 1` its reverse.
#[derive(Debug, Clone)]
pub struct MinCostFlow<C> {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge<C>>,
    original_cap: Vec<u64>,
}

impl<C: Cost> MinCostFlow<C> {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow { adj: vec![Vec::new(); nodes], edges: Vec::new(), original_cap: Vec::new() }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64, cost: C) -> usize {
        let id = self.original_cap.len();
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, cap, cost });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0, cost: -cost });
        self.original_cap.push(cap);
        id
    }

    pub fn flow_on(&self, arc: usize) -> u64 {
        self.original_cap[arc] - self.edges[2 * arc].cap
    }

    /// Sends up to `limit` units from `source` to `sink` at minimum cost;
    /// returns the amount sent and its cost. Requires no negative-cost cycle
    /// in the initial network.
    pub fn run(&mut self, source: usize, sink: usize, limit: u64) -> (u64, C) {
        let n = self.adj.len();
        let mut sent = 0u64;
        let mut total = C::zero();
        while sent < limit {
            // Bellman-Ford (queue based); residual costs may be negative.
            let mut dist: Vec<Option<C>> = vec![None; n];
            let mut prev_edge = vec![usize::MAX; n];
            let mut in_queue = vec![false; n];
            let mut queue = VecDeque::new();
            dist[source] = Some(C::zero());
            queue.push_back(source);
            in_queue[source] = true;
            while let Some(u) = queue.pop_front() {
                in_queue[u] = false;
                let du = dist[u].unwrap();
                for &e in &self.adj[u] {
                    let edge = &self.edges[e];
                    if edge.cap == 0 {
                        continue;
                    }
                    let nd = du + edge.cost;
                    if dist[edge.to].is_none_or(|d| nd < d) {
                        dist[edge.to] = Some(nd);
                        prev_edge[edge.to] = e;
                        if !in_queue[edge.to] {
                            in_queue[edge.to] = true;
                            queue.push_back(edge.to);
                        }
                    }
                }
            }
            let Some(path_cost) = dist[sink] else { break };
            let mut push = limit - sent;
            let mut v = sink;
            while v != source {
                let e = prev_edge[v];
                push = push.min(self.edges[e].cap);
                v = self.edges[e ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let e = prev_edge[v];
                self.edges[e].cap -= push;
                self.edges[e ^ 1].cap += push;
                v = self.edges[e ^ 1].to;
            }
            sent += push;
            total += path_cost.times(push);
        }
        (sent, total)
    }
}
