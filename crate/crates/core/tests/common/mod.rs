#![allow(dead_code)]

use katspp::generate::{gen_random_metric, random_symmetric_metric_with, rng};
use katspp::{KatsppInstance, Metric};

/// Random k-ATSPP instance with `s = 0`, `t = n - 1`.
pub fn random_instance(n: usize, k: usize, b: usize, seed: u64, max_cost: u64) -> KatsppInstance<i64> {
    KatsppInstance::new(gen_random_metric(n, seed, max_cost), 0, n - 1, k, b).unwrap()
}

pub fn symmetric_metric(n: usize, seed: u64, max_cost: u64) -> Metric<i64> {
    random_symmetric_metric_with(&mut rng(seed), n, max_cost)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive cycle search: true if some node can walk back to itself.
pub fn has_cycle(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut reach = vec![vec![false; n]; n];
    for &(u, v) in arcs {
        reach[u][v] = true;
    }
    for via in 0..n {
        for u in 0..n {
            if reach[u][via] {
                for w in 0..n {
                    if reach[via][w] {
                        reach[u][w] = true;
                    }
                }
            }
        }
    }
    (0..n).any(|v| reach[v][v])
}
