//! Sparse nonnegative integral arc flows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::metric::Metric;

/// Arc multiset: `(u, v) -> multiplicity`. Zero multiplicities are never
/// stored, and iteration order is lexicographic in `(u, v)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntFlow {
    arcs: BTreeMap<(usize, usize), u64>,
}

impl IntFlow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let mut f = IntFlow::new();
        for ((u, v), m) in arcs {
            f.add(u, v, m);
        }
        f
    }

    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.arcs.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, u: usize, v: usize, m: u64) {
        if m > 0 {
            *self.arcs.entry((u, v)).or_insert(0) += m;
        }
    }

    /// Removes `m` units from arc `(u, v)`. Panics if fewer are present.
    pub fn remove(&mut self, u: usize, v: usize, m: u64) {
        if m == 0 {
            return;
        }
        let e = self.arcs.get_mut(&(u, v)).expect("removing an absent arc");
        assert!(*e >= m, "removing more units than present on ({u}, {v})");
        *e -= m;
        if *e == 0 {
            self.arcs.remove(&(u, v));
        }
    }

    pub fn add_flow(&mut self, other: &IntFlow) {
        for (&(u, v), &m) in &other.arcs {
            self.add(u, v, m);
        }
    }

    /// `self - other`, or `None` if `other` is not contained in `self`.
    pub fn checked_sub(&self, other: &IntFlow) -> Option<IntFlow> {
        let mut out = self.clone();
        for (&(u, v), &m) in &other.arcs {
            if out.get(u, v) < m {
                return None;
            }
            out.remove(u, v, m);
        }
        Some(out)
    }

    pub fn arcs(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.arcs.iter().map(|(&a, &m)| (a, m))
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Number of distinct arcs in the support.
    pub fn support_len(&self) -> usize {
        self.arcs.len()
    }

    pub fn total_units(&self) -> u64 {
        self.arcs.values().sum()
    }

    pub fn outdeg(&self, v: usize) -> u64 {
        self.arcs.range((v, 0)..=(v, usize::MAX)).map(|(_, &m)| m).sum()
    }

    pub fn indeg(&self, v: usize) -> u64 {
        self.arcs.iter().filter(|(&(_, w), _)| w == v).map(|(_, &m)| m).sum()
    }

    /// Out-arcs of `v` in ascending head order.
    pub fn out_arcs(&self, v: usize) -> impl DoubleEndedIterator<Item = (usize, u64)> + '_ {
        self.arcs.range((v, 0)..=(v, usize::MAX)).map(|(&(_, w), &m)| (w, m))
    }

    /// Smallest head of an out-arc of `v`.
    pub fn first_out(&self, v: usize) -> Option<usize> {
        self.out_arcs(v).next().map(|(w, _)| w)
    }

    /// In-arcs of `v` in ascending tail order.
    pub fn in_arcs(&self, v: usize) -> Vec<(usize, u64)> {
        self.arcs.iter().filter(|(&(_, w), _)| w == v).map(|(&(u, _), &m)| (u, m)).collect()
    }

    /// Nodes touched by at least one arc, ascending.
    pub fn nodes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.arcs.keys().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn cost<C: Cost>(&self, metric: &Metric<C>) -> C {
        self.arcs.iter().map(|(&(u, v), &m)| metric.d(u, v).times(m)).sum()
    }

    /// In-degree equals out-degree at every node.
    pub fn is_circulation(&self) -> bool {
        let mut balance: BTreeMap<usize, i128> = BTreeMap::new();
        for (&(u, v), &m) in &self.arcs {
            *balance.entry(u).or_insert(0) += m as i128;
            *balance.entry(v).or_insert(0) -= m as i128;
        }
        balance.values().all(|&b| b == 0)
    }

    /// A directed cycle in the support, as a node sequence without the
    /// repeated start, or `None` if the support is acyclic. Deterministic:
    /// depth-first search from nodes in ascending order, heads in ascending
    /// order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let nodes = self.nodes();
        let max = nodes.last().map_or(0, |&v| v + 1);
        // 0 = unseen, 1 = on stack, 2 = done
        let mut state = vec![0u8; max];
        let mut stack_nodes: Vec<usize> = Vec::new();
        for &root in &nodes {
            if state[root] != 0 {
                continue;
            }
            let mut iters: Vec<Vec<usize>> = Vec::new();
            state[root] = 1;
            stack_nodes.push(root);
            iters.push(self.out_arcs(root).map(|(w, _)| w).rev().collect());
            while let Some(top) = iters.last_mut() {
                if let Some(w) = top.pop() {
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            stack_nodes.push(w);
                            iters.push(self.out_arcs(w).map(|(x, _)| x).rev().collect());
                        }
                        1 => {
                            let pos = stack_nodes.iter().position(|&x| x == w).unwrap();
                            return Some(stack_nodes[pos..].to_vec());
                        }
                        _ => {}
                    }
                } else {
                    iters.pop();
                    let v = stack_nodes.pop().unwrap();
                    state[v] = 2;
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Weakly connected components of the support, each sorted ascending,
    /// ordered by smallest member.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let nodes = self.nodes();
        let max = nodes.last().map_or(0, |&v| v + 1);
        let mut parent: Vec<usize> = (0..max).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in self.arcs.keys() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &nodes {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_cost() {
        let m = crate::metric::metric_closure(&[vec![0i64, 2, 5], vec![1, 0, 1], vec![4, 4, 0]]).unwrap();
        let f = IntFlow::from_arcs([((0, 1), 2), ((1, 2), 1), ((0, 2), 3)]);
        assert_eq!(f.outdeg(0), 5);
        assert_eq!(f.indeg(2), 4);
        assert_eq!(f.cost(&m), 2 * 2 + 1 + 3 * 3); // closure gives d(0,2) = 3
        assert!(!f.is_circulation());
        assert!(f.is_acyclic());
    }

    #[test]
    fn cycle_detection_and_components() {
        let f = IntFlow::from_arcs([((0, 3), 1), ((1, 2), 1), ((2, 1), 1), ((4, 5), 1)]);
        assert_eq!(f.find_cycle(), Some(vec![1, 2]));
        assert_eq!(f.weak_components(), vec![vec![0, 3], vec![1, 2], vec![4, 5]]);
        let g = IntFlow::from_arcs([((1, 2), 1), ((2, 1), 1)]);
        assert!(g.is_circulation());
    }

    #[test]
    fn removal_drops_zero_entries() {
        let mut f = IntFlow::from_arcs([((0, 1), 2)]);
        f.remove(0, 1, 2);
        assert!(f.is_empty());
        assert_eq!(f.get(0, 1), 0);
        let a = IntFlow::from_arcs([((0, 1), 2), ((1, 2), 1)]);
        let b = IntFlow::from_arcs([((0, 1), 3)]);
        assert!(a.checked_sub(&b).is_none());
    }
}
