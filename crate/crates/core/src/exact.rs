//! Exhaustive solvers for small instances.
//!
//! Each problem has a search-based oracle and, where the tests need a
//! second opinion, an independently coded subset dynamic program.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::metric::{map_to_origin, GeneralInstance, KatsppInstance, Metric};
use crate::variants::{EndpointMode, VariantSpec};

/// Internal-node limit of [`exact_katspp`].
pub const KATSPP_ENUM_LIMIT: usize = 8;
/// Internal-node limit of the subset dynamic programs.
pub const SUBSET_DP_LIMIT: usize = 16;
/// Internal-node limit of [`exact_makespan`].
pub const MAKESPAN_LIMIT: usize = 7;
/// Pair limit of [`exact_general`].
pub const GENERAL_PAIR_LIMIT: usize = 8;

fn check_size(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::TooLarge { what, size, limit });
    }
    Ok(())
}

/// Optimum and witness of a k-ATSPP instance, by enumerating ordered
/// partitions of the internal nodes into at most `k` sequences.
///
/// Paths are canonically ordered by their smallest internal node; unused
/// salesmen walk `s -> t` directly and are listed last.
pub fn exact_katspp<C: Cost>(inst: &KatsppInstance<C>) -> Result<(C, Vec<Vec<usize>>)> {
    inst.validate()?;
    let internal = inst.internal_nodes();
    check_size("internal nodes", internal.len(), KATSPP_ENUM_LIMIT)?;
    let mut search = PartitionSearch {
        m: &inst.metric,
        nodes: &internal,
        s: inst.s,
        t: inst.t,
        k: inst.k,
        used: vec![false; internal.len()],
        paths: Vec::new(),
        required: Vec::new(),
        best: None,
    };
    search.run(C::zero());
    let (cost, mut paths) = search.best.expect("at least one ordered partition exists");
    while paths.len() < inst.k {
        paths.push(vec![inst.s, inst.t]);
    }
    Ok((cost, paths))
}

struct PartitionSearch<'a, C> {
    m: &'a Metric<C>,
    nodes: &'a [usize],
    s: usize,
    t: usize,
    k: usize,
    used: Vec<bool>,
    /// Opened paths as index sequences; the last one is being extended.
    paths: Vec<Vec<usize>>,
    /// For each opened path, the smallest node free when it was opened. The
    /// path must contain it, which orders paths by their minimum.
    required: Vec<usize>,
    best: Option<(C, Vec<Vec<usize>>)>,
}

impl<C: Cost> PartitionSearch<'_, C> {
    fn witness(&self) -> Vec<Vec<usize>> {
        self.paths
            .iter()
            .map(|p| std::iter::once(self.s).chain(p.iter().map(|&i| self.nodes[i])).chain([self.t]).collect())
            .collect()
    }

    fn open_is_canonical(&self) -> bool {
        match (self.paths.last(), self.required.last()) {
            (Some(p), Some(r)) => p.contains(r),
            _ => true,
        }
    }

    /// `cost` covers the closed paths and the open path up to its last node.
    fn run(&mut self, cost: C) {
        if self.best.as_ref().is_some_and(|(b, _)| cost >= *b) {
            return;
        }
        let d = |a: usize, b: usize| self.m.d(a, b);
        let tail = self.paths.last().map(|p| self.nodes[*p.last().unwrap()]);
        let Some(first_free) = self.used.iter().position(|&u| !u) else {
            if !self.open_is_canonical() {
                return;
            }
            let opened = self.paths.len();
            let total = cost
                + tail.map_or_else(C::zero, |v| d(v, self.t))
                + d(self.s, self.t).times((self.k - opened) as u64);
            if self.best.as_ref().is_none_or(|(b, _)| total < *b) {
                self.best = Some((total, self.witness()));
            }
            return;
        };
        if let Some(last) = tail {
            for i in first_free..self.nodes.len() {
                if self.used[i] {
                    continue;
                }
                self.used[i] = true;
                self.paths.last_mut().unwrap().push(i);
                self.run(cost + d(last, self.nodes[i]));
                self.paths.last_mut().unwrap().pop();
                self.used[i] = false;
            }
        }
        if self.paths.len() < self.k && self.open_is_canonical() {
            let close = tail.map_or_else(C::zero, |v| d(v, self.t));
            for i in first_free..self.nodes.len() {
                if self.used[i] {
                    continue;
                }
                self.used[i] = true;
                self.paths.push(vec![i]);
                self.required.push(first_free);
                self.run(cost + close + d(self.s, self.nodes[i]));
                self.required.pop();
                self.paths.pop();
                self.used[i] = false;
            }
        }
    }
}

/// Cheapest walks from an optional start through every subset of `nodes` to
/// an optional end. A missing start or end contributes no cost.
pub(crate) struct HeldKarp<'a, C> {
    metric: &'a Metric<C>,
    nodes: &'a [usize],
    start: Option<usize>,
    end: Option<usize>,
    /// `table[mask * m + last]`: cheapest walk from the start through exactly
    /// `mask`, ending at `nodes[last]`.
    table: Vec<Option<C>>,
}

impl<'a, C: Cost> HeldKarp<'a, C> {
    pub(crate) fn new(metric: &'a Metric<C>, nodes: &'a [usize], start: Option<usize>, end: Option<usize>) -> Self {
        let m = nodes.len();
        let mut table: Vec<Option<C>> = vec![None; (1usize << m) * m.max(1)];
        for (i, &v) in nodes.iter().enumerate() {
            table[(1 << i) * m + i] = Some(start.map_or_else(C::zero, |s| metric.d(s, v)));
        }
        for mask in 1usize..(1 << m) {
            for last in 0..m {
                let Some(c) = table[mask * m + last] else { continue };
                for next in 0..m {
                    if mask & (1 << next) != 0 {
                        continue;
                    }
                    let slot = &mut table[(mask | 1 << next) * m + next];
                    let cand = c + metric.d(nodes[last], nodes[next]);
                    if slot.is_none_or(|old| cand < old) {
                        *slot = Some(cand);
                    }
                }
            }
        }
        HeldKarp { metric, nodes, start, end, table }
    }

    fn closing(&self, last: usize) -> C {
        self.end.map_or_else(C::zero, |e| self.metric.d(self.nodes[last], e))
    }

    /// Cost of the cheapest walk covering exactly `mask`.
    pub(crate) fn value(&self, mask: usize) -> C {
        if mask == 0 {
            return match (self.start, self.end) {
                (Some(s), Some(e)) => self.metric.d(s, e),
                _ => C::zero(),
            };
        }
        let m = self.nodes.len();
        (0..m)
            .filter_map(|last| self.table[mask * m + last].map(|c| c + self.closing(last)))
            .min()
            .expect("every nonempty mask has a walk")
    }

    pub(crate) fn values(&self) -> Vec<C> {
        (0..1usize << self.nodes.len()).map(|mask| self.value(mask)).collect()
    }

    /// The walk realising [`HeldKarp::value`], endpoints included.
    pub(crate) fn walk(&self, mask: usize) -> Vec<usize> {
        let m = self.nodes.len();
        let mut inner = Vec::new();
        if mask != 0 {
            let target = self.value(mask);
            let mut last = (0..m)
                .find(|&l| self.table[mask * m + l].is_some_and(|c| c + self.closing(l) == target))
                .unwrap();
            let mut cur = mask;
            loop {
                inner.push(self.nodes[last]);
                let here = self.table[cur * m + last].unwrap();
                let prev = cur & !(1 << last);
                if prev == 0 {
                    break;
                }
                last = (0..m)
                    .find(|&p| {
                        self.table[prev * m + p]
                            .is_some_and(|c| c + self.metric.d(self.nodes[p], self.nodes[last]) == here)
                    })
                    .unwrap();
                cur = prev;
            }
            inner.reverse();
        }
        self.start.into_iter().chain(inner).chain(self.end).collect()
    }
}

/// Splits `full` into one (possibly empty) part per table, minimising the
/// `op`-aggregate of the part values, with `op(0, x) = x`. Returns the
/// optimum and the parts.
pub(crate) fn combine_parts<C: Cost>(tables: &[Vec<C>], full: usize, op: impl Fn(C, C) -> C) -> (C, Vec<usize>) {
    let size = full + 1;
    let mut g: Vec<Option<C>> = vec![None; size];
    g[0] = Some(C::zero());
    let mut choice: Vec<Vec<usize>> = Vec::with_capacity(tables.len());
    for table in tables {
        let mut next: Vec<Option<C>> = vec![None; size];
        let mut pick = vec![0usize; size];
        for set in 0..size {
            if set & !full != 0 {
                continue;
            }
            let mut part = set;
            loop {
                if let Some(rest) = g[set & !part] {
                    let cand = op(rest, table[part]);
                    if next[set].is_none_or(|old| cand < old) {
                        next[set] = Some(cand);
                        pick[set] = part;
                    }
                }
                if part == 0 {
                    break;
                }
                part = (part - 1) & set;
            }
        }
        g = next;
        choice.push(pick);
    }
    let best = g[full].expect("a split always exists");
    let mut parts = vec![0; tables.len()];
    let mut set = full;
    for i in (0..tables.len()).rev() {
        parts[i] = choice[i][set];
        set &= !parts[i];
    }
    (best, parts)
}

/// Second k-ATSPP oracle: per-subset path optima combined over `k` salesmen.
pub fn exact_katspp_dp<C: Cost>(inst: &KatsppInstance<C>) -> Result<C> {
    inst.validate()?;
    let internal = inst.internal_nodes();
    check_size("internal nodes", internal.len(), SUBSET_DP_LIMIT)?;
    let hk = HeldKarp::new(&inst.metric, &internal, Some(inst.s), Some(inst.t));
    let values = hk.values();
    let tables = vec![values; inst.k];
    Ok(combine_parts(&tables, (1 << internal.len()) - 1, |a, b| a + b).0)
}

/// Minimum over `k` covering `s`-`t` paths of the largest path cost.
/// Overlap never helps under the triangle inequality, so partitions suffice.
pub fn exact_makespan<C: Cost>(inst: &KatsppInstance<C>) -> Result<(C, Vec<Vec<usize>>)> {
    inst.validate()?;
    let internal = inst.internal_nodes();
    check_size("internal nodes", internal.len(), MAKESPAN_LIMIT)?;
    let hk = HeldKarp::new(&inst.metric, &internal, Some(inst.s), Some(inst.t));
    let tables = vec![hk.values(); inst.k];
    let (best, parts) = combine_parts(&tables, (1 << internal.len()) - 1, |a, b| a.max(b));
    Ok((best, parts.into_iter().map(|p| hk.walk(p)).collect()))
}

/// Optimum of the General k-ATSPP instance and one path per pair, in pair
/// order, on the original node ids.
///
/// Dynamic program over (pair, visited internal set, last node), after
/// repeated endpoints have been made distinct.
pub fn exact_general<C: Cost>(inst: &GeneralInstance<C>) -> Result<(C, Vec<Vec<usize>>)> {
    inst.validate()?;
    check_size("pairs", inst.k(), GENERAL_PAIR_LIMIT)?;
    let (dup, origin) = inst.with_distinct_endpoints()?;
    let nodes = dup.internal_nodes();
    check_size("internal nodes", nodes.len(), SUBSET_DP_LIMIT)?;
    let metric = &dup.metric;
    let k = dup.k();
    let m = nodes.len();
    let width = m + 1; // slot m stands for the current pair's source
    let masks = 1usize << m;
    let inf = C::max_value();
    let at = |i: usize, slot: usize| if slot == m { dup.pairs[i].0 } else { nodes[slot] };
    // stages[i][mask * width + slot]
    let mut stages: Vec<Vec<C>> = Vec::with_capacity(k);
    let mut start = vec![inf; masks];
    start[0] = C::zero();
    for i in 0..k {
        let mut dp = vec![inf; masks * width];
        for mask in 0..masks {
            dp[mask * width + m] = start[mask];
        }
        let mut next_start = vec![inf; masks];
        let t = dup.pairs[i].1;
        for mask in 0..masks {
            for slot in 0..width {
                let c = dp[mask * width + slot];
                if c == inf {
                    continue;
                }
                let cur = at(i, slot);
                let close = c + metric.d(cur, t);
                if close < next_start[mask] {
                    next_start[mask] = close;
                }
                for v in 0..m {
                    if mask & (1 << v) == 0 {
                        let cand = c + metric.d(cur, nodes[v]);
                        let cell = &mut dp[(mask | 1 << v) * width + v];
                        if cand < *cell {
                            *cell = cand;
                        }
                    }
                }
            }
        }
        stages.push(dp);
        start = next_start;
    }
    let full = masks - 1;
    let best = start[full];

    let mut paths: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut target = best;
    let mut mask = full;
    for i in (0..k).rev() {
        let dp = &stages[i];
        let t = dup.pairs[i].1;
        let mut slot = (0..width)
            .find(|&sl| dp[mask * width + sl] != inf && dp[mask * width + sl] + metric.d(at(i, sl), t) == target)
            .expect("stage value is realised");
        let mut walk = vec![t];
        while slot != m {
            walk.push(nodes[slot]);
            let here = dp[mask * width + slot];
            let prev = mask & !(1 << slot);
            let to = nodes[slot];
            slot = (0..width)
                .find(|&p| dp[prev * width + p] != inf && dp[prev * width + p] + metric.d(at(i, p), to) == here)
                .expect("predecessor is realised");
            mask = prev;
        }
        walk.push(dup.pairs[i].0);
        walk.reverse();
        target = dp[mask * width + m];
        paths[i] = map_to_origin(&walk, &origin);
    }
    Ok((best, paths))
}

/// Independent General k-ATSPP oracle by plain enumeration; for cross-checks
/// on very small instances.
pub fn exact_general_enum<C: Cost>(inst: &GeneralInstance<C>) -> Result<C> {
    inst.validate()?;
    let (dup, _) = inst.with_distinct_endpoints()?;
    let nodes = dup.internal_nodes();
    check_size("internal nodes", nodes.len(), KATSPP_ENUM_LIMIT)?;
    fn go<C: Cost>(
        inst: &GeneralInstance<C>,
        nodes: &[usize],
        used: &mut Vec<bool>,
        pair: usize,
        cur: usize,
        cost: C,
        best: &mut Option<C>,
    ) {
        if best.is_some_and(|b| cost >= b) {
            return;
        }
        let d = |a, b| inst.metric.d(a, b);
        let (_, t) = inst.pairs[pair];
        let remaining = used.iter().any(|&u| !u);
        if pair + 1 == inst.pairs.len() {
            if !remaining {
                let total = cost + d(cur, t);
                if best.is_none_or(|b| total < b) {
                    *best = Some(total);
                }
            }
        } else {
            let next = inst.pairs[pair + 1].0;
            go(inst, nodes, used, pair + 1, next, cost + d(cur, t), best);
        }
        for i in 0..nodes.len() {
            if !used[i] {
                used[i] = true;
                go(inst, nodes, used, pair, nodes[i], cost + d(cur, nodes[i]), best);
                used[i] = false;
            }
        }
    }
    let mut best = None;
    let mut used = vec![false; nodes.len()];
    go(&dup, &nodes, &mut used, 0, dup.pairs[0].0, C::zero(), &mut best);
    Ok(best.expect("some assignment exists"))
}

/// Optimum rooted cycle cover: every non-root node lies on the closed walk of
/// exactly one root. Walks are returned as `[r, ..., r]`, or `[r]` for a loop.
pub fn exact_rooted<C: Cost>(metric: &Metric<C>, roots: &[usize]) -> Result<(C, Vec<Vec<usize>>)> {
    crate::general::validate_roots(metric, roots)?;
    let others: Vec<usize> = (0..metric.n()).filter(|v| !roots.contains(v)).collect();
    check_size("non-root nodes", others.len(), SUBSET_DP_LIMIT)?;
    let hks: Vec<HeldKarp<C>> = roots.iter().map(|&r| HeldKarp::new(metric, &others, Some(r), Some(r))).collect();
    let tables: Vec<Vec<C>> = hks.iter().map(|hk| hk.values()).collect();
    let (best, parts) = combine_parts(&tables, (1 << others.len()) - 1, |a, b| a + b);
    let walks = hks
        .iter()
        .zip(parts)
        .map(|(hk, p)| {
            let mut w = hk.walk(p);
            if w.len() == 2 && w[0] == w[1] {
                w.pop();
            }
            w
        })
        .collect();
    Ok((best, walks))
}

/// Optimum of an endpoint variant with exactly `k` paths, straight from its
/// definition: sources and sinks named by the spec are fixed path ends, with
/// any bijection between listed sources and listed sinks.
pub fn exact_variant<C: Cost>(metric: &Metric<C>, spec: &VariantSpec, k: usize) -> Result<(C, Vec<Vec<usize>>)> {
    spec.validate(metric, k)?;
    let named = spec.named_nodes();
    let free: Vec<usize> = (0..metric.n()).filter(|v| !named.contains(v)).collect();
    check_size("free nodes", free.len(), 12)?;
    let full = (1usize << free.len()) - 1;
    let starts: Vec<Option<usize>> = (0..k).map(|i| spec.source.node_for(i)).collect();
    let ends: Vec<Option<usize>> = (0..k).map(|i| spec.sink.node_for(i)).collect();
    let mut orders: Vec<Vec<usize>> = Vec::new();
    if matches!(spec.sink, EndpointMode::Multiple { .. }) {
        permutations(k, &mut Vec::new(), &mut orders);
    } else {
        orders.push((0..k).collect());
    }
    let mut best: Option<(C, Vec<Vec<usize>>)> = None;
    for order in orders {
        let hks: Vec<HeldKarp<C>> = (0..k).map(|i| HeldKarp::new(metric, &free, starts[i], ends[order[i]])).collect();
        let tables: Vec<Vec<C>> = hks.iter().map(|hk| hk.values()).collect();
        let (cost, parts) = combine_parts(&tables, full, |a, b| a + b);
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, hks.iter().zip(parts).map(|(hk, p)| hk.walk(p)).collect()));
        }
    }
    Ok(best.expect("at least one ordering"))
}

fn permutations(k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    for i in 0..k {
        if !prefix.contains(&i) {
            prefix.push(i);
            permutations(k, prefix, out);
            prefix.pop();
        }
    }
}
