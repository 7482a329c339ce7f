mod common;

use std::collections::BTreeSet;

use common::{permutations, random_instance};
use katspp::exact::exact_katspp;
use katspp::generate::gen_random_metric;
use katspp::{min_cost_kpath_cycle_cover, KatsppInstance};

/// Minimum over every successor assignment of `k` copies of `s` plus the
/// internal nodes onto `k` copies of `t` plus the internal nodes.
fn brute_cover(inst: &KatsppInstance<i64>, active: &BTreeSet<usize>) -> i64 {
    let (s, t, k) = (inst.s, inst.t, inst.k);
    let internal: Vec<usize> = active.iter().copied().filter(|&v| v != s && v != t).collect();
    let tails: Vec<usize> = std::iter::repeat_n(s, k).chain(internal.iter().copied()).collect();
    let heads: Vec<usize> = std::iter::repeat_n(t, k).chain(internal.iter().copied()).collect();
    permutations(tails.len())
        .into_iter()
        .filter(|perm| perm.iter().enumerate().all(|(i, &j)| tails[i] != heads[j]))
        .map(|perm| perm.iter().enumerate().map(|(i, &j)| inst.metric.d(tails[i], heads[j])).sum())
        .min()
        .unwrap()
}

#[test]
fn cover_matches_assignment_enumeration() {
    for seed in 0..30 {
        for k in 1..=2 {
            let inst = random_instance(6, k, 1, seed, 15);
            let all: BTreeSet<usize> = (0..6).collect();
            let c = min_cost_kpath_cycle_cover(&inst.metric, &all, 0, 5, k).unwrap();
            assert_eq!(c.cost, brute_cover(&inst, &all), "seed {seed}, k {k}");
        }
    }
}

#[test]
fn degree_contract_and_decomposition() {
    for seed in 0..40 {
        let n = 4 + (seed % 6) as usize;
        let k = 1 + (seed % 3) as usize;
        let inst = random_instance(n, k, 1, seed, 20);
        let all: BTreeSet<usize> = (0..n).collect();
        let c = min_cost_kpath_cycle_cover(&inst.metric, &all, inst.s, inst.t, k).unwrap();
        let (s, t) = (inst.s, inst.t);
        assert_eq!(c.flow.outdeg(s), k as u64);
        assert_eq!(c.flow.indeg(t), k as u64);
        assert_eq!(c.flow.indeg(s), 0);
        assert_eq!(c.flow.outdeg(t), 0);
        for v in inst.internal_nodes() {
            assert_eq!((c.flow.indeg(v), c.flow.outdeg(v)), (1, 1));
        }
        assert_eq!(c.paths.len(), k);
        let mut rebuilt = katspp::IntFlow::new();
        for p in &c.paths {
            assert_eq!((p[0], *p.last().unwrap()), (s, t));
            for w in p.windows(2) {
                rebuilt.add(w[0], w[1], 1);
            }
        }
        for cyc in &c.cycles {
            for i in 0..cyc.len() {
                rebuilt.add(cyc[i], cyc[(i + 1) % cyc.len()], 1);
            }
        }
        assert_eq!(rebuilt, c.flow);
        assert_eq!(c.cost, c.flow.cost(&inst.metric));
    }
}

#[test]
fn cover_cost_at_most_optimum() {
    for seed in 0..60 {
        let n = 4 + (seed % 5) as usize;
        let k = 1 + (seed % 3) as usize;
        let inst = random_instance(n, k, 1, seed, 20);
        let all: BTreeSet<usize> = (0..n).collect();
        let c = min_cost_kpath_cycle_cover(&inst.metric, &all, inst.s, inst.t, k).unwrap();
        assert!(c.cost <= exact_katspp(&inst).unwrap().0, "seed {seed}");
    }
}

/// Shortcutting a node off its cover cycle or path never costs more, so
/// removal cannot raise the optimum unless the node sits on a 2-cycle, where
/// the shortcut would be a forbidden loop.
#[test]
fn cover_cost_monotone_under_removal_off_two_cycles() {
    let mut checked = 0;
    for seed in 0..30 {
        let n = 9;
        let m = gen_random_metric::<i64>(n, 1000 + seed, 30);
        let mut active: BTreeSet<usize> = (0..n).collect();
        for v in (1..n - 1).rev() {
            if (v as u64 + seed).is_multiple_of(3) {
                continue;
            }
            let before = min_cost_kpath_cycle_cover(&m, &active, 0, n - 1, 2).unwrap();
            active.remove(&v);
            let after = min_cost_kpath_cycle_cover(&m, &active, 0, n - 1, 2).unwrap();
            let on_two_cycle = before.cycles.iter().any(|c| c.len() == 2 && c.contains(&v));
            if !on_two_cycle {
                checked += 1;
                assert!(after.cost <= before.cost, "seed {seed}: removing {v} raised {} -> {}", before.cost, after.cost);
            }
        }
    }
    assert!(checked > 100);
}

/// Removing a node from a 2-cycle of the optimum cover can raise its cost.
#[test]
fn removal_from_two_cycle_can_raise_cost() {
    let n = 9;
    let m = gen_random_metric::<i64>(n, 1000, 30);
    let mut active: BTreeSet<usize> = [0, 1, 2, 3, 4, 6, 8].into();
    let before = min_cost_kpath_cycle_cover(&m, &active, 0, 8, 2).unwrap();
    assert!(before.cycles.iter().any(|c| c == &vec![3, 4]));
    active.remove(&4);
    let after = min_cost_kpath_cycle_cover(&m, &active, 0, 8, 2).unwrap();
    assert_eq!((before.cost, after.cost), (46, 47));
}
