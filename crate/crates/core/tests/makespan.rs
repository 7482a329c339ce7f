mod common;

use common::random_instance;
use katspp::exact::exact_makespan;
use katspp::makespan::{
    cover_by_orienteering, exact_kstroll, exact_orienteering, iteration_limit, solve_makespan_kstroll,
    solve_makespan_orienteering, BudgetCover,
};
use katspp::KatsppInstance;

fn instances() -> impl Iterator<Item = (u64, KatsppInstance<i64>)> {
    (0..100u64).map(|seed| {
        let n = 3 + (seed % 7) as usize;
        let k = 1 + (seed % 3) as usize;
        (seed, random_instance(n, k, 1, 7000 + seed, 20))
    })
}

fn check_cover(inst: &KatsppInstance<i64>, cover: &BudgetCover<i64>, seed: u64) {
    assert!(cover.success, "seed {seed}");
    assert!(cover.iterations_used <= iteration_limit(inst.k, inst.n()), "seed {seed}");
    let mut seen = vec![false; inst.n()];
    for p in &cover.paths {
        assert_eq!((p[0], *p.last().unwrap()), (inst.s, inst.t), "seed {seed}");
        for &v in p {
            seen[v] = true;
        }
    }
    assert!(seen.iter().all(|&x| x), "seed {seed}: {:?}", cover.paths);
    let costs: Vec<i64> = cover.paths.iter().map(|p| inst.metric.walk_cost(p)).collect();
    assert_eq!(cover.max_cost, *costs.iter().max().unwrap());
    assert_eq!(cover.total_cost, costs.iter().sum::<i64>());
}

#[test]
fn optimal_budget_always_suffices() {
    for (seed, inst) in instances() {
        let (opt, _) = exact_makespan(&inst).unwrap();
        for with_endpoint in [true, false] {
            let cover = cover_by_orienteering(&inst, opt, with_endpoint).unwrap();
            check_cover(&inst, &cover, seed);
        }
    }
}

#[test]
fn endpoint_budget_within_optimum() {
    for (seed, inst) in instances() {
        let (opt, _) = exact_makespan(&inst).unwrap();
        let cover = solve_makespan_orienteering(&inst, true).unwrap();
        check_cover(&inst, &cover, seed);
        assert!(cover.budget <= opt, "seed {seed}: {} > {opt}", cover.budget);
        assert!(cover.max_cost <= cover.budget);
    }
}

#[test]
fn appended_sink_within_twice_optimum() {
    for (seed, inst) in instances() {
        let (opt, _) = exact_makespan(&inst).unwrap();
        let cover = solve_makespan_orienteering(&inst, false).unwrap();
        check_cover(&inst, &cover, seed);
        let to_t = (0..inst.n()).map(|v| inst.metric.d(v, inst.t)).max().unwrap();
        assert!(cover.budget <= opt, "seed {seed}");
        assert!(cover.max_cost <= cover.budget + to_t, "seed {seed}");
        assert!(cover.max_cost <= 2 * opt, "seed {seed}");
    }
}

#[test]
fn kstroll_paths_within_optimum() {
    for (seed, inst) in instances() {
        let (opt, _) = exact_makespan(&inst).unwrap();
        let cover = solve_makespan_kstroll(&inst).unwrap();
        check_cover(&inst, &cover, seed);
        assert!(cover.max_cost <= opt, "seed {seed}: {} > {opt}", cover.max_cost);
    }
}

#[test]
fn oracles_agree_with_enumeration() {
    let perms = common::permutations(5);
    for seed in 0..30u64 {
        let inst = random_instance(7, 1, 1, 7500 + seed, 20);
        let nodes = inst.internal_nodes();
        // Every ordered subset of the internal nodes, as an `s`-`t` walk.
        let mut walks: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..32 {
            for perm in &perms {
                let order: Vec<usize> = perm.iter().filter(|&&i| mask >> i & 1 == 1).map(|&i| nodes[i]).collect();
                if order.len() == mask.count_ones() as usize && perm.iter().take(order.len()).all(|&i| mask >> i & 1 == 1) {
                    walks.push(order);
                }
            }
        }
        let cost = |w: &[usize], t: bool| {
            let mut full = vec![inst.s];
            full.extend_from_slice(w);
            if t {
                full.push(inst.t);
            }
            inst.metric.walk_cost(&full)
        };
        for budget in [0, 5, 15, 30] {
            for t in [true, false] {
                let best = walks.iter().filter(|w| cost(w, t) <= budget).map(|w| w.len()).max();
                let got = exact_orienteering(&inst.metric, &nodes, inst.s, budget, t.then_some(inst.t)).unwrap();
                match (best, got) {
                    (None, None) => {}
                    (Some(len), Some(walk)) => {
                        let extra = 1 + t as usize;
                        assert_eq!(walk.len(), len + extra, "seed {seed} budget {budget}");
                        assert!(inst.metric.walk_cost(&walk) <= budget);
                    }
                    other => panic!("seed {seed}: {other:?}"),
                }
            }
        }
        for quota in 0..=5 {
            let best = walks.iter().filter(|w| w.len() >= quota).map(|w| cost(w, true)).min().unwrap();
            let walk = exact_kstroll(&inst.metric, &nodes, inst.s, inst.t, quota).unwrap();
            assert_eq!(inst.metric.walk_cost(&walk), best, "seed {seed} quota {quota}");
            assert!(walk.len() >= quota + 2);
        }
    }
}

#[test]
fn iteration_limit_values() {
    assert_eq!(iteration_limit(1, 1), 1);
    assert_eq!(iteration_limit(2, 10), 6);
    assert_eq!(iteration_limit(3, 100), 15);
}
