//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::metric::{metric_closure, KatsppInstance, Metric};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure of a matrix with independent uniform off-diagonal entries in
/// `[0, max_cost]`.
pub fn gen_random_metric<C: Cost>(n: usize, seed: u64, max_cost: u64) -> Metric<C> {
    assert!(n >= 2 && max_cost >= 1);
    let mut rng = rng(seed);
    random_metric_with(&mut rng, n, max_cost)
}

pub fn random_metric_with<C: Cost, R: Rng>(rng: &mut R, n: usize, max_cost: u64) -> Metric<C> {
    let rows: Vec<Vec<C>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| if u == v { C::zero() } else { cost_of(rng.gen_range(0..=max_cost)) })
                .collect()
        })
        .collect();
    metric_closure(&rows).expect("generated matrix is valid")
}

/// Closure of a random symmetric matrix; closure preserves symmetry.
pub fn random_symmetric_metric_with<C: Cost, R: Rng>(rng: &mut R, n: usize, max_cost: u64) -> Metric<C> {
    let mut rows = vec![vec![C::zero(); n]; n];
    for u in 0..n {
        for v in (u + 1)..n {
            let c = cost_of(rng.gen_range(0..=max_cost));
            rows[u][v] = c;
            rows[v][u] = c;
        }
    }
    metric_closure(&rows).expect("generated matrix is valid")
}

fn cost_of<C: Cost>(x: u64) -> C {
    C::from(x).expect("cost does not fit the cost type")
}

/// Instance with `m_pairs` disjoint zero-cost channels `s -> v_i -> t`; every
/// arc not implied by these channels costs 1. Node 0 is `s`, nodes
/// `1..=m_pairs` are the channel nodes, and node `m_pairs + 1` is `t`.
/// With `k = m_pairs` the optimum is 0, while a single salesman pays at least
/// `m_pairs - 1`.
pub fn gen_gap_instance<C: Cost>(m_pairs: usize) -> KatsppInstance<C> {
    assert!(m_pairs >= 1);
    let n = m_pairs + 2;
    let (s, t) = (0, n - 1);
    let mut rows = vec![vec![C::one(); n]; n];
    for (v, row) in rows.iter_mut().enumerate() {
        row[v] = C::zero();
    }
    for v in 1..=m_pairs {
        rows[s][v] = C::zero();
        rows[v][t] = C::zero();
    }
    let metric = metric_closure(&rows).expect("gap matrix is valid");
    KatsppInstance { metric, s, t, k: m_pairs, b: 1 }
}
