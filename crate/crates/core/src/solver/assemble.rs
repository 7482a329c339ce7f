use crate::cost::Cost;
use crate::error::{invariant, Result};
use crate::euler::eulerian_circuit;
use crate::flow::IntFlow;
use crate::metric::Metric;
use crate::solution::PathSolution;

/// Grafts the discarded circulation into the selected paths.
///
/// Forms `paths + circulation + k' * (t, s)`, walks an Eulerian circuit of it
/// from `s`, skips repeated visits to nodes other than `s` and `t`, and cuts
/// the circuit at its `k'` return arcs.
pub fn assemble_solution<C: Cost>(
    metric: &Metric<C>,
    paths: &IntFlow,
    circulation: &IntFlow,
    k_prime: usize,
    s: usize,
    t: usize,
) -> Result<PathSolution<C>> {
    let mut combined = paths.clone();
    combined.add_flow(circulation);
    combined.add(t, s, k_prime as u64);
    if !combined.is_circulation() {
        return Err(invariant("paths plus circulation plus return arcs is not balanced"));
    }
    let circuit = eulerian_circuit(&combined, s)?;
    let mut seen = vec![false; metric.n()];
    let walk: Vec<usize> = circuit
        .into_iter()
        .filter(|&v| {
            if v == s || v == t {
                return true;
            }
            !std::mem::replace(&mut seen[v], true)
        })
        .collect();
    if let Some(v) = (0..metric.n()).find(|&v| v != s && v != t && !seen[v]) {
        return Err(invariant(format!("node {v} is not reached by the combined circulation")));
    }

    let mut out: Vec<Vec<usize>> = Vec::with_capacity(k_prime);
    let mut current: Vec<usize> = Vec::new();
    for &v in &walk[..walk.len() - 1] {
        current.push(v);
        if v == t {
            out.push(std::mem::take(&mut current));
        }
    }
    if out.len() != k_prime || out.iter().any(|p| p.first() != Some(&s)) {
        return Err(invariant("circuit does not split into k' s-t paths"));
    }
    let solution = PathSolution::from_paths(metric, out);
    if solution.total_cost > paths.cost(metric) + circulation.cost(metric) {
        return Err(invariant("assembled paths cost more than their parts"));
    }
    Ok(solution)
}
