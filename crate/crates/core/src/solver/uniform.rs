use crate::error::{invariant, Result};
use crate::flow::IntFlow;

use super::shortcut::unit_shortcut;

/// Equalises the throughput of every internal active node to `rounds - gamma`
/// with unit shortcuts, where `gamma` is the largest potential among them.
///
/// Requires an acyclic flow in which each internal node `v` carries exactly
/// `rounds - potentials[v]` units.
pub fn uniformize(
    flow: &IntFlow,
    potentials: &[u64],
    internal: &[usize],
    rounds: u64,
) -> Result<(IntFlow, u64)> {
    if !flow.is_acyclic() {
        return Err(invariant("uniformize requires an acyclic flow"));
    }
    for &v in internal {
        let expected = rounds.checked_sub(potentials[v]);
        if expected != Some(flow.outdeg(v)) || flow.indeg(v) != flow.outdeg(v) {
            return Err(invariant(format!(
                "node {v} carries {} units, expected {:?}",
                flow.outdeg(v),
                expected
            )));
        }
    }
    let gamma = internal.iter().map(|&v| potentials[v]).max().unwrap_or(0);
    if gamma >= rounds {
        return Err(invariant(format!("potential {gamma} leaves no throughput out of {rounds}")));
    }
    let target = rounds - gamma;
    let mut out = flow.clone();
    for &w in internal {
        while out.outdeg(w) > target {
            unit_shortcut(&mut out, w)?;
        }
    }
    Ok((out, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_potentials_leave_flow_alone() {
        let f = IntFlow::from_arcs([((0, 1), 2), ((1, 3), 2), ((0, 2), 2), ((2, 3), 2)]);
        let l = vec![1, 1, 1, 0];
        let (g, gamma) = uniformize(&f, &l, &[1, 2], 3).unwrap();
        assert_eq!(gamma, 1);
        assert_eq!(g, f);
    }

    #[test]
    fn higher_throughput_node_is_reduced() {
        // Node 1 carries 3 units (l = 0), node 2 carries 2 (l = 1).
        let f = IntFlow::from_arcs([((0, 1), 3), ((1, 2), 2), ((1, 3), 1), ((2, 3), 2)]);
        let mut l = vec![0u64; 4];
        l[2] = 1;
        let (g, gamma) = uniformize(&f, &l, &[1, 2], 3).unwrap();
        assert_eq!(gamma, 1);
        assert_eq!(g.outdeg(1), 2);
        assert_eq!(g.outdeg(2), 2);
        assert_eq!(g.outdeg(0), 3);
        assert_eq!(g.indeg(3), 3);
        assert!(g.is_acyclic());
    }

    #[test]
    fn precondition_violation_is_reported() {
        let f = IntFlow::from_arcs([((0, 1), 1), ((1, 2), 1)]);
        assert!(uniformize(&f, &[0, 0, 0], &[1], 3).is_err());
    }
}
