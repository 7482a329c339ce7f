use crate::error::{Error, Result};
use crate::flow::IntFlow;

/// Cancels directed cycles of `flow` one unit at a time until its support is
/// acyclic. Returns the acyclic remainder and the cancelled circulation.
pub fn extract_circulation(flow: &IntFlow) -> (IntFlow, IntFlow) {
    let mut acyclic = flow.clone();
    let mut circulation = IntFlow::new();
    while let Some(cycle) = acyclic.find_cycle() {
        for (i, &u) in cycle.iter().enumerate() {
            let v = cycle[(i + 1) % cycle.len()];
            acyclic.remove(u, v, 1);
            circulation.add(u, v, 1);
        }
    }
    (acyclic, circulation)
}

/// Out-multiplicity of `u` in `circulation` restricted to heads in `component`.
pub fn out_within(circulation: &IntFlow, component: &[usize], u: usize) -> u64 {
    circulation.out_arcs(u).filter(|(w, _)| component.contains(w)).map(|(_, m)| m).sum()
}

/// The node of `component` minimising `potential + out-multiplicity within
/// the component`; ties go to the smallest id.
pub fn choose_representative(component: &[usize], circulation: &IntFlow, potentials: &[u64]) -> Result<usize> {
    component
        .iter()
        .map(|&u| (potentials[u] + out_within(circulation, component, u), u))
        .min()
        .map(|(_, u)| u)
        .ok_or_else(|| Error::InvalidInstance("empty component".into()))
}
