//! Bicriteria approximation for k-ATSPP.
//!
//! The solver runs `L = (b + 1) * floor(log2 n)` rounds. Each round adds a
//! minimum-cost k-path/cycle cover of the surviving nodes `W` to an acyclic
//! flow `F`, cancels the cycles this creates into a circulation `H`, and keeps
//! one representative per weakly connected component of `H`, shortcutting `F`
//! past the others. Afterwards `F` is made uniform, rounded to between `k`
//! and `k + k/b` paths over `W`, and the discarded circulations are grafted
//! back in through an Eulerian circuit.

mod assemble;
mod circulation;
mod rounding;
mod shortcut;
mod uniform;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use assemble::assemble_solution;
pub use circulation::{choose_representative, extract_circulation, out_within};
pub use rounding::{decompose_paths, integral_point, round_to_paths, Rounding};
pub use shortcut::{shortcut_node, unit_shortcut};
pub use uniform::uniformize;

use crate::cost::{floor_log2, Cost};
use crate::cover::min_cost_kpath_cycle_cover;
use crate::error::{invariant, Result};
use crate::flow::IntFlow;
use crate::metric::KatsppInstance;
use crate::solution::PathSolution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub nodes: Vec<usize>,
    pub representative: usize,
    /// Out-multiplicity of the representative inside the component; added to
    /// its potential.
    pub gain: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord<C> {
    pub iteration: usize,
    pub cover_cost: C,
    pub cover_cycles: usize,
    pub circulation_units: u64,
    pub components: Vec<ComponentRecord>,
    pub discarded: Vec<usize>,
    pub active_after: usize,
}

/// Mutable record of one solve. Drive it with [`SolverState::step`] `rounds`
/// times, then [`SolverState::finish`].
#[derive(Debug, Clone)]
pub struct SolverState<'a, C> {
    inst: &'a KatsppInstance<C>,
    /// Surviving node set `W`.
    pub active: BTreeSet<usize>,
    /// Acyclic `s`-`t` flow on `W`.
    pub flow: IntFlow,
    /// Accumulated circulation on discarded nodes.
    pub circulation: IntFlow,
    /// Discard potentials `l_v`, indexed by node.
    pub potentials: Vec<u64>,
    /// `L = (b + 1) * floor(log2 n)`.
    pub rounds: u64,
    /// Most recent circulation `H` (empty before the first step).
    pub last_circulation: IntFlow,
    pub log: Vec<IterationRecord<C>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutput<C> {
    pub solution: PathSolution<C>,
    /// Largest cover cost seen; each is a lower bound on the optimum.
    pub lower_bound: C,
    pub gamma: u64,
    pub rounds: u64,
    pub loop_flow_cost: C,
    pub uniform_flow: IntFlow,
    pub uniform_cost: C,
    pub rounding: Rounding<C>,
    pub log: Vec<IterationRecord<C>>,
}

impl<'a, C: Cost> SolverState<'a, C> {
    pub fn new(inst: &'a KatsppInstance<C>) -> Result<Self> {
        inst.validate()?;
        let n = inst.n();
        let rounds = (inst.b as u64 + 1) * floor_log2(n) as u64;
        Ok(SolverState {
            inst,
            active: (0..n).collect(),
            flow: IntFlow::new(),
            circulation: IntFlow::new(),
            potentials: vec![0; n],
            rounds,
            last_circulation: IntFlow::new(),
            log: Vec::new(),
        })
    }

    pub fn instance(&self) -> &KatsppInstance<C> {
        self.inst
    }

    pub fn internal_active(&self) -> Vec<usize> {
        let (s, t) = (self.inst.s, self.inst.t);
        self.active.iter().copied().filter(|&v| v != s && v != t).collect()
    }

    pub fn iterations_done(&self) -> usize {
        self.log.len()
    }

    /// One round of the main loop.
    pub fn step(&mut self) -> Result<&IterationRecord<C>> {
        let inst = self.inst;
        let (s, t) = (inst.s, inst.t);
        let cover = min_cost_kpath_cycle_cover(&inst.metric, &self.active, s, t, inst.k)?;
        self.flow.add_flow(&cover.flow);
        let (acyclic, h) = extract_circulation(&self.flow);
        self.flow = acyclic;

        let mut components = Vec::new();
        let mut discarded = Vec::new();
        for comp in h.weak_components() {
            let rep = choose_representative(&comp, &h, &self.potentials)?;
            for &w in comp.iter().filter(|&&w| w != rep) {
                self.flow = shortcut_node(&self.flow, w, s, t)?;
                self.active.remove(&w);
                discarded.push(w);
            }
            let gain = out_within(&h, &comp, rep);
            self.potentials[rep] += gain;
            components.push(ComponentRecord { nodes: comp, representative: rep, gain });
        }
        self.circulation.add_flow(&h);
        discarded.sort_unstable();
        let record = IterationRecord {
            iteration: self.log.len() + 1,
            cover_cost: cover.cost,
            cover_cycles: cover.cycles.len(),
            circulation_units: h.total_units(),
            components,
            discarded,
            active_after: self.active.len(),
        };
        self.last_circulation = h;
        self.log.push(record);
        Ok(self.log.last().unwrap())
    }

    /// Uniformises, rounds and assembles after all rounds have run.
    pub fn finish(self) -> Result<SolveOutput<C>> {
        let inst = self.inst;
        let (s, t) = (inst.s, inst.t);
        if self.log.len() as u64 != self.rounds {
            return Err(invariant(format!("finish after {} of {} rounds", self.log.len(), self.rounds)));
        }
        let internal = self.internal_active();
        let metric = &inst.metric;
        let loop_flow_cost = self.flow.cost(metric);
        let (uniform_flow, gamma) = uniformize(&self.flow, &self.potentials, &internal, self.rounds)?;
        let uniform_cost = uniform_flow.cost(metric);
        let rounding =
            round_to_paths(metric, &uniform_flow, &self.active, s, t, inst.k, inst.b, self.rounds, gamma)?;
        let solution = assemble_solution(metric, &rounding.selected, &self.circulation, rounding.k_prime, s, t)?;
        let lower_bound = self.log.iter().map(|r| r.cover_cost).max().unwrap_or_else(C::zero);
        Ok(SolveOutput {
            solution,
            lower_bound,
            gamma,
            rounds: self.rounds,
            loop_flow_cost,
            uniform_flow,
            uniform_cost,
            rounding,
            log: self.log,
        })
    }
}

/// Full solve with diagnostics.
pub fn solve_katspp_detailed<C: Cost>(inst: &KatsppInstance<C>) -> Result<SolveOutput<C>> {
    let mut state = SolverState::new(inst)?;
    for _ in 0..state.rounds {
        state.step()?;
    }
    state.finish()
}

/// Between `k` and `k + k/b` paths from `s` to `t` partitioning the internal
/// nodes, and a lower bound on the optimum total cost.
pub fn solve_katspp<C: Cost>(inst: &KatsppInstance<C>) -> Result<(PathSolution<C>, C)> {
    let out = solve_katspp_detailed(inst)?;
    Ok((out.solution, out.lower_bound))
}
