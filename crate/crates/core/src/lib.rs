//! Multi-salesman traveling-salesman-path solvers on asymmetric metrics.
//!
//! The core entry point is [`solve_katspp`]: `k` salesmen start at `s`, end at
//! `t`, and together visit every node. It returns between `k` and `k + k/b`
//! paths of total cost at most `(b + 1) floor(log2 n)` times the optimum,
//! together with a certified lower bound. Around it sit endpoint variants,
//! special cases of the pairwise-endpoint problem, a hardness reduction,
//! makespan covers, and exhaustive oracles for checking all of the above.

// Dense matrices are indexed by node id throughout.
#![allow(clippy::needless_range_loop)]

pub mod cost;
pub mod cover;
pub mod error;
pub mod euler;
pub mod exact;
pub mod flow;
pub mod general;
pub mod generate;
pub mod hardness;
pub mod makespan;
pub mod matching;
pub mod mcf;
pub mod metric;
pub mod solution;
pub mod solver;
pub mod variants;
pub mod verify;

pub use cost::{floor_log2, Cost};
pub use cover::{min_cost_kpath_cycle_cover, CoverResult};
pub use error::{Error, Result};
pub use flow::IntFlow;
pub use generate::{gen_gap_instance, gen_random_metric};
pub use metric::{metric_closure, GeneralInstance, KatsppInstance, Metric};
pub use solution::PathSolution;
pub use solver::{solve_katspp, solve_katspp_detailed, SolveOutput, SolverState};
pub use variants::{solve_variant, transform_instance, EndpointMode, VariantSpec};
pub use verify::{verify_solution, Mode, Problem, VerifyReport};

pub type MetricI64 = Metric<i64>;
pub type KatsppInstanceI64 = KatsppInstance<i64>;
pub type GeneralInstanceI64 = GeneralInstance<i64>;
pub type PathSolutionI64 = PathSolution<i64>;
pub type MetricI32 = Metric<i32>;
