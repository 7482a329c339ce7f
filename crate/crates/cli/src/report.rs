//! The per-run JSON report.

use katspp::verify::VerifyReport;
use katspp::VariantSpec;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<VariantSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

/// Costs are always the verifier's recomputation, never a solver's claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub instance_digest: String,
    pub closed_on_load: bool,
    pub solver: String,
    pub params: Params,
    pub k_prime: usize,
    pub total_cost: i64,
    pub max_cost: i64,
    /// Which cost the bound and ratio refer to: `sum` or `max`.
    pub objective: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_optimum: Option<i64>,
    /// Objective over the optimum; absent without an oracle, and when the
    /// optimum is 0 but the objective is not.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// Guaranteed factor over the optimum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_bound: Option<i64>,
    /// Objective <= ratio_bound * optimum, in exact arithmetic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_bound: Option<bool>,
    pub feasible: bool,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    pub paths: Vec<Vec<usize>>,
    /// Solver-specific detail such as the iteration log.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl RunReport {
    pub fn new(digest: &str, closed_on_load: bool, solver: &str, paths: Vec<Vec<usize>>, check: VerifyReport<i64>) -> Self {
        RunReport {
            instance_digest: digest.to_string(),
            closed_on_load,
            solver: solver.to_string(),
            params: Params::default(),
            k_prime: paths.len(),
            total_cost: check.recomputed_total_cost,
            max_cost: check.recomputed_max_cost,
            objective: "sum",
            lower_bound: None,
            oracle_optimum: None,
            ratio: None,
            ratio_bound: None,
            within_bound: None,
            feasible: check.feasible,
            violations: check.violations,
            wall_time_ms: None,
            paths,
            details: Value::Null,
        }
    }

    pub fn objective_value(&self) -> i64 {
        if self.objective == "max" {
            self.max_cost
        } else {
            self.total_cost
        }
    }

    /// Records the optimum and derives the ratio fields from it.
    pub fn set_oracle(&mut self, optimum: i64) {
        let value = self.objective_value();
        self.oracle_optimum = Some(optimum);
        self.ratio = match (value, optimum) {
            (0, 0) => Some(1.0),
            (_, 0) => None,
            _ => Some(value as f64 / optimum as f64),
        };
        self.within_bound = self.ratio_bound.map(|f| value <= f * optimum);
    }
}
