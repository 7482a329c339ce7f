use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::metric::Metric;

/// A set of walks together with their cost aggregates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSolution<C> {
    pub paths: Vec<Vec<usize>>,
    pub total_cost: C,
    pub max_cost: C,
    pub k_prime: usize,
}

impl<C: Cost> PathSolution<C> {
    pub fn from_paths(metric: &Metric<C>, paths: Vec<Vec<usize>>) -> Self {
        let costs: Vec<C> = paths.iter().map(|p| metric.walk_cost(p)).collect();
        PathSolution {
            k_prime: paths.len(),
            total_cost: costs.iter().copied().sum(),
            max_cost: costs.iter().copied().max().unwrap_or_else(C::zero),
            paths,
        }
    }
}
