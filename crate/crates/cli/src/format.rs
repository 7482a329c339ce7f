//! The instance and solution file formats.
//!
//! An instance file is `{"n", "costs", "closed", "problem"}` where `problem`
//! is tagged by `type`: `katspp` (`s`, `t`, `k`), `general` (`pairs`),
//! `variant` (`source`, `sink`, `k`) or `rooted` (`roots`). Matrices marked
//! unclosed are replaced by their shortest-path closure on load.

use std::path::Path;

use katspp::{metric_closure, EndpointMode, GeneralInstance, KatsppInstance, Metric, PathSolution, VariantSpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub costs: Vec<Vec<i64>>,
    pub closed: bool,
    pub problem: ProblemSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProblemSpec {
    Katspp { s: usize, t: usize, k: usize },
    General { pairs: Vec<(usize, usize)> },
    Variant { source: EndpointMode, sink: EndpointMode, k: usize },
    Rooted { roots: Vec<usize> },
}

impl ProblemSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemSpec::Katspp { .. } => "katspp",
            ProblemSpec::General { .. } => "general",
            ProblemSpec::Variant { .. } => "variant",
            ProblemSpec::Rooted { .. } => "rooted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub paths: Vec<Vec<usize>>,
    pub total_cost: i64,
    pub max_cost: i64,
}

impl From<&PathSolution<i64>> for SolutionFile {
    fn from(sol: &PathSolution<i64>) -> Self {
        SolutionFile { paths: sol.paths.clone(), total_cost: sol.total_cost, max_cost: sol.max_cost }
    }
}

impl SolutionFile {
    pub fn to_solution(&self) -> PathSolution<i64> {
        PathSolution {
            paths: self.paths.clone(),
            total_cost: self.total_cost,
            max_cost: self.max_cost,
            k_prime: self.paths.len(),
        }
    }
}

/// A parsed instance with its metric closed and validated.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub file: InstanceFile,
    pub metric: Metric<i64>,
    pub closed_on_load: bool,
    pub digest: String,
}

impl Loaded {
    pub fn from_file(file: InstanceFile) -> Result<Self, CliError> {
        if file.costs.len() != file.n {
            return Err(CliError::input(format!("n = {} but the cost matrix has {} rows", file.n, file.costs.len())));
        }
        let metric = if file.closed { Metric::from_closed_rows(&file.costs) } else { metric_closure(&file.costs) };
        let metric = metric.map_err(|e| CliError::input(e.to_string()))?;
        let digest = digest_of(&file);
        let loaded = Loaded { closed_on_load: !file.closed, metric, file, digest };
        // Problem errors found at load time are the input's fault.
        loaded.check_problem().map_err(|e| CliError::input(e.message))?;
        Ok(loaded)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Self::from_file(read_json(path)?)
    }

    fn check_problem(&self) -> Result<(), CliError> {
        match &self.file.problem {
            ProblemSpec::Katspp { .. } => self.katspp(None, 1).map(drop),
            ProblemSpec::General { .. } => self.general().map(drop),
            ProblemSpec::Variant { source, sink, k } => {
                let spec = VariantSpec { source: source.clone(), sink: sink.clone() };
                Ok(spec.validate(&self.metric, *k)?)
            }
            ProblemSpec::Rooted { roots } => {
                let mut seen = roots.clone();
                seen.sort_unstable();
                seen.dedup();
                if roots.is_empty() || seen.len() != roots.len() {
                    return Err(CliError::input("roots must be nonempty and distinct"));
                }
                roots.iter().try_for_each(|&r| self.metric.check_node(r)).map_err(CliError::from)
            }
        }
    }

    /// The k-ATSPP instance, with `k` overridden if given.
    pub fn katspp(&self, k: Option<usize>, b: usize) -> Result<KatsppInstance<i64>, CliError> {
        match self.file.problem {
            ProblemSpec::Katspp { s, t, k: file_k } => {
                Ok(KatsppInstance::new(self.metric.clone(), s, t, k.unwrap_or(file_k), b)?)
            }
            ref other => Err(CliError::input(format!("expected a katspp problem, found {}", other.name()))),
        }
    }

    pub fn general(&self) -> Result<GeneralInstance<i64>, CliError> {
        match &self.file.problem {
            ProblemSpec::General { pairs } => Ok(GeneralInstance::new(self.metric.clone(), pairs.clone())?),
            other => Err(CliError::input(format!("expected a general problem, found {}", other.name()))),
        }
    }

    pub fn variant(&self, k: Option<usize>) -> Result<(VariantSpec, usize), CliError> {
        match &self.file.problem {
            ProblemSpec::Variant { source, sink, k: file_k } => {
                let spec = VariantSpec { source: source.clone(), sink: sink.clone() };
                let k = k.unwrap_or(*file_k);
                spec.validate(&self.metric, k)?;
                Ok((spec, k))
            }
            other => Err(CliError::input(format!("expected a variant problem, found {}", other.name()))),
        }
    }

    pub fn roots(&self) -> Result<Vec<usize>, CliError> {
        match &self.file.problem {
            ProblemSpec::Rooted { roots } => Ok(roots.clone()),
            other => Err(CliError::input(format!("expected a rooted problem, found {}", other.name()))),
        }
    }
}

/// SHA-256 of the instance's compact JSON form.
pub fn digest_of(file: &InstanceFile) -> String {
    let bytes = serde_json::to_vec(file).expect("instance serializes");
    hex::encode(Sha256::digest(bytes))
}

pub fn instance_file(metric: &Metric<i64>, problem: ProblemSpec) -> InstanceFile {
    InstanceFile { n: metric.n(), costs: metric.rows(), closed: true, problem }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("malformed JSON in {}: {e}", path.display())))
}
