//! Batch front end for the `katspp` solvers.
//!
//! Every subcommand prints one pretty JSON document. Output depends only on
//! the inputs and the seed; wall time is reported only with `--timing`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

mod commands;
pub mod format;
pub mod report;

pub use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "katspp", version, about = "Multi-salesman path solvers with exact oracles")]
pub struct Cli {
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock time in reports (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// Bicriteria parameter: at most k + k/b paths.
    #[arg(long, default_value_t = 1)]
    pub b: usize,
    /// Overrides the instance's path count.
    #[arg(long)]
    pub k: Option<usize>,
    /// Also run the exact solver and report the ratio.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MakespanMode {
    /// Orienteering oracle routes s to t within the budget.
    Endpoint,
    /// Orienteering oracle routes from s; t is appended afterwards.
    Append,
    /// k-stroll oracle over a share of the uncovered nodes.
    Kstroll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Objective {
    Sum,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Partition,
    Cover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenProblem {
    Katspp,
    General,
    Rooted,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// k-ATSPP, or an endpoint variant when the instance says so.
    Solve(SolveArgs),
    /// General k-ATSPP with two pairs.
    General2(OracleArgs),
    /// General k-ATSPP on a symmetric metric.
    Symmetric(OracleArgs),
    /// Rooted cycle cover.
    Rooted(OracleArgs),
    /// Cover minimising the most expensive path.
    Makespan {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = MakespanMode::Endpoint)]
        mode: MakespanMode,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        oracle: bool,
    },
    /// Exact optimum by brute force.
    Exact {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Objective::Sum)]
        mode: Objective,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check a solution file; exits 1 on any violation.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        /// Defaults to partition for k-ATSPP, variants and rooted covers,
        /// cover for General k-ATSPP.
        #[arg(long, value_enum)]
        mode: Option<VerifyMode>,
    },
    /// Generate an instance or graph.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Solve a batch of random instances and summarise the ratios.
    Corpus {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        b: usize,
        #[arg(long, default_value_t = 20)]
        max_cost: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Random closed metric; s = 0 and t = n - 1 for k-ATSPP.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        max_cost: u64,
        #[arg(long, value_enum, default_value_t = GenProblem::Katspp)]
        problem: GenProblem,
        #[arg(long)]
        symmetric: bool,
    },
    /// Zero-cost channels that a single salesman cannot use for free.
    Gap {
        #[arg(long)]
        k: usize,
    },
    /// Random balanced tripartite graph.
    Tripartite {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// General k-ATSPP instance from a tripartite graph.
    Reduction {
        /// Graph file; a random graph from --p, --edge-prob, --seed otherwise.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        pad_len: usize,
    },
}

/// Failure reported as `{"error": {"kind", "message"}}` with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { kind: "input", message: message.into() }
    }
}

impl From<katspp::Error> for CliError {
    fn from(e: katspp::Error) -> Self {
        CliError { kind: "solver", message: e.to_string() }
    }
}

/// Exit status and the text to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs one command line (including the program name) without touching
/// the process's own streams, except for writing `--out`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let err = CliError { kind: "usage", message: e.to_string() };
            return Outcome { code: 2, stdout: render(&serde_json::json!({ "error": err })) };
        }
        // Help and version text.
        Err(e) => return Outcome { code: 0, stdout: e.to_string() },
    };
    let (code, value) = match commands::dispatch(&cli) {
        Ok(done) => done,
        Err(err) => (2, serde_json::json!({ "error": err })),
    };
    let text = render(&value);
    match &cli.out {
        Some(path) if code != 2 => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new() },
            Err(e) => {
                let err = CliError::input(format!("cannot write {}: {e}", path.display()));
                Outcome { code: 2, stdout: render(&serde_json::json!({ "error": err })) }
            }
        },
        _ => Outcome { code, stdout: text },
    }
}
