use std::path::Path;
use std::time::Instant;

use katspp::exact::{exact_general, exact_katspp, exact_katspp_dp, exact_makespan, exact_rooted, exact_variant, SUBSET_DP_LIMIT};
use katspp::general::{solve_general_2atspp, solve_rooted_cycles, solve_symmetric_general, GENERAL2_B};
use katspp::generate::{gen_gap_instance, gen_random_metric, random_symmetric_metric_with, rng};
use katspp::hardness::{gen_tripartite, reduce_to_general, TripartiteGraph};
use katspp::makespan::{solve_makespan_kstroll, solve_makespan_orienteering};
use katspp::variants::solve_variant_detailed;
use katspp::verify::{verify_solution, Mode, Problem};
use katspp::{floor_log2, solve_katspp_detailed, KatsppInstance, Metric, PathSolution};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{instance_file, read_json, Loaded, ProblemSpec, SolutionFile};
use crate::report::{Params, RunReport};
use crate::{Cli, CliError, Command, GenCommand, GenProblem, MakespanMode, Objective, OracleArgs, SolveArgs, VerifyMode};

type Done = Result<(i32, Value), CliError>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn ok<T: Serialize>(x: &T) -> Done {
    Ok((0, to_value(x)))
}

pub(crate) fn dispatch(cli: &Cli) -> Done {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Solve(args) => solve(args)?,
        Command::General2(args) => general2(args)?,
        Command::Symmetric(args) => symmetric(args)?,
        Command::Rooted(args) => rooted(args)?,
        Command::Makespan { instance, mode, k, oracle } => makespan(instance, *mode, *k, *oracle)?,
        Command::Exact { instance, mode, k } => return exact(instance, *mode, *k),
        Command::Verify { instance, solution, mode } => return verify(instance, solution, *mode),
        Command::Gen(g) => return gen(g),
        Command::Corpus { n, count, seed, k, b, max_cost } => {
            return corpus(*n, *count, *seed, *k, *b, *max_cost, cli.timing)
        }
    };
    if cli.timing {
        report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    ok(&report)
}

fn check(problem: Problem<'_, i64>, sol: &PathSolution<i64>, mode: Mode) -> katspp::verify::VerifyReport<i64> {
    verify_solution(problem, sol, mode)
}

fn katspp_report(loaded: &Loaded, inst: &KatsppInstance<i64>, oracle: bool) -> Result<RunReport, CliError> {
    let out = solve_katspp_detailed(inst)?;
    let verdict = check(Problem::Katspp(inst), &out.solution, Mode::Partition);
    let mut r = RunReport::new(&loaded.digest, loaded.closed_on_load, "katspp", out.solution.paths.clone(), verdict);
    r.params = Params { k: Some(inst.k), b: Some(inst.b), ..Params::default() };
    r.lower_bound = Some(out.lower_bound);
    r.ratio_bound = Some((inst.b as i64 + 1) * floor_log2(inst.n()) as i64);
    if oracle {
        r.set_oracle(exact_katspp_dp(inst)?);
    }
    r.details = json!({
        "rounds": out.rounds,
        "gamma": out.gamma,
        "d_max": out.rounding.d_max,
        "iterations": out.log,
    });
    Ok(r)
}

fn solve(args: &SolveArgs) -> Result<RunReport, CliError> {
    let loaded = Loaded::read(&args.instance)?;
    if let ProblemSpec::Variant { .. } = loaded.file.problem {
        let (spec, k) = loaded.variant(args.k)?;
        let out = solve_variant_detailed(&loaded.metric, &spec, k, args.b)?;
        let verdict = check(Problem::Variant { metric: &loaded.metric, spec: &spec, k }, &out.solution, Mode::Partition);
        let mut r = RunReport::new(&loaded.digest, loaded.closed_on_load, "variant", out.solution.paths.clone(), verdict);
        r.lower_bound = Some(out.lower_bound);
        r.ratio_bound = Some((args.b as i64 + 1) * floor_log2(out.transformed.n()) as i64);
        if args.oracle {
            r.set_oracle(exact_variant(&loaded.metric, &spec, k)?.0);
        }
        r.params = Params { k: Some(k), b: Some(args.b), spec: Some(spec), mode: None };
        r.details = json!({ "transformed_n": out.transformed.n(), "iterations": out.inner.log });
        return Ok(r);
    }
    let inst = loaded.katspp(args.k, args.b)?;
    katspp_report(&loaded, &inst, args.oracle)
}

fn general2(args: &OracleArgs) -> Result<RunReport, CliError> {
    let loaded = Loaded::read(&args.instance)?;
    let inst = loaded.general()?;
    let out = solve_general_2atspp(&inst)?;
    let verdict = check(Problem::General(&inst), &out.solution, Mode::Cover);
    let mut r = RunReport::new(&loaded.digest, loaded.closed_on_load, "general2", out.solution.paths.clone(), verdict);
    r.params = Params { k: Some(2), b: Some(GENERAL2_B), ..Params::default() };
    r.ratio_bound = Some((GENERAL2_B as i64 + 1) * floor_log2(inst.metric.n() + 6) as i64 + 1);
    if args.oracle {
        r.set_oracle(exact_general(&inst)?.0);
    }
    r.details = json!({
        "variant_cost": out.variant_cost,
        "variant_lower_bound": out.variant_lower_bound,
        "duplicated_n": out.duplicated_n,
        "splice": out.splice,
    });
    Ok(r)
}

fn symmetric(args: &OracleArgs) -> Result<RunReport, CliError> {
    let loaded = Loaded::read(&args.instance)?;
    let inst = loaded.general()?;
    let out = solve_symmetric_general(&inst)?;
    let verdict = check(Problem::General(&inst), &out.solution, Mode::Cover);
    let mut r = RunReport::new(&loaded.digest, loaded.closed_on_load, "symmetric", out.solution.paths.clone(), verdict);
    r.params.k = Some(inst.k());
    r.ratio_bound = Some(3);
    if args.oracle {
        r.set_oracle(exact_general(&inst)?.0);
    }
    r.details = json!({
        "forest": out.forest,
        "forest_cost": out.forest_cost,
        "matching_cost": out.matching_cost,
    });
    Ok(r)
}

fn rooted(args: &OracleArgs) -> Result<RunReport, CliError> {
    let loaded = Loaded::read(&args.instance)?;
    let roots = loaded.roots()?;
    let out = solve_rooted_cycles(&loaded.metric, &roots)?;
    let sol = PathSolution::from_paths(&loaded.metric, out.walks.clone());
    let verdict = check(Problem::Rooted { metric: &loaded.metric, roots: &roots }, &sol, Mode::Partition);
    let mut r = RunReport::new(&loaded.digest, loaded.closed_on_load, "rooted", out.walks.clone(), verdict);
    r.params.k = Some(roots.len());
    let n = loaded.metric.n();
    r.ratio_bound = Some(if n > roots.len() { floor_log2(n - roots.len()) as i64 + 1 } else { 1 });
    if args.oracle {
        r.set_oracle(exact_rooted(&loaded.metric, &roots)?.0);
    }
    r.details = json!({
        "iterations": out.iterations,
        "active_sizes": out.active_sizes,
        "cover_costs": out.cover_costs,
    });
    Ok(r)
}

fn makespan(path: &Path, mode: MakespanMode, k: Option<usize>, oracle: bool) -> Result<RunReport, CliError> {
    let loaded = Loaded::read(path)?;
    let inst = loaded.katspp(k, 1)?;
    let (cover, name, factor) = match mode {
        MakespanMode::Endpoint => (solve_makespan_orienteering(&inst, true)?, "endpoint", 1),
        MakespanMode::Append => (solve_makespan_orienteering(&inst, false)?, "append", 2),
        MakespanMode::Kstroll => (solve_makespan_kstroll(&inst)?, "kstroll", 1),
    };
    let sol = PathSolution::from_paths(&inst.metric, cover.paths.clone());
    let verdict = check(Problem::Katspp(&inst), &sol, Mode::Cover);
    let mut r = RunReport::new(&loaded.digest, loaded.closed_on_load, "makespan", cover.paths.clone(), verdict);
    r.objective = "max";
    r.params = Params { k: Some(inst.k), mode: Some(name.to_string()), ..Params::default() };
    r.ratio_bound = Some(factor);
    if oracle {
        r.set_oracle(exact_makespan(&inst)?.0);
    }
    r.details = json!({
        "budget": cover.budget,
        "iterations_used": cover.iterations_used,
        "success": cover.success,
    });
    Ok(r)
}

fn exact(path: &Path, mode: Objective, k: Option<usize>) -> Done {
    let loaded = Loaded::read(path)?;
    let (optimum, paths) = match (&loaded.file.problem, mode) {
        (ProblemSpec::Katspp { .. }, Objective::Sum) => exact_katspp(&loaded.katspp(k, 1)?)?,
        (ProblemSpec::Katspp { .. }, Objective::Max) => exact_makespan(&loaded.katspp(k, 1)?)?,
        (ProblemSpec::General { .. }, Objective::Sum) => exact_general(&loaded.general()?)?,
        (ProblemSpec::Variant { .. }, Objective::Sum) => {
            let (spec, k) = loaded.variant(k)?;
            exact_variant(&loaded.metric, &spec, k)?
        }
        (ProblemSpec::Rooted { roots }, Objective::Sum) => exact_rooted(&loaded.metric, roots)?,
        (other, Objective::Max) => {
            return Err(CliError::input(format!("the max objective needs a katspp problem, found {}", other.name())))
        }
    };
    let sol = PathSolution::from_paths(&loaded.metric, paths);
    Ok((
        0,
        json!({
            "instance_digest": loaded.digest,
            "objective": if mode == Objective::Max { "max" } else { "sum" },
            "optimum": optimum,
            "solution": SolutionFile::from(&sol),
        }),
    ))
}

fn verify(instance: &Path, solution: &Path, mode: Option<VerifyMode>) -> Done {
    let loaded = Loaded::read(instance)?;
    let sol = read_json::<SolutionFile>(solution)?.to_solution();
    let pick = |default: Mode| match mode {
        Some(VerifyMode::Partition) => Mode::Partition,
        Some(VerifyMode::Cover) => Mode::Cover,
        None => default,
    };
    let report = match &loaded.file.problem {
        ProblemSpec::Katspp { .. } => check(Problem::Katspp(&loaded.katspp(None, 1)?), &sol, pick(Mode::Partition)),
        ProblemSpec::General { .. } => check(Problem::General(&loaded.general()?), &sol, pick(Mode::Cover)),
        ProblemSpec::Variant { .. } => {
            let (spec, k) = loaded.variant(None)?;
            check(Problem::Variant { metric: &loaded.metric, spec: &spec, k }, &sol, pick(Mode::Partition))
        }
        ProblemSpec::Rooted { roots } => {
            check(Problem::Rooted { metric: &loaded.metric, roots }, &sol, pick(Mode::Partition))
        }
    };
    Ok((if report.feasible { 0 } else { 1 }, to_value(&report)))
}

fn random_pairs(n: usize, k: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut r = rng(seed ^ 0x5eed);
    (0..k).map(|_| (r.gen_range(0..n), r.gen_range(0..n))).collect()
}

fn gen(cmd: &GenCommand) -> Done {
    match *cmd {
        GenCommand::Random { n, k, seed, max_cost, problem, symmetric } => {
            if n < 2 {
                return Err(CliError::input("n must be at least 2"));
            }
            let metric: Metric<i64> = if symmetric {
                random_symmetric_metric_with(&mut rng(seed), n, max_cost)
            } else {
                gen_random_metric(n, seed, max_cost)
            };
            let spec = match problem {
                GenProblem::Katspp => ProblemSpec::Katspp { s: 0, t: n - 1, k },
                GenProblem::General => ProblemSpec::General { pairs: random_pairs(n, k, seed) },
                GenProblem::Rooted => {
                    if k > n {
                        return Err(CliError::input(format!("{k} roots on {n} nodes")));
                    }
                    ProblemSpec::Rooted { roots: (0..k).collect() }
                }
            };
            ok(&instance_file(&metric, spec))
        }
        GenCommand::Gap { k } => {
            if k == 0 {
                return Err(CliError::input("k must be positive"));
            }
            let inst = gen_gap_instance::<i64>(k);
            ok(&instance_file(&inst.metric, ProblemSpec::Katspp { s: inst.s, t: inst.t, k }))
        }
        GenCommand::Tripartite { p, edge_prob, seed } => {
            check_prob(edge_prob)?;
            let g = gen_tripartite(p, edge_prob, seed);
            g.validate()?;
            ok(&g)
        }
        GenCommand::Reduction { ref graph, p, edge_prob, seed, pad_len } => {
            let g = match graph {
                Some(path) => read_json::<TripartiteGraph>(path)?,
                None => {
                    check_prob(edge_prob)?;
                    gen_tripartite(p, edge_prob, seed)
                }
            };
            let inst = reduce_to_general::<i64>(&g, pad_len)?;
            ok(&instance_file(&inst.metric, ProblemSpec::General { pairs: inst.pairs }))
        }
    }
}

fn check_prob(p: f64) -> Result<(), CliError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(CliError::input(format!("edge probability {p} is outside [0, 1]")))
    }
}

#[derive(Debug, Serialize)]
struct CorpusSummary {
    count: usize,
    feasible: usize,
    oracle_runs: usize,
    ratio_bound: i64,
    all_within_bound: bool,
    max_ratio: Option<f64>,
    mean_ratio: Option<f64>,
}

/// Instance `i` uses seed `seed + i`; the oracle runs whenever the
/// internal node count allows it.
fn corpus(n: usize, count: usize, seed: u64, k: usize, b: usize, max_cost: u64, timing: bool) -> Done {
    if n < 2 {
        return Err(CliError::input("n must be at least 2"));
    }
    let oracle = n - 2 <= SUBSET_DP_LIMIT;
    let reports: Vec<RunReport> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let start = Instant::now();
            let metric = gen_random_metric::<i64>(n, seed + i, max_cost);
            let file = instance_file(&metric, ProblemSpec::Katspp { s: 0, t: n - 1, k });
            let loaded = Loaded::from_file(file)?;
            let inst = loaded.katspp(None, b)?;
            let mut r = katspp_report(&loaded, &inst, oracle)?;
            r.details = Value::Null;
            if timing {
                r.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            Ok(r)
        })
        .collect::<Result<_, CliError>>()?;
    let ratios: Vec<f64> = reports.iter().filter_map(|r| r.ratio).collect();
    let summary = CorpusSummary {
        count,
        feasible: reports.iter().filter(|r| r.feasible).count(),
        oracle_runs: reports.iter().filter(|r| r.oracle_optimum.is_some()).count(),
        ratio_bound: (b as i64 + 1) * floor_log2(n) as i64,
        all_within_bound: reports.iter().all(|r| r.within_bound != Some(false)),
        max_ratio: ratios.iter().copied().reduce(f64::max),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
    };
    ok(&json!({ "summary": summary, "reports": reports }))
}
