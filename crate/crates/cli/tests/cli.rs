use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Runs the real binary; returns exit status and stdout.
fn katspp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_katspp")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit status"), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn json_of(args: &[&str]) -> Value {
    let (code, out) = katspp(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    serde_json::from_str(&out).unwrap()
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gap_instance_golden() {
    let gap = fixture("gap2.json");
    let (code, out) = katspp(&["solve", gap.to_str().unwrap(), "--b", "1", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(fixture("gap2_solve_b1_k2.json")).unwrap());
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["total_cost"], 0);
    assert_eq!(report["k_prime"], 2);
    assert_eq!(report["feasible"], true);
}

#[test]
fn corrupted_solution_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let gap = fixture("gap2.json");
    let gap = gap.to_str().unwrap();
    let report = json_of(&["solve", gap, "--k", "2"]);
    let good = json!({ "paths": report["paths"], "total_cost": 0, "max_cost": 0 });
    let good_path = write(dir.path(), "good.json", &good);
    let (code, out) = katspp(&["verify", gap, &good_path]);
    assert_eq!(code, 0, "{out}");

    // Drop the sink from the first path.
    let mut paths: Vec<Vec<usize>> = serde_json::from_value(report["paths"].clone()).unwrap();
    paths[0].pop();
    let bad = json!({ "paths": paths, "total_cost": 0, "max_cost": 0 });
    let bad_path = write(dir.path(), "bad.json", &bad);
    let (code, out) = katspp(&["verify", gap, &bad_path]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["feasible"], false);
    let violations: Vec<String> = serde_json::from_value(v["violations"].clone()).unwrap();
    assert!(violations.contains(&"path 0 does not end at t".to_string()), "{violations:?}");
}

#[test]
fn corpus_ratios_within_bound() {
    let v = json_of(&["corpus", "--n", "8", "--count", "100", "--seed", "7"]);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 100);
    for r in reports {
        let (total, opt) = (r["total_cost"].as_i64().unwrap(), r["oracle_optimum"].as_i64().unwrap());
        assert!(total <= 6 * opt, "{r}");
        assert!(r["ratio"].as_f64().map_or(opt == 0, |x| x <= 6.0));
        assert_eq!(r["feasible"], true);
    }
    assert_eq!(v["summary"]["ratio_bound"], 6);
    assert_eq!(v["summary"]["all_within_bound"], true);
}

#[test]
fn malformed_inputs_exit_two_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        json!({ "n": 2 }),
        json!({ "n": 3, "costs": [[0, 1], [1, 0]], "closed": true, "problem": { "type": "katspp", "s": 0, "t": 1, "k": 1 } }),
        json!({ "n": 3, "costs": [[0, 1, 9], [1, 0, 1], [1, 1, 0]], "closed": true,
                "problem": { "type": "katspp", "s": 0, "t": 2, "k": 1 } }),
        json!({ "n": 2, "costs": [[0, -1], [1, 0]], "closed": false, "problem": { "type": "katspp", "s": 0, "t": 1, "k": 1 } }),
        json!({ "n": 2, "costs": [[0, 1], [1, 0]], "closed": true, "problem": { "type": "katspp", "s": 0, "t": 5, "k": 1 } }),
        json!({ "n": 2, "costs": [[0, 1], [1, 0]], "closed": true, "problem": { "type": "tsp" } }),
    ];
    for (i, case) in cases.iter().enumerate() {
        let path = write(dir.path(), &format!("bad{i}.json"), case);
        let (code, out) = katspp(&["solve", &path]);
        assert_eq!(code, 2, "case {i}: {out}");
        let v: Value = serde_json::from_str(&out).expect("error is JSON");
        assert!(v["error"]["message"].is_string(), "case {i}: {v}");
        assert_eq!(v["error"]["kind"], "input", "case {i}: {v}");
    }
    let (code, out) = katspp(&["solve", "/nonexistent/instance.json"]);
    assert_eq!(code, 2);
    assert!(serde_json::from_str::<Value>(&out).unwrap()["error"].is_object());
    let (code, out) = katspp(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"]["kind"], "usage");
}

#[test]
fn unclosed_input_is_closed_and_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let inst = json!({ "n": 3, "costs": [[0, 1, 9], [1, 0, 1], [1, 1, 0]], "closed": false,
                       "problem": { "type": "katspp", "s": 0, "t": 2, "k": 1 } });
    let path = write(dir.path(), "open.json", &inst);
    let r = json_of(&["solve", &path, "--oracle"]);
    assert_eq!(r["closed_on_load"], true);
    assert_eq!(r["paths"], json!([[0, 1, 2]]));
    assert_eq!(r["total_cost"], 2);
    assert_eq!(r["oracle_optimum"], 2);
    assert_eq!(r["ratio"], 1.0);
}

#[test]
fn every_solver_subcommand_runs() {
    let dir = tempfile::tempdir().unwrap();
    let run_gen = |args: &[&str], name: &str| {
        let v = json_of(args);
        write(dir.path(), name, &v)
    };
    let katspp_inst = run_gen(&["gen", "random", "--n", "7", "--k", "2", "--seed", "1"], "k.json");
    let general = run_gen(&["gen", "random", "--n", "7", "--k", "2", "--seed", "2", "--problem", "general"], "g.json");
    let sym = run_gen(
        &["gen", "random", "--n", "7", "--k", "3", "--seed", "3", "--problem", "general", "--symmetric"],
        "s.json",
    );
    let rooted = run_gen(&["gen", "random", "--n", "7", "--k", "2", "--seed", "4", "--problem", "rooted"], "r.json");

    let r = json_of(&["solve", &katspp_inst, "--b", "2", "--oracle"]);
    assert_eq!(r["within_bound"], true);
    let r = json_of(&["general2", &general, "--oracle"]);
    assert_eq!((r["feasible"].clone(), r["within_bound"].clone()), (json!(true), json!(true)));
    let r = json_of(&["symmetric", &sym, "--oracle"]);
    assert_eq!((r["feasible"].clone(), r["within_bound"].clone()), (json!(true), json!(true)));
    let r = json_of(&["rooted", &rooted, "--oracle"]);
    assert_eq!((r["feasible"].clone(), r["within_bound"].clone()), (json!(true), json!(true)));
    for mode in ["endpoint", "append", "kstroll"] {
        let r = json_of(&["makespan", &katspp_inst, "--mode", mode, "--oracle"]);
        assert_eq!(r["objective"], "max");
        assert_eq!((r["feasible"].clone(), r["within_bound"].clone()), (json!(true), json!(true)), "{mode}");
    }
    let e = json_of(&["exact", &katspp_inst]);
    let opt = e["optimum"].as_i64().unwrap();
    assert_eq!(e["solution"]["total_cost"], opt);
    let sol = write(dir.path(), "opt.json", &e["solution"]);
    assert_eq!(katspp(&["verify", &katspp_inst, &sol]).0, 0);
    let e = json_of(&["exact", &katspp_inst, "--mode", "max"]);
    assert_eq!(e["objective"], "max");
    for inst in [&general, &rooted] {
        let e = json_of(&["exact", inst]);
        let sol = write(dir.path(), "sol.json", &e["solution"]);
        assert_eq!(katspp(&["verify", inst, &sol]).0, 0, "{inst}");
    }

    let variant = json!({
        "n": 6,
        "costs": serde_json::from_str::<Value>(&std::fs::read_to_string(&katspp_inst).unwrap()).unwrap()["costs"]
            .as_array().unwrap()[..6].iter()
            .map(|row| Value::from(row.as_array().unwrap()[..6].to_vec())).collect::<Vec<_>>(),
        "closed": false,
        "problem": { "type": "variant", "source": { "mode": "multiple", "nodes": [0, 1] },
                     "sink": { "mode": "common", "node": 5 }, "k": 2 },
    });
    let variant = write(dir.path(), "v.json", &variant);
    let r = json_of(&["solve", &variant, "--b", "3", "--oracle"]);
    assert_eq!((r["feasible"].clone(), r["within_bound"].clone()), (json!(true), json!(true)));
    assert_eq!(r["k_prime"], 2);
}

#[test]
fn generators_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let g = json_of(&["gen", "tripartite", "--p", "2", "--edge-prob", "1.0"]);
    assert_eq!(g["edges"].as_array().unwrap().len(), 12);
    let graph = write(dir.path(), "graph.json", &g);
    let red = json_of(&["gen", "reduction", "--graph", &graph, "--pad-len", "3"]);
    assert_eq!(red["n"], 11);
    assert_eq!(red["problem"]["pairs"], json!([[0, 10], [1, 7]]));
    let reduced = write(dir.path(), "red.json", &red);
    assert_eq!(json_of(&["exact", &reduced])["optimum"], 0);

    let out = dir.path().join("gap.json");
    let (code, stdout) = katspp(&["gen", "gap", "--k", "3", "--out", out.to_str().unwrap()]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    let gap: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(gap["problem"], json!({ "type": "katspp", "s": 0, "t": 4, "k": 3 }));
    assert_eq!(katspp(&["gen", "tripartite", "--p", "2", "--edge-prob", "1.5"]).0, 2);
}

#[test]
fn reports_are_byte_identical() {
    let corpus = ["corpus", "--n", "7", "--count", "20", "--seed", "3", "--k", "2", "--b", "2"];
    assert_eq!(katspp(&corpus), katspp(&corpus));
    let gen = ["gen", "random", "--n", "9", "--k", "3", "--seed", "11"];
    assert_eq!(katspp(&gen), katspp(&gen));
    let timed = json_of(&["--timing", "solve", fixture("gap2.json").to_str().unwrap()]);
    assert!(timed["wall_time_ms"].is_number());
    assert!(json_of(&["solve", fixture("gap2.json").to_str().unwrap()]).get("wall_time_ms").is_none());
}
