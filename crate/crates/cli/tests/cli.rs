use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn boolcirc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolcirc"))
        .args(args)
        .env_remove("SOLVER_CMD")
        .output()
        .expect("binary runs")
}

/// Runs with `--json` and returns (exit code, report).
fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = boolcirc(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), report)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn full_adders_are_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    let (x, a) = (dir.path().join("fa_xaig.bench"), dir.path().join("fa_aig.aag"));
    assert!(boolcirc(&["gen", "fa", "--basis", "xaig", "-o", p(&x)]).status.success());
    assert!(boolcirc(&["gen", "fa", "--basis", "aig", "-o", p(&a)]).status.success());
    let out = boolcirc(&["equiv", p(&x), p(&a)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("result: equivalent"));

    let (_, info) = json(&["info", p(&a)]);
    assert_eq!(info["size"], 7);
    assert_eq!(info["aig"], true);
}

#[test]
fn different_circuits_give_a_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let (sum, sort) = (dir.path().join("sum.bench"), dir.path().join("sort.bench"));
    let (maj, ite) = (dir.path().join("maj.bench"), dir.path().join("ite.bench"));
    boolcirc(&["gen", "sum", "--n", "3", "-o", p(&sum)]);
    boolcirc(&["gen", "sort", "--n", "3", "-o", p(&sort)]);
    boolcirc(&["gen", "maj", "--n", "3", "-o", p(&maj)]);
    boolcirc(&["gen", "ite", "-o", p(&ite)]);
    let (code, r) = json(&["equiv", p(&sum), p(&sort)]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("shape"));
    let (code, r) = json(&["equiv", p(&maj), p(&ite)]);
    assert_eq!(code, 1);
    assert_eq!(r["result"], "not equivalent");
    assert_ne!(r["first"], r["second"]);
}

#[test]
fn sum5_minimizes_to_eleven() {
    let (code, r) = json(&["gen", "sum", "--n", "5", "--basis", "xaig", "--minimize", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["initial_size"], 12);
    assert_eq!(r["size"], 11);
    assert!(r["circuit"].as_str().unwrap().contains("OUTPUT("));
}

#[test]
fn factoring() {
    let out = boolcirc(&["factor", "13"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("prime"));
    let (code, r) = json(&["factor", "91"]);
    assert_eq!(code, 0);
    let f = r["factors"].as_str().unwrap();
    assert!(f == "91 = 7 * 13" || f == "91 = 13 * 7", "{f}");
}

#[test]
fn synthesis_and_sat() {
    let (code, r) = json(&["synth", "--function", "sum", "--n", "3", "--upper", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "MINIMUM");
    assert_eq!(r["size"], 5);
    let (code, r) = json(&["synth", "--table", "01101001", "--size", "2"]);
    assert_eq!((code, &r["status"]), (0, &Value::from("FOUND")));
    let (code, r) = json(&["synth", "--table", "01101001", "--size", "1"]);
    assert_eq!((code, &r["status"]), (1, &Value::from("NONE")));

    let dir = tempfile::tempdir().unwrap();
    let (c, cnf) = (dir.path().join("maj.bench"), dir.path().join("maj.cnf"));
    boolcirc(&["gen", "maj", "--n", "5", "-o", p(&c)]);
    let (code, r) = json(&["sat", p(&c), "--dimacs", p(&cnf)]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "SAT");
    assert!(r["assignment"].as_str().unwrap().matches('1').count() >= 3);
    assert!(std::fs::read_to_string(&cnf).unwrap().lines().any(|l| l.starts_with("p cnf ")));
    let (code, r) = json(&["sat", p(&c), "--target", "1", "--basis", "aig"]);
    assert_eq!((code, &r["status"]), (0, &Value::from("SAT")));
}

#[test]
fn convert_round_trip_preserves_function() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("mult.bench");
    let aag = dir.path().join("mult.aag");
    let back = dir.path().join("back.bench");
    let dot = dir.path().join("mult.dot");
    boolcirc(&["gen", "mult", "--n", "3", "--basis", "aig", "-o", p(&src)]);
    assert!(boolcirc(&["convert", p(&src), "-o", p(&aag)]).status.success());
    assert!(boolcirc(&["convert", p(&aag), "-o", p(&back)]).status.success());
    let (code, r) = json(&["equiv", p(&src), p(&back)]);
    assert_eq!((code, &r["result"]), (0, &Value::from("equivalent")));
    assert!(boolcirc(&["draw", p(&src), "-o", p(&dot)]).status.success());
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn minimize_verb() {
    let dir = tempfile::tempdir().unwrap();
    let (src, dst) = (dir.path().join("sum4.bench"), dir.path().join("min.bench"));
    boolcirc(&["gen", "sum", "--n", "4", "-o", p(&src)]);
    let (code, r) = json(&["minimize", p(&src), "--budget", "30", "--seed", "3", "-o", p(&dst)]);
    assert_eq!(code, 0);
    assert!(r["size"].as_u64().unwrap() <= r["initial_size"].as_u64().unwrap());
    let (code, _) = json(&["equiv", p(&src), p(&dst)]);
    assert_eq!(code, 0);
}

#[test]
fn database_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("small.db");
    let (code, r) = json(&["db", "build", "--slices", "1x1,2x1,3x1,2x2", "-o", p(&db)]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["complete"], true);
    let out = boolcirc(&["db", "stats", p(&db)]);
    assert!(out.status.success());
    let (code, r) = json(&["db", "lookup", p(&db), "--table", "00010111"]);
    assert_eq!((code, &r["result"]), (0, &Value::from("hit")));
    assert_eq!(r["size"], 4);
    let (code, r) = json(&["db", "lookup", p(&db), "--function", "sum", "--n", "3"]);
    assert_eq!((code, &r["result"]), (1, &Value::from("miss")));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(boolcirc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(boolcirc(&["gen", "sum", "--n", "0"]).status.code(), Some(2));
    assert_eq!(boolcirc(&["info", "/nonexistent/file.bench"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_boolcirc"))
        .args(["synth", "--table", "0110"])
        .env("BOOLCIRC_TIMEOUT", "soon")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
