use std::process::{Command, Output};

use serde_json::Value;

fn mui(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mui")).args(args).output().expect("binary runs")
}

fn mui_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mui")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn schema() -> jsonschema::Validator {
    let raw = include_str!("../schema/verify-report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(raw).unwrap()).unwrap()
}

fn assert_valid(report: &Value) {
    let v = schema();
    let errors: Vec<String> = v.iter_errors(report).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
}

#[test]
fn invariant_examples() {
    let o = mui(&["invariant", "--p", "3", "--name", "V", "--k", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "y2^3 + 2*y2*y1^2\n");
    assert_eq!(stdout(&mui(&["invariant", "--p", "3", "--name", "Q", "--n", "1", "--s", "0"])), "y1^2\n");
    assert_eq!(stdout(&mui(&["invariant", "--p", "3", "--name", "Q", "--n", "1", "--s", "1"])), "1\n");
}

#[test]
fn invariant_names_and_formats() {
    for args in [
        vec!["--name", "L", "--k", "2"],
        vec!["--name", "L", "--k", "2", "--s", "1"],
        vec!["--name", "Lt", "--n", "2"],
        vec!["--name", "M", "--k", "2", "--s", "0"],
        vec!["--name", "Mt", "--n", "2", "--s", "-1"],
        vec!["--name", "U", "--k", "2"],
        vec!["--name", "bracketE", "--e", "0,1"],
        vec!["--name", "bracketX", "--e", "1"],
    ] {
        let mut full = vec!["invariant", "--p", "3"];
        full.extend(args.iter());
        let o = mui(&full);
        assert_eq!(code(&o), 0, "{full:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!stdout(&o).trim().is_empty());
    }
    let json: Value = serde_json::from_str(&stdout(&mui(&["invariant", "--p", "3", "--name", "Q", "--n", "1", "--s", "0", "--format", "json"]))).unwrap();
    assert_eq!(json["p"], 3);
    assert_eq!(json["terms"][0]["y"], serde_json::json!([2]));
    let latex = stdout(&mui(&["invariant", "--p", "3", "--name", "Q", "--n", "1", "--s", "0", "--format", "latex"]));
    assert_eq!(latex.trim(), "y_{1}^{2}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["invariant", "--p", "4", "--name", "V", "--k", "2"],
        vec!["invariant", "--p", "3", "--name", "W", "--k", "2"],
        vec!["invariant", "--p", "3", "--name", "Q", "--n", "1", "--s", "2"],
        vec!["invariant", "--p", "3", "--name", "V"],
        vec!["invariant", "--p", "3", "--name", "V", "--k", "2", "--format", "csv"],
        vec!["verify", "--suite", "everything"],
        vec!["steenrod", "apply", "--p", "3", "--op", "Sq^2", "--expr", "y1"],
        vec!["steenrod", "milnor", "--p", "3", "--R", "1", "--expr", "y1 + y1^2"],
        vec!["table", "--of", "st-u2", "--p", "3"],
        vec!["no-such-command"],
    ] {
        assert_eq!(code(&mui(&args)), 2, "{args:?}");
    }
}

#[test]
fn worker_cap() {
    let o = mui_env(&["verify", "--suite", "invariants", "--p", "3", "--max-n", "1"], "MUI_WORKERS", "1");
    assert_eq!(code(&o), 0);
    assert_eq!(code(&mui_env(&["verify", "--suite", "core"], "MUI_WORKERS", "zero")), 2);
}

#[test]
fn steenrod_commands() {
    let o = mui(&["steenrod", "apply", "--p", "3", "--op", "P^1", "--expr", "y1^2"]);
    assert_eq!(stdout(&o), "2*y1^4\n");
    assert_eq!(stdout(&mui(&["steenrod", "apply", "--p", "3", "--op", "beta", "--expr", "x1"])), "y1\n");
    assert_eq!(stdout(&mui(&["steenrod", "apply", "--p", "3", "--op", "P^2", "--expr", "y1"])), "0\n");
    // St^{(0),(1,0)} on an element of one pair agrees with its value through P and beta
    let st = mui(&["steenrod", "milnor", "--p", "3", "--R", "1", "--expr", "y1^2"]);
    assert_eq!(stdout(&st), "2*y1^4\n");
    let st = mui(&["steenrod", "milnor", "--p", "3", "--S", "0", "--R", "1,0", "--expr", "x1*y1^3 + x2*y2^3"]);
    assert_eq!(code(&st), 0);
}

#[test]
fn closed_form_agrees_and_disagrees() {
    let o = mui(&["closed-form", "--of", "Q", "--p", "3", "--n", "2", "--s", "1", "--r", "4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["oracle_agrees"], true);
    assert_eq!(v["symbolic"], "Q_{2,0} Q_{2,1}");
    // the truncated form drops terms that the oracle keeps
    let o = mui(&["closed-form", "--of", "mt", "--p", "3", "--n", "2", "--s", "0", "--r", "3", "--reading", "truncated"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("oracle: "));
    let o = mui(&["closed-form", "--of", "mt", "--p", "3", "--n", "2", "--s", "0", "--r", "3"]);
    assert_eq!(code(&o), 0);
    let o = mui(&["closed-form", "--of", "st-u2", "--p", "3", "--S", "0", "--R", "0,1"]);
    assert_eq!(code(&o), 0);
    let o = mui(&["closed-form", "--of", "st-v2", "--p", "3", "--R", "1"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn tables() {
    let o = mui(&["table", "--of", "Q", "--p", "3", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 9);
    let six: Vec<&str> = rows[6].split('|').map(str::trim).collect();
    assert_eq!(six, ["6", "Q_{2,0} Q_{2,1}^2", "Q_{2,1}^3"]);
    let json: Value = serde_json::from_str(&stdout(&mui(&["table", "--of", "V", "--p", "3", "--k", "1", "--format", "json"]))).unwrap();
    assert_eq!(json["rows"][3]["r"], 3);
    assert_eq!(json["rows"][3]["cells"][0], "V_{2}^3");
    let latex = stdout(&mui(&["table", "--of", "V", "--p", "3", "--k", "1", "--format", "latex"]));
    assert!(latex.starts_with("\\begin{tabular}"));
    let empty = mui(&["table", "--of", "Q", "--p", "3", "--n", "2", "--r-from", "9"]);
    assert_eq!(code(&empty), 0);
    assert_eq!(stdout(&empty).lines().count(), 1);
    let csv = stdout(&mui(&["table", "--of", "mt", "--p", "3", "--n", "1", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("r,\"s=-1\",\"s=0\""));
}

#[test]
fn verify_suites_pass() {
    for suite in ["invariants", "closed-forms", "steenrod"] {
        let o = mui(&["verify", "--suite", suite, "--p", "3", "--max-n", "2", "--cases", "100"]);
        assert_eq!(code(&o), 0, "{suite}");
        let text = stdout(&o);
        assert!(text.lines().filter(|l| !l.starts_with("note") && !l.starts_with("summary")).all(|l| l.starts_with("PASS")));
    }
}

#[test]
fn verify_report_matches_schema() {
    let o = mui(&["verify", "--suite", "all", "--p", "3", "--max-n", "2", "--cases", "50", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&report);
    assert_eq!(report["summary"]["fail"], 0);
    let duality = report["cells"].as_array().unwrap().iter().find(|c| c["check"] == "duality").unwrap();
    assert!(duality["params"]["case"]["st_prime"].is_object());
}

#[test]
fn budget_skips_are_reported() {
    let o = mui(&["verify", "--suite", "all", "--p", "7", "--max-n", "3", "--cases", "20", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&report);
    let skip = report["cells"].as_array().unwrap().iter().find(|c| c["status"] == "SKIP").unwrap();
    assert!(skip["reason"].as_str().unwrap().starts_with("budget"));
    assert_eq!(report["summary"]["skip"].as_u64().unwrap() as usize, report["cells"].as_array().unwrap().iter().filter(|c| c["status"] == "SKIP").count());
}

#[test]
fn failing_report_matches_schema() {
    let fail = serde_json::json!({
        "config": { "p": 3, "max_n": 1, "seed": 1, "cases": 1, "budget": 1, "max_degree": 1 },
        "suites": ["core"],
        "summary": { "pass": 0, "fail": 1, "skip": 0 },
        "cells": [{ "suite": "core", "check": "x", "params": {}, "status": "FAIL", "expected": "1", "actual": "2" }],
        "readings": []
    });
    assert_valid(&fail);
    let mut broken = fail.clone();
    broken["cells"][0]["status"] = "PASS".into();
    assert!(!schema().is_valid(&broken));
}

#[test]
fn seeded_runs_repeat() {
    let args = ["verify", "--suite", "core", "--p", "5", "--seed", "99", "--cases", "200", "--format", "json"];
    assert_eq!(stdout(&mui(&args)), stdout(&mui(&args)));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("mui-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v2.txt");
    let o = mui(&["invariant", "--p", "3", "--name", "V", "--k", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "y2^3 + 2*y2*y1^2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
