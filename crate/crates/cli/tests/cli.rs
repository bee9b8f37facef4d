use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmray")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Option<i32>, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    (out.status.code(), serde_json::from_slice(&out.stdout).expect("single JSON object"))
}

#[test]
fn field_reports_forms_and_rejects_bad_discriminants() {
    let (code, v) = json(&["field", "--d", "-20"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["results"]["h_k"], 2);
    assert_eq!(v["results"]["forms"].as_array().unwrap().len(), 2);
    let (_, v) = json(&["field", "--d", "-163"]);
    assert_eq!(v["results"]["h_k"], 1);
    let (code, v) = json(&["field", "--d", "-10"]);
    assert_eq!(code, Some(2));
    assert_eq!(v["status"], "error");
}

#[test]
fn bound_routes_agree() {
    let (_, a) = json(&["bound", "--d", "-20", "--nm", "598"]);
    let (_, b) = json(&["bound", "--d", "-20", "--ideal", "p:2;p:13;p:23:15"]);
    assert_eq!(a["results"]["raw_bound"], b["results"]["raw_bound"]);
    assert_eq!(b["results"]["n_min"], 3);
    assert_eq!(b["results"]["modulus"]["a"], 598);
    let (_, c) = json(&["bound", "--d", "-20", "--nm", "13", "--modulus-integer"]);
    assert_eq!(c["results"]["theorem"], "InertCase");
    assert_eq!(c["results"]["n_min"], 0);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["bound", "--d", "-20"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--d", "-20", "--ideal", "q:2"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "j", "--tau", "0.3,-1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "j", "--tau", "i", "--digits", "10"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--d", "-4", "--nm", "5"]).status.code(), Some(2));
}

#[test]
fn eval_values() {
    let (_, v) = json(&["eval", "j", "--tau", "i"]);
    assert!(v["results"]["value"]["re"].as_str().unwrap().starts_with("1728.000000000"));
    let (_, v) = json(&["eval", "j", "--tau-surd", "-15"]);
    assert!(v["results"]["value"]["re"].as_str().unwrap().starts_with("-191657.83286254720"));
    let (code, v) = json(&["eval", "weber-x", "--d", "-7", "--n", "0", "--omega", "0,1/3"]);
    assert_eq!(code, Some(0));
    let im: f64 = v["results"]["value"]["im"].as_str().unwrap().parse().unwrap();
    assert!(im.abs() < 1e-30);
    let (code, _) = json(&["eval", "siegel", "--tau", "0.1,1.2", "--v", "1,2/5"]);
    assert_eq!(code, Some(0));
}

#[test]
fn digits_override_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cmray"))
        .args(["eval", "J", "--tau", "i", "--json"])
        .env("CMRAY_DIGITS", "50")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["digits"], 50);
}

#[test]
fn verify_writes_certificate_and_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("cmray-cert-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ffgg.json");
    let p = path.to_str().unwrap();
    let out = run(&["verify", "ffgg", "--trials", "30", "--seed", "7", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["pass"], true);
    assert_eq!(cert["seed"], 7);
    let again = run(&["verify", "ffgg", "--trials", "30", "--seed", "7"]);
    assert_eq!(out.stdout, again.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn paper_example_is_deterministic() {
    let a = run(&["example", "paper", "--json"]);
    let b = run(&["example", "paper", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
