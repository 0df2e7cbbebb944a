use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicegenus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn alexander_of_trefoil() {
    let v = run_json(&["alexander", "n=2; a1^3"]);
    assert_eq!(v["alexander"]["normalized"], serde_json::json!([1, -1, 1]));
}

#[test]
fn word_forms_agree() {
    let a = run_json(&["seifert", "torus(3,4)"]);
    let b = run_json(&["seifert", "n=3; a1 a2 a1 a2 a1 a2 a1 a2"]);
    let c = run_json(&["seifert", "a1 a2 a1 a2 a1 a2 a1 a2"]);
    assert_eq!(a["matrix"], b["matrix"]);
    assert_eq!(b["matrix"], c["matrix"]);
}

#[test]
fn bounds_t45() {
    let v = run_json(&["bounds", "4", "5"]);
    assert_eq!(v["genus"], 6);
    assert_eq!(v["defect_lo"], 1);
    assert_eq!(v["defect_hi"], 1);
    assert_eq!(v["g4"], 5);
}

#[test]
fn missing_certificate_is_usage_error() {
    let out = run(&["verify", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["bounds", "4"]).status.code(), Some(2));
    assert_eq!(run(&["seifert", "n=3; a7"]).status.code(), Some(2));
    assert_eq!(run(&["asymptotic", "--variant", "sixth", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn ltsig_profile_csv() {
    let out = run(&["--csv", "ltsig", "torus(3,4)", "--profile", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    let v = run_json(&["ltsig", "torus(4,5)", "--theta", "4/5"]);
    assert_eq!(v["sigma"].as_i64().map(i64::abs), Some(10));
}

#[test]
fn search_save_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().to_str().unwrap();
    let first = run(&["--store", store, "search", "a1 a3 a2^2 a1 a3 a2^3", "--save"]);
    assert!(first.status.success());
    let again = run(&["--store", store, "search", "a1 a3 a2^2 a1 a3 a2^3"]);
    assert_eq!(first.stdout, again.stdout, "search output is deterministic");
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let v = run_json(&["verify", files[0].to_str().unwrap()]);
    assert_eq!(v["rank"], 2);

    let mut cert: Value = serde_json::from_slice(&first.stdout).unwrap();
    cert["basis"][0][0] = Value::from(7);
    let forged = dir.path().join("forged.json");
    std::fs::write(&forged, serde_json::to_vec(&cert).unwrap()).unwrap();
    assert_eq!(run(&["verify", forged.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn search_into_longer_word() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().to_str().unwrap();
    let word = "n=4; a1 a3 a2 a2 a1 a3 a2 a2 a2";
    let v = run_json(&["--store", store, "search", word, "--into", "n=4; a1 a3 a2 a2 a1 a3 a2 a2 a2 a1 a3", "--save"]);
    assert_eq!(v["support_prefix"], 9);
    assert_eq!(v["seed"], 0);
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    assert_eq!(run_json(&["verify", file.to_str().unwrap()])["rank"], 2);
    let bad = run(&["--store", store, "search", word, "--into", "n=4; a1 a2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn table_csv_and_json() {
    let out = run(&["--csv", "table", "--b1-max", "16"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("b1,p,q,components,genus,defect_lo,defect_hi,provenance"));
    let rows = run_json(&["table", "--b1-max", "16"]);
    assert_eq!(rows.as_array().unwrap().len(), csv.lines().count() - 1);
    let again = run(&["table", "--b1-max", "16"]);
    assert_eq!(serde_json::from_slice::<Value>(&again.stdout).unwrap(), rows);
}

#[test]
fn rewrite_ten_three() {
    let v = run_json(&["rewrite", "--split", "10", "3"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["part2"], "n=5; a1 a2 a3 a4 a1 a2 a3 a1 a2 a1");
}

#[test]
fn asymptotic_and_prop1() {
    let v = run_json(&["asymptotic", "--variant", "fifth", "--n", "10"]);
    assert_eq!(v["ratio"], "75/392");
    let v = run_json(&["asymptotic", "--variant", "theorem2", "--n", "3"]);
    assert_eq!(v["limit"], "47/63");
    let v = run_json(&["prop1", "--max", "12", "12"]);
    assert_eq!(v["inequality_holds"], true);
}

#[test]
fn store_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_slicegenus"))
        .args(["bounds", "4", "5"])
        .env("SLICEGENUS_STORE", dir.path())
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["defect_lo"], 0);
    assert!(Path::new(dir.path()).read_dir().unwrap().next().is_none());
}
