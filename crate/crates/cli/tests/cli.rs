use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabkit")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), v)
}

#[test]
fn complex_homology_of_the_pentagon() {
    let (code, v) = json(&["complex", "homology", "--input", &data("pentagon.json"), "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 11);
    let groups: Vec<&str> = v["result"]["homology"].as_array().unwrap().iter().map(|h| h["group"].as_str().unwrap()).collect();
    assert_eq!(groups, vec!["Z", "Z"]);
    assert_eq!(v["result"]["homological_connectivity"], 0);
}

#[test]
fn malformed_json_exits_with_position() {
    let out = run(&["complex", "homology", "--input", &data("torus_bad.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn missing_file_and_bad_flags_are_invalid_input() {
    assert_eq!(run(&["complex", "homology", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["arc", "build", "--input", &data("disc6.json"), "--dim-cap", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "all", "--only", "99"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn arc_commands() {
    let (code, v) = json(&["arc", "verify", "--input", &data("disc6.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["homological_connectivity"], 1);
    assert_eq!(v["result"]["f_vector"][0], 93);

    let (code, v) = json(&["arc", "surgery", "--input", &data("disc6.json"), "--sigma", "c(1,4)", "--arc", "c(0,3)", "--p", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["crossings"].as_array().unwrap().len(), 1);

    let (code, v) = json(&["arc", "decompose", "--input", &data("disc6_alternating.json"), "--sigma", "c(0,3)"]);
    assert_eq!(code, 0);
    assert_eq!((v["result"]["c"].as_i64(), v["result"]["d"].as_i64()), (Some(2), Some(0)));

    // a trivial arc is not a valid target
    let out = run(&["arc", "surgery", "--input", &data("disc6.json"), "--sigma", "c(1,4)", "--arc", "c(0,1)", "--p", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["arc", "build", "--input", &data("disc6.json"), "--format", "dot"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("graph complex {"));
}

#[test]
fn surface_commands() {
    let (code, v) = json(&["surface", "stats", "--input", &data("annulus_marked.json")]);
    assert_eq!(code, 0);
    assert_eq!((v["result"]["l"].as_i64(), v["result"]["r"].as_i64()), (Some(2), Some(2)));

    let (code, v) = json(&["surface", "cut", "--family", "o2", "--genus", "2", "--boundaries", "3", "--p", "1"]);
    assert_eq!(code, 0);
    assert_eq!((v["result"]["profile"]["genus"].as_i64(), v["result"]["profile"]["boundaries"].as_i64()), (Some(1), Some(3)));
    assert_eq!(run(&["surface", "cut", "--family", "o1", "--genus", "1", "--boundaries", "1", "--p", "1"]).status.code(), Some(2));

    assert_eq!(run(&["surface", "audit", "--gmax", "30"]).status.code(), Some(0));
    let (code, v) = json(&["surface", "audit", "--gmax", "30", "--slope", "3/4"]);
    assert_eq!(code, 1);
    assert!(!v["result"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn spectral_sequences() {
    let (code, v) = json(&["ss", "run", "--input", &data("square_dc.json"), "--assert-vanish", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["limit_page"], 2);
    assert_eq!(run(&["ss", "run", "--input", &data("circle_dc.json"), "--assert-vanish", "0"]).status.code(), Some(1));
    let (code, v) = json(&["ss", "run", "--input", &data("square_dc.json"), "--pages", "3", "--filtration", "row"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["pages"].as_array().unwrap().len(), 3);
}

#[test]
fn stability_commands() {
    let (code, v) = json(&["stability", "demo-annulus"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["killed_by"].as_array().unwrap().len(), 2);
    let (code, v) = json(&["stability", "shapiro", "--group", "Z/5", "--complex", &data("pentagon.json"), "--p", "1", "--qmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "match");
    assert_eq!(run(&["stability", "shapiro", "--group", "Z", "--p", "1"]).status.code(), Some(0));
    assert_eq!(run(&["stability", "shapiro", "--group", "Z/4", "--complex", &data("pentagon.json"), "--p", "0"]).status.code(), Some(2));
    assert_eq!(run(&["stability", "shapiro", "--group", "S3", "--complex", &data("triangle.json"), "--p", "1"]).status.code(), Some(2));
}

#[test]
fn verify_subset_is_seeded_and_deterministic() {
    let args = ["verify", "all", "--only", "4,13,14", "--seed", "5"];
    let (code, a) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a["seed"], 5);
    assert_eq!(a["result"]["results"].as_array().unwrap().len(), 3);
    let (_, b) = json(&args);
    let details = |v: &Value| v["result"]["results"].as_array().unwrap().iter().map(|r| r["detail"].clone()).collect::<Vec<_>>();
    assert_eq!(details(&a), details(&b));
}

#[test]
fn budget_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_stabkit"))
        .args(["verify", "all", "--only", "6"])
        .env("STABKIT_BUDGET_MB", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
