use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn sasaki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasaki")).args(args).env_remove("SASAKI_BUDGET").output().unwrap()
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let out = sasaki(args);
    let value =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), value)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn prove_reduction() {
    let (code, v) = json_of(&["prove", "a & b <= b", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"result": "proved", "rule_trace": ["R", "A"]}));
}

#[test]
fn prove_prints_tree() {
    let out = sasaki(&["prove", "a & b <= b"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "proved\na & b <= b  [R]\n  b <= b  [A]\n");
}

#[test]
fn prove_unknown_exits_2() {
    let (code, v) = json_of(&["prove", "a <= a & b", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"], "unknown");
}

#[test]
fn decide_commutation_refuted_in_mo2() {
    let (code, v) = json_of(&["decide", "a & b <= b & a", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"], "refuted");
    assert_eq!(v["model"], "mo2");
    assert_eq!(v, json_of(&["decide", "a & b <= b & a", "--json"]).1);
}

#[test]
fn decide_boolean_countermodel() {
    let (code, v) = json_of(&["decide", "a <= a & b", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(
        v,
        json!({"result": "refuted", "model": "boolean1", "valuation": {"a": "1", "b": "0"}, "lhs_value": "1", "rhs_value": "0"})
    );
}

#[test]
fn decide_unknown_reports_search_space() {
    let (code, v) = json_of(&["decide", "a & b & (a & b) <= a & (a & (a & b))", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["searched"]["models"][3], json!({"model": "mo2", "valuations": 36}));
}

#[test]
fn countermodel_with_chosen_catalog() {
    let (code, v) = json_of(&["countermodel", "a & b <= b & a", "--catalog", "boolean2,mo3", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(v["model"], "mo3");
    let (code, v) = json_of(&["countermodel", "a & b <= b", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["searched"]["skipped"], json!([]));
    let (code, _) = json_of(&["countermodel", "a <= b & c & d", "--max-atoms", "3", "--json"]);
    assert_eq!(code, 3);
}

#[test]
fn verify_axioms_o6() {
    let (code, v) = json_of(&["verify-axioms", "--catalog", "o6", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    let laws: Vec<&str> = v["violations"].as_array().unwrap().iter().map(|x| x["law"].as_str().unwrap()).collect();
    assert!(laws.contains(&"orthomodular-law"));
    let (code, v) = json_of(&["verify-axioms", "--catalog", "mo3", "--json"]);
    assert_eq!((code, v["ok"].clone()), (0, json!(true)));
}

#[test]
fn verify_axioms_model_file() {
    let path = scratch("mo2.json");
    let model = json!({
        "elements": ["0", "x", "x'", "y", "y'", "1"],
        "covers": [["0", "x"], ["0", "x'"], ["0", "y"], ["0", "y'"], ["x", "1"], ["x'", "1"], ["y", "1"], ["y'", "1"]],
        "ortho": {"0": "1", "1": "0", "x": "x'", "x'": "x", "y": "y'", "y'": "y"},
        "bottom": "0",
        "top": "1"
    });
    std::fs::write(&path, model.to_string()).unwrap();
    let (code, v) = json_of(&["verify-axioms", "--model", path.to_str().unwrap(), "--json"]);
    assert_eq!((code, v["ok"].clone()), (0, json!(true)));
    let broken = scratch("broken.json");
    std::fs::write(&broken, "{\"elements\": [}").unwrap();
    assert_eq!(sasaki(&["verify-axioms", "--model", broken.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn emitted_proof_checks() {
    let path = scratch("proof.json");
    let out = sasaki(&["prove", "a & b <= a & b''", "--emit-proof", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (code, v) = json_of(&["check-proof", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"result": "valid", "conclusion": "a & b <= a & b''", "open_hypotheses": []}));
}

#[test]
fn check_proof_with_hypothesis_and_cut() {
    let path = scratch("cut.json");
    let proof = json!({
        "conclusion": "a <= c", "rule": "T",
        "premises": [{"conclusion": "a <= b", "hyp": "1"}, {"conclusion": "b <= c", "hyp": "2"}]
    });
    std::fs::write(&path, proof.to_string()).unwrap();
    let (code, v) = json_of(&["check-proof", path.to_str().unwrap(), "--json"]);
    assert_eq!((code, v["result"].clone(), v["path"].clone()), (1, json!("invalid"), json!([])));
    let (code, v) = json_of(&["check-proof", path.to_str().unwrap(), "--allow-t", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["open_hypotheses"], json!([{"label": "1", "sequent": "a <= b"}, {"label": "2", "sequent": "b <= c"}]));
}

#[test]
fn catalog_lists_flags() {
    let (code, v) = json_of(&["catalog", "--json"]);
    assert_eq!(code, 0);
    let find = |n: &str| v["structures"].as_array().unwrap().iter().find(|s| s["name"] == n).unwrap().clone();
    assert_eq!(find("boolean4")["elements"], 16);
    assert_eq!(find("mo3")["orthomodular"], true);
    assert_eq!(find("mo3")["distributive"], false);
    assert_eq!(find("o6")["orthomodular"], false);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(sasaki(&["prove"]).status.code(), Some(64));
    assert_eq!(sasaki(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(sasaki(&["verify-axioms"]).status.code(), Some(64));
    assert_eq!(sasaki(&["--help"]).status.code(), Some(0));
    let (code, v) = json_of(&["prove", "a <=", "--json"]);
    assert_eq!((code, v["result"].clone()), (3, json!("error")));
}

#[test]
fn budget_from_flag_and_environment() {
    let (code, v) = json_of(&["prove", "a & b <= b & a", "--budget", "2", "--json"]);
    assert_eq!(code, 3);
    assert!(v["error"].as_str().unwrap().contains("budget"));
    let out = Command::new(env!("CARGO_BIN_EXE_sasaki"))
        .args(["prove", "a & b <= b & a"])
        .env("SASAKI_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn prove_with_cut_flag() {
    let (code, v) = json_of(&["prove", "a & b & (a & b) <= a & (a & (a & b))", "--with-cut", "--json"]);
    assert_eq!(code, 0);
    assert!(v["rule_trace"].as_array().unwrap().contains(&json!("T")));
}
