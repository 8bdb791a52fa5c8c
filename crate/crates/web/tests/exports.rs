use serde_json::{json, Value};

use sasaki_web::{decide_json, evaluate_json, structure_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn decide_proved_and_refuted() {
    let v = parse(decide_json("a & b <= b").unwrap());
    assert_eq!(v["result"], "proved");
    assert_eq!(v["rule_trace"], json!(["R", "A"]));
    assert_eq!(v["tree"], "a & b <= b  [R]\n  b <= b  [A]\n");
    let v = parse(decide_json("a & b <= b & a").unwrap());
    assert_eq!((v["result"].clone(), v["model"].clone()), (json!("refuted"), json!("mo2")));
}

#[test]
fn decide_reports_parse_errors() {
    assert!(decide_json("a & <= b").unwrap_err().contains("at byte 4"));
}

#[test]
fn structure_of_mo2() {
    let v = parse(structure_json("mo2").unwrap());
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
    assert_eq!(v["covers"].as_array().unwrap().len(), 8);
    assert_eq!(v["orthomodular"], true);
    assert_eq!(v["report"]["ok"], true);
    assert_eq!(v["sasaki"].as_array().unwrap().len(), 6);
}

#[test]
fn structure_of_o6_flags_violation() {
    let v = parse(structure_json("o6").unwrap());
    assert_eq!(v["orthomodular"], false);
    assert_eq!(v["report"]["violations"][0]["law"], "orthomodular-law");
    assert!(structure_json("mo1x").is_err());
}

#[test]
fn evaluate_in_mo2() {
    let v = parse(evaluate_json("a & b", "mo2", r#"{"a": "x", "b": "y"}"#).unwrap());
    assert_eq!(v["value"], "y");
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    assert!(evaluate_json("a & c", "mo2", r#"{"a": "x"}"#).is_err());
    assert!(evaluate_json("a", "o6", r#"{"a": "a"}"#).is_err());
}
