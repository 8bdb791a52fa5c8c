//! Browser bindings. Each export takes plain strings and returns a JSON
//! string; the `*_json` functions hold the logic and run natively too.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sasaki_core::lattice::verify::verify_all;
use sasaki_core::lattice::{by_name, SasakiTable};
use sasaki_core::proof::{decide, Decision, ProofResult, SearchConfig};
use sasaki_core::semantics::{default_catalog, ModelStructure, SasakiModel, SearchLimits};
use sasaki_core::{Sequent, Term};

/// Smaller than the native default so a runaway search cannot freeze the tab.
const NODE_BUDGET: u64 = 200_000;

/// Decides a sequent: a derivation without T, a countermodel, or unknown.
pub fn decide_json(sequent: &str) -> Result<String, String> {
    let s: Sequent = sequent.parse().map_err(|e| format!("{e}"))?;
    let config = SearchConfig { node_budget: NODE_BUDGET, ..SearchConfig::default() };
    let Decision { result, searched } =
        decide(&s, config, default_catalog(), SearchLimits::default()).map_err(|e| e.to_string())?;
    let out = match result {
        ProofResult::Proved(d) => json!({
            "result": "proved",
            "sequent": s.to_string(),
            "rule_trace": d.rule_trace().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "tree": d.render(),
        }),
        ProofResult::Refuted(c) => {
            let mut v = c.to_json();
            v["result"] = json!("refuted");
            v["sequent"] = json!(s.to_string());
            v
        }
        ProofResult::Exhausted(stats) => {
            let models: Vec<Value> = searched
                .map(|space| space.searched.into_iter().map(|(m, n)| json!({"model": m, "valuations": n})).collect())
                .unwrap_or_default();
            json!({"result": "unknown", "sequent": s.to_string(), "nodes": stats.nodes, "models": models})
        }
    };
    Ok(out.to_string())
}

/// A catalog structure for drawing: elements with heights, Hasse covers,
/// orthocomplements, the `b ∧ (b' ∨ a)` table and the axiom report.
pub fn structure_json(name: &str) -> Result<String, String> {
    let p = by_name(name).map_err(|e| e.to_string())?;
    let elements: Vec<Value> = p.elements().map(|e| json!({"name": p.name(e), "height": p.height(e)})).collect();
    let covers: Vec<[usize; 2]> = p.covers().into_iter().map(|(lo, hi)| [lo, hi]).collect();
    let ortho: Vec<usize> = p.elements().map(|e| p.ortho(e)).collect();
    let table = SasakiTable::from_lattice_formula(&p).ok().map(|t| {
        t.rows().map(|row| row.iter().map(|&e| p.name(e).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
    });
    let orthomodular = p.is_lattice() && p.is_orthomodular().unwrap_or(false);
    Ok(json!({
        "name": name,
        "elements": elements,
        "covers": covers,
        "ortho": ortho,
        "orthomodular": orthomodular,
        "sasaki": table,
        "report": verify_all(&p).to_json(&p),
    })
    .to_string())
}

/// Evaluates a term in a catalog structure. `valuation` is a JSON object
/// from atom names to element names. Every subterm's value is listed.
pub fn evaluate_json(term: &str, structure: &str, valuation: &str) -> Result<String, String> {
    let t: Term = term.parse().map_err(|e| format!("{e}"))?;
    let st = ModelStructure::by_name(structure).map_err(|e| e.to_string())?;
    let val: serde_json::Map<String, Value> = serde_json::from_str(valuation).map_err(|e| e.to_string())?;
    let pairs: Vec<(&str, &str)> = val
        .iter()
        .map(|(k, v)| Ok((k.as_str(), v.as_str().ok_or(format!("value of {k} is not a name"))?)))
        .collect::<Result<_, String>>()?;
    let model = SasakiModel::with_names(&st, &pairs).map_err(|e| e.to_string())?;
    let mut steps = Vec::new();
    for sub in t.subterms() {
        let v = model.interpret(sub).map_err(|e| e.to_string())?;
        steps.push(json!({"term": sub.to_string(), "value": model.element_name(v)}));
    }
    let value = model.interpret(&t).map_err(|e| e.to_string())?;
    Ok(json!({"term": t.to_string(), "value": model.element_name(value), "steps": steps}).to_string())
}

#[wasm_bindgen]
pub fn decide_sequent(sequent: &str) -> Result<String, JsError> {
    decide_json(sequent).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn structure(name: &str) -> Result<String, JsError> {
    structure_json(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn evaluate(term: &str, structure: &str, valuation: &str) -> Result<String, JsError> {
    evaluate_json(term, structure, valuation).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn catalog() -> String {
    json!(sasaki_core::lattice::catalog_names()).to_string()
}
