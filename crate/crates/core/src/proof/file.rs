//! JSON proof files:
//! `{"conclusion": seq, "rule": id, "premises": [...]}` for rule nodes and
//! `{"conclusion": seq, "hyp": label}` for hypothesis leaves. A sequent is
//! written `{"lhs": term, "rhs": term}` with term trees; on input the plain
//! text form `"a & b <= b"` is accepted too.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Derivation, RuleId, Step};
use crate::terms::{parse_sequent, ParseError, Sequent};

#[derive(Debug, Error)]
pub enum ProofFileError {
    #[error("invalid proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad sequent text: {0}")]
    Parse(#[from] ParseError),
    #[error("node has both \"rule\" and \"hyp\"")]
    RuleAndHyp,
    #[error("node has neither \"rule\" nor \"hyp\"")]
    NoStep,
    #[error("hypothesis `{0}` has premises")]
    HypWithPremises(String),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SequentRepr {
    Tree(Sequent),
    Text(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Node {
    conclusion: SequentRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rule: Option<RuleId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hyp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    premises: Option<Vec<Node>>,
}

impl Node {
    fn from_derivation(d: &Derivation) -> Node {
        let (rule, hyp, premises) = match &d.step {
            Step::Rule(r) => (Some(*r), None, Some(d.premises.iter().map(Node::from_derivation).collect())),
            Step::Hypothesis(label) => (None, Some(label.clone()), None),
        };
        Node { conclusion: SequentRepr::Tree(d.conclusion.clone()), rule, hyp, premises }
    }

    fn into_derivation(self) -> Result<Derivation, ProofFileError> {
        let conclusion = match self.conclusion {
            SequentRepr::Tree(s) => s,
            SequentRepr::Text(t) => parse_sequent(&t)?,
        };
        let premises =
            self.premises.unwrap_or_default().into_iter().map(Node::into_derivation).collect::<Result<Vec<_>, _>>()?;
        match (self.rule, self.hyp) {
            (Some(_), Some(_)) => Err(ProofFileError::RuleAndHyp),
            (None, None) => Err(ProofFileError::NoStep),
            (Some(rule), None) => Ok(Derivation::by(rule, conclusion, premises)),
            (None, Some(label)) if premises.is_empty() => Ok(Derivation::hypothesis(label, conclusion)),
            (None, Some(label)) => Err(ProofFileError::HypWithPremises(label)),
        }
    }
}

impl Derivation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Node::from_derivation(self)).expect("derivations serialize")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&Node::from_derivation(self)).expect("derivations serialize")
    }

    pub fn from_json(text: &str) -> Result<Derivation, ProofFileError> {
        serde_json::from_str::<Node>(text)?.into_derivation()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Derivation, ProofFileError> {
        serde_json::from_value::<Node>(value)?.into_derivation()
    }
}
