//! Derivation checking by schema matching.
//!
//! Each rule is stored as premise and conclusion patterns written in the term
//! syntax, with atoms `a`..`d` read as meta-variables. A node is accepted when
//! one assignment of meta-variables to terms turns the patterns into exactly
//! the node's conclusion and its premises' conclusions.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use super::{Derivation, RuleId, Step};
use crate::terms::{parse_sequent, Sequent, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("at {}: rule {rule} takes {expected} premises, found {found}", path_str(path))]
    Arity { path: Vec<usize>, rule: RuleId, expected: usize, found: usize },
    #[error("at {}: not an instance of {rule} ({pattern}): {detail}", path_str(path))]
    Schema { path: Vec<usize>, rule: RuleId, pattern: String, detail: String },
    #[error("at {}: rule T is not allowed in the cut-free fragment", path_str(path))]
    CutNotAllowed { path: Vec<usize> },
    #[error("at {}: hypothesis `{label}` has premises", path_str(path))]
    HypothesisWithPremises { path: Vec<usize>, label: String },
}

impl CheckError {
    pub fn path(&self) -> &[usize] {
        match self {
            CheckError::Arity { path, .. }
            | CheckError::Schema { path, .. }
            | CheckError::CutNotAllowed { path }
            | CheckError::HypothesisWithPremises { path, .. } => path,
        }
    }
}

fn path_str(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        let parts: Vec<_> = path.iter().map(usize::to_string).collect();
        format!("root/{}", parts.join("/"))
    }
}

/// Premise and conclusion patterns of a rule.
pub struct Schema {
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
}

impl Schema {
    pub fn display(&self) -> String {
        let prem: Vec<_> = self.premises.iter().map(Sequent::to_string).collect();
        format!("{} / {}", prem.join(", "), self.conclusion)
    }
}

const SCHEMAS: [(RuleId, &[&str], &str); 10] = [
    (RuleId::A, &[], "a <= a"),
    (RuleId::S, &["b' <= a'"], "a <= b"),
    (RuleId::G, &["c' & b <= a'"], "a & b <= c"),
    (RuleId::NL, &["a <= b"], "a'' <= b"),
    (RuleId::NR, &["a <= b"], "a <= b''"),
    (RuleId::T, &["a <= b", "b <= c"], "a <= c"),
    (RuleId::OL, &["a <= b", "a <= c"], "a & b <= c"),
    (RuleId::OR, &["a <= b", "a <= c"], "a <= b & c"),
    (RuleId::R, &["b <= c"], "a & b <= c"),
    (RuleId::M, &["a <= c", "b <= d", "d <= b"], "a & b <= c & d"),
];

pub fn schema(rule: RuleId) -> &'static Schema {
    static TABLE: OnceLock<Vec<(RuleId, Schema)>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        SCHEMAS
            .iter()
            .map(|(rule, prems, concl)| {
                let parse = |s: &str| parse_sequent(s).expect("rule schemas parse");
                (*rule, Schema { premises: prems.iter().map(|p| parse(p)).collect(), conclusion: parse(concl) })
            })
            .collect()
    });
    &table.iter().find(|(r, _)| *r == rule).expect("every rule has a schema").1
}

type Binding<'t> = BTreeMap<&'t str, &'t Term>;

fn match_term<'t>(pattern: &'t Term, term: &'t Term, env: &mut Binding<'t>) -> bool {
    match (pattern, term) {
        (Term::Atom(var), _) => match env.get(var.as_str()) {
            Some(bound) => *bound == term,
            None => {
                env.insert(var, term);
                true
            }
        },
        (Term::Ortho(p), Term::Ortho(t)) => match_term(p, t, env),
        (Term::Sasaki(pl, pr), Term::Sasaki(tl, tr)) => match_term(pl, tl, env) && match_term(pr, tr, env),
        _ => false,
    }
}

fn match_sequent<'t>(pattern: &'t Sequent, s: &'t Sequent, env: &mut Binding<'t>) -> bool {
    match_term(&pattern.lhs, &s.lhs, env) && match_term(&pattern.rhs, &s.rhs, env)
}

fn instantiate(pattern: &Term, env: &Binding<'_>) -> Option<Term> {
    Some(match pattern {
        Term::Atom(var) => (*env.get(var.as_str())?).clone(),
        Term::Ortho(p) => Term::ortho(instantiate(p, env)?),
        Term::Sasaki(l, r) => Term::sasaki(instantiate(l, env)?, instantiate(r, env)?),
    })
}

/// Checks one rule application, ignoring everything above the premises.
pub fn check_step(rule: RuleId, conclusion: &Sequent, premises: &[&Sequent]) -> Result<(), String> {
    let sch = schema(rule);
    if premises.len() != sch.premises.len() {
        return Err(format!("expected {} premises, found {}", sch.premises.len(), premises.len()));
    }
    let mut env = Binding::new();
    if !match_sequent(&sch.conclusion, conclusion, &mut env) {
        return Err(format!("conclusion `{conclusion}` does not match `{}`", sch.conclusion));
    }
    for (i, (pat, prem)) in sch.premises.iter().zip(premises).enumerate() {
        if !match_sequent(pat, prem, &mut env) {
            let wanted = Sequent {
                lhs: instantiate(&pat.lhs, &env).unwrap_or_else(|| pat.lhs.clone()),
                rhs: instantiate(&pat.rhs, &env).unwrap_or_else(|| pat.rhs.clone()),
            };
            return Err(format!("premise {i} is `{prem}`, expected `{wanted}`"));
        }
    }
    Ok(())
}

/// Applies a rule top-down. `None` when the premises do not fit the schema or
/// the conclusion mentions a meta-variable the premises leave unbound (the
/// `a` of rules `A` and `R`).
pub fn forward(rule: RuleId, premises: &[&Sequent]) -> Option<Sequent> {
    let sch = schema(rule);
    if premises.len() != sch.premises.len() {
        return None;
    }
    let mut env = Binding::new();
    for (pat, prem) in sch.premises.iter().zip(premises) {
        if !match_sequent(pat, prem, &mut env) {
            return None;
        }
    }
    Some(Sequent::new(instantiate(&sch.conclusion.lhs, &env)?, instantiate(&sch.conclusion.rhs, &env)?))
}

/// Verifies every node; returns the open hypotheses as `(label, sequent)` in
/// left-to-right order.
pub fn check_derivation(d: &Derivation, allow_t: bool) -> Result<Vec<(String, Sequent)>, CheckError> {
    let mut open = Vec::new();
    let mut path = Vec::new();
    check_node(d, allow_t, &mut path, &mut open)?;
    Ok(open)
}

fn check_node(
    d: &Derivation,
    allow_t: bool,
    path: &mut Vec<usize>,
    open: &mut Vec<(String, Sequent)>,
) -> Result<(), CheckError> {
    let rule = match &d.step {
        Step::Hypothesis(label) => {
            if !d.premises.is_empty() {
                return Err(CheckError::HypothesisWithPremises { path: path.clone(), label: label.clone() });
            }
            open.push((label.clone(), d.conclusion.clone()));
            return Ok(());
        }
        Step::Rule(rule) => *rule,
    };
    if rule == RuleId::T && !allow_t {
        return Err(CheckError::CutNotAllowed { path: path.clone() });
    }
    if d.premises.len() != rule.arity() {
        return Err(CheckError::Arity { path: path.clone(), rule, expected: rule.arity(), found: d.premises.len() });
    }
    let prem: Vec<&Sequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    check_step(rule, &d.conclusion, &prem).map_err(|detail| CheckError::Schema {
        path: path.clone(),
        rule,
        pattern: schema(rule).display(),
        detail,
    })?;
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, allow_t, path, open)?;
        path.pop();
    }
    Ok(())
}
