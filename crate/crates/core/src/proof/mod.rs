//! Derivations in the rule calculus, a checker for them, and backward proof
//! search for the fragment without the transitivity rule `T`.

mod check;
mod file;
mod search;

pub use check::{check_derivation, check_step, forward, schema, CheckError};
pub use file::ProofFileError;
pub use search::{
    backward_expand, decide, default_cut_terms, prove_rsol_t, prove_with_cut, Decision, ProofResult, SearchConfig,
    SearchError, SearchStats, DEFAULT_NODE_BUDGET,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::terms::Sequent;

/// The ten rules. `T` is transitivity, the only rule whose premises mention
/// a term absent from the conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    A,
    S,
    G,
    #[serde(rename = "N_L")]
    NL,
    #[serde(rename = "N_R")]
    NR,
    T,
    #[serde(rename = "O_L")]
    OL,
    #[serde(rename = "O_R")]
    OR,
    R,
    M,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::A,
        RuleId::S,
        RuleId::G,
        RuleId::NL,
        RuleId::NR,
        RuleId::T,
        RuleId::OL,
        RuleId::OR,
        RuleId::R,
        RuleId::M,
    ];

    pub fn arity(self) -> usize {
        match self {
            RuleId::A => 0,
            RuleId::S | RuleId::G | RuleId::NL | RuleId::NR | RuleId::R => 1,
            RuleId::T | RuleId::OL | RuleId::OR => 2,
            RuleId::M => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleId::A => "A",
            RuleId::S => "S",
            RuleId::G => "G",
            RuleId::NL => "N_L",
            RuleId::NR => "N_R",
            RuleId::T => "T",
            RuleId::OL => "O_L",
            RuleId::OR => "O_R",
            RuleId::R => "R",
            RuleId::M => "M",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Rule(RuleId),
    /// An assumed leaf, named by its label.
    Hypothesis(String),
}

/// A tree of rule instances. Nothing is checked on construction; see
/// [`check_derivation`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub step: Step,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn by(rule: RuleId, conclusion: Sequent, premises: Vec<Derivation>) -> Derivation {
        Derivation { conclusion, step: Step::Rule(rule), premises }
    }

    pub fn hypothesis(label: impl Into<String>, conclusion: Sequent) -> Derivation {
        Derivation { conclusion, step: Step::Hypothesis(label.into()), premises: Vec::new() }
    }

    pub fn rule(&self) -> Option<RuleId> {
        match self.step {
            Step::Rule(r) => Some(r),
            Step::Hypothesis(_) => None,
        }
    }

    /// Rule names in pre-order; hypothesis leaves are skipped.
    pub fn rule_trace(&self) -> Vec<RuleId> {
        let mut out = Vec::new();
        self.walk(&mut |d| {
            if let Some(r) = d.rule() {
                out.push(r);
            }
        });
        out
    }

    pub fn uses(&self, rule: RuleId) -> bool {
        self.rule() == Some(rule) || self.premises.iter().any(|p| p.uses(rule))
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Derivation)) {
        f(self);
        for p in &self.premises {
            p.walk(f);
        }
    }

    /// Node at a path of premise indices from the root.
    pub fn at(&self, path: &[usize]) -> Option<&Derivation> {
        path.iter().try_fold(self, |d, &i| d.premises.get(i))
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Derivation> {
        path.iter().try_fold(self, |d, &i| d.premises.get_mut(i))
    }

    /// Paths to every node, root first.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for (i, p) in self.premises.iter().enumerate() {
            for mut sub in p.paths() {
                sub.insert(0, i);
                out.push(sub);
            }
        }
        out
    }

    /// Indented tree, conclusion first, premises below.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, indent: usize) {
        let tag = match &self.step {
            Step::Rule(r) => format!("[{r}]"),
            Step::Hypothesis(label) => format!("(hyp {label})"),
        };
        out.push_str(&format!("{:width$}{}  {}\n", "", self.conclusion, tag, width = indent * 2));
        for p in &self.premises {
            p.render_into(out, indent + 1);
        }
    }
}
