use std::fmt;

use serde::Serialize;

use super::{Elem, FiniteOrthoposet};

/// The law a violation was found against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Order,
    Bounds,
    Involution,
    Antitone,
    Complement,
    DeMorgan,
    OrthomodularLaw,
    #[serde(rename = "L-Monotony")]
    LMonotony,
    #[serde(rename = "R-Reduction")]
    RReduction,
    #[serde(rename = "Orthomodularity")]
    Orthomodularity,
    #[serde(rename = "Galois")]
    Galois,
    /// `(a'&b)'&b` differs from the lattice meet.
    MeetFromSasaki,
    /// The orthomodular law fails for the meet recovered from `&`.
    SasakiMeetOrthomodular,
    /// `&` differs from the operation rebuilt from its own meet.
    SasakiRoundtrip,
    /// `b ∧ (b' ∨ a) ≤ c` and `a ≤ b' ∨ (b ∧ c)` disagree.
    GaloisConnection,
    /// `π_x(y) ∧ x ≤ z` holds but `π_x(z') ∧ x ≤ y'` does not.
    PiGalois,
    PiMinimality,
    PiSasaki,
    ComparableCompatible,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Order => "order",
            Law::Bounds => "bounds",
            Law::Involution => "involution",
            Law::Antitone => "antitone",
            Law::Complement => "complement",
            Law::DeMorgan => "de-morgan",
            Law::OrthomodularLaw => "orthomodular-law",
            Law::LMonotony => "L-Monotony",
            Law::RReduction => "R-Reduction",
            Law::Orthomodularity => "Orthomodularity",
            Law::Galois => "Galois",
            Law::MeetFromSasaki => "meet-from-sasaki",
            Law::SasakiMeetOrthomodular => "sasaki-meet-orthomodular",
            Law::SasakiRoundtrip => "sasaki-roundtrip",
            Law::GaloisConnection => "galois-connection",
            Law::PiGalois => "pi-galois",
            Law::PiMinimality => "pi-minimality",
            Law::PiSasaki => "pi-sasaki",
            Law::ComparableCompatible => "comparable-compatible",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<Elem>,
}

/// Violations found by an exhaustive check. Empty means every checked law holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn new() -> AxiomReport {
        AxiomReport::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: Law, witness: impl Into<Vec<Elem>>) {
        self.violations.push(Violation { law, witness: witness.into() });
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.violations.extend(other.violations);
    }

    pub fn violates(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn of(&self, law: Law) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.law == law)
    }

    /// JSON with witnesses rendered as element names.
    pub fn to_json(&self, p: &FiniteOrthoposet) -> serde_json::Value {
        let violations: Vec<_> = self
            .violations
            .iter()
            .map(|v| {
                serde_json::json!({
                    "law": v.law.name(),
                    "witness": v.witness.iter().map(|&e| p.name(e)).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "ok": self.is_empty(), "violations": violations })
    }

    pub fn render(&self, p: &FiniteOrthoposet) -> String {
        if self.is_empty() {
            return "all checked laws hold\n".to_string();
        }
        let mut out = String::new();
        for v in &self.violations {
            let names: Vec<_> = v.witness.iter().map(|&e| p.name(e)).collect();
            out.push_str(&format!("{}: ({})\n", v.law, names.join(", ")));
        }
        out
    }
}
