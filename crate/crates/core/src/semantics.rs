//! Sasaki models over finite structures, interpretation of terms, and
//! exhaustive countermodel search over a list of structures.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{by_name, Elem, LatticeError, SasakiOrthoposet};
use crate::terms::{Sequent, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("atom `{0}` has no value in the model")]
    UnboundAtom(String),
    #[error("{atoms} atoms exceed the valuation budget of {max}; search would be partial")]
    TooManyAtoms { atoms: usize, max: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A catalog entry usable as the carrier of models.
#[derive(Clone, Debug)]
pub struct ModelStructure {
    pub name: String,
    pub sasaki: Arc<SasakiOrthoposet>,
}

impl ModelStructure {
    /// Looks up a catalog name; the structure must be an orthomodular lattice.
    pub fn by_name(name: &str) -> Result<ModelStructure, LatticeError> {
        let sasaki = SasakiOrthoposet::from_lattice(by_name(name)?)?;
        Ok(ModelStructure { name: name.to_string(), sasaki: Arc::new(sasaki) })
    }

    pub fn new(name: impl Into<String>, sasaki: SasakiOrthoposet) -> ModelStructure {
        ModelStructure { name: name.into(), sasaki: Arc::new(sasaki) }
    }
}

/// Names searched by default: Boolean 1..3, MO2..MO4, MO2 x 2.
pub const DEFAULT_CATALOG: &[&str] = &["boolean1", "boolean2", "boolean3", "mo2", "mo3", "mo4", "mo2*boolean1"];

pub fn default_catalog() -> &'static [ModelStructure] {
    static CATALOG: OnceLock<Vec<ModelStructure>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        DEFAULT_CATALOG
            .iter()
            .map(|n| ModelStructure::by_name(n).expect("default catalog entries are orthomodular"))
            .collect()
    })
}

/// A structure plus an assignment of atoms to its elements.
#[derive(Clone, Debug)]
pub struct SasakiModel {
    pub name: String,
    pub structure: Arc<SasakiOrthoposet>,
    pub valuation: BTreeMap<String, Elem>,
}

impl SasakiModel {
    pub fn new(structure: &ModelStructure, valuation: BTreeMap<String, Elem>) -> SasakiModel {
        SasakiModel { name: structure.name.clone(), structure: structure.sasaki.clone(), valuation }
    }

    /// Builds a valuation from element names, e.g. `[("a", "x"), ("b", "y")]`.
    pub fn with_names(structure: &ModelStructure, pairs: &[(&str, &str)]) -> Result<SasakiModel, LatticeError> {
        let poset = structure.sasaki.poset();
        let valuation = pairs
            .iter()
            .map(|(atom, elem)| Ok((atom.to_string(), poset.index_of(elem)?)))
            .collect::<Result<_, LatticeError>>()?;
        Ok(SasakiModel::new(structure, valuation))
    }

    pub fn interpret(&self, t: &Term) -> Result<Elem, SemanticsError> {
        eval(&self.structure, t, &|a| self.valuation.get(a).copied())
    }

    pub fn holds(&self, s: &Sequent) -> Result<bool, SemanticsError> {
        let lhs = self.interpret(&s.lhs)?;
        let rhs = self.interpret(&s.rhs)?;
        Ok(self.structure.poset().leq(lhs, rhs))
    }

    pub fn element_name(&self, e: Elem) -> &str {
        self.structure.poset().name(e)
    }
}

fn eval(s: &SasakiOrthoposet, t: &Term, val: &dyn Fn(&str) -> Option<Elem>) -> Result<Elem, SemanticsError> {
    match t {
        Term::Atom(a) => val(a).ok_or_else(|| SemanticsError::UnboundAtom(a.clone())),
        Term::Ortho(inner) => Ok(s.poset().ortho(eval(s, inner, val)?)),
        Term::Sasaki(l, r) => Ok(s.sasaki(eval(s, l, val)?, eval(s, r, val)?)),
    }
}

pub fn interpret(m: &SasakiModel, t: &Term) -> Result<Elem, SemanticsError> {
    m.interpret(t)
}

pub fn holds(m: &SasakiModel, s: &Sequent) -> Result<bool, SemanticsError> {
    m.holds(s)
}

/// A model where the left side is not below the right side.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub model: SasakiModel,
    pub lhs_value: Elem,
    pub rhs_value: Elem,
}

impl Countermodel {
    pub fn to_json(&self) -> serde_json::Value {
        let m = &self.model;
        let valuation: BTreeMap<&str, &str> =
            m.valuation.iter().map(|(a, &e)| (a.as_str(), m.element_name(e))).collect();
        serde_json::json!({
            "model": m.name,
            "valuation": valuation,
            "lhs_value": m.element_name(self.lhs_value),
            "rhs_value": m.element_name(self.rhs_value),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_atoms: usize,
    /// Structures needing more valuations than this are skipped and reported.
    pub max_valuations: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_atoms: 6, max_valuations: 10_000_000 }
    }
}

/// What a failed search covered; never evidence of validity beyond it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchedSpace {
    pub searched: Vec<(String, u64)>,
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum CountermodelSearch {
    Found(Countermodel),
    NotFound(SearchedSpace),
}

impl CountermodelSearch {
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            CountermodelSearch::Found(c) => Some(c),
            CountermodelSearch::NotFound(_) => None,
        }
    }
}

/// Tries every valuation of the sequent's atoms (sorted by name) into each
/// structure in order, odometer style with the first atom most significant.
/// The first failure found is returned, so the result is deterministic.
pub fn find_countermodel(
    s: &Sequent,
    catalog: &[ModelStructure],
    limits: SearchLimits,
) -> Result<CountermodelSearch, SemanticsError> {
    let mut atoms: Vec<&str> = s.atoms();
    atoms.sort_unstable();
    if atoms.len() > limits.max_atoms {
        return Err(SemanticsError::TooManyAtoms { atoms: atoms.len(), max: limits.max_atoms });
    }
    let mut space = SearchedSpace::default();
    for structure in catalog {
        let sasaki = &structure.sasaki;
        let n = sasaki.poset().len() as u64;
        let total = n.checked_pow(atoms.len() as u32).filter(|&t| t <= limits.max_valuations);
        let Some(total) = total else {
            space.skipped.push(structure.name.clone());
            continue;
        };
        let mut values = vec![0; atoms.len()];
        for _ in 0..total {
            let lookup = |a: &str| atoms.iter().position(|x| *x == a).map(|i| values[i]);
            let lhs = eval(sasaki, &s.lhs, &lookup)?;
            let rhs = eval(sasaki, &s.rhs, &lookup)?;
            if !sasaki.poset().leq(lhs, rhs) {
                let valuation = atoms.iter().map(|a| a.to_string()).zip(values.iter().copied()).collect();
                return Ok(CountermodelSearch::Found(Countermodel {
                    model: SasakiModel::new(structure, valuation),
                    lhs_value: lhs,
                    rhs_value: rhs,
                }));
            }
            for slot in values.iter_mut().rev() {
                *slot += 1;
                if *slot < n as usize {
                    break;
                }
                *slot = 0;
            }
        }
        space.searched.push((structure.name.clone(), total));
    }
    Ok(CountermodelSearch::NotFound(space))
}
