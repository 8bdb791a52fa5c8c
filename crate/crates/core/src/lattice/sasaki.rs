use serde::Serialize;

use super::{AxiomReport, Elem, FiniteOrthoposet, LatticeError, Law};

/// A full `n x n` table for a binary operation `&`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SasakiTable {
    n: usize,
    data: Vec<Elem>,
}

impl SasakiTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> SasakiTable {
        let mut data = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                data.push(f(a, b));
            }
        }
        SasakiTable { n, data }
    }

    /// `a & b := b ∧ (b' ∨ a)` on any lattice. Whether the result satisfies the
    /// axioms depends on orthomodularity; see [`check_sasaki_axioms`].
    pub fn from_lattice_formula(p: &FiniteOrthoposet) -> Result<SasakiTable, LatticeError> {
        p.require_lattice()?;
        Ok(SasakiTable::from_fn(p.len(), |a, b| p.m(b, p.j(p.ortho(b), a))))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.data[a * self.n + b]
    }

    pub fn set(&mut self, a: Elem, b: Elem, value: Elem) {
        self.data[a * self.n + b] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Elem]> {
        self.data.chunks(self.n)
    }
}

/// `b ∧ (b' ∨ a)` in an orthomodular lattice.
pub fn sasaki_from_lattice(p: &FiniteOrthoposet, a: Elem, b: Elem) -> Result<Elem, LatticeError> {
    p.require_orthomodular()?;
    Ok(p.m(b, p.j(p.ortho(b), a)))
}

/// Exhaustive check of the four Sasaki orthoposet axioms.
pub fn check_sasaki_axioms(p: &FiniteOrthoposet, table: &SasakiTable) -> AxiomReport {
    let mut report = AxiomReport::new();
    if table.len() != p.len() {
        report.push(Law::Order, []);
        return report;
    }
    let els = p.elements();
    for a in els.clone() {
        for b in els.clone() {
            let ab = table.get(a, b);
            if !p.leq(ab, b) {
                report.push(Law::RReduction, [a, b]);
            }
            if p.leq(a, b) && ab != a {
                report.push(Law::Orthomodularity, [a, b]);
            }
            for c in els.clone() {
                if p.leq(a, b) && !p.leq(table.get(a, c), table.get(b, c)) {
                    report.push(Law::LMonotony, [a, b, c]);
                }
                if p.leq(ab, c) && !p.leq(table.get(p.ortho(c), b), p.ortho(a)) {
                    report.push(Law::Galois, [a, b, c]);
                }
            }
        }
    }
    report
}

/// `(a' & b)' & b`, read straight off the table.
#[inline]
pub fn meet_from_sasaki(p: &FiniteOrthoposet, table: &SasakiTable, a: Elem, b: Elem) -> Elem {
    table.get(p.ortho(table.get(p.ortho(a), b)), b)
}

/// Rebuilds `&` as `b ∧& (b ∧& a')'` from the meet the table itself induces and
/// reports every pair where it differs from the table.
pub fn sasaki_roundtrip_check(p: &FiniteOrthoposet, table: &SasakiTable) -> AxiomReport {
    let mut report = AxiomReport::new();
    let meet = |a, b| meet_from_sasaki(p, table, a, b);
    for a in p.elements() {
        for b in p.elements() {
            let rebuilt = meet(b, p.ortho(meet(b, p.ortho(a))));
            if rebuilt != table.get(a, b) {
                report.push(Law::SasakiRoundtrip, [a, b]);
            }
        }
    }
    report
}

/// An orthoposet paired with a table that passed every axiom check.
#[derive(Clone, Debug)]
pub struct SasakiOrthoposet {
    poset: FiniteOrthoposet,
    table: SasakiTable,
}

impl SasakiOrthoposet {
    pub fn new(poset: FiniteOrthoposet, table: SasakiTable) -> Result<SasakiOrthoposet, LatticeError> {
        let mut report = poset.validate();
        if !report.is_empty() {
            return Err(LatticeError::NotSasaki(report));
        }
        report = check_sasaki_axioms(&poset, &table);
        if !report.is_empty() {
            return Err(LatticeError::NotSasaki(report));
        }
        Ok(SasakiOrthoposet { poset, table })
    }

    /// The Sasaki projection of an orthomodular lattice.
    pub fn from_lattice(poset: FiniteOrthoposet) -> Result<SasakiOrthoposet, LatticeError> {
        poset.require_orthomodular()?;
        let table = SasakiTable::from_lattice_formula(&poset)?;
        SasakiOrthoposet::new(poset, table)
    }

    pub fn poset(&self) -> &FiniteOrthoposet {
        &self.poset
    }

    pub fn table(&self) -> &SasakiTable {
        &self.table
    }

    #[inline]
    pub fn sasaki(&self, a: Elem, b: Elem) -> Elem {
        self.table.get(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        meet_from_sasaki(&self.poset, &self.table, a, b)
    }

    pub fn roundtrip_check(&self) -> AxiomReport {
        sasaki_roundtrip_check(&self.poset, &self.table)
    }
}
