//! Finite orthoposets and orthomodular lattices.
//!
//! A [`FiniteOrthoposet`] stores the full order relation, not just the Hasse
//! covers. Meets and joins are found by scanning bounds once at construction;
//! a missing meet or join is an ordinary result, since orthoposets need not
//! be lattices.

mod catalog;
mod compat;
mod file;
mod report;
mod sasaki;
pub mod verify;

pub use catalog::{boolean_algebra, by_name, catalog_names, mo, o6, product, NamedStructure};
pub use compat::{commutes, compatible, compatible_with_cap, pi, SUBALGEBRA_CAP};
pub use file::ModelFile;
pub use report::{AxiomReport, Law, Violation};
pub use sasaki::{
    check_sasaki_axioms, meet_from_sasaki, sasaki_from_lattice, sasaki_roundtrip_check, SasakiOrthoposet, SasakiTable,
};

use thiserror::Error;

/// Index of an element, `0..len()`.
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("not a lattice: {} and {} have no {kind}", .names.0, .names.1)]
    NotALattice { kind: &'static str, names: (String, String) },
    #[error("not orthomodular: orthomodular law fails at ({}, {})", .names.0, .names.1)]
    NotOrthomodular { names: (String, String) },
    #[error("table violates the Sasaki orthoposet axioms ({} violations)", .0.violations.len())]
    NotSasaki(AxiomReport),
    #[error("subalgebra generated by ({}, {}) exceeds {cap} elements", .names.0, .names.1)]
    ClosureTooLarge { names: (String, String), cap: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown catalog structure `{0}`")]
    UnknownStructure(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("model file: {0}")]
    File(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOrthoposet {
    names: Vec<String>,
    leq: Vec<bool>,
    ortho: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    meets: Vec<Option<Elem>>,
    joins: Vec<Option<Elem>>,
}

impl FiniteOrthoposet {
    /// Checks only shape (square relation, ids in range, distinct names).
    /// The order-theoretic laws are left to [`FiniteOrthoposet::validate`].
    pub fn new(
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
        ortho: Vec<Elem>,
        bottom: Elem,
        top: Elem,
    ) -> Result<FiniteOrthoposet, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Malformed("no elements".into()));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(LatticeError::Malformed(format!("order relation is not {n}x{n}")));
        }
        if ortho.len() != n {
            return Err(LatticeError::Malformed(format!("ortho map has {} entries, expected {n}", ortho.len())));
        }
        if let Some(bad) = ortho.iter().find(|&&e| e >= n) {
            return Err(LatticeError::Malformed(format!("ortho image {bad} out of range")));
        }
        if bottom >= n || top >= n {
            return Err(LatticeError::Malformed("bottom/top out of range".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(LatticeError::Malformed(format!("duplicate element name `{name}`")));
            }
        }
        let leq: Vec<bool> = leq.into_iter().flatten().collect();
        let mut p = FiniteOrthoposet { names, leq, ortho, bottom, top, meets: Vec::new(), joins: Vec::new() };
        p.meets = p.bound_table(|p, x, y| p.leq(x, y));
        p.joins = p.bound_table(|p, x, y| p.leq(y, x));
        Ok(p)
    }

    /// Greatest element among the common lower bounds under `below`.
    fn bound_table(&self, below: impl Fn(&Self, Elem, Elem) -> bool) -> Vec<Option<Elem>> {
        let n = self.len();
        let mut table = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let bounds: Vec<Elem> = (0..n).filter(|&x| below(self, x, a) && below(self, x, b)).collect();
                table[a * n + b] = bounds.iter().copied().find(|&m| bounds.iter().all(|&l| below(self, l, m)));
            }
        }
        table
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<Elem, LatticeError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn ortho(&self, a: Elem) -> Elem {
        self.ortho[a]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Greatest lower bound, if it exists.
    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.meets[a * self.len() + b]
    }

    /// Least upper bound, if it exists.
    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.joins[a * self.len() + b]
    }

    pub fn is_lattice(&self) -> bool {
        self.meets.iter().chain(&self.joins).all(Option::is_some)
    }

    pub(crate) fn require_lattice(&self) -> Result<(), LatticeError> {
        let n = self.len();
        for (i, (m, j)) in self.meets.iter().zip(&self.joins).enumerate() {
            let kind = match (m, j) {
                (None, _) => "meet",
                (_, None) => "join",
                _ => continue,
            };
            let names = (self.names[i / n].clone(), self.names[i % n].clone());
            return Err(LatticeError::NotALattice { kind, names });
        }
        Ok(())
    }

    /// Meet in a structure already known to be a lattice.
    #[inline]
    pub(crate) fn m(&self, a: Elem, b: Elem) -> Elem {
        self.meet(a, b).expect("meet exists in a lattice")
    }

    #[inline]
    pub(crate) fn j(&self, a: Elem, b: Elem) -> Elem {
        self.join(a, b).expect("join exists in a lattice")
    }

    /// Checks every orthoposet law exhaustively.
    pub fn validate(&self) -> AxiomReport {
        let mut report = AxiomReport::new();
        let els = self.elements();
        for a in els.clone() {
            if !self.leq(a, a) {
                report.push(Law::Order, [a]);
            }
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                report.push(Law::Bounds, [a]);
            }
            if self.ortho(self.ortho(a)) != a {
                report.push(Law::Involution, [a]);
            }
            if let Some(m) = self.meet(a, self.ortho(a)) {
                if m != self.bottom {
                    report.push(Law::Complement, [a]);
                }
            }
            if let Some(j) = self.join(a, self.ortho(a)) {
                if j != self.top {
                    report.push(Law::Complement, [a]);
                }
            }
        }
        for a in els.clone() {
            for b in els.clone() {
                if a < b && self.leq(a, b) && self.leq(b, a) {
                    report.push(Law::Order, [a, b]);
                }
                if self.leq(a, b) && !self.leq(self.ortho(b), self.ortho(a)) {
                    report.push(Law::Antitone, [a, b]);
                }
                let dual = self.meet(self.ortho(a), self.ortho(b)).map(|m| self.ortho(m));
                if (self.join(a, b).is_some() || dual.is_some()) && self.join(a, b) != dual {
                    report.push(Law::DeMorgan, [a, b]);
                }
                for c in els.clone() {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        report.push(Law::Order, [a, b, c]);
                    }
                }
            }
        }
        report
    }

    /// Looks for `x ≤ y` with `x ≠ y ∧ (x ∨ y')`. `Ok(None)` means orthomodular.
    pub fn orthomodular_witness(&self) -> Result<Option<(Elem, Elem)>, LatticeError> {
        self.require_lattice()?;
        for x in self.elements() {
            for y in self.elements() {
                if self.leq(x, y) && self.m(y, self.j(x, self.ortho(y))) != x {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_orthomodular(&self) -> Result<bool, LatticeError> {
        Ok(self.orthomodular_witness()?.is_none())
    }

    pub(crate) fn require_orthomodular(&self) -> Result<(), LatticeError> {
        if let Some((x, y)) = self.orthomodular_witness()? {
            return Err(LatticeError::NotOrthomodular { names: (self.names[x].clone(), self.names[y].clone()) });
        }
        Ok(())
    }

    /// `a ∧ b = a ∧ (b ∨ c)` style distributivity over every triple of `subset`.
    pub fn is_distributive_on(&self, subset: &[Elem]) -> bool {
        subset.iter().all(|&a| {
            subset.iter().all(|&b| {
                subset.iter().all(|&c| {
                    let lhs = self.join(b, c).and_then(|bc| self.meet(a, bc));
                    let rhs = match (self.meet(a, b), self.meet(a, c)) {
                        (Some(ab), Some(ac)) => self.join(ab, ac),
                        _ => None,
                    };
                    lhs.is_some() && lhs == rhs
                })
            })
        })
    }

    pub fn is_distributive(&self) -> bool {
        let all: Vec<Elem> = self.elements().collect();
        self.is_lattice() && self.is_distributive_on(&all)
    }

    /// Hasse covers `(lo, hi)`: `lo < hi` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let lt = |a: Elem, b: Elem| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for lo in self.elements() {
            for hi in self.elements() {
                if lt(lo, hi) && !self.elements().any(|m| lt(lo, m) && lt(m, hi)) {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// Length of the longest chain from bottom up to `e`, for drawing.
    pub fn height(&self, e: Elem) -> usize {
        self.elements().filter(|&d| d != e && self.leq(d, e)).map(|d| self.height(d) + 1).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_algebras_validate() {
        for k in 1..=4 {
            let p = boolean_algebra(k).unwrap();
            assert_eq!(p.len(), 1 << k);
            assert!(p.validate().is_empty());
            assert!(p.is_distributive());
        }
    }

    #[test]
    fn o6_is_an_ortholattice() {
        let p = o6();
        assert!(p.validate().is_empty(), "{}", p.validate().render(&p));
        assert!(p.is_lattice());
    }

    #[test]
    fn broken_involution_is_reported_with_witness() {
        let p = boolean_algebra(2).unwrap();
        // swap one atom's complement onto the top
        let mut ortho: Vec<Elem> = p.elements().map(|e| p.ortho(e)).collect();
        let atom = p.index_of("p").unwrap();
        ortho[atom] = p.top();
        let leq = p.elements().map(|a| p.elements().map(|b| p.leq(a, b)).collect()).collect();
        let broken = FiniteOrthoposet::new(p.names().to_vec(), leq, ortho, p.bottom(), p.top()).unwrap();
        let report = broken.validate();
        let inv: Vec<_> = report.of(Law::Involution).collect();
        assert!(!inv.is_empty());
        assert!(inv.iter().any(|v| v.witness == vec![atom]));
    }

    #[test]
    fn malformed_shapes_are_errors() {
        let names = vec!["0".to_string(), "1".to_string()];
        let err = FiniteOrthoposet::new(names.clone(), vec![vec![true, true]], vec![1, 0], 0, 1);
        assert!(matches!(err, Err(LatticeError::Malformed(_))));
        let leq = vec![vec![true, true], vec![false, true]];
        let err = FiniteOrthoposet::new(names.clone(), leq.clone(), vec![1, 2], 0, 1);
        assert!(matches!(err, Err(LatticeError::Malformed(_))));
        let err = FiniteOrthoposet::new(names, leq, vec![1, 0], 0, 5);
        assert!(matches!(err, Err(LatticeError::Malformed(_))));
    }

    #[test]
    fn meets_and_joins() {
        let b2 = boolean_algebra(2).unwrap();
        let (p, q) = (b2.index_of("p").unwrap(), b2.index_of("q").unwrap());
        assert_eq!(b2.meet(p, q), Some(b2.bottom()));
        assert_eq!(b2.join(p, q), Some(b2.top()));

        let mo2 = mo(2).unwrap();
        let (x, y) = (mo2.index_of("x").unwrap(), mo2.index_of("y").unwrap());
        assert_eq!(mo2.join(x, y), Some(mo2.top()));
        assert_eq!(mo2.meet(x, y), Some(mo2.bottom()));

        for s in catalog::default_catalog_with_o6() {
            let p = &s.poset;
            for a in p.elements() {
                assert_eq!(p.meet(a, p.top()), Some(a));
                assert_eq!(p.join(a, p.bottom()), Some(a));
            }
        }
    }

    #[test]
    fn meet_can_be_undefined() {
        // atoms a, b, c, d orthogonal in a 4-cycle; a and c share two upper bounds b', d'
        let names: Vec<String> =
            ["0", "a", "b", "c", "d", "a'", "b'", "c'", "d'", "1"].iter().map(|s| s.to_string()).collect();
        let below = [(1, 6), (1, 8), (2, 5), (2, 7), (3, 6), (3, 8), (4, 5), (4, 7)];
        let leq =
            (0..10).map(|i| (0..10).map(|j| i == j || i == 0 || j == 9 || below.contains(&(i, j))).collect()).collect();
        let p = FiniteOrthoposet::new(names, leq, vec![9, 5, 6, 7, 8, 1, 2, 3, 4, 0], 0, 9).unwrap();
        assert_eq!(p.join(1, 3), None);
        assert_eq!(p.meet(5, 7), None);
        assert_eq!(p.meet(1, 5), Some(0));
        assert!(!p.is_lattice());
        assert!(matches!(p.orthomodular_witness(), Err(LatticeError::NotALattice { .. })));
        assert!(p.validate().is_empty(), "{}", p.validate().render(&p));
    }

    #[test]
    fn orthomodularity() {
        assert_eq!(boolean_algebra(3).unwrap().orthomodular_witness(), Ok(None));
        assert_eq!(mo(2).unwrap().orthomodular_witness(), Ok(None));
        let p = o6();
        let (x, y) = p.orthomodular_witness().unwrap().expect("O6 is not orthomodular");
        assert!(x != y && p.leq(x, y));
        assert_eq!(p.join(x, p.ortho(y)), Some(p.top()));
        assert_eq!(p.meet(y, p.top()), Some(y));
    }

    #[test]
    fn covers_of_mo2() {
        let p = mo(2).unwrap();
        assert_eq!(p.covers().len(), 8);
        assert_eq!(p.height(p.top()), 2);
    }
}
