//! Brute-force checks of the identities linking the lattice operations with
//! the Sasaki projection and compatibility. Every function enumerates all
//! pairs or triples.

use super::compat::generated_subalgebra;
use super::sasaki::{check_sasaki_axioms, meet_from_sasaki, sasaki_roundtrip_check};
use super::{AxiomReport, Elem, FiniteOrthoposet, LatticeError, Law, SasakiTable, SUBALGEBRA_CAP};

/// `compatible(x, y)` for every pair, row-major.
pub fn compatibility_matrix(p: &FiniteOrthoposet) -> Result<Vec<bool>, LatticeError> {
    p.require_lattice()?;
    let n = p.len();
    let mut out = vec![false; n * n];
    for x in p.elements() {
        for y in x..n {
            let sub =
                generated_subalgebra(p, &[x, y], SUBALGEBRA_CAP).ok_or_else(|| LatticeError::ClosureTooLarge {
                    names: (p.name(x).to_string(), p.name(y).to_string()),
                    cap: SUBALGEBRA_CAP,
                })?;
            let c = p.is_distributive_on(&sub);
            out[x * n + y] = c;
            out[y * n + x] = c;
        }
    }
    Ok(out)
}

/// `(a' & b)' & b` against the lattice meet for all pairs, and the
/// orthomodular law `a ≤ b ⇒ a = b ∧& (a' ∧& b)'` for the recovered meet.
pub fn meet_from_sasaki_report(p: &FiniteOrthoposet, table: &SasakiTable) -> Result<AxiomReport, LatticeError> {
    p.require_lattice()?;
    let mut report = AxiomReport::new();
    let meet = |a, b| meet_from_sasaki(p, table, a, b);
    for a in p.elements() {
        for b in p.elements() {
            if meet(a, b) != p.m(a, b) {
                report.push(Law::MeetFromSasaki, [a, b]);
            }
            if p.leq(a, b) && meet(b, p.ortho(meet(p.ortho(a), b))) != a {
                report.push(Law::SasakiMeetOrthomodular, [a, b]);
            }
        }
    }
    Ok(report)
}

/// `b ∧ (b' ∨ a) ≤ c  ⟺  a ≤ b' ∨ (b ∧ c)` on all triples.
pub fn galois_connection_report(p: &FiniteOrthoposet) -> Result<AxiomReport, LatticeError> {
    p.require_lattice()?;
    let mut report = AxiomReport::new();
    for a in p.elements() {
        for b in p.elements() {
            let project = p.m(b, p.j(p.ortho(b), a));
            for c in p.elements() {
                let lower = p.leq(project, c);
                let upper = p.leq(a, p.j(p.ortho(b), p.m(b, c)));
                if lower != upper {
                    report.push(Law::GaloisConnection, [a, b, c]);
                }
            }
        }
    }
    Ok(report)
}

/// The characterization of `π_x(y)` on all pairs: `y ≤ π_x(y)`, `x C π_x(y)`,
/// minimality among elements above `y` compatible with `x`, and
/// `π_x(y) ∧ x = (y ∨ x') ∧ x = y & x`.
pub fn pi_minimality_report(p: &FiniteOrthoposet) -> Result<AxiomReport, LatticeError> {
    p.require_orthomodular()?;
    let compat = compatibility_matrix(p)?;
    let n = p.len();
    let c = |x: Elem, y: Elem| compat[x * n + y];
    let mut report = AxiomReport::new();
    for x in p.elements() {
        for y in p.elements() {
            let pi = p.m(p.j(y, x), p.j(y, p.ortho(x)));
            if !p.leq(y, pi) || !c(x, pi) {
                report.push(Law::PiMinimality, [x, y]);
            }
            if let Some(t) = p.elements().find(|&t| p.leq(y, t) && c(x, t) && !p.leq(pi, t)) {
                report.push(Law::PiMinimality, [x, y, t]);
            }
            let projected = p.m(pi, x);
            let sasaki = p.m(x, p.j(p.ortho(x), y));
            if projected != p.m(p.j(y, p.ortho(x)), x) || projected != sasaki {
                report.push(Law::PiSasaki, [x, y]);
            }
        }
    }
    Ok(report)
}

/// `π_x(y) ∧ x ≤ z  ⇒  π_x(z') ∧ x ≤ y'` on all triples.
pub fn pi_galois_report(p: &FiniteOrthoposet) -> Result<AxiomReport, LatticeError> {
    p.require_orthomodular()?;
    let pi = |x: Elem, y: Elem| p.m(p.j(y, x), p.j(y, p.ortho(x)));
    let mut report = AxiomReport::new();
    for x in p.elements() {
        for y in p.elements() {
            let lhs = p.m(pi(x, y), x);
            for z in p.elements() {
                if p.leq(lhs, z) && !p.leq(p.m(pi(x, p.ortho(z)), x), p.ortho(y)) {
                    report.push(Law::PiGalois, [x, y, z]);
                }
            }
        }
    }
    Ok(report)
}

/// `x ≤ y ⇒ x C y` on all pairs.
pub fn comparable_compatible_report(p: &FiniteOrthoposet) -> Result<AxiomReport, LatticeError> {
    let compat = compatibility_matrix(p)?;
    let n = p.len();
    let mut report = AxiomReport::new();
    for x in p.elements() {
        for y in p.elements() {
            if p.leq(x, y) && !compat[x * n + y] {
                report.push(Law::ComparableCompatible, [x, y]);
            }
        }
    }
    Ok(report)
}

/// Every applicable check. Orthoposet laws always; the orthomodular law and
/// the Sasaki axioms on `b ∧ (b' ∨ a)` when the structure is a lattice; the
/// remaining identities only once the structure is known to be orthomodular.
pub fn verify_all(p: &FiniteOrthoposet) -> AxiomReport {
    let mut report = p.validate();
    if !report.is_empty() {
        return report;
    }
    let Ok(table) = SasakiTable::from_lattice_formula(p) else {
        return report;
    };
    let witness = p.orthomodular_witness().expect("lattice checked above");
    if let Some((x, y)) = witness {
        report.push(Law::OrthomodularLaw, [x, y]);
    }
    report.extend(check_sasaki_axioms(p, &table));
    if witness.is_some() {
        return report;
    }
    let oml_checks = [
        meet_from_sasaki_report(p, &table),
        Ok(sasaki_roundtrip_check(p, &table)),
        galois_connection_report(p),
        pi_minimality_report(p),
        pi_galois_report(p),
        comparable_compatible_report(p),
    ];
    for check in oml_checks {
        report.extend(check.expect("orthomodular lattice checked above"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean_algebra, mo, o6};

    #[test]
    fn mo2_passes_everything() {
        let p = mo(2).unwrap();
        let r = verify_all(&p);
        assert!(r.is_empty(), "{}", r.render(&p));
    }

    #[test]
    fn o6_fails_orthomodularity_only_where_expected() {
        let p = o6();
        let r = verify_all(&p);
        assert!(r.violates(Law::OrthomodularLaw));
        assert!(r.violates(Law::Orthomodularity));
        assert!(!r.violates(Law::Involution));
    }

    #[test]
    fn compatibility_matrix_on_boolean() {
        let p = boolean_algebra(2).unwrap();
        assert!(compatibility_matrix(&p).unwrap().iter().all(|&c| c));
    }

    #[test]
    fn checks_refuse_non_orthomodular_input() {
        assert!(pi_galois_report(&o6()).is_err());
        assert!(pi_minimality_report(&o6()).is_err());
    }
}
