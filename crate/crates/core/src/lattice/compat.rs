//! Compatibility of elements and the projection `π_x(y)`.

use super::{Elem, FiniteOrthoposet, LatticeError};

/// Largest generated subalgebra `compatible` will build before giving up.
pub const SUBALGEBRA_CAP: usize = 4096;

/// Whether `x` and `y` lie in a common Boolean subalgebra.
///
/// Builds the subalgebra generated by `{0, 1, x, y}` under meet, join and
/// orthocomplement and tests it for distributivity. A distributive sub-
/// ortholattice is Boolean, and any Boolean subalgebra holding `x` and `y`
/// contains the generated one, so this decides the question exactly.
pub fn compatible(p: &FiniteOrthoposet, x: Elem, y: Elem) -> Result<bool, LatticeError> {
    compatible_with_cap(p, x, y, SUBALGEBRA_CAP)
}

pub fn compatible_with_cap(p: &FiniteOrthoposet, x: Elem, y: Elem, cap: usize) -> Result<bool, LatticeError> {
    p.require_lattice()?;
    let sub = generated_subalgebra(p, &[x, y], cap)
        .ok_or_else(|| LatticeError::ClosureTooLarge { names: (p.name(x).to_string(), p.name(y).to_string()), cap })?;
    Ok(p.is_distributive_on(&sub))
}

/// Closure of the generators plus bounds, or `None` once it outgrows `cap`.
pub(crate) fn generated_subalgebra(p: &FiniteOrthoposet, gens: &[Elem], cap: usize) -> Option<Vec<Elem>> {
    let mut member = vec![false; p.len()];
    let mut elems = Vec::new();
    let add = |e: Elem, member: &mut Vec<bool>, elems: &mut Vec<Elem>| {
        if !member[e] {
            member[e] = true;
            elems.push(e);
        }
    };
    for &g in [p.bottom(), p.top()].iter().chain(gens) {
        add(g, &mut member, &mut elems);
    }
    let mut done = 0;
    while done < elems.len() {
        if elems.len() > cap {
            return None;
        }
        let e = elems[done];
        add(p.ortho(e), &mut member, &mut elems);
        for i in 0..=done {
            let f = elems[i];
            add(p.m(e, f), &mut member, &mut elems);
            add(p.j(e, f), &mut member, &mut elems);
        }
        done += 1;
    }
    if elems.len() > cap {
        return None;
    }
    elems.sort_unstable();
    Some(elems)
}

/// Commutator form `x = (x ∧ y) ∨ (x ∧ y')`. Agrees with [`compatible`] on
/// orthomodular lattices; kept as a cross-check.
pub fn commutes(p: &FiniteOrthoposet, x: Elem, y: Elem) -> Result<bool, LatticeError> {
    p.require_lattice()?;
    Ok(x == p.j(p.m(x, y), p.m(x, p.ortho(y))))
}

/// `π_x(y) = (y ∨ x) ∧ (y ∨ x')`, the least element above `y` compatible with `x`.
pub fn pi(p: &FiniteOrthoposet, x: Elem, y: Elem) -> Result<Elem, LatticeError> {
    p.require_orthomodular()?;
    Ok(p.m(p.j(y, x), p.j(y, p.ortho(x))))
}
