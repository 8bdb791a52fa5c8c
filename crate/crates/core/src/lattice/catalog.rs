//! Built-in finite structures.

use super::{Elem, FiniteOrthoposet, LatticeError};

/// A structure together with the name it is known by in the catalog.
#[derive(Clone, Debug)]
pub struct NamedStructure {
    pub name: String,
    pub poset: FiniteOrthoposet,
}

impl NamedStructure {
    pub fn new(name: impl Into<String>, poset: FiniteOrthoposet) -> NamedStructure {
        NamedStructure { name: name.into(), poset }
    }

    pub fn by_name(name: &str) -> Result<NamedStructure, LatticeError> {
        Ok(NamedStructure::new(name, by_name(name)?))
    }
}

const BOOLEAN_ATOMS: &[&str] = &["p", "q", "r", "s", "t", "u"];
const MO_ATOMS: &[&str] = &["x", "y", "z", "w"];

fn build(
    names: Vec<String>,
    ortho: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    leq: impl Fn(Elem, Elem) -> bool,
) -> FiniteOrthoposet {
    let n = names.len();
    let rel = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
    FiniteOrthoposet::new(names, rel, ortho, bottom, top).expect("catalog structures are well formed")
}

/// The Boolean algebra of subsets of a `k`-element set; element `i` is the
/// subset with bitmask `i`.
pub fn boolean_algebra(k: usize) -> Result<FiniteOrthoposet, LatticeError> {
    if !(1..=BOOLEAN_ATOMS.len()).contains(&k) {
        return Err(LatticeError::InvalidParameter(format!(
            "boolean algebra needs 1 <= k <= {}, got {k}",
            BOOLEAN_ATOMS.len()
        )));
    }
    let n = 1usize << k;
    let full = n - 1;
    let names = (0..n)
        .map(|mask| match mask {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => (0..k).filter(|i| m & (1 << i) != 0).map(|i| BOOLEAN_ATOMS[i]).collect(),
        })
        .collect();
    let ortho = (0..n).map(|m| full ^ m).collect();
    Ok(build(names, ortho, 0, full, |a, b| a & !b == 0))
}

/// Horizontal sum of `k` four-element Boolean blocks. Elements are ordered
/// `0, 1, x, x', y, y', ...`.
pub fn mo(k: usize) -> Result<FiniteOrthoposet, LatticeError> {
    if k == 0 {
        return Err(LatticeError::InvalidParameter("MO(k) needs k >= 1".into()));
    }
    let mut names = vec!["0".to_string(), "1".to_string()];
    for i in 0..k {
        let base = match MO_ATOMS.get(i) {
            Some(s) if k <= MO_ATOMS.len() => s.to_string(),
            _ => format!("x{}", i + 1),
        };
        names.push(base.clone());
        names.push(format!("{base}'"));
    }
    let ortho = (0..names.len()).map(|e| if e < 2 { 1 - e } else { e ^ 1 }).collect();
    Ok(build(names, ortho, 0, 1, |a, b| a == b || a == 0 || b == 1))
}

/// The benzene ring: `0 < a < b < 1` and `0 < b' < a' < 1`. An ortholattice
/// that is not orthomodular.
pub fn o6() -> FiniteOrthoposet {
    let names = ["0", "1", "a", "a'", "b", "b'"].iter().map(|s| s.to_string()).collect();
    // 2 = a ≤ 4 = b, 5 = b' ≤ 3 = a'
    build(names, vec![1, 0, 3, 2, 5, 4], 0, 1, |x, y| {
        x == y || x == 0 || y == 1 || (x, y) == (2, 4) || (x, y) == (5, 3)
    })
}

/// Componentwise product; element `(i, j)` has index `i * q.len() + j`.
pub fn product(p: &FiniteOrthoposet, q: &FiniteOrthoposet) -> FiniteOrthoposet {
    let m = q.len();
    let split = |e: Elem| (e / m, e % m);
    let names = p
        .elements()
        .flat_map(|i| q.elements().map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", p.name(i), q.name(j)))
        .collect();
    let ortho = (0..p.len() * m)
        .map(|e| {
            let (i, j) = split(e);
            p.ortho(i) * m + q.ortho(j)
        })
        .collect();
    build(names, ortho, p.bottom() * m + q.bottom(), p.top() * m + q.top(), |a, b| {
        let ((ai, aj), (bi, bj)) = (split(a), split(b));
        p.leq(ai, bi) && q.leq(aj, bj)
    })
}

/// Resolves `boolean<k>`, `mo<k>`, `o6`, and products written `A*B`.
pub fn by_name(name: &str) -> Result<FiniteOrthoposet, LatticeError> {
    let unknown = || LatticeError::UnknownStructure(name.to_string());
    if let Some((left, right)) = name.rsplit_once('*') {
        return Ok(product(&by_name(left)?, &by_name(right)?));
    }
    if name == "o6" {
        return Ok(o6());
    }
    if let Some(k) = name.strip_prefix("boolean") {
        return boolean_algebra(k.parse().map_err(|_| unknown())?);
    }
    if let Some(k) = name.strip_prefix("mo") {
        return mo(k.parse().map_err(|_| unknown())?);
    }
    Err(unknown())
}

/// Everything `catalog` lists: Boolean algebras 1..4, MO2..MO4, MO2 x 2, O6.
pub fn catalog_names() -> Vec<&'static str> {
    vec!["boolean1", "boolean2", "boolean3", "boolean4", "mo2", "mo3", "mo4", "mo2*boolean1", "o6"]
}

#[cfg(test)]
pub(crate) fn default_catalog_with_o6() -> Vec<NamedStructure> {
    catalog_names().into_iter().map(|n| NamedStructure::by_name(n).unwrap()).collect()
}
