use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteOrthoposet, LatticeError};

/// On-disk model description. The order is given by its Hasse covers and
/// closed reflexively and transitively on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub ortho: BTreeMap<String, String>,
    pub bottom: String,
    pub top: String,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<ModelFile, LatticeError> {
        serde_json::from_str(text).map_err(|e| LatticeError::File(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<FiniteOrthoposet, LatticeError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| LatticeError::File(format!("{}: {e}", path.display())))?;
        ModelFile::from_json(&text)?.to_poset()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }

    pub fn to_poset(&self) -> Result<FiniteOrthoposet, LatticeError> {
        let n = self.elements.len();
        let index: BTreeMap<&str, Elem> = self.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != n {
            return Err(LatticeError::File("duplicate element names".into()));
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| LatticeError::File(format!("unknown element `{name}`")))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (lo, hi) in &self.covers {
            leq[lookup(lo)?][lookup(hi)?] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let through = leq[k].clone();
                    for (cell, via) in leq[i].iter_mut().zip(through) {
                        *cell |= via;
                    }
                }
            }
        }
        let mut ortho = vec![usize::MAX; n];
        for (from, to) in &self.ortho {
            ortho[lookup(from)?] = lookup(to)?;
        }
        if let Some(missing) = ortho.iter().position(|&e| e == usize::MAX) {
            return Err(LatticeError::File(format!("no orthocomplement given for `{}`", self.elements[missing])));
        }
        FiniteOrthoposet::new(self.elements.clone(), leq, ortho, lookup(&self.bottom)?, lookup(&self.top)?)
    }

    pub fn from_poset(p: &FiniteOrthoposet) -> ModelFile {
        let name = |e: Elem| p.name(e).to_string();
        ModelFile {
            elements: p.names().to_vec(),
            covers: p.covers().into_iter().map(|(lo, hi)| (name(lo), name(hi))).collect(),
            ortho: p.elements().map(|e| (name(e), name(p.ortho(e)))).collect(),
            bottom: name(p.bottom()),
            top: name(p.top()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{by_name, catalog_names};

    #[test]
    fn catalog_round_trips_through_file_format() {
        for name in catalog_names() {
            let p = by_name(name).unwrap();
            let text = ModelFile::from_poset(&p).to_json();
            let back = ModelFile::from_json(&text).unwrap().to_poset().unwrap();
            assert_eq!(back, p, "{name}");
        }
    }

    #[test]
    fn closes_covers_transitively() {
        let text = r#"{"elements":["0","a","a'","1"],
            "covers":[["0","a"],["0","a'"],["a","1"],["a'","1"]],
            "ortho":{"0":"1","1":"0","a":"a'","a'":"a"},
            "bottom":"0","top":"1"}"#;
        let p = ModelFile::from_json(text).unwrap().to_poset().unwrap();
        assert!(p.leq(0, 3));
        assert!(!p.leq(1, 2));
        assert!(p.validate().is_empty());
    }

    #[test]
    fn reports_bad_files() {
        assert!(ModelFile::from_json("{").is_err());
        let text = r#"{"elements":["0","1"],"covers":[["0","2"]],"ortho":{"0":"1","1":"0"},"bottom":"0","top":"1"}"#;
        assert!(matches!(ModelFile::from_json(text).unwrap().to_poset(), Err(LatticeError::File(_))));
        let text = r#"{"elements":["0","1"],"covers":[["0","1"]],"ortho":{"0":"1"},"bottom":"0","top":"1"}"#;
        assert!(matches!(ModelFile::from_json(text).unwrap().to_poset(), Err(LatticeError::File(_))));
    }
}
