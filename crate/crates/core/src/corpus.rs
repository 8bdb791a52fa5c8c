//! Exhaustive enumeration of small terms and sequents.

use crate::terms::{Sequent, Term};

/// Every term over `atoms` with at most `max_size` connectives, counting
/// both `&` and `'`. Ordered by size, then structurally; deterministic.
pub fn terms_up_to(atoms: &[&str], max_size: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![atoms.iter().map(|a| Term::atom(*a)).collect()];
    for size in 1..=max_size {
        let mut level: Vec<Term> = by_size[size - 1].iter().cloned().map(Term::ortho).collect();
        for left in 0..size {
            let right = size - 1 - left;
            for l in &by_size[left] {
                for r in &by_size[right] {
                    level.push(Term::sasaki(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}

/// All `lhs <= rhs` with both sides drawn from [`terms_up_to`].
pub fn sequents_up_to(atoms: &[&str], max_size: usize) -> Vec<Sequent> {
    let terms = terms_up_to(atoms, max_size);
    terms.iter().flat_map(|l| terms.iter().map(move |r| Sequent::new(l.clone(), r.clone()))).collect()
}

/// The standard sweep: atoms `a`, `b`, at most three connectives per side.
pub fn standard_corpus() -> Vec<Sequent> {
    sequents_up_to(&["a", "b"], 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts by the recurrence T(0) = k, T(n) = T(n-1) + Σ T(i)T(n-1-i).
    fn count(k: usize, max: usize) -> usize {
        let mut t = vec![k];
        for n in 1..=max {
            let pairs: usize = (0..n).map(|i| t[i] * t[n - 1 - i]).sum();
            t.push(t[n - 1] + pairs);
        }
        t.iter().sum()
    }

    #[test]
    fn counts_match_recurrence() {
        assert_eq!(terms_up_to(&["a", "b"], 3).len(), count(2, 3));
        assert_eq!(count(2, 3), 224);
        assert_eq!(standard_corpus().len(), 224 * 224);
        assert_eq!(terms_up_to(&["a"], 2).len(), count(1, 2));
    }

    #[test]
    fn terms_are_distinct_and_bounded() {
        let terms = terms_up_to(&["a", "b"], 3);
        let set: std::collections::HashSet<_> = terms.iter().collect();
        assert_eq!(set.len(), terms.len());
        assert!(terms.iter().all(|t| t.size() <= 3));
    }
}
