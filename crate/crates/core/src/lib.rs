//! Sasaki orthologic: finite models of the logic and a proof search for its
//! fragment without the rule `T`.

pub mod corpus;
pub mod lattice;
pub mod proof;
pub mod semantics;
pub mod terms;

pub use lattice::{FiniteOrthoposet, LatticeError, SasakiOrthoposet};
pub use proof::{decide, prove_rsol_t, Derivation, ProofResult, RuleId};
pub use semantics::{find_countermodel, Countermodel, SasakiModel};
pub use terms::{parse_sequent, parse_term, ParseError, Sequent, Term};
