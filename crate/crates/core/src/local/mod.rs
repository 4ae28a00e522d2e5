//! Hilbert symbols, quaternion algebras and their ramification, Poonen sets.

mod hilbert;
mod poonen;
mod quaternion;

pub use hilbert::{diagonal_conic_solvable, hilbert_symbol};
pub use poonen::{in_poonen_set, poonen_decompose};
pub use quaternion::{
    construct_with_delta, delta, is_split, nonsplit_local_invariant, splits_over_quadratic,
    NonsplitClause, QuatAlg, RamSet, DEFAULT_CONSTRUCT_BUDGET,
};
