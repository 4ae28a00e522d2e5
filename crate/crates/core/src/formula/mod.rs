//! First-order formulas over the field and ring signatures of the rationals.

mod emit;
#[allow(clippy::module_inception)]
mod formula;
mod poly;
mod prenex;
mod rewrite;
mod sexpr;
mod term;

pub use emit::{
    witness_provably_absent, denominators_fit,
    complement_formula, decide_exists3, emit_semilocal_exists3, encoding_term,
    find_trace_norm_element, quantifier_ledger, semilocal_field_matrix, trace_norm_term,
    universal_formula, universal_ring_formula, ComplementParts, Exists3Decision, QuantifierLedger,
    forced_denominator, Witness, SEMILOCAL_VARS, WITNESS_ATTEMPTS,
};
pub use formula::{fresh_name, Formula};
pub use poly::{Monomial, Poly, PolyVar};
pub use prenex::PrenexExistential;
pub use rewrite::{collapse_poly, collapse_to_single_polynomial, eliminate_inverses, simplify};
pub use sexpr::{formula_to_string, parse_formula, parse_term, term_to_string};
pub use term::{Assignment, Term};
