//! Universal definitions of rings of S-integers via the complement
//! characterization: enlargement of S, the function g, witnesses, and the
//! assembled certificate.

mod certificate;
mod gfun;
mod params;
mod witness;

pub use certificate::{
    assemble_certificate, in_s_integers, Route, UniversalCertificate,
    UniversalDecision,
};
pub use gfun::{g_eval, g_property_check, GClause};
pub use params::{enlarge, EnlargedParams};
pub use witness::{
    complement_primes, construct_witness, in_complement, lemma_equivalence_check,
    random_phi_pair, random_s_unit, rhs_predicate, rhs_value, witness_algebra, LemmaReport,
    WitnessPair, DEFAULT_WITNESS_BUDGET,
};
