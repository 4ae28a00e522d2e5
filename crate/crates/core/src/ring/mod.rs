//! Semilocal rings: direct oracles, quaternion-based definitions, product
//! encodings of tuples, and the set Phi.

mod encoding;
mod phi;
mod semilocal;

pub use encoding::{build_encoding, encode_pair, encode_tuple, LocalFactor, ProductEncoding};
pub use phi::{in_phi, phi_reduction_value, PhiSpec};
pub use semilocal::{
    auxiliary_prime, in_semilocal, in_units, integral_at_all, join_primes, member_via_definition,
    synthesize_semilocal, SemilocalDefinition, SemilocalSpec,
};
