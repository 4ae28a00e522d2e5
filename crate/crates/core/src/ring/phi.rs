use std::collections::BTreeSet;

use num_traits::Zero;

use super::{encode_pair, ProductEncoding};
use crate::arith::{val, Prime, Rational};
use crate::error::{Error, Result};

/// Pairs (a, b) with b a unit at every prime of S and a = u modulo each of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSpec {
    pub primes: BTreeSet<Prime>,
    pub u: Rational,
    pub pi: Rational,
}

impl PhiSpec {
    pub fn new(primes: BTreeSet<Prime>, u: Rational, pi: Rational) -> Result<Self> {
        for &p in &primes {
            if val(&u, p) != 0 || val(&pi, p) != 1 {
                return Err(Error::PreconditionViolated(format!(
                    "u must be a unit and pi a uniformizer at {p}"
                )));
            }
        }
        Ok(PhiSpec { primes, u, pi })
    }
}

pub fn in_phi(spec: &PhiSpec, a: &Rational, b: &Rational) -> bool {
    let diff = a - &spec.u;
    spec.primes
        .iter()
        .all(|&p| val(b, p) == 0 && val(&diff, p) >= 1)
}

/// F((b^2 + 1) / b, (a - u) / pi); integral at S exactly when (a, b) is in Phi.
pub fn phi_reduction_value(
    spec: &PhiSpec,
    enc: &ProductEncoding,
    a: &Rational,
    b: &Rational,
) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let first = (b * b + Rational::from_integer(1.into())) / b;
    let second = (a - &spec.u) / &spec.pi;
    Ok(encode_pair(enc, &first, &second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::ring::{build_encoding, in_semilocal, SemilocalSpec};

    #[test]
    fn phi_examples() {
        let s = SemilocalSpec::from_u64(&[2]).unwrap();
        let spec = PhiSpec::new(s.primes().clone(), int(1), int(2)).unwrap();
        assert!(in_phi(&spec, &int(3), &int(1)));
        assert!(!in_phi(&spec, &int(2), &int(1)));
        assert!(!in_phi(&spec, &int(3), &int(2)));
        let enc = build_encoding(&s).unwrap();
        for (a, b) in [(3, 1), (2, 1), (3, 2), (1, 1), (5, 7)] {
            let v = phi_reduction_value(&spec, &enc, &int(a), &int(b)).unwrap();
            assert_eq!(in_semilocal(&s, &v), in_phi(&spec, &int(a), &int(b)));
        }
        assert_eq!(phi_reduction_value(&spec, &enc, &int(1), &int(0)), Err(Error::ZeroInput));
    }
}
