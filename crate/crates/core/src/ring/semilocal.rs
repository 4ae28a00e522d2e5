use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{int, next_prime, quadratic_has_root_local, val, Place, Prime, Rational};
use crate::error::{Error, Result};
use crate::local::{
    construct_with_delta, hilbert_symbol, splits_over_quadratic, QuatAlg, DEFAULT_CONSTRUCT_BUDGET,
};

/// A nonempty finite set of primes, naming the ring of rationals integral at
/// each of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilocalSpec {
    primes: BTreeSet<Prime>,
}

impl SemilocalSpec {
    pub fn new(primes: impl IntoIterator<Item = Prime>) -> Result<Self> {
        let primes: BTreeSet<Prime> = primes.into_iter().collect();
        if primes.is_empty() {
            return Err(Error::PreconditionViolated("empty set of primes".into()));
        }
        Ok(SemilocalSpec { primes })
    }

    pub fn from_u64(primes: &[u64]) -> Result<Self> {
        Self::new(primes.iter().map(|&p| Prime::new(p)).collect::<Result<Vec<_>>>()?)
    }

    pub fn primes(&self) -> &BTreeSet<Prime> {
        &self.primes
    }
}

impl fmt::Display for SemilocalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_primes(&self.primes))
    }
}

pub fn join_primes<'a>(primes: impl IntoIterator<Item = &'a Prime>) -> String {
    primes.into_iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// x is integral at every prime of `primes`.
pub fn integral_at_all<'a>(x: &Rational, primes: impl IntoIterator<Item = &'a Prime>) -> bool {
    primes.into_iter().all(|&p| val(x, p) >= 0)
}

pub fn in_semilocal(spec: &SemilocalSpec, x: &Rational) -> bool {
    integral_at_all(x, &spec.primes)
}

pub fn in_units(spec: &SemilocalSpec, x: &Rational) -> bool {
    if x.is_zero() {
        return false;
    }
    in_semilocal(spec, &(x + x.recip()))
}

/// Parameters (Q, pi, a) for which the ring is {0} together with the x making
/// Q split over the splitting field of X^2 - X - (a - 1/(pi x^2)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilocalDefinition {
    pub q: QuatAlg,
    pub pi: Rational,
    pub a: Rational,
    pub spec: SemilocalSpec,
}

impl SemilocalDefinition {
    /// Checks every defining condition; returns the first failure.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvariantViolated(m));
        if !self.q.is_nonreal() {
            return fail(format!("{} is ramified at the real place", self.q));
        }
        let delta = &self.q.delta().finite;
        if !self.spec.primes.is_subset(delta) {
            return fail(format!("S is not contained in the ramification set of {}", self.q));
        }
        let s = int(1) + int(4) * &self.a;
        for &p in delta {
            if val(&self.pi, p) != 1 {
                return fail(format!("v_{p}(pi) != 1"));
            }
            if val(&self.a, p) < 0 || val(&s, p) != 0 {
                return fail(format!("a or 1+4a is not a unit-compatible value at {p}"));
            }
            if quadratic_has_root_local(&self.a, Place::Finite(p)) != self.spec.primes.contains(&p) {
                return fail(format!("root condition for X^2 - X - a fails at {p}"));
            }
        }
        Ok(())
    }
}

/// Smallest odd prime outside `primes`.
pub fn auxiliary_prime(primes: &BTreeSet<Prime>) -> Prime {
    let mut q = 3;
    while primes.iter().any(|p| p.get() == q) {
        q = next_prime(q);
    }
    Prime::new(q).expect("next_prime returns primes")
}

pub fn synthesize_semilocal(spec: &SemilocalSpec) -> Result<SemilocalDefinition> {
    let mut plus = spec.primes.clone();
    if plus.len() % 2 == 1 {
        plus.insert(auxiliary_prime(&spec.primes));
    }
    let q = construct_with_delta(&plus, DEFAULT_CONSTRUCT_BUDGET)?;
    let delta: Vec<Prime> = q.delta().finite.iter().copied().collect();
    let radical = delta
        .iter()
        .fold(Rational::one(), |acc, p| acc * Rational::from_integer(p.big()));
    let pi = pi_unit_factor(&q, &delta)? * radical;
    // the root conditions only depend on a modulo 2^5 and the odd primes of delta
    let modulus: BigInt = delta
        .iter()
        .map(|p| if p.get() == 2 { BigInt::from(32) } else { p.big() })
        .product();
    let mut k = BigInt::one();
    while k <= modulus {
        let a = Rational::from_integer(k.clone());
        let defn = SemilocalDefinition {
            q: q.clone(),
            pi: pi.clone(),
            a,
            spec: spec.clone(),
        };
        if defn.validate().is_ok() {
            return Ok(defn);
        }
        k += 1;
    }
    Err(Error::SearchBudgetExceeded(format!("no parameter a modulo {modulus}")))
}

/// Unit factor k in pi = k * prod(delta).
///
/// At an odd p in delta the witness conic s A^2 + b M^2 - s b C^2 = t has
/// t = -pi up to squares for every x integral at p, and its C = 0 section is
/// soluble at p exactly when (-s b, -pi)_p = -1. Where that fails every
/// witness has p in the denominator of C. Every prime of k ends up in some
/// witness denominator as well, so k minimizes |k| times the product of the
/// obstructed primes, smallest |k| first.
fn pi_unit_factor(q: &QuatAlg, delta: &[Prime]) -> Result<Rational> {
    let s = int(1) + int(4) * q.a();
    let sb = -(s * q.b());
    let radical: i64 = delta.iter().map(|p| p.get() as i64).product();
    let cost = |k: i64| -> Result<u64> {
        let pi = -int(k * radical);
        let mut c = k.unsigned_abs();
        for &p in delta.iter().filter(|p| p.get() != 2) {
            if hilbert_symbol(&sb, &pi, Place::Finite(p))? == 1 {
                c = c.saturating_mul(p.get());
            }
        }
        Ok(c)
    };
    let mut best = (cost(1)?, 1);
    let mut m = 1;
    while (m as u64) < best.0 && m <= 10_000 {
        for k in [m, -m] {
            if num_integer::Integer::gcd(&k, &radical) != 1 {
                continue;
            }
            let c = cost(k)?;
            if c < best.0 {
                best = (c, k);
            }
        }
        m += 1;
    }
    Ok(int(best.1))
}

pub fn member_via_definition(defn: &SemilocalDefinition, x: &Rational) -> bool {
    if x.is_zero() {
        return true;
    }
    let shifted = &defn.a - (&defn.pi * x * x).recip();
    splits_over_quadratic(&defn.q, &int(1), &-shifted).expect("definition algebras are nonreal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn oracle_examples() {
        let s23 = SemilocalSpec::from_u64(&[2, 3]).unwrap();
        assert!(in_semilocal(&s23, &rat(1, 5)));
        assert!(!in_semilocal(&s23, &rat(1, 6)));
        let s2 = SemilocalSpec::from_u64(&[2]).unwrap();
        assert!(in_semilocal(&s2, &int(0)));
        assert!(in_units(&s2, &int(3)));
        assert!(!in_units(&s2, &int(2)));
        assert!(!in_units(&s2, &int(0)));
        assert!(SemilocalSpec::from_u64(&[]).is_err());
    }

    #[test]
    fn synthesis_examples() {
        let d = synthesize_semilocal(&SemilocalSpec::from_u64(&[2]).unwrap()).unwrap();
        assert_eq!(d.q, QuatAlg::new(rat(-1, 2), int(3)).unwrap());
        assert_eq!((d.pi.clone(), d.a.clone()), (int(6), int(4)));
        assert!(member_via_definition(&d, &int(0)));
        assert!(member_via_definition(&d, &rat(1, 3)));
        assert!(!member_via_definition(&d, &rat(1, 2)));

        let d = synthesize_semilocal(&SemilocalSpec::from_u64(&[2, 3]).unwrap()).unwrap();
        assert_eq!((d.pi.clone(), d.a.clone()), (int(6), int(6)));

        let d = synthesize_semilocal(&SemilocalSpec::from_u64(&[97]).unwrap()).unwrap();
        d.validate().unwrap();
        for x in [rat(1, 97), rat(97, 2), rat(1, 3), int(5)] {
            assert_eq!(member_via_definition(&d, &x), in_semilocal(&d.spec, &x));
        }
    }

    #[test]
    fn validation_catches_bad_a() {
        let mut d = synthesize_semilocal(&SemilocalSpec::from_u64(&[2]).unwrap()).unwrap();
        d.a = int(2);
        assert!(d.validate().is_err());
    }
}
