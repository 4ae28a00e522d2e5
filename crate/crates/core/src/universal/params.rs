use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{int, modular::legendre, val, Prime, Rational};
use crate::error::{Error, Result};
use crate::ring::{auxiliary_prime, PhiSpec};

/// The enlarged prime set S (odd size, containing 2 and the user's primes),
/// pi = product of S, and a unit u with X^2 - X - u^2 irreducible mod every
/// prime of S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnlargedParams {
    pub s_user: BTreeSet<Prime>,
    pub s: BTreeSet<Prime>,
    pub pi: Rational,
    pub u: Rational,
    pub phi: PhiSpec,
}

impl EnlargedParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvariantViolated(m));
        if !self.s.is_superset(&self.s_user) || !self.s.iter().any(|p| p.get() == 2) {
            return fail("S must contain 2 and every user prime".into());
        }
        if self.s.len() % 2 == 0 {
            return fail(format!("|S| = {} is even", self.s.len()));
        }
        for &p in &self.s {
            if val(&self.pi, p) != 1 {
                return fail(format!("v_{p}(pi) != 1"));
            }
            if !residue_irreducible(&self.u, p) {
                return fail(format!("X^2 - X - u^2 has a root mod {p}"));
            }
        }
        let prod: Rational = self.s.iter().map(|p| Rational::from_integer(p.big())).product();
        if prod != self.pi {
            return fail("pi has odd valuation outside S".into());
        }
        Ok(())
    }
}

/// For a p-unit u: whether X^2 - X - u^2 has no root modulo p.
fn residue_irreducible(u: &Rational, p: Prime) -> bool {
    if val(u, p) != 0 {
        return false;
    }
    if p.get() == 2 {
        // x^2 - x is always even, u^2 is odd
        return true;
    }
    let disc = int(1) + int(4) * u * u;
    if val(&disc, p) != 0 {
        return false;
    }
    legendre(disc.numer(), p.get()) * legendre(disc.denom(), p.get()) == -1
}

pub fn enlarge(s_user: &BTreeSet<Prime>) -> Result<EnlargedParams> {
    if s_user.is_empty() {
        return Err(Error::PreconditionViolated("empty set of primes".into()));
    }
    let mut s = s_user.clone();
    s.insert(Prime::new(2)?);
    if s.len() % 2 == 0 {
        s.insert(auxiliary_prime(&s));
    }
    let pi: Rational = s.iter().map(|p| Rational::from_integer(p.big())).product();
    // irreducibility only depends on u modulo the primes of S
    let bound: BigInt = s.iter().map(|p| p.big()).product();
    let mut k = BigInt::one();
    let u = loop {
        if k > bound {
            return Err(Error::SearchBudgetExceeded(format!("no u below {bound}")));
        }
        let u = Rational::from_integer(k.clone());
        if s.iter().all(|&p| residue_irreducible(&u, p)) {
            break u;
        }
        k += 1;
    };
    let phi = PhiSpec::new(s.clone(), u.clone(), pi.clone())?;
    let params = EnlargedParams {
        s_user: s_user.clone(),
        s,
        pi,
        u,
        phi,
    };
    params.validate()?;
    Ok(params)
}
