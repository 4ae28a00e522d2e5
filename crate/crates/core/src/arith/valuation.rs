use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{is_prime_u64, Rational};
use crate::error::{Error, Result};

/// A value of the p-adic valuation: an integer, or +infinity for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn scale(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v * k),
            Valuation::Infinity if k == 0 => Valuation::Finite(0),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl PartialEq<i64> for Valuation {
    fn eq(&self, other: &i64) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<i64> for Valuation {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("+inf"),
        }
    }
}

/// A rational prime, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A place of the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Prime),
    Real,
}

impl Place {
    pub fn prime(p: u64) -> Result<Place> {
        Prime::new(p).map(Place::Finite)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Real => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "real" | "oo" | "\u{221e}" => Ok(Place::Real),
            t => {
                let p: u64 = t
                    .parse()
                    .map_err(|_| Error::PreconditionViolated(format!("bad place {t:?}")))?;
                Place::prime(p)
            }
        }
    }
}

/// Exponent of p in a nonzero integer.
pub fn val_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinity;
    }
    if let Some(mut m) = n.to_i128() {
        let p = p as i128;
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        return Valuation::Finite(k);
    }
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        k += 1;
    }
    Valuation::Finite(k)
}

/// p-adic valuation of a rational.
pub fn val(x: &Rational, p: Prime) -> Valuation {
    match val_int(x.numer(), p.get()) {
        Valuation::Infinity => Valuation::Infinity,
        Valuation::Finite(n) => {
            let d = val_int(x.denom(), p.get()).finite().unwrap_or(0);
            Valuation::Finite(n - d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(val(&int(12), p(2)), Valuation::Finite(2));
        assert_eq!(val(&rat(2, 9), p(3)), Valuation::Finite(-2));
        assert_eq!(val(&int(0), p(5)), Valuation::Infinity);
    }

    #[test]
    fn infinity_dominates() {
        assert!(Valuation::Infinity > Valuation::Finite(i64::MAX));
        assert_eq!(Valuation::Infinity + Valuation::Finite(-3), Valuation::Infinity);
        assert_eq!(Valuation::Infinity.to_string(), "+inf");
    }

    #[test]
    fn composite_place_rejected() {
        assert_eq!(Place::prime(15), Err(Error::NotPrime(15)));
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Real);
        assert_eq!("7".parse::<Place>().unwrap(), Place::prime(7).unwrap());
    }
}
