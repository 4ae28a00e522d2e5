//! Exact arithmetic over the rationals: valuations, factorization, weak
//! approximation, Hensel lifting and local square classes.

mod approx;
pub mod conic;
mod factor;
mod hensel;
pub mod modular;
mod squares;
mod valuation;

pub use approx::weak_approx;
pub use factor::{
    factor_int, factor_uint, is_prime_u64, next_prime, primes_below, support, FactorConfig,
};
pub use hensel::{hensel_lift, IntegerPolynomialLocal};
pub use squares::{
    is_rational_square, is_square_local, quadratic_has_root_local, rational_sqrt,
    squarefree_integer_part,
};
pub(crate) use squares::{split_unit, unit_legendre, unit_mod8};
pub use valuation::{val, val_int, Place, Prime, Valuation};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// The rationals, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// max(|numerator|, denominator)
pub fn height(x: &Rational) -> BigUint {
    let n = x.numer().magnitude().clone();
    let d = x.denom().magnitude().clone();
    n.max(d)
}

pub fn height_u64(x: &Rational) -> u64 {
    u64::try_from(height(x)).unwrap_or(u64::MAX)
}

/// Parses `n`, `-n` or `n/d`. Accepts ASCII minus and U+2212.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Reduces a p-integral rational modulo `modulus` (a power of p, or any
/// modulus coprime to the denominator). Returns `None` if the denominator is
/// not invertible.
pub fn reduce_mod(x: &Rational, modulus: &BigInt) -> Option<BigInt> {
    let inv = modular::mod_inverse(&x.denom().mod_floor(modulus), modulus)?;
    Some((x.numer() * inv).mod_floor(modulus))
}

/// All rationals of height at most `max_height`, ordered by height, then by
/// denominator, then by numerator.
pub fn rationals_by_height(max_height: u64) -> impl Iterator<Item = Rational> {
    std::iter::once(Rational::zero()).chain((1..=max_height).flat_map(|h| {
        let mut out = Vec::new();
        for d in 1..=h {
            let nums: Vec<u64> = if d == h {
                (1..=h).filter(|n| n.gcd(&h) == 1).collect()
            } else if h.gcd(&d) == 1 {
                vec![h]
            } else {
                Vec::new()
            };
            for n in nums {
                let r = Rational::new(BigInt::from(n), BigInt::from(d));
                out.push(r.clone());
                out.push(-r);
            }
        }
        out
    }))
}
