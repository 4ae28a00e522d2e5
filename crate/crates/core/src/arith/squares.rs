use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::legendre;
use super::{factor_int, val, FactorConfig, Place, Prime, Rational};
use crate::error::Result;

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The square root of `x` in the rationals, if it has one.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_rational_square(x: &Rational) -> bool {
    rational_sqrt(x).is_some()
}

/// Strips the p-part off a nonzero rational: returns (v_p(x), x / p^v).
pub(crate) fn split_unit(x: &Rational, p: Prime) -> (i64, Rational) {
    let v = val(x, p).finite().expect("split_unit on zero");
    let pk = BigInt::from(p.get()).pow(v.unsigned_abs() as u32);
    let u = if v >= 0 {
        x / Rational::from_integer(pk)
    } else {
        x * Rational::from_integer(pk)
    };
    (v, u)
}

/// Residue of a 2-adic unit modulo 8.
pub(crate) fn unit_mod8(u: &Rational) -> u32 {
    // d^-1 = d mod 8 for odd d
    let n = u.numer().mod_floor(&BigInt::from(8)).to_u32().unwrap_or(0);
    let d = u.denom().mod_floor(&BigInt::from(8)).to_u32().unwrap_or(0);
    (n * d) % 8
}

/// Legendre symbol of a p-adic unit (odd p).
pub(crate) fn unit_legendre(u: &Rational, p: Prime) -> i32 {
    legendre(u.numer(), p.get()) * legendre(u.denom(), p.get())
}

/// Whether `x` is a square in the completion of the rationals at `place`.
pub fn is_square_local(x: &Rational, place: Place) -> bool {
    if x.is_zero() {
        return true;
    }
    match place {
        Place::Real => x.is_positive(),
        Place::Finite(p) => {
            let (v, u) = split_unit(x, p);
            if v % 2 != 0 {
                return false;
            }
            if p.get() == 2 {
                unit_mod8(&u) == 1
            } else {
                unit_legendre(&u, p) == 1
            }
        }
    }
}

/// Whether X^2 - X - a has a root over the completion at `place`.
pub fn quadratic_has_root_local(a: &Rational, place: Place) -> bool {
    let disc = Rational::one() + Rational::from_integer(BigInt::from(4)) * a;
    is_square_local(&disc, place)
}

/// Writes a nonzero integer as `core * root^2` with `core` squarefree (sign kept on `core`).
pub fn squarefree_integer_part(n: &BigInt, cfg: &FactorConfig) -> Result<(BigInt, BigInt)> {
    let mut core = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut root = BigInt::one();
    for (p, k) in factor_int(n, cfg)? {
        let p = BigInt::from(p);
        if k % 2 == 1 {
            core *= &p;
        }
        root *= p.pow(k / 2);
    }
    Ok((core, root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn fin(p: u64) -> Place {
        Place::prime(p).unwrap()
    }

    #[test]
    fn quadratic_root_examples() {
        assert!(quadratic_has_root_local(&int(2), fin(2)));
        assert!(!quadratic_has_root_local(&int(4), fin(3)));
        for place in [fin(2), fin(3), fin(5), Place::Real] {
            assert!(quadratic_has_root_local(&int(0), place));
        }
        assert!(!quadratic_has_root_local(&int(-1), Place::Real));
    }

    #[test]
    fn two_adic_squares_are_one_mod_eight() {
        assert!(is_square_local(&int(17), fin(2)));
        assert!(!is_square_local(&int(5), fin(2)));
        assert!(is_square_local(&rat(-7, 1), fin(2)));
        assert!(is_square_local(&rat(1, 17), fin(2)));
        assert!(!is_square_local(&int(2), fin(2)));
        assert!(is_square_local(&int(4), fin(2)));
    }

    #[test]
    fn squarefree_decomposition() {
        let cfg = FactorConfig::default();
        let (c, r) = squarefree_integer_part(&BigInt::from(-72), &cfg).unwrap();
        assert_eq!((c, r), (BigInt::from(-2), BigInt::from(6)));
    }

    #[test]
    fn rational_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert!(!is_rational_square(&rat(-9, 4)));
        assert!(is_rational_square(&int(0)));
    }
}
