use num_traits::{Signed, Zero};

use std::collections::BTreeSet;

use crate::arith::{support, FactorConfig, Place, Prime, Rational};
use crate::error::{Error, Result};

use crate::arith::{split_unit, unit_legendre, unit_mod8};

/// Hilbert symbol (s, t) at a place: +1 iff z^2 = s x^2 + t y^2 has a
/// nontrivial solution over the completion.
pub fn hilbert_symbol(s: &Rational, t: &Rational, place: Place) -> Result<i8> {
    if s.is_zero() || t.is_zero() {
        return Err(Error::ZeroInput);
    }
    let p = match place {
        Place::Real => {
            return Ok(if s.is_negative() && t.is_negative() { -1 } else { 1 });
        }
        Place::Finite(p) => p,
    };
    let (alpha, u) = split_unit(s, p);
    let (beta, v) = split_unit(t, p);
    let odd = |k: i64| k.rem_euclid(2) == 1;
    let sign = if p.get() == 2 {
        let (u8, v8) = (unit_mod8(&u), unit_mod8(&v));
        let eps = |w: u32| (w % 4 == 3) as u32;
        let omega = |w: u32| (w == 3 || w == 5) as u32;
        let e = eps(u8) * eps(v8)
            + if odd(alpha) { omega(v8) } else { 0 }
            + if odd(beta) { omega(u8) } else { 0 };
        if e % 2 == 0 { 1 } else { -1 }
    } else {
        let mut sign = 1i32;
        if odd(alpha) && odd(beta) && p.get() % 4 == 3 {
            sign = -sign;
        }
        if odd(beta) {
            sign *= unit_legendre(&u, p);
        }
        if odd(alpha) {
            sign *= unit_legendre(&v, p);
        }
        sign
    };
    Ok(sign as i8)
}

/// Whether s u^2 + t v^2 = d has a rational solution, by the local-global
/// principle: the Hilbert symbol (s/d, t/d) is +1 at every place.
pub fn diagonal_conic_solvable(s: &Rational, t: &Rational, d: &Rational) -> Result<bool> {
    if s.is_zero() || t.is_zero() || d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let cfg = FactorConfig::default();
    let (alpha, beta) = (s / d, t / d);
    // cheap places first, factoring d is the expensive part
    let two = Prime::new(2)?;
    if hilbert_symbol(&alpha, &beta, Place::Real)? == -1
        || hilbert_symbol(&alpha, &beta, Place::Finite(two))? == -1
    {
        return Ok(false);
    }
    let mut places: BTreeSet<Prime> = support(&alpha, &cfg)?.into_iter().collect();
    places.extend(support(&beta, &cfg)?);
    places.remove(&two);
    for p in places {
        if hilbert_symbol(&alpha, &beta, Place::Finite(p))? == -1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn fin(p: u64) -> Place {
        Place::prime(p).unwrap()
    }

    #[test]
    fn symbol_examples() {
        for place in [fin(2), fin(3), fin(7), Place::Real] {
            assert_eq!(hilbert_symbol(&int(1), &rat(-5, 3), place).unwrap(), 1);
        }
        assert_eq!(hilbert_symbol(&int(-1), &int(-1), fin(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&int(-1), &int(3), fin(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&int(-1), &int(-1), Place::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&int(0), &int(3), fin(3)), Err(Error::ZeroInput));
    }

    #[test]
    fn conic_solvability_matches_solver() {
        let cfg = FactorConfig::default();
        for s in [-6i64, -3, -1, 1, 2, 5, 7] {
            for t in [-10i64, -2, 1, 3, 11] {
                for d in [-5i64, -1, 1, 2, 3, 6, 21] {
                    let (s, t, d) = (int(s), int(t), rat(d, 4));
                    let solved = crate::arith::conic::solve_diagonal(&s, &t, &d, &cfg).unwrap();
                    assert_eq!(diagonal_conic_solvable(&s, &t, &d).unwrap(), solved.is_some());
                }
            }
        }
    }

    #[test]
    fn symmetric_and_s_minus_s_trivial() {
        for s in [-6i64, -3, -1, 2, 5, 7, 12] {
            for t in [-10i64, -2, 3, 11] {
                for place in [fin(2), fin(3), fin(5), fin(11), Place::Real] {
                    let st = hilbert_symbol(&int(s), &int(t), place).unwrap();
                    assert_eq!(st, hilbert_symbol(&int(t), &int(s), place).unwrap());
                }
            }
            for place in [fin(2), fin(3), fin(5), Place::Real] {
                assert_eq!(hilbert_symbol(&int(s), &int(-s), place).unwrap(), 1);
            }
        }
    }
}
