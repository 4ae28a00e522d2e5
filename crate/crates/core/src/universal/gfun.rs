use num_traits::Zero;

use crate::arith::{int, is_square_local, val, Place, Prime, Rational};
use crate::error::{Error, Result};

/// g(a, b) = 16 a^4 / (1 + 4 a^2) - ((b - 1)^2 / b)^2
pub fn g_eval(a: &Rational, b: &Rational) -> Result<Rational> {
    let s = int(1) + int(4) * a * a;
    if s.is_zero() || b.is_zero() {
        return Err(Error::DegenerateInput("(1 + 4a^2) b = 0".into()));
    }
    let a2 = a * a;
    let first = int(16) * &a2 * &a2 / s;
    let bm = b - int(1);
    let second = &bm * &bm / b;
    Ok(first - &second * &second)
}

/// One checked property of g at an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GClause {
    /// 1 + 4a^2 and b units, g integral
    UnitsGiveIntegral,
    /// 1 + 4a^2 a unit, v(b) != 0, and v(g) = -2|v(b)|
    PoleOrder(i64),
    /// 1 + 4a^2 a non-square and g integral, so both are units
    IntegralForcesUnits,
}

/// Checks every clause of the g lemma whose hypotheses hold for (a, b, p) and
/// returns those that applied.
pub fn g_property_check(a: &Rational, b: &Rational, p: Prime) -> Result<Vec<GClause>> {
    if p.get() == 2 {
        return Err(Error::PreconditionViolated("p must be odd".into()));
    }
    let g = g_eval(a, b)?;
    let s = int(1) + int(4) * a * a;
    let (vs, vb, vg) = (val(&s, p), val(b, p), val(&g, p));
    let mut out = Vec::new();
    if vs == 0 && vb == 0 {
        if vg < 0 {
            return Err(Error::InvariantViolated(format!("v_{p}(g({a}, {b})) = {vg} < 0 for units")));
        }
        out.push(GClause::UnitsGiveIntegral);
    }
    if vs == 0 && vb != 0 {
        let expected = -2 * vb.finite().expect("b is nonzero").abs();
        if vg != expected {
            return Err(Error::InvariantViolated(format!(
                "v_{p}(g({a}, {b})) = {vg}, expected {expected}"
            )));
        }
        out.push(GClause::PoleOrder(expected));
    }
    if !is_square_local(&s, Place::Finite(p)) && vg >= 0 {
        if vs != 0 || vb != 0 {
            return Err(Error::InvariantViolated(format!(
                "g({a}, {b}) integral at {p} without unit hypotheses"
            )));
        }
        out.push(GClause::IntegralForcesUnits);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_eval(&int(0), &int(1)).unwrap(), int(0));
        assert_eq!(g_eval(&int(1), &int(2)).unwrap(), rat(59, 20));
        assert_eq!(g_eval(&int(1), &int(3)).unwrap(), rat(64, 45));
        assert_eq!(val(&g_eval(&int(1), &int(3)).unwrap(), p(3)), -2);
        assert!(g_eval(&int(1), &int(0)).is_err());
    }

    #[test]
    fn clause_examples() {
        assert_eq!(g_property_check(&int(1), &int(3), p(3)).unwrap(), vec![GClause::PoleOrder(-2)]);
        assert!(g_property_check(&int(1), &int(2), p(3))
            .unwrap()
            .contains(&GClause::UnitsGiveIntegral));
        assert_eq!(g_property_check(&int(1), &int(1), p(5)).unwrap(), vec![]);
        assert!(g_property_check(&int(1), &int(1), p(2)).is_err());
    }
}
