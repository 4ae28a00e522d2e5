use num_bigint::BigInt;
use num_traits::Zero;

use super::{reduce_mod, val, Prime, Rational, Valuation};
use crate::error::{Error, Result};

/// A polynomial with coefficients in the valuation ring at a fixed prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomialLocal {
    /// Coefficients, constant term first.
    coeffs: Vec<Rational>,
    prime: Prime,
}

impl IntegerPolynomialLocal {
    pub fn new(coeffs: Vec<Rational>, prime: Prime) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| val(c, prime) < 0) {
            return Err(Error::PreconditionViolated(format!(
                "coefficient {c} is not integral at {prime}"
            )));
        }
        Ok(IntegerPolynomialLocal { coeffs, prime })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative_at(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * x + c * Rational::from_integer(BigInt::from(i));
        }
        acc
    }
}

/// Newton iteration from `a0` until v(f(a)) >= `precision`.
///
/// Requires v(a0) >= 0 and v(f(a0)) > 2 v(f'(a0)). Each iterate is reduced to
/// an integer modulo p^(precision + v(f'(a0)) + 1), which keeps the numbers
/// small without disturbing the residual bound.
pub fn hensel_lift(f: &IntegerPolynomialLocal, a0: &Rational, precision: u32) -> Result<Rational> {
    let p = f.prime();
    if val(a0, p) < 0 {
        return Err(Error::HypothesisViolated(format!("v({a0}) < 0")));
    }
    let fa = f.eval(a0);
    let dfa = f.derivative_at(a0);
    let (vf, vd) = (val(&fa, p), val(&dfa, p));
    let satisfied = match (vf, vd) {
        (Valuation::Infinity, Valuation::Finite(_)) => true,
        (Valuation::Finite(a), Valuation::Finite(b)) => a > 2 * b,
        _ => false,
    };
    if !satisfied {
        return Err(Error::HypothesisViolated(format!(
            "v(f(a0)) = {vf} is not greater than 2 v(f'(a0)) = 2*{vd}"
        )));
    }
    let e = vd.finite().expect("checked finite");
    let target = precision as i64;
    if vf >= target {
        return Ok(a0.clone());
    }
    let modulus = BigInt::from(p.get()).pow((target + e + 1) as u32);
    let mut a = Rational::from_integer(reduce_mod(a0, &modulus).expect("a0 is p-integral"));
    loop {
        let fa = f.eval(&a);
        if val(&fa, p) >= target {
            return Ok(a);
        }
        let step = fa / f.derivative_at(&a);
        let next = &a - step;
        a = Rational::from_integer(reduce_mod(&next, &modulus).expect("iterate stays p-integral"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn poly(c: &[i64], p: u64) -> IntegerPolynomialLocal {
        IntegerPolynomialLocal::new(c.iter().map(|&x| int(x)).collect(), Prime::new(p).unwrap()).unwrap()
    }

    #[test]
    fn exact_root_is_kept() {
        let f = poly(&[-2, -1, 1], 3);
        assert_eq!(hensel_lift(&f, &int(2), 10).unwrap(), int(2));
    }

    #[test]
    fn square_root_of_17_two_adically() {
        let f = poly(&[-17, 0, 1], 2);
        let p2 = Prime::new(2).unwrap();
        let a = hensel_lift(&f, &int(1), 8).unwrap();
        assert!(val(&f.eval(&a), p2) >= 8);
        assert!(val(&(&a - int(1)), p2) > 1);
    }

    #[test]
    fn hypothesis_checked() {
        let f = poly(&[-4, -1, 1], 3);
        assert!(matches!(hensel_lift(&f, &int(0), 5), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn non_integral_coefficients_rejected() {
        let p = Prime::new(3).unwrap();
        assert!(IntegerPolynomialLocal::new(vec![crate::arith::rat(1, 3)], p).is_err());
    }
}
