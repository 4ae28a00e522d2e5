use super::{splits_over_quadratic, QuatAlg};
use crate::arith::{fmt_rational, int, rationals_by_height, val, Rational};
use crate::error::{Error, Result};

/// Whether x is the reduced trace of a non-scalar element of norm 1 in Q.
pub fn in_poonen_set(q: &QuatAlg, x: &Rational) -> Result<bool> {
    splits_over_quadratic(q, x, &int(1))
}

/// Writes x as s + t with both summands in the Poonen set of Q, trying s in
/// order of increasing height up to `height_budget`.
pub fn poonen_decompose(q: &QuatAlg, x: &Rational, height_budget: u64) -> Result<(Rational, Rational)> {
    if !q.is_nonreal() {
        return Err(Error::RealRamified);
    }
    if let Some(p) = q.delta().finite.iter().find(|&&p| val(x, p) < 0) {
        return Err(Error::PreconditionViolated(format!(
            "{} is not integral at {p}",
            fmt_rational(x)
        )));
    }
    for s in rationals_by_height(height_budget) {
        if in_poonen_set(q, &s)? {
            let t = x - &s;
            if in_poonen_set(q, &t)? {
                return Ok((s, t));
            }
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no decomposition of {} with summand height <= {height_budget}",
        fmt_rational(x)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q() -> QuatAlg {
        QuatAlg::new(rat(-1, 2), int(3)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let split = QuatAlg::new(int(0), int(1)).unwrap();
        assert!(in_poonen_set(&split, &int(5)).unwrap());
        assert!(in_poonen_set(&q(), &int(0)).unwrap());
        assert!(!in_poonen_set(&q(), &int(2)).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(poonen_decompose(&q(), &int(0), 100).unwrap(), (int(0), int(0)));
        let x = rat(1, 5);
        let (s, t) = poonen_decompose(&q(), &x, 100).unwrap();
        assert_eq!(&s + &t, x);
        assert!(in_poonen_set(&q(), &s).unwrap() && in_poonen_set(&q(), &t).unwrap());
        assert!(matches!(
            poonen_decompose(&q(), &rat(1, 2), 100),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
