use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::hilbert_symbol;
use crate::arith::{
    fmt_rational, int, is_rational_square, is_square_local, support, val, FactorConfig, Place,
    Prime, Rational,
};
use crate::error::{Error, Result};

/// Ramification data of a quaternion algebra over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RamSet {
    pub finite: BTreeSet<Prime>,
    pub real_ramified: bool,
}

impl RamSet {
    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && !self.real_ramified
    }

    /// Number of ramified places, the real one included.
    pub fn len(&self) -> usize {
        self.finite.len() + usize::from(self.real_ramified)
    }

    pub fn contains(&self, p: Prime) -> bool {
        self.finite.contains(&p)
    }
}

impl fmt::Display for RamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.finite.iter().map(|p| p.to_string()).collect();
        if self.real_ramified {
            parts.push("inf".into());
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The quaternion algebra [a, b) = K + Ku + Kv + Kuv with u^2 - u = a,
/// v^2 = b, uv + vu = v. Locally it splits exactly where the Hilbert symbol
/// of the standard pair (1 + 4a, b) is +1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatAlg {
    a: Rational,
    b: Rational,
    s: Rational,
    ram: RamSet,
}

impl QuatAlg {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        Self::with_config(a, b, &FactorConfig::default())
    }

    pub fn with_config(a: Rational, b: Rational, cfg: &FactorConfig) -> Result<Self> {
        let s = int(1) + int(4) * &a;
        if s.is_zero() || b.is_zero() {
            return Err(Error::DegenerateAlgebra);
        }
        let ram = compute_delta(&s, &b, cfg)?;
        Ok(QuatAlg { a, b, s, ram })
    }

    /// The algebra whose standard pair is (s, b), i.e. a = (s - 1) / 4.
    pub fn from_standard(s: Rational, b: Rational) -> Result<Self> {
        Self::new((s - int(1)) / int(4), b)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// 1 + 4a
    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn delta(&self) -> &RamSet {
        &self.ram
    }

    pub fn is_split(&self) -> bool {
        self.ram.is_empty()
    }

    pub fn is_nonreal(&self) -> bool {
        !self.ram.real_ramified
    }

    pub fn split_at(&self, place: Place) -> bool {
        match place {
            Place::Real => !self.ram.real_ramified,
            Place::Finite(p) => !self.ram.contains(p),
        }
    }
}

impl fmt::Display for QuatAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", fmt_rational(&self.a), fmt_rational(&self.b))
    }
}

fn compute_delta(s: &Rational, b: &Rational, cfg: &FactorConfig) -> Result<RamSet> {
    let mut places: BTreeSet<Prime> = support(s, cfg)?.into_iter().collect();
    places.extend(support(b, cfg)?);
    places.insert(Prime::new(2)?);
    let mut finite = BTreeSet::new();
    for p in places {
        if hilbert_symbol(s, b, Place::Finite(p))? == -1 {
            finite.insert(p);
        }
    }
    let real_ramified = hilbert_symbol(s, b, Place::Real)? == -1;
    Ok(RamSet {
        finite,
        real_ramified,
    })
}

/// Ramification set of [a, b).
pub fn delta(q: &QuatAlg) -> &RamSet {
    q.delta()
}

pub fn is_split(q: &QuatAlg) -> bool {
    q.is_split()
}

/// Whether `q` splits over the splitting field of X^2 - cX + d.
pub fn splits_over_quadratic(q: &QuatAlg, c: &Rational, d: &Rational) -> Result<bool> {
    if !q.is_nonreal() {
        return Err(Error::RealRamified);
    }
    let disc = c * c - int(4) * d;
    if is_rational_square(&disc) {
        return Ok(q.is_split());
    }
    Ok(q
        .delta()
        .finite
        .iter()
        .all(|&p| !is_square_local(&disc, Place::Finite(p))))
}

/// Which clause of the local non-splitting criterion holds at a ramified prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonsplitClause {
    /// v(b) is odd
    OddB,
    /// p odd and v(1 + 4a) odd
    OddDiscriminant,
    /// p = 2 and v(a) < 0
    DyadicPole,
}

/// Checks the necessary condition for local non-splitting at a prime of Δ.
pub fn nonsplit_local_invariant(q: &QuatAlg, p: Prime) -> Result<NonsplitClause> {
    if !q.delta().contains(p) {
        return Err(Error::PreconditionViolated(format!("{p} is not in the ramification set of {q}")));
    }
    let va = val(q.a(), p);
    if va > 0 {
        return Err(Error::InvariantViolated(format!("v_{p}(a) = {va} > 0 at a ramified prime of {q}")));
    }
    let odd = |v: crate::arith::Valuation| v.finite().is_some_and(|k| k.rem_euclid(2) == 1);
    if odd(val(q.b(), p)) {
        Ok(NonsplitClause::OddB)
    } else if p.get() != 2 && odd(val(q.s(), p)) {
        Ok(NonsplitClause::OddDiscriminant)
    } else if p.get() == 2 && va < 0 {
        Ok(NonsplitClause::DyadicPole)
    } else {
        Err(Error::InvariantViolated(format!("no clause holds for {q} at {p}")))
    }
}

pub const DEFAULT_CONSTRUCT_BUDGET: usize = 100_000;

/// A nonreal quaternion algebra ramified exactly at the primes of `primes`.
///
/// Candidates are standard pairs (s, b) with b a signed divisor of the product
/// of `primes` and s running over the nonzero integers by absolute value; each
/// is accepted only after its full ramification set has been recomputed.
pub fn construct_with_delta(primes: &BTreeSet<Prime>, budget: usize) -> Result<QuatAlg> {
    if primes.len() % 2 == 1 {
        return Err(Error::OddCardinality(primes.len()));
    }
    let plist: Vec<Prime> = primes.iter().copied().collect();
    let mut divisors = vec![BigInt::one()];
    for p in &plist {
        let more: Vec<BigInt> = divisors.iter().map(|d| d * p.big()).collect();
        divisors.extend(more);
    }
    divisors.sort_by(|x, y| x.cmp(y));
    let bs: Vec<Rational> = divisors
        .iter()
        .flat_map(|d| [Rational::from_integer(d.clone()), -Rational::from_integer(d.clone())])
        .collect();
    let mut tried = 0usize;
    let mut n = 0i64;
    loop {
        n += 1;
        for s in [int(n), int(-n)] {
            for b in &bs {
                tried += 1;
                if tried > budget {
                    return Err(Error::SearchBudgetExceeded(format!(
                        "no algebra with ramification {plist:?} among {budget} candidates"
                    )));
                }
                if hilbert_symbol(&s, b, Place::Real)? == -1 {
                    continue;
                }
                let mut ok = true;
                for &p in &plist {
                    if hilbert_symbol(&s, b, Place::Finite(p))? != -1 {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let q = QuatAlg::from_standard(s.clone(), b.clone())?;
                if q.delta().finite == *primes && q.is_nonreal() {
                    return Ok(q);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn set(v: &[u64]) -> BTreeSet<Prime> {
        v.iter().map(|&p| Prime::new(p).unwrap()).collect()
    }

    #[test]
    fn delta_examples() {
        let q = QuatAlg::new(int(0), int(1)).unwrap();
        assert!(q.is_split());
        let q = QuatAlg::new(rat(-1, 2), int(3)).unwrap();
        assert_eq!(q.delta().finite, set(&[2, 3]));
        assert!(!q.delta().real_ramified);
        assert!(!q.is_split());
        let q = QuatAlg::new(rat(-1, 2), int(-1)).unwrap();
        assert_eq!(q.delta().finite, set(&[2]));
        assert!(q.delta().real_ramified);
        assert!(!q.is_split());
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(QuatAlg::new(rat(-1, 4), int(3)), Err(Error::DegenerateAlgebra));
        assert_eq!(QuatAlg::new(int(2), int(0)), Err(Error::DegenerateAlgebra));
    }

    #[test]
    fn quadratic_splitting_examples() {
        let split = QuatAlg::new(int(0), int(1)).unwrap();
        assert!(splits_over_quadratic(&split, &int(3), &int(7)).unwrap());
        let q = QuatAlg::new(rat(-1, 2), int(3)).unwrap();
        assert!(splits_over_quadratic(&q, &int(0), &int(1)).unwrap());
        assert!(!splits_over_quadratic(&q, &int(0), &int(-1)).unwrap());
        let real = QuatAlg::new(rat(-1, 2), int(-1)).unwrap();
        assert_eq!(splits_over_quadratic(&real, &int(0), &int(1)), Err(Error::RealRamified));
    }

    #[test]
    fn construct_examples() {
        let q = construct_with_delta(&set(&[]), DEFAULT_CONSTRUCT_BUDGET).unwrap();
        assert!(q.is_split());
        let q = construct_with_delta(&set(&[2, 3]), DEFAULT_CONSTRUCT_BUDGET).unwrap();
        assert_eq!((q.a().clone(), q.b().clone()), (rat(-1, 2), int(3)));
        let q = construct_with_delta(&set(&[3, 5]), DEFAULT_CONSTRUCT_BUDGET).unwrap();
        assert_eq!(q.delta().finite, set(&[3, 5]));
        assert!(q.is_nonreal());
        assert_eq!(construct_with_delta(&set(&[3]), 10), Err(Error::OddCardinality(1)));
    }

    #[test]
    fn nonsplit_clauses() {
        let q = QuatAlg::new(rat(-1, 2), int(3)).unwrap();
        let p = |n| Prime::new(n).unwrap();
        assert_eq!(nonsplit_local_invariant(&q, p(3)).unwrap(), NonsplitClause::OddB);
        assert_eq!(nonsplit_local_invariant(&q, p(2)).unwrap(), NonsplitClause::DyadicPole);
        let split = QuatAlg::new(int(0), int(1)).unwrap();
        assert!(matches!(
            nonsplit_local_invariant(&split, p(2)),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
