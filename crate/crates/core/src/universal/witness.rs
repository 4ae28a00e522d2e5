use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::{g_eval, EnlargedParams};
use crate::arith::{
    big, fmt_rational, int, is_square_local, modular::crt, next_prime, support, val, FactorConfig,
    Place, Prime, Rational,
};
use crate::error::{Error, Result};
use crate::local::{QuatAlg, RamSet};
use crate::ring::in_phi;

/// Whether x lies in the maximal ideal of some prime outside S.
pub fn in_complement(params: &EnlargedParams, x: &Rational) -> Result<bool> {
    Ok(complement_primes(params, x)?.first().is_some() || x.is_zero())
}

/// Primes w outside S with v_w(x) >= 1, for nonzero x.
pub fn complement_primes(params: &EnlargedParams, x: &Rational) -> Result<Vec<Prime>> {
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let numer = Rational::from_integer(x.numer().clone());
    Ok(support(&numer, &FactorConfig::default())?
        .into_iter()
        .filter(|p| !params.s.contains(p))
        .collect())
}

/// (a, b) in Phi with the ramification of [a^2, b pi) equal to S plus w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub a: Rational,
    pub b: Rational,
    pub w: Prime,
    pub delta_check: RamSet,
}

impl WitnessPair {
    pub fn verify(&self, params: &EnlargedParams) -> Result<()> {
        let fail = |m: &str| Err(Error::InvariantViolated(format!("witness ({}, {}): {m}", self.a, self.b)));
        if !in_phi(&params.phi, &self.a, &self.b) {
            return fail("not in Phi");
        }
        let q = witness_algebra(params, &self.a, &self.b)?;
        let mut expected = params.s.clone();
        expected.insert(self.w);
        if q.delta().finite != expected || !q.is_nonreal() || *q.delta() != self.delta_check {
            return fail("ramification set differs from S and w");
        }
        let s = int(1) + int(4) * &self.a * &self.a;
        if val(&s, self.w) != 0 || val(&self.b, self.w) != 1 {
            return fail("v_w(1 + 4a^2) != 0 or v_w(b) != 1");
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        format!("w={} a={} b={}", self.w, fmt_rational(&self.a), fmt_rational(&self.b))
    }
}

/// The algebra [a^2, b pi).
pub fn witness_algebra(params: &EnlargedParams, a: &Rational, b: &Rational) -> Result<QuatAlg> {
    QuatAlg::new(a * a, b * &params.pi)
}

pub const DEFAULT_WITNESS_BUDGET: usize = 4096;

/// Finds (a, b) in Phi with Delta[a^2, b pi) = S + {w}, v_w(b) = 1 and
/// 1 + 4a^2 a w-unit. Candidates: a runs through a fixed residue class
/// modulo (prod S) w, b through +-w and +-w q for small auxiliary primes q.
pub fn construct_witness(
    params: &EnlargedParams,
    x: &Rational,
    w: Prime,
    budget: usize,
) -> Result<WitnessPair> {
    if params.s.contains(&w) {
        return Err(Error::PreconditionViolated(format!("{w} lies in S")));
    }
    if val(x, w) < 1 {
        return Err(Error::PreconditionViolated(format!(
            "v_{w}({}) < 1",
            fmt_rational(x)
        )));
    }
    let wb = w.big();
    let r = (1..w.get())
        .find(|&r| {
            let d = int(1) + int(4) * int(r as i64) * int(r as i64);
            val(&d, w) == 0 && !is_square_local(&d, Place::Finite(w))
        })
        .ok_or_else(|| Error::SearchBudgetExceeded(format!("no residue class at {w}")))?;
    let mut classes: Vec<(BigInt, BigInt)> = params
        .s
        .iter()
        .map(|p| {
            let pb = p.big();
            let u = crate::arith::reduce_mod(&params.u, &pb).expect("u is a unit on S");
            (u, pb)
        })
        .collect();
    classes.push((BigInt::from(r), wb.clone()));
    let (a0, modulus) = crt(&classes).expect("moduli are distinct primes");
    let mut aux = Vec::new();
    let mut q = 2;
    while aux.len() < 6 {
        q = next_prime(q);
        if !params.s.iter().any(|p| p.get() == q) && q != w.get() {
            aux.push(big(q));
        }
    }
    let mut bs = vec![big(wb.clone()), -big(wb.clone())];
    for q in &aux {
        bs.push(big(wb.clone()) * q);
        bs.push(-big(wb.clone()) * q);
    }
    let mut tried = 0usize;
    let mut k = BigInt::zero();
    loop {
        let a = big(&a0 + &k * &modulus);
        k += 1;
        let denom = int(1) - x - &a * &a * x * x;
        if denom.is_zero() {
            continue;
        }
        for b in &bs {
            tried += 1;
            if tried > budget {
                return Err(Error::SearchBudgetExceeded(format!(
                    "no witness at {w} for {} within {budget} candidates",
                    fmt_rational(x)
                )));
            }
            let q = witness_algebra(params, &a, b)?;
            let mut expected = params.s.clone();
            expected.insert(w);
            if q.delta().finite == expected && q.is_nonreal() {
                let pair = WitnessPair {
                    a: a.clone(),
                    b: b.clone(),
                    w,
                    delta_check: q.delta().clone(),
                };
                pair.verify(params)?;
                return Ok(pair);
            }
        }
    }
}

/// a^2 x^2 g(a, b) / (1 - x - a^2 x^2)
pub fn rhs_value(a: &Rational, b: &Rational, x: &Rational) -> Result<Rational> {
    let g = g_eval(a, b)?;
    let denom = int(1) - x - a * a * x * x;
    if denom.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    Ok(a * a * x * x * g / denom)
}

/// (a, b) in Phi and the rhs value is integral at every prime where
/// [a^2, b pi) ramifies.
pub fn rhs_predicate(params: &EnlargedParams, a: &Rational, b: &Rational, x: &Rational) -> Result<bool> {
    let value = rhs_value(a, b, x)?;
    if !in_phi(&params.phi, a, b) {
        return Ok(false);
    }
    let q = witness_algebra(params, a, b)?;
    Ok(q.delta().finite.iter().all(|&p| val(&value, p) >= 0))
}

/// Outcome of checking both directions of the complement characterization at one x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaReport {
    /// x is in the complement and the witness satisfies the right-hand side.
    Forward(WitnessPair),
    /// x is outside the complement and no sampled pair satisfied the
    /// right-hand side. Evidence, not proof.
    Consistent { sampled: usize, skipped: usize },
}

/// A random rational of height at most `h` with numerator and denominator
/// prime to every prime of S.
pub fn random_s_unit<R: Rng>(params: &EnlargedParams, rng: &mut R, h: i64) -> Rational {
    loop {
        let n = rng.gen_range(-h..=h);
        let d = rng.gen_range(1..=h);
        let ok = |m: i64| m != 0 && params.s.iter().all(|p| m.rem_euclid(p.get() as i64) != 0);
        if ok(n) && ok(d) {
            return Rational::new(n.into(), d.into());
        }
    }
}

/// A random element of Phi: a = u + pi t with t integral on S, b a unit on S.
pub fn random_phi_pair<R: Rng>(params: &EnlargedParams, rng: &mut R, h: i64) -> (Rational, Rational) {
    let t = loop {
        let n = rng.gen_range(-h..=h);
        let d = rng.gen_range(1..=h);
        if params.s.iter().all(|p| d.rem_euclid(p.get() as i64) != 0) {
            break Rational::new(n.into(), d.into());
        }
    };
    let a = &params.u + &params.pi * t;
    (a, random_s_unit(params, rng, h))
}

pub fn lemma_equivalence_check<R: Rng>(
    params: &EnlargedParams,
    x: &Rational,
    samples: usize,
    rng: &mut R,
) -> Result<LemmaReport> {
    if in_complement(params, x)? {
        let w = match complement_primes(params, x)?.first() {
            Some(&w) => w,
            None => {
                // x = 0: any prime outside S serves
                let mut q = 3;
                while params.s.iter().any(|p| p.get() == q) {
                    q = next_prime(q);
                }
                Prime::new(q)?
            }
        };
        let pair = construct_witness(params, x, w, DEFAULT_WITNESS_BUDGET)?;
        if !rhs_predicate(params, &pair.a, &pair.b, x)? {
            return Err(Error::CounterexampleFound(format!(
                "witness {} fails the right-hand side at x = {}",
                pair.summary(),
                fmt_rational(x)
            )));
        }
        return Ok(LemmaReport::Forward(pair));
    }
    let (mut sampled, mut skipped) = (0, 0);
    while sampled < samples {
        let (a, b) = random_phi_pair(params, rng, 50);
        match rhs_predicate(params, &a, &b, x) {
            Err(Error::DegenerateDenominator) | Err(Error::DegenerateInput(_)) => skipped += 1,
            Err(e) => return Err(e),
            Ok(true) => {
                return Err(Error::CounterexampleFound(format!(
                    "({}, {}) satisfies the right-hand side at x = {} outside the complement",
                    fmt_rational(&a),
                    fmt_rational(&b),
                    fmt_rational(x)
                )))
            }
            Ok(false) => sampled += 1,
        }
    }
    Ok(LemmaReport::Consistent { sampled, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::universal::enlarge;
    use rand::SeedableRng;
    use std::collections::BTreeSet;

    fn params(v: &[u64]) -> EnlargedParams {
        let s: BTreeSet<Prime> = v.iter().map(|&p| Prime::new(p).unwrap()).collect();
        enlarge(&s).unwrap()
    }

    #[test]
    fn complement_examples() {
        let e = params(&[2]);
        assert!(in_complement(&e, &int(3)).unwrap());
        assert!(!in_complement(&e, &rat(1, 3)).unwrap());
        assert!(in_complement(&e, &int(0)).unwrap());
        assert!(!in_complement(&e, &int(4)).unwrap());
    }

    #[test]
    fn witness_examples() {
        let e = params(&[2]);
        let p = |n| Prime::new(n).unwrap();
        let wp = construct_witness(&e, &int(3), p(3), DEFAULT_WITNESS_BUDGET).unwrap();
        assert_eq!(wp.delta_check.finite, [p(2), p(3)].into_iter().collect());
        assert_eq!(val(&wp.b, p(3)), 1);
        assert!(rhs_predicate(&e, &wp.a, &wp.b, &int(3)).unwrap());
        let wp = construct_witness(&e, &int(5), p(5), DEFAULT_WITNESS_BUDGET).unwrap();
        assert_eq!(wp.delta_check.finite, [p(2), p(5)].into_iter().collect());
        assert!(matches!(
            construct_witness(&e, &rat(1, 3), p(3), DEFAULT_WITNESS_BUDGET),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn rhs_examples() {
        let e = params(&[2]);
        assert!(rhs_predicate(&e, &int(3), &int(1), &int(0)).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (a, b) = random_phi_pair(&e, &mut rng, 30);
            if let Ok(v) = rhs_predicate(&e, &a, &b, &rat(1, 2)) {
                assert!(!v);
            }
        }
    }

    #[test]
    fn lemma_check_examples() {
        let e = params(&[2]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            lemma_equivalence_check(&e, &int(3), 200, &mut rng).unwrap(),
            LemmaReport::Forward(_)
        ));
        assert_eq!(
            lemma_equivalence_check(&e, &rat(1, 3), 200, &mut rng).unwrap(),
            LemmaReport::Consistent { sampled: 200, skipped: 0 }
        );
        assert!(matches!(
            lemma_equivalence_check(&e, &int(0), 200, &mut rng).unwrap(),
            LemmaReport::Forward(_)
        ));
    }
}
