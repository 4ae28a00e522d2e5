use std::collections::BTreeSet;

use num_traits::Zero;

use super::{
    complement_primes, construct_witness, enlarge, rhs_predicate, EnlargedParams, WitnessPair,
    DEFAULT_WITNESS_BUDGET,
};
use crate::arith::{fmt_rational, support, FactorConfig, Prime, Rational};
use crate::error::{Error, Result};
use crate::formula::{complement_formula, quantifier_ledger, ComplementParts, PrenexExistential, QuantifierLedger};
use crate::ring::{
    build_encoding, join_primes, member_via_definition, synthesize_semilocal, ProductEncoding,
    SemilocalDefinition, SemilocalSpec,
};

/// Everything needed to decide the ring of S_user-integers through the
/// complement characterization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCertificate {
    pub params: EnlargedParams,
    /// semilocal definitions of the single primes in S but not in S_user
    pub extra: Vec<SemilocalDefinition>,
    /// semilocal definition of S, used by the Phi reduction
    pub semilocal: SemilocalDefinition,
    pub encoding: ProductEncoding,
    pub ledger: QuantifierLedger,
    /// quantifier count of the assembled complement formula
    pub complement_quantifiers: usize,
    pub witness_budget: usize,
}

/// How the certificate reached its answer for x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    Zero,
    /// 1/x lies in the maximal ideal of an added prime
    ExtraPrime(Prime),
    /// 1/x is in the complement, shown by a verified witness pair
    Witness(WitnessPair),
    /// no prime outside S divides the numerator of 1/x
    NoComplementPrime,
}

impl Route {
    pub fn summary(&self) -> String {
        match self {
            Route::Zero => "zero".into(),
            Route::ExtraPrime(p) => format!("extra-prime {p}"),
            Route::Witness(w) => format!("witness {}", w.summary()),
            Route::NoComplementPrime => "no-complement-prime".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalDecision {
    pub x: Rational,
    pub member: bool,
    pub route: Route,
}

/// Direct oracle: v_p(x) >= 0 for every prime p outside `s_user`.
pub fn in_s_integers(s_user: &BTreeSet<Prime>, x: &Rational) -> Result<bool> {
    let den = Rational::from_integer(x.denom().clone());
    Ok(support(&den, &FactorConfig::default())?
        .iter()
        .all(|p| s_user.contains(p)))
}

pub fn assemble_certificate(s_user: &BTreeSet<Prime>) -> Result<UniversalCertificate> {
    let params = enlarge(s_user)?;
    params.validate()?;
    let extra = params
        .s
        .difference(&params.s_user)
        .map(|&p| synthesize_semilocal(&SemilocalSpec::new([p])?))
        .collect::<Result<Vec<_>>>()?;
    let spec = SemilocalSpec::new(params.s.iter().copied())?;
    let semilocal = synthesize_semilocal(&spec)?;
    let encoding = build_encoding(&spec)?;
    let mut cert = UniversalCertificate {
        params,
        extra,
        semilocal,
        encoding,
        ledger: quantifier_ledger(),
        complement_quantifiers: 0,
        witness_budget: DEFAULT_WITNESS_BUDGET,
    };
    cert.complement_quantifiers = cert.complement_formula()?.quantifier_count();
    if cert.complement_quantifiers != cert.ledger.naive_total {
        return Err(Error::InvariantViolated(format!(
            "complement formula has {} quantifiers, ledger says {}",
            cert.complement_quantifiers, cert.ledger.naive_total
        )));
    }
    Ok(cert)
}

impl UniversalCertificate {
    pub fn s_user(&self) -> &BTreeSet<Prime> {
        &self.params.s_user
    }

    /// The existential field formula for the complement, free variable X.
    pub fn complement_formula(&self) -> Result<PrenexExistential> {
        complement_formula(&ComplementParts {
            params: &self.params,
            semilocal: &self.semilocal,
            encoding: &self.encoding,
            extra: &self.extra,
        })
    }

    /// Whether y lies in the maximal ideal of some prime outside S_user.
    pub fn complement_route(&self, y: &Rational) -> Result<Option<Route>> {
        if y.is_zero() {
            return Ok(Some(Route::Zero));
        }
        for defn in &self.extra {
            let p = *defn.spec.primes().iter().next().expect("single prime");
            let scaled = y / Rational::from_integer(p.big());
            if member_via_definition(defn, &scaled) {
                return Ok(Some(Route::ExtraPrime(p)));
            }
        }
        if let Some(&w) = complement_primes(&self.params, y)?.first() {
            let pair = construct_witness(&self.params, y, w, self.witness_budget)?;
            pair.verify(&self.params)?;
            if !rhs_predicate(&self.params, &pair.a, &pair.b, y)? {
                return Err(Error::CounterexampleFound(format!(
                    "witness {} fails at {}",
                    pair.summary(),
                    fmt_rational(y)
                )));
            }
            return Ok(Some(Route::Witness(pair)));
        }
        Ok(None)
    }

    /// x is an S_user-integer iff x = 0 or 1/x is outside the complement.
    pub fn decide(&self, x: &Rational) -> Result<UniversalDecision> {
        if x.is_zero() {
            return Ok(UniversalDecision {
                x: x.clone(),
                member: true,
                route: Route::Zero,
            });
        }
        let y = x.recip();
        let (member, route) = match self.complement_route(&y)? {
            Some(r) => (false, r),
            None => (true, Route::NoComplementPrime),
        };
        Ok(UniversalDecision {
            x: x.clone(),
            member,
            route,
        })
    }

    pub fn duality_note(&self) -> String {
        format!(
            "the complement of the {{{}}}-integers in the inverses has an existential definition with {} quantifiers; \
             x is in the ring iff x = 0 or the complement formula fails at 1/x, a universal definition with the same count",
            join_primes(self.s_user()),
            self.complement_quantifiers
        )
    }

    /// One row per x: value, oracle bit, certificate bit, route.
    pub fn decisions_csv(&self, xs: &[Rational]) -> Result<String> {
        let mut out = String::from("value,oracle,certificate,route\n");
        for x in xs {
            let d = self.decide(x)?;
            let oracle = in_s_integers(self.s_user(), x)?;
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_rational(x),
                u8::from(oracle),
                u8::from(d.member),
                d.route.summary()
            ));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, rationals_by_height};

    fn set(v: &[u64]) -> BTreeSet<Prime> {
        v.iter().map(|&p| Prime::new(p).unwrap()).collect()
    }

    #[test]
    fn certificate_matches_oracle() {
        for s in [&[2u64][..], &[5], &[2, 3], &[2, 3, 5]] {
            let cert = assemble_certificate(&set(s)).unwrap();
            assert_eq!(cert.complement_quantifiers, 12);
            for x in rationals_by_height(15) {
                let d = cert.decide(&x).unwrap();
                assert_eq!(d.member, in_s_integers(&set(s), &x).unwrap(), "S = {s:?}, x = {x}");
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let cert = assemble_certificate(&set(&[5])).unwrap();
        assert_eq!(cert.params.s, set(&[2, 3, 5]));
        assert_eq!(cert.extra.len(), 2);
        assert!(cert.decide(&rat(1, 25)).unwrap().member);
        let d = cert.decide(&rat(1, 6)).unwrap();
        assert!(!d.member);
        assert!(matches!(d.route, Route::ExtraPrime(_)));
        let d = cert.decide(&rat(3, 7)).unwrap();
        assert!(matches!(d.route, Route::Witness(_)));
        assert!(cert.decide(&int(0)).unwrap().member);
        let csv = cert.decisions_csv(&[int(2), rat(1, 7)]).unwrap();
        assert!(csv.starts_with("value,oracle,certificate,route\n2,1,1,"));
        assert!(cert.duality_note().contains("12"));
        let no_pad = assemble_certificate(&set(&[2, 3, 5])).unwrap();
        assert!(no_pad.extra.is_empty());
    }
}
