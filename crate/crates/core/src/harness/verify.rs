use num_traits::Zero;

use super::corpus::{generate_corpus, CorpusSpec};
use super::report::{CheckOutcome, RunReport};
use super::suites::WITNESS_RATE;
use crate::arith::fmt_rational;
use crate::cert::SemilocalCertificate;
use crate::error::Result;
use crate::formula::{decide_exists3, WITNESS_ATTEMPTS};
use crate::ring::{in_semilocal, join_primes, member_via_definition};
use crate::universal::{in_s_integers, UniversalCertificate};

/// Differential run of a loaded semilocal certificate against the
/// valuation oracle, with witness searches for the first `witness_sample`
/// nonzero members.
pub fn verify_semilocal(
    cert: &SemilocalCertificate,
    spec: &CorpusSpec,
    witness_height: u64,
    witness_sample: usize,
) -> Result<RunReport> {
    let defn = &cert.definition;
    let s = &defn.spec;
    let mut report = RunReport::new("verify-semilocal", spec.seed);
    report.param("primes", s);
    report.param("height", spec.height_bound);
    report.param("count", spec.count);
    report.budget("witness-height", witness_height);
    report.budget("witness-attempts", WITNESS_ATTEMPTS);
    let mut shape = CheckOutcome::new("exists3-shape");
    shape.record(cert.formula.quantifier_count() == 3);
    let mut eq = CheckOutcome::new("semilocal-equivalence");
    let mut dec = CheckOutcome::new("exists3-decision");
    let mut wit = CheckOutcome::new("exists3-witness-rate");
    let (mut n, mut found) = (0usize, 0usize);
    for x in generate_corpus(spec) {
        let oracle = in_semilocal(s, &x);
        let ok = member_via_definition(defn, &x) == oracle;
        eq.record(ok);
        if !ok {
            report.counterexample(format!("x = {}", fmt_rational(&x)));
        }
        let search = oracle && !x.is_zero() && n < witness_sample;
        let d = decide_exists3(&cert.formula, defn, &x, if search { witness_height } else { 0 })?;
        dec.record(d.member == oracle);
        if search {
            n += 1;
            found += usize::from(d.witness.is_some());
        }
    }
    let rate = if n == 0 { 1.0 } else { found as f64 / n as f64 };
    wit.notes.push(format!("found {found} of {n} positive cases, rate {rate:.3}, required {WITNESS_RATE}"));
    wit.skipped = (n - found) as u64;
    wit.record(rate >= WITNESS_RATE);
    report.checks.extend([shape, eq, dec, wit]);
    Ok(report)
}

/// Certificate decisions against the S-integer oracle.
pub fn verify_universal(cert: &UniversalCertificate, spec: &CorpusSpec) -> Result<RunReport> {
    let mut report = RunReport::new("universal", spec.seed);
    report.param("primes", join_primes(cert.s_user()));
    report.param("enlarged", join_primes(&cert.params.s));
    report.param("height", spec.height_bound);
    report.param("count", spec.count);
    report.budget("witness-search", cert.witness_budget);
    let mut ledger = CheckOutcome::new("universal-ledger");
    let l = &cert.ledger;
    ledger.record(l.paper_total == 10 && l.naive_total == 12 && !l.merge_constructed);
    ledger.record(cert.complement_quantifiers == l.naive_total);
    ledger.notes.push(format!(
        "paper {} naive {} merge_constructed {}",
        l.paper_total, l.naive_total, l.merge_constructed
    ));
    let mut dec = CheckOutcome::new("universal-decision");
    for x in generate_corpus(spec) {
        let ok = match cert.decide(&x) {
            Ok(d) => d.member == in_s_integers(cert.s_user(), &x)?,
            Err(e) => {
                report.counterexample(format!("x = {}: {e}", fmt_rational(&x)));
                false
            }
        };
        dec.record(ok);
        if !ok {
            report.counterexample(format!("x = {}", fmt_rational(&x)));
        }
    }
    report.checks.extend([ledger, dec]);
    Ok(report)
}
