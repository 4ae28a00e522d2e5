use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::corpus::{generate_corpus, CorpusSpec};
use super::gen::{
    hits_zero_inverse, random_assignment, random_assignment_wide, random_field_formula,
    random_positive_formula, FORMULA_VARS,
};
use super::oracles::{hilbert_brute, square_class_reps};
use super::report::{CheckOutcome, RunReport};
use crate::arith::{
    fmt_rational, hensel_lift, int, rat, support, val, FactorConfig, IntegerPolynomialLocal,
    Place, Prime, Rational,
};
use crate::error::{Error, Result};
use crate::formula::{
    collapse_to_single_polynomial, decide_exists3, witness_provably_absent, eliminate_inverses, emit_semilocal_exists3,
    Formula, WITNESS_ATTEMPTS,
};
use crate::local::{
    hilbert_symbol, in_poonen_set, nonsplit_local_invariant, poonen_decompose, QuatAlg,
};
use crate::ring::{
    build_encoding, encode_pair, encode_tuple, in_phi, in_semilocal, in_units, integral_at_all,
    join_primes, member_via_definition, phi_reduction_value, synthesize_semilocal, SemilocalSpec,
};
use crate::universal::{
    assemble_certificate, enlarge, g_eval, g_property_check, in_complement, in_s_integers,
    lemma_equivalence_check, random_phi_pair, rhs_predicate, GClause, LemmaReport,
    DEFAULT_WITNESS_BUDGET,
};

/// Prime sets used for the semilocal suites: every prime below 50 on its
/// own, then ten sets of size two to four.
pub const BATTERY: [&[u64]; 25] = [
    &[2], &[3], &[5], &[7], &[11], &[13], &[17], &[19], &[23], &[29], &[31], &[37], &[41], &[43],
    &[47], &[2, 3], &[3, 5], &[5, 7], &[2, 47], &[2, 3, 5], &[5, 7, 11], &[3, 13, 29],
    &[2, 3, 5, 7], &[11, 13, 17, 19], &[37, 41, 43, 47],
];

/// The prime sets for the main lemma and universal suites.
pub const LEMMA_SETS: [&[u64]; 3] = [&[2], &[5], &[2, 3]];

/// Required share of positive cases with a witness inside the height budget.
pub const WITNESS_RATE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub corpus: CorpusSpec,
    pub battery: Vec<Vec<u64>>,
    pub lemma_sets: Vec<Vec<u64>>,
    pub universal_sets: Vec<Vec<u64>>,
    /// random pairs, algebras, triples, formulas and so on per suite
    pub samples: usize,
    /// assignments per random formula
    pub assignments: usize,
    /// largest witness height accepted for the existential formulas
    pub witness_height: u64,
    /// positive corpus values per certificate given a witness search
    pub witness_sample: usize,
    /// forward and reverse cases per prime set in the main lemma suite
    pub lemma_samples: usize,
    pub poonen_count: usize,
    pub poonen_budget: u64,
}

impl SuiteConfig {
    /// Sizes small enough for an interactive self-test.
    pub fn quick(seed: u64) -> Self {
        SuiteConfig {
            corpus: CorpusSpec {
                height_bound: 1000,
                count: 300,
                seed,
                include_boundary: true,
            },
            battery: vec![vec![2], vec![3], vec![2, 3], vec![5, 7, 11]],
            lemma_sets: LEMMA_SETS.iter().map(|s| s.to_vec()).collect(),
            universal_sets: vec![vec![2], vec![5], vec![2, 3], vec![2, 3, 5]],
            samples: 300,
            assignments: 30,
            witness_height: 1000,
            witness_sample: 20,
            lemma_samples: 40,
            poonen_count: 40,
            poonen_budget: 10_000,
        }
    }

    /// The full sizes.
    pub fn full(seed: u64) -> Self {
        SuiteConfig {
            corpus: CorpusSpec {
                height_bound: 1000,
                count: 10_000,
                seed,
                include_boundary: true,
            },
            battery: BATTERY.iter().map(|s| s.to_vec()).collect(),
            samples: 1000,
            assignments: 100,
            witness_sample: 100,
            lemma_samples: 500,
            poonen_count: 200,
            ..Self::quick(seed)
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.corpus.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

type SuiteFn = fn(&SuiteConfig, &mut RunReport) -> Result<()>;

const REGISTRY: [(&str, SuiteFn); 13] = [
    ("reciprocity", reciprocity),
    ("local-symbols", local_symbols),
    ("delta-evenness", delta_evenness),
    ("hensel", hensel),
    ("semilocal-equivalence", semilocal_equivalence),
    ("exists3", exists3),
    ("encoding", encoding),
    ("poonen-sum", poonen_sum),
    ("g-clauses", g_clauses),
    ("main-lemma", main_lemma),
    ("universal-certificate", universal_certificate),
    ("inverse-elimination", inverse_elimination),
    ("collapse", collapse),
];

pub fn suite_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, _)| *n).collect()
}

/// Runs one named suite. Failed checks are recorded in the report, not
/// returned as errors.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<RunReport> {
    let (_, f) = REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let mut report = RunReport::new(name, cfg.corpus.seed);
    report.param("height", cfg.corpus.height_bound);
    report.param("count", cfg.corpus.count);
    f(cfg, &mut report)?;
    Ok(report)
}

/// Runs a suite over the given corpus with the other sizes at their quick
/// defaults.
pub fn run_differential(name: &str, spec: &CorpusSpec) -> Result<RunReport> {
    let cfg = SuiteConfig {
        corpus: spec.clone(),
        ..SuiteConfig::quick(spec.seed)
    };
    run_suite(name, &cfg)
}

/// Every registered suite, in registry order.
pub fn selftest(cfg: &SuiteConfig) -> Result<RunReport> {
    let mut report = RunReport::new("selftest", cfg.corpus.seed);
    report.param("height", cfg.corpus.height_bound);
    report.param("count", cfg.corpus.count);
    for name in suite_names() {
        report.merge(run_suite(name, cfg)?);
    }
    Ok(report)
}

fn sets(v: &[Vec<u64>]) -> Result<Vec<BTreeSet<Prime>>> {
    v.iter()
        .map(|s| s.iter().map(|&p| Prime::new(p)).collect())
        .collect()
}

fn random_nonzero<R: Rng>(rng: &mut R, h: i64) -> Rational {
    loop {
        let n = rng.gen_range(-h..=h);
        if n != 0 {
            return rat(n, rng.gen_range(1..=h));
        }
    }
}

fn h_i64(cfg: &SuiteConfig) -> i64 {
    cfg.corpus.height_bound.clamp(1, i64::MAX as u64) as i64
}

fn reciprocity(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let mut rng = cfg.rng(1);
    let mut check = CheckOutcome::new("reciprocity");
    let h = h_i64(cfg);
    let fc = FactorConfig::default();
    for _ in 0..cfg.samples.max(cfg.corpus.count) {
        let (s, t) = (random_nonzero(&mut rng, h), random_nonzero(&mut rng, h));
        let mut places: BTreeSet<Prime> = support(&s, &fc)?.into_iter().collect();
        places.extend(support(&t, &fc)?);
        places.insert(Prime::new(2)?);
        let mut prod = hilbert_symbol(&s, &t, Place::Real)?;
        for p in places {
            prod *= hilbert_symbol(&s, &t, Place::Finite(p))?;
        }
        check.record(prod == 1);
        if prod != 1 {
            report.counterexample(format!("reciprocity fails for ({}, {})", fmt_rational(&s), fmt_rational(&t)));
        }
    }
    report.checks.push(check);
    Ok(())
}

fn local_symbols(_cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let mut check = CheckOutcome::new("local-symbols");
    for p in [2u64, 3, 5, 7, 13] {
        let reps = square_class_reps(p);
        for &s in &reps {
            for &t in &reps {
                let fast = hilbert_symbol(&int(s), &int(t), Place::prime(p)?)?;
                let slow = hilbert_brute(s, t, p);
                check.record(fast == slow);
                if fast != slow {
                    report.counterexample(format!("({s}, {t})_{p}: closed form {fast}, brute force {slow}"));
                }
            }
        }
    }
    report.checks.push(check);
    Ok(())
}

fn delta_evenness(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let mut rng = cfg.rng(3);
    let mut even = CheckOutcome::new("delta-evenness");
    let mut clause = CheckOutcome::new("nonsplit-clause");
    let h = h_i64(cfg).min(10_000);
    let mut done = 0;
    while done < cfg.samples {
        let (a, b) = (random_nonzero(&mut rng, h), random_nonzero(&mut rng, h));
        let q = match QuatAlg::new(a, b) {
            Ok(q) if q.is_nonreal() => q,
            Ok(_) | Err(Error::DegenerateAlgebra) => {
                even.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        done += 1;
        let ok = q.delta().finite.len() % 2 == 0;
        even.record(ok);
        if !ok {
            report.counterexample(format!("|delta {q}| = {} is odd", q.delta().len()));
        }
        for &p in &q.delta().finite {
            let r = nonsplit_local_invariant(&q, p);
            clause.record(r.is_ok());
            if let Err(e) = r {
                report.counterexample(format!("{q} at {p}: {e}"));
            }
        }
    }
    even.notes.push("skipped counts draws that were real-ramified or degenerate".into());
    report.checks.push(even);
    report.checks.push(clause);
    Ok(())
}

fn hensel(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    const PRECISION: u32 = 20;
    let mut rng = cfg.rng(4);
    let mut check = CheckOutcome::new("hensel");
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut done = 0;
    while done < cfg.samples {
        let p = Prime::new(primes[rng.gen_range(0..primes.len())])?;
        let deg = rng.gen_range(2..=4);
        let mut c: Vec<Rational> = (0..=deg).map(|_| int(rng.gen_range(-50..=50))).collect();
        let a0 = int(rng.gen_range(0..(p.get() * p.get()) as i64));
        let f = IntegerPolynomialLocal::new(c.clone(), p)?;
        let Some(e) = val(&f.derivative_at(&a0), p).finite() else {
            check.skipped += 1;
            continue;
        };
        if e > 3 {
            check.skipped += 1;
            continue;
        }
        // shift the constant term so that v(f(a0)) > 2 v(f'(a0))
        let pk = Rational::from_integer(p.big().pow((2 * e + 1) as u32));
        c[0] = &c[0] - f.eval(&a0) + pk * int(rng.gen_range(-20..=20));
        let f = IntegerPolynomialLocal::new(c, p)?;
        done += 1;
        let ok = match hensel_lift(&f, &a0, PRECISION) {
            Ok(a) => {
                // the lifted root stays within p^(v(f(a0)) - e) of a0
                let close = match val(&f.eval(&a0), p).finite() {
                    Some(v) => val(&(&a - &a0), p) >= v - e,
                    None => a == a0,
                };
                val(&f.eval(&a), p) >= PRECISION as i64 && close
            }
            Err(_) => false,
        };
        check.record(ok);
        if !ok {
            report.counterexample(format!("hensel lift of {:?} from {} at {p}", f.coeffs(), fmt_rational(&a0)));
        }
    }
    report.param("hensel.precision", PRECISION);
    report.checks.push(check);
    Ok(())
}

fn semilocal_equivalence(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let corpus = generate_corpus(&cfg.corpus);
    let mut valid = CheckOutcome::new("semilocal-definition");
    let mut eq = CheckOutcome::new("semilocal-equivalence");
    let mut units = CheckOutcome::new("units");
    for s in &cfg.battery {
        let spec = SemilocalSpec::from_u64(s)?;
        let defn = synthesize_semilocal(&spec)?;
        valid.record(defn.validate().is_ok());
        for x in &corpus {
            let ok = member_via_definition(&defn, x) == in_semilocal(&spec, x);
            eq.record(ok);
            if !ok {
                report.counterexample(format!("S = {{{spec}}}, x = {}", fmt_rational(x)));
            }
            let direct = !x.is_zero() && spec.primes().iter().all(|&p| val(x, p) == 0);
            units.record(in_units(&spec, x) == direct);
        }
    }
    report.param("certificates", cfg.battery.len());
    report.checks.extend([valid, eq, units]);
    Ok(())
}

fn exists3(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let corpus = generate_corpus(&cfg.corpus);
    let mut shape = CheckOutcome::new("exists3-shape");
    let mut decision = CheckOutcome::new("exists3-decision");
    let mut witness = CheckOutcome::new("exists3-witness-rate");
    let (mut searched, mut found, mut absent) = (0usize, 0usize, 0usize);
    for s in &cfg.battery {
        let spec = SemilocalSpec::from_u64(s)?;
        let defn = synthesize_semilocal(&spec)?;
        let emitted = emit_semilocal_exists3(&defn)?;
        shape.record(
            emitted.quantifier_count() == 3
                && !emitted.matrix.has_inv()
                && !emitted.matrix.has_negation()
                && emitted.matrix.atom_count() == 1,
        );
        let mut positives = Vec::new();
        for x in &corpus {
            let d = decide_exists3(&emitted, &defn, x, 0)?;
            let ok = d.member == in_semilocal(&spec, x);
            decision.record(ok);
            if !ok {
                report.counterexample(format!("exists3 S = {{{spec}}}, x = {}", fmt_rational(x)));
            }
            if d.member && !x.is_zero() {
                positives.push(x);
            }
        }
        let (mut n, mut f, mut none) = (0, 0, 0);
        for x in positives.into_iter().take(cfg.witness_sample) {
            n += 1;
            if decide_exists3(&emitted, &defn, x, cfg.witness_height)?.witness.is_some() {
                f += 1;
            } else if witness_provably_absent(&defn, x, cfg.witness_height)? {
                none += 1;
            }
        }
        absent += none;
        witness.notes.push(format!("S = {{{spec}}}: {f} of {n}, {none} provably without a witness"));
        searched += n;
        found += f;
    }
    let rate = if searched == 0 { 1.0 } else { found as f64 / searched as f64 };
    witness.notes.insert(0, format!("found {found} of {searched} positive cases, rate {rate:.3}, required {WITNESS_RATE}; {absent} provably have no witness of height <= {}", cfg.witness_height));
    witness.skipped = (searched - found) as u64;
    witness.record(rate >= WITNESS_RATE);
    report.budget("witness-height", cfg.witness_height);
    report.budget("witness-attempts", WITNESS_ATTEMPTS);
    report.param("witness-sample", cfg.witness_sample);
    report.checks.extend([shape, decision, witness]);
    Ok(())
}

fn encoding(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let mut rng = cfg.rng(7);
    let mut ident = CheckOutcome::new("encoding-valuation");
    let mut tuple = CheckOutcome::new("encoding-tuple");
    let mut phi = CheckOutcome::new("phi-reduction");
    let small = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.15) {
            int(0)
        } else {
            random_nonzero(rng, 60)
        }
    };
    for s in &cfg.battery {
        let spec = SemilocalSpec::from_u64(s)?;
        let enc = build_encoding(&spec)?;
        let d = enc.degree as i64;
        for _ in 0..cfg.samples {
            let (x, y) = (small(&mut rng), small(&mut rng));
            let fxy = encode_pair(&enc, &x, &y);
            let ok = spec
                .primes()
                .iter()
                .all(|&p| val(&fxy, p) == val(&x, p).min(val(&y, p)).scale(d));
            ident.record(ok);
            if !ok {
                report.counterexample(format!("F({}, {}) for S = {{{spec}}}", fmt_rational(&x), fmt_rational(&y)));
            }
            let len = rng.gen_range(1..=4);
            let xs: Vec<Rational> = (0..len).map(|_| small(&mut rng)).collect();
            let g = encode_tuple(&enc, &xs)?;
            tuple.record(in_semilocal(&spec, &g) == xs.iter().all(|x| in_semilocal(&spec, x)));
        }
        let params = enlarge(spec.primes())?;
        let penc = build_encoding(&SemilocalSpec::new(params.s.iter().copied())?)?;
        for i in 0..cfg.samples {
            let (a, b) = if i % 2 == 0 {
                random_phi_pair(&params, &mut rng, 30)
            } else {
                (small(&mut rng), random_nonzero(&mut rng, 30))
            };
            let v = phi_reduction_value(&params.phi, &penc, &a, &b)?;
            phi.record(in_phi(&params.phi, &a, &b) == integral_at_all(&v, &params.s));
        }
    }
    report.checks.extend([ident, tuple, phi]);
    Ok(())
}

fn poonen_sum(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let q = QuatAlg::new(rat(-1, 2), int(3))?;
    let mut rng = cfg.rng(8);
    let mut dec = CheckOutcome::new("poonen-decompose");
    let mut closure = CheckOutcome::new("poonen-closure");
    let mut done = 0;
    while done < cfg.poonen_count {
        let x = random_nonzero(&mut rng, 100);
        if !integral_at_all(&x, &q.delta().finite) {
            continue;
        }
        done += 1;
        let ok = match poonen_decompose(&q, &x, cfg.poonen_budget) {
            Ok((s, t)) => &s + &t == x && in_poonen_set(&q, &s)? && in_poonen_set(&q, &t)?,
            Err(Error::BudgetExceeded(_)) => false,
            Err(e) => return Err(e),
        };
        dec.record(ok);
        if !ok {
            report.counterexample(format!("no Poonen decomposition of {}", fmt_rational(&x)));
        }
    }
    let mut members = Vec::new();
    while members.len() < 2 * cfg.samples {
        let x = if rng.gen_bool(0.1) { int(0) } else { random_nonzero(&mut rng, 200) };
        if in_poonen_set(&q, &x)? {
            members.push(x);
        }
    }
    for pair in members.chunks(2) {
        let sum = &pair[0] + &pair[1];
        let ok = integral_at_all(&sum, &q.delta().finite);
        closure.record(ok);
        if !ok {
            report.counterexample(format!("Poonen sum {} leaves the ring", fmt_rational(&sum)));
        }
    }
    report.budget("poonen-height", cfg.poonen_budget);
    report.checks.extend([dec, closure]);
    Ok(())
}

fn g_clauses(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let mut rng = cfg.rng(9);
    let mut check = CheckOutcome::new("g-clauses");
    let mut pole = CheckOutcome::new("g-pole-order");
    let primes = crate::arith::primes_below(50);
    let mut done = 0;
    while done < cfg.samples {
        let p = Prime::new(primes[rng.gen_range(1..primes.len())])?;
        let pk = |k: i32| {
            let m = Rational::from_integer(p.big().pow(k.unsigned_abs()));
            if k < 0 { m.recip() } else { m }
        };
        let a = random_nonzero(&mut rng, 40) * pk(rng.gen_range(-1..=1));
        let b = random_nonzero(&mut rng, 40) * pk(rng.gen_range(-3..=3));
        match g_property_check(&a, &b, p) {
            Ok(clauses) => {
                let applicable = clauses
                    .iter()
                    .any(|c| matches!(c, GClause::UnitsGiveIntegral | GClause::PoleOrder(_)));
                if !applicable {
                    check.skipped += 1;
                    continue;
                }
                done += 1;
                check.record(true);
                for c in clauses {
                    if let GClause::PoleOrder(k) = c {
                        let v = val(&g_eval(&a, &b)?, p);
                        let expect = -2 * val(&b, p).finite().expect("b nonzero").abs();
                        pole.record(k == expect && v == expect);
                    }
                }
            }
            Err(Error::DegenerateInput(_)) => check.skipped += 1,
            Err(e) => {
                done += 1;
                check.record(false);
                report.counterexample(format!("g at ({}, {}, {p}): {e}", fmt_rational(&a), fmt_rational(&b)));
            }
        }
    }
    report.checks.extend([check, pole]);
    Ok(())
}

fn main_lemma(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let mut rng = cfg.rng(10);
    let corpus = generate_corpus(&cfg.corpus);
    let mut fwd = CheckOutcome::new("main-lemma-forward");
    let mut rev = CheckOutcome::new("main-lemma-reverse");
    let mut neg = CheckOutcome::new("main-lemma-negative");
    for s in sets(&cfg.lemma_sets)? {
        let params = enlarge(&s)?;
        params.validate()?;
        let tag = join_primes(&s);
        let mut members = Vec::new();
        let mut outside = Vec::new();
        for x in &corpus {
            if in_complement(&params, x)? {
                members.push(x);
            } else {
                outside.push(x);
            }
        }
        for x in members.into_iter().take(cfg.lemma_samples) {
            match lemma_equivalence_check(&params, x, 0, &mut rng) {
                Ok(LemmaReport::Forward(pair)) => fwd.record(pair.verify(&params).is_ok()),
                Ok(LemmaReport::Consistent { .. }) => fwd.record(false),
                Err(e) => {
                    fwd.record(false);
                    report.counterexample(format!("forward S = {{{tag}}}, x = {}: {e}", fmt_rational(x)));
                }
            }
        }
        // negative direction by sampling, a few values only
        for x in outside.iter().take(cfg.lemma_samples / 25 + 1) {
            match lemma_equivalence_check(&params, x, 200, &mut rng) {
                Ok(LemmaReport::Consistent { .. }) => neg.record(true),
                Ok(LemmaReport::Forward(_)) => neg.record(false),
                Err(e) => {
                    neg.record(false);
                    report.counterexample(format!("negative S = {{{tag}}}, x = {}: {e}", fmt_rational(x)));
                }
            }
        }
        // reverse: every sampled (a, b, x) satisfying the right-hand side
        let (mut hits, mut tries) = (0, 0);
        while hits < cfg.lemma_samples && tries < 400 * cfg.lemma_samples {
            tries += 1;
            let (a, b) = random_phi_pair(&params, &mut rng, 30);
            let x = corpus[rng.gen_range(0..corpus.len())].clone();
            // bias towards the complement half of the time
            let x = if rng.gen_bool(0.5) { x } else { &x * &b };
            match rhs_predicate(&params, &a, &b, &x) {
                Ok(true) => {
                    hits += 1;
                    let ok = in_complement(&params, &x)?;
                    rev.record(ok);
                    if !ok {
                        report.counterexample(format!(
                            "reverse S = {{{tag}}}: ({}, {}) at x = {}",
                            fmt_rational(&a),
                            fmt_rational(&b),
                            fmt_rational(&x)
                        ));
                    }
                }
                Ok(false) => {}
                Err(Error::DegenerateDenominator) | Err(Error::DegenerateInput(_)) => rev.skipped += 1,
                Err(e) => return Err(e),
            }
        }
        if hits < cfg.lemma_samples {
            rev.notes.push(format!("S = {{{tag}}}: only {hits} right-hand-side hits in {tries} draws"));
        }
    }
    report.budget("witness-search", DEFAULT_WITNESS_BUDGET);
    report.checks.extend([fwd, rev, neg]);
    Ok(())
}

fn universal_certificate(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let corpus = generate_corpus(&cfg.corpus);
    let mut counts = CheckOutcome::new("universal-ledger");
    let mut dec = CheckOutcome::new("universal-decision");
    for s in sets(&cfg.universal_sets)? {
        let cert = assemble_certificate(&s)?;
        let l = &cert.ledger;
        counts.record(
            l.paper_total == 10
                && l.naive_total == 12
                && !l.merge_constructed
                && cert.complement_quantifiers == l.naive_total,
        );
        for x in corpus.iter().take(cfg.samples) {
            let ok = match cert.decide(x) {
                Ok(d) => d.member == in_s_integers(&s, x)?,
                Err(e) => {
                    report.counterexample(format!("universal S = {{{}}}, x = {}: {e}", join_primes(&s), fmt_rational(x)));
                    false
                }
            };
            dec.record(ok);
        }
    }
    report.checks.extend([counts, dec]);
    Ok(())
}

fn inverse_elimination(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let mut rng = cfg.rng(12);
    let mut free = CheckOutcome::new("inverse-elimination-inv-free");
    let mut truth = CheckOutcome::new("inverse-elimination-truth");
    let mut zero_hits = 0u64;
    for _ in 0..cfg.samples {
        let f = random_field_formula(&mut rng, 3, &FORMULA_VARS);
        let g = eliminate_inverses(&f);
        free.record(!g.has_inv());
        for _ in 0..cfg.assignments {
            let env = random_assignment(&mut rng, &FORMULA_VARS);
            zero_hits += u64::from(hits_zero_inverse(&f, &env));
            let ok = f.eval_qf(&env)? == g.eval_qf(&env)?;
            truth.record(ok);
            if !ok {
                report.counterexample(format!("inverse elimination changes {} at {env:?}", crate::formula::formula_to_string(&f)));
            }
        }
    }
    truth.notes.push(format!("{zero_hits} assignments send an inverted subterm to 0"));
    report.checks.extend([free, truth]);
    Ok(())
}

fn collapse(cfg: &SuiteConfig, report: &mut RunReport) -> Result<()> {
    let mut rng = cfg.rng(13);
    let mut check = CheckOutcome::new("collapse");
    for _ in 0..cfg.samples {
        let atoms = rng.gen_range(1..=4);
        let f = random_positive_formula(&mut rng, 2, &FORMULA_VARS, atoms);
        let g = collapse_to_single_polynomial(&f)?;
        let single = matches!(g, Formula::Eq(_, _));
        let mut ok = single;
        for _ in 0..cfg.assignments {
            let env = random_assignment_wide(&mut rng, &FORMULA_VARS);
            ok &= f.eval_qf(&env)? == g.eval_qf(&env)?;
        }
        check.record(ok);
        if !ok {
            report.counterexample(format!("collapse changes {}", crate::formula::formula_to_string(&f)));
        }
    }
    report.checks.push(check);
    Ok(())
}
