use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ringdef_core::arith::{rat, support, val, weak_approx, FactorConfig, Place, Prime, Rational, Valuation};
use ringdef_core::cert::SemilocalCertificate;
use ringdef_core::formula::{
    collapse_to_single_polynomial, eliminate_inverses, formula_to_string, parse_formula,
};
use ringdef_core::harness::gen::{
    random_assignment, random_assignment_wide, random_field_formula, random_positive_formula,
    FORMULA_VARS,
};
use ringdef_core::harness::{generate_corpus, CorpusSpec};
use ringdef_core::local::{hilbert_symbol, QuatAlg};
use ringdef_core::ring::{
    build_encoding, encode_pair, encode_tuple, in_semilocal, member_via_definition,
    synthesize_semilocal, SemilocalSpec,
};
use ringdef_core::universal::{assemble_certificate, in_s_integers};

const SMALL_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn nonzero(h: i64) -> impl Strategy<Value = Rational> {
    (1..=h, 1..=h, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn rational(h: i64) -> impl Strategy<Value = Rational> {
    (-h..=h, 1..=h).prop_map(|(n, d)| rat(n, d))
}

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(SMALL_PRIMES.to_vec()).prop_map(|p| Prime::new(p).unwrap())
}

fn prime_set(max: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::sample::subsequence(SMALL_PRIMES.to_vec(), 1..=max)
}

fn places(s: &Rational, t: &Rational) -> Vec<Place> {
    let fc = FactorConfig::default();
    let mut ps: BTreeSet<Prime> = support(s, &fc).unwrap().into_iter().collect();
    ps.extend(support(t, &fc).unwrap());
    ps.insert(Prime::new(2).unwrap());
    std::iter::once(Place::Real).chain(ps.into_iter().map(Place::Finite)).collect()
}

proptest! {
    #[test]
    fn valuation_is_a_valuation(x in rational(500), y in rational(500), p in prime()) {
        prop_assert_eq!(val(&(&x * &y), p), val(&x, p) + val(&y, p));
        prop_assert!(val(&(&x + &y), p) >= val(&x, p).min(val(&y, p)));
        prop_assert_eq!(val(&x, p) == Valuation::Infinity, x == rat(0, 1));
    }

    #[test]
    fn hilbert_symbol_is_symmetric_and_bilinear(
        s in nonzero(300), t in nonzero(300), u in nonzero(300), p in prime()
    ) {
        let h = |a: &Rational, b: &Rational| hilbert_symbol(a, b, Place::Finite(p)).unwrap();
        prop_assert_eq!(h(&s, &t), h(&t, &s));
        prop_assert_eq!(h(&s, &t) * h(&s, &u), h(&s, &(&t * &u)));
        prop_assert_eq!(h(&s, &(-&s)), 1);
        prop_assert_eq!(h(&(&s * &u * &u), &t), h(&s, &t));
    }

    #[test]
    fn hilbert_reciprocity(s in nonzero(2000), t in nonzero(2000)) {
        let prod: i8 = places(&s, &t).into_iter().map(|v| hilbert_symbol(&s, &t, v).unwrap()).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn nonreal_ramification_is_even(a in nonzero(400), b in nonzero(400)) {
        if let Ok(q) = QuatAlg::new(a, b) {
            if q.is_nonreal() {
                prop_assert_eq!(q.delta().finite.len() % 2, 0);
            }
        }
    }

    #[test]
    fn weak_approximation_hits_targets(
        targets in prop::collection::btree_map(prime(), rational(60), 1..4), gamma in 0i64..4
    ) {
        let t: Vec<(Prime, Rational)> = targets.into_iter().collect();
        let x = weak_approx(&t, gamma).unwrap();
        for (p, a) in &t {
            prop_assert!(val(&(&x - a), *p) > gamma);
        }
    }

    #[test]
    fn encoding_valuation_identity(s in prime_set(3), x in rational(80), y in rational(80)) {
        let spec = SemilocalSpec::from_u64(&s).unwrap();
        let enc = build_encoding(&spec).unwrap();
        let f = encode_pair(&enc, &x, &y);
        for &p in spec.primes() {
            prop_assert_eq!(val(&f, p), val(&x, p).min(val(&y, p)).scale(enc.degree as i64));
        }
    }

    #[test]
    fn tuple_encoding_tracks_membership(s in prime_set(2), xs in prop::collection::vec(rational(40), 1..=4)) {
        let spec = SemilocalSpec::from_u64(&s).unwrap();
        let enc = build_encoding(&spec).unwrap();
        let g = encode_tuple(&enc, &xs).unwrap();
        prop_assert_eq!(in_semilocal(&spec, &g), xs.iter().all(|x| in_semilocal(&spec, x)));
    }

    #[test]
    fn corpus_respects_height_and_seed(h in 1u64..300, count in 0usize..80, seed in any::<u64>()) {
        let spec = CorpusSpec { height_bound: h, count, seed, include_boundary: false };
        let xs = generate_corpus(&spec);
        prop_assert!(xs.iter().all(|x| ringdef_core::arith::height_u64(x) <= h));
        prop_assert_eq!(xs.clone(), generate_corpus(&spec));
        let distinct: BTreeSet<_> = xs.iter().collect();
        prop_assert_eq!(distinct.len(), xs.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_elimination_preserves_truth(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_field_formula(&mut rng, 3, &FORMULA_VARS);
        let g = eliminate_inverses(&f);
        prop_assert!(!g.has_inv());
        for _ in 0..20 {
            let env = random_assignment(&mut rng, &FORMULA_VARS);
            prop_assert_eq!(f.eval_qf(&env).unwrap(), g.eval_qf(&env).unwrap());
        }
    }

    #[test]
    fn collapse_is_one_equation_with_the_same_truth(seed in any::<u64>(), atoms in 1u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_positive_formula(&mut rng, 2, &FORMULA_VARS, atoms);
        let g = collapse_to_single_polynomial(&f).unwrap();
        prop_assert!(matches!(g, ringdef_core::formula::Formula::Eq(_, _)));
        for _ in 0..20 {
            let env = random_assignment_wide(&mut rng, &FORMULA_VARS);
            prop_assert_eq!(f.eval_qf(&env).unwrap(), g.eval_qf(&env).unwrap());
        }
    }

    #[test]
    fn formulas_print_and_parse_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_field_formula(&mut rng, 3, &FORMULA_VARS);
        prop_assert_eq!(parse_formula(&formula_to_string(&f)).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn semilocal_definition_matches_valuations(s in prime_set(3), xs in prop::collection::vec(rational(300), 20)) {
        let spec = SemilocalSpec::from_u64(&s).unwrap();
        let defn = synthesize_semilocal(&spec).unwrap();
        defn.validate().unwrap();
        for x in &xs {
            prop_assert_eq!(member_via_definition(&defn, x), in_semilocal(&spec, x));
        }
    }

    #[test]
    fn semilocal_certificates_round_trip(s in prime_set(3)) {
        let spec = SemilocalSpec::from_u64(&s).unwrap();
        let cert = SemilocalCertificate::from_definition(synthesize_semilocal(&spec).unwrap()).unwrap();
        let text = cert.to_text();
        prop_assert_eq!(SemilocalCertificate::from_text(&text).unwrap().to_text(), text);
    }

    #[test]
    fn universal_decision_matches_oracle(s in prime_set(2), xs in prop::collection::vec(rational(200), 20)) {
        let set: BTreeSet<Prime> = s.iter().map(|&p| Prime::new(p).unwrap()).collect();
        let cert = assemble_certificate(&set).unwrap();
        for x in &xs {
            prop_assert_eq!(cert.decide(x).unwrap().member, in_s_integers(&set, x).unwrap());
        }
    }
}
