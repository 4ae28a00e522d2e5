//! Random terms, formulas and assignments for the formula suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::{int, rat, Rational};
use crate::formula::{Assignment, Formula, Term};

pub const FORMULA_VARS: [&str; 4] = ["x", "y", "z", "w"];

/// Small values, so that sums and differences of variables often vanish.
fn pool() -> [Rational; 8] {
    [int(0), int(1), int(-1), int(2), int(-2), rat(1, 2), rat(-1, 2), int(3)]
}

pub fn random_term<R: Rng>(rng: &mut R, depth: u32, vars: &[&str], with_inv: bool) -> Term {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.7) {
            Term::var(vars.choose(rng).expect("nonempty"))
        } else {
            Term::constant(pool().choose(rng).expect("nonempty").clone())
        };
    }
    let sub = |rng: &mut R| random_term(rng, depth - 1, vars, with_inv);
    let ops = if with_inv { 5 } else { 3 };
    match rng.gen_range(0..ops) {
        0 => Term::add(sub(rng), sub(rng)),
        1 => Term::sub(sub(rng), sub(rng)),
        2 => Term::mul(sub(rng), sub(rng)),
        _ => Term::inv(sub(rng)),
    }
}

fn random_atom<R: Rng>(rng: &mut R, depth: u32, vars: &[&str], with_inv: bool) -> Formula {
    Formula::eq(
        random_term(rng, depth, vars, with_inv),
        random_term(rng, depth.saturating_sub(1), vars, with_inv),
    )
}

/// Boolean combination of up to four atoms, negations allowed.
pub fn random_field_formula<R: Rng>(rng: &mut R, depth: u32, vars: &[&str]) -> Formula {
    fn go<R: Rng>(rng: &mut R, depth: u32, vars: &[&str], budget: u32) -> Formula {
        if budget <= 1 || rng.gen_bool(0.4) {
            let a = random_atom(rng, depth, vars, true);
            return if rng.gen_bool(0.3) { Formula::not(a) } else { a };
        }
        let (l, r) = (go(rng, depth, vars, budget / 2), go(rng, depth, vars, budget / 2));
        match rng.gen_range(0..3) {
            0 => Formula::and(l, r),
            1 => Formula::or(l, r),
            _ => Formula::not(Formula::and(l, r)),
        }
    }
    go(rng, depth, vars, 4)
}

/// Conjunctions and disjunctions of ring-signature atoms.
pub fn random_positive_formula<R: Rng>(rng: &mut R, depth: u32, vars: &[&str], atoms: u32) -> Formula {
    if atoms <= 1 {
        return random_atom(rng, depth, vars, false);
    }
    let left = rng.gen_range(1..atoms);
    let (l, r) = (
        random_positive_formula(rng, depth, vars, left),
        random_positive_formula(rng, depth, vars, atoms - left),
    );
    if rng.gen_bool(0.5) {
        Formula::and(l, r)
    } else {
        Formula::or(l, r)
    }
}

pub fn random_assignment<R: Rng>(rng: &mut R, vars: &[&str]) -> Assignment {
    let p = pool();
    vars.iter()
        .map(|v| (v.to_string(), p.choose(rng).expect("nonempty").clone()))
        .collect()
}

/// Assignments mostly drawn from the small pool, plus rarer wider values.
pub fn random_assignment_wide<R: Rng>(rng: &mut R, vars: &[&str]) -> Assignment {
    vars.iter()
        .map(|v| {
            let x = if rng.gen_bool(0.6) {
                pool().choose(rng).expect("nonempty").clone()
            } else {
                rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))
            };
            (v.to_string(), x)
        })
        .collect()
}

/// Whether some inverted subterm of `f` evaluates to 0 under `env`.
pub fn hits_zero_inverse(f: &Formula, env: &Assignment) -> bool {
    let mut invs = BTreeSet::new();
    collect_invs(f, &mut invs);
    invs.iter().any(|t| match t {
        Term::Inv(a) => a.eval(env).is_ok_and(|v| v == int(0)),
        _ => false,
    })
}

fn collect_invs(f: &Formula, out: &mut BTreeSet<Term>) {
    match f {
        Formula::Eq(a, b) => {
            a.inv_subterms_into(out);
            b.inv_subterms_into(out);
        }
        Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => collect_invs(g, out),
        Formula::And(a, b) | Formula::Or(a, b) => {
            collect_invs(a, out);
            collect_invs(b, out);
        }
    }
}
