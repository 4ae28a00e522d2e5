//! Inverse elimination, simplification and collapse to one polynomial.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::formula::Formula;
use super::poly::{Monomial, Poly, PolyVar};
use super::term::Term;
use crate::error::{Error, Result};

/// An equivalent formula over the ring signature (no `Inv`), under 0^-1 = 0.
///
/// Each atom with an inverse is split on a deepest `Inv(u)` node N. Writing
/// both sides as polynomials in N, t = sum N^i f_i and s = sum N^i g_i of
/// degree at most d, the atom becomes
/// (sum u^(d-i) f_i = sum u^(d-i) g_i and u != 0) or (u = 0 and f_0 = g_0).
/// A deepest node is never inside another `Inv`, so every occurrence is a
/// polynomial variable and N disappears from the result.
pub fn eliminate_inverses(phi: &Formula) -> Formula {
    phi.map_atoms(&mut |t, s| eliminate_atom(t, s))
}

fn eliminate_atom(t: &Term, s: &Term) -> Formula {
    let mut invs = BTreeSet::new();
    t.inv_subterms_into(&mut invs);
    s.inv_subterms_into(&mut invs);
    let Some(n) = invs.iter().rev().max_by_key(|n| n.depth()).cloned() else {
        return Formula::Eq(t.clone(), s.clone());
    };
    let Term::Inv(u) = &n else { unreachable!() };
    let u = (**u).clone();
    let z = PolyVar::Opaque(n.clone());
    let (pt, ps) = (Poly::from_term(t), Poly::from_term(s));
    let d = pt.degree_in(&z).max(ps.degree_in(&z));
    let up = Poly::from_term(&u);
    let clear = |p: &Poly| {
        p.coefficients_in(&z)
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (i, f)| &acc + &(&up.pow(d - i as u32) * f))
    };
    let (lhs, rhs) = (clear(&pt), clear(&ps));
    let f0 = pt.coefficients_in(&z).swap_remove(0);
    let g0 = ps.coefficients_in(&z).swap_remove(0);
    let nonzero = Formula::and(
        Formula::eq(lhs.to_term(), rhs.to_term()),
        Formula::not(Formula::is_zero(u.clone())),
    );
    let zero = Formula::and(Formula::is_zero(u), Formula::eq(f0.to_term(), g0.to_term()));
    eliminate_inverses(&Formula::or(nonzero, zero))
}

fn atom_poly(t: &Term, s: &Term) -> Result<Poly> {
    if t.has_inv() || s.has_inv() {
        return Err(Error::InversePresent);
    }
    Ok(&Poly::from_term(t) - &Poly::from_term(s))
}

/// P with phi equivalent to P = 0 over the rationals: f = 0 and g = 0 becomes
/// f^2 + g^2 = 0, f = 0 or g = 0 becomes f g = 0.
pub fn collapse_poly(phi: &Formula) -> Result<Poly> {
    Ok(match phi {
        Formula::Eq(t, s) => atom_poly(t, s)?,
        Formula::And(a, b) => {
            let (f, g) = (collapse_poly(a)?, collapse_poly(b)?);
            &(&f * &f) + &(&g * &g)
        }
        Formula::Or(a, b) => &collapse_poly(a)? * &collapse_poly(b)?,
        Formula::Not(_) => return Err(Error::NegationPresent),
        Formula::Exists(..) | Formula::Forall(..) => return Err(Error::NotQuantifierFree),
    }
    .normalized())
}

pub fn collapse_to_single_polynomial(phi: &Formula) -> Result<Formula> {
    Ok(Formula::is_zero(collapse_poly(phi)?.to_term()))
}

/// Negation normal form over normalized atoms P = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Nnf {
    Atom(Poly),
    NotAtom(Poly),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

const TRUE: Nnf = Nnf::And(Vec::new());
const FALSE: Nnf = Nnf::Or(Vec::new());

fn to_nnf(phi: &Formula, negated: bool) -> Result<Nnf> {
    Ok(match phi {
        Formula::Eq(t, s) => {
            let p = atom_poly(t, s)?.normalized();
            if negated {
                Nnf::NotAtom(p)
            } else {
                Nnf::Atom(p)
            }
        }
        Formula::Not(f) => to_nnf(f, !negated)?,
        Formula::And(a, b) | Formula::Or(a, b) => {
            let kids = vec![to_nnf(a, negated)?, to_nnf(b, negated)?];
            if matches!(phi, Formula::And(..)) != negated {
                Nnf::And(kids)
            } else {
                Nnf::Or(kids)
            }
        }
        Formula::Exists(..) | Formula::Forall(..) => return Err(Error::NotQuantifierFree),
    })
}

/// c * X^k = 0 is X = 0; a monomial in several variables gives a disjunction.
fn split_monomial(p: &Poly, negated: bool) -> Option<Nnf> {
    let (m, c) = p.as_monomial()?;
    let bare = matches!(m.factors(), [(_, 1)]) && c.is_one();
    if m.is_one() || bare {
        return None;
    }
    let atoms: Vec<Nnf> = m
        .factors()
        .iter()
        .map(|(v, _)| {
            let q = Poly::var(v.clone());
            if negated {
                Nnf::NotAtom(q)
            } else {
                Nnf::Atom(q)
            }
        })
        .collect();
    Some(if negated { Nnf::And(atoms) } else { Nnf::Or(atoms) })
}

fn simplify_nnf(n: Nnf) -> Nnf {
    match n {
        Nnf::Atom(p) => match p.as_constant() {
            Some(c) if c.is_zero() => TRUE,
            Some(_) => FALSE,
            None => split_monomial(&p, false).map_or(Nnf::Atom(p), simplify_nnf),
        },
        Nnf::NotAtom(p) => match p.as_constant() {
            Some(c) if c.is_zero() => FALSE,
            Some(_) => TRUE,
            None => split_monomial(&p, true).map_or(Nnf::NotAtom(p), simplify_nnf),
        },
        Nnf::And(kids) => simplify_junction(kids, true),
        Nnf::Or(kids) => simplify_junction(kids, false),
    }
}

fn simplify_junction(kids: Vec<Nnf>, conj: bool) -> Nnf {
    let mut flat: Vec<Nnf> = Vec::new();
    for k in kids.into_iter().map(simplify_nnf) {
        match k {
            Nnf::And(v) if conj => flat.extend(v),
            Nnf::Or(v) if !conj => flat.extend(v),
            other => flat.push(other),
        }
    }
    // absorbing element
    let absorbing = if conj { FALSE } else { TRUE };
    if flat.contains(&absorbing) {
        return absorbing;
    }
    flat.sort();
    flat.dedup();
    if conj {
        drop_implied_disequalities(&mut flat);
    }
    // absorption: A or (A and B) is A, A and (A or B) is A
    let snapshot = flat.clone();
    flat.retain(|k| {
        let inner = match (k, conj) {
            (Nnf::Or(v), true) | (Nnf::And(v), false) => v,
            _ => return true,
        };
        !inner.iter().any(|i| snapshot.contains(i))
    });
    if flat.len() == 1 {
        return flat.pop().expect("one element");
    }
    if conj {
        Nnf::And(flat)
    } else {
        Nnf::Or(flat)
    }
}

/// In a conjunction, u != 0 with u a monomial is implied by any sibling
/// P = 0 where P minus its nonzero constant term is divisible by u.
fn drop_implied_disequalities(kids: &mut Vec<Nnf>) {
    let atoms: Vec<Poly> = kids
        .iter()
        .filter_map(|k| match k {
            Nnf::Atom(p) => Some(p.clone()),
            _ => None,
        })
        .collect();
    kids.retain(|k| {
        let Nnf::NotAtom(u) = k else { return true };
        let Some((m, _)) = u.as_monomial() else { return true };
        !atoms.iter().any(|p| implies_nonzero(p, m))
    });
}

fn implies_nonzero(p: &Poly, m: &Monomial) -> bool {
    let c = p.constant_term();
    !c.is_zero() && (p - &Poly::constant(c)).divisible_by_monomial(m)
}

fn from_nnf(n: &Nnf) -> Formula {
    match n {
        Nnf::Atom(p) => Formula::is_zero(p.to_term()),
        Nnf::NotAtom(p) => Formula::not(Formula::is_zero(p.to_term())),
        Nnf::And(v) if v.is_empty() => Formula::is_zero(Term::Zero),
        Nnf::Or(v) if v.is_empty() => Formula::is_zero(Term::One),
        Nnf::And(v) => Formula::and_all(v.iter().map(from_nnf).collect()).expect("nonempty"),
        Nnf::Or(v) => Formula::or_all(v.iter().map(from_nnf).collect()).expect("nonempty"),
    }
}

/// Equivalent quantifier-free ring formula in negation normal form with
/// normalized atoms P = 0, after constant folding, monomial splitting,
/// removal of implied disequalities, and absorption.
pub fn simplify(phi: &Formula) -> Result<Formula> {
    let n = to_nnf(phi, false)?;
    Ok(from_nnf(&simplify_nnf(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::formula::term::Assignment;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }

    fn sweep(a: &Formula, b: &Formula) {
        let vals = [int(0), int(1), int(-1), int(2), rat(1, 2), rat(-3, 5), int(7)];
        for vx in &vals {
            for vy in &vals {
                let env: Assignment = [("x".to_string(), vx.clone()), ("y".to_string(), vy.clone())]
                    .into_iter()
                    .collect();
                assert_eq!(a.eval_qf(&env).unwrap(), b.eval_qf(&env).unwrap(), "{a:?} at {env:?}");
            }
        }
    }

    #[test]
    fn single_inverse_matches_two_case_form() {
        let f = Formula::eq(Term::inv(x()), y());
        let g = eliminate_inverses(&f);
        let expected = Formula::or(
            Formula::and(
                Formula::eq(Term::One, Term::mul(x(), y())),
                Formula::not(Formula::is_zero(x())),
            ),
            Formula::and(Formula::is_zero(x()), Formula::eq(Term::Zero, y())),
        );
        assert_eq!(g, expected);
        sweep(&f, &g);
    }

    #[test]
    fn inverse_free_is_fixed_point() {
        let f = Formula::or(Formula::eq(x(), y()), Formula::not(Formula::is_zero(x())));
        assert_eq!(eliminate_inverses(&f), f);
    }

    #[test]
    fn double_inverse_is_valid() {
        let f = Formula::eq(Term::inv(Term::inv(x())), x());
        let g = eliminate_inverses(&f);
        assert!(!g.has_inv());
        sweep(&f, &g);
        let simplified = simplify(&g).unwrap();
        sweep(&f, &simplified);
    }

    #[test]
    fn shared_inverse_inside_and_outside() {
        // Inv(x) occurs both alone and inside Inv(Inv(x) + 1)
        let ix = Term::inv(x());
        let t = Term::add(ix.clone(), Term::inv(Term::add(ix, Term::One)));
        let f = Formula::eq(t, y());
        let g = eliminate_inverses(&f);
        assert!(!g.has_inv());
        sweep(&f, &g);
    }

    #[test]
    fn collapse_examples() {
        let f = Formula::and(Formula::is_zero(x()), Formula::is_zero(y()));
        let p = collapse_poly(&f).unwrap();
        assert_eq!(p, &Poly::named("x").pow(2) + &Poly::named("y").pow(2));
        let f = Formula::or(
            Formula::eq(x(), Term::One),
            Formula::eq(y(), Term::constant(int(2))),
        );
        let g = collapse_to_single_polynomial(&f).unwrap();
        sweep(&f, &g);
        let neg = Formula::not(Formula::is_zero(x()));
        assert_eq!(collapse_poly(&neg), Err(Error::NegationPresent));
    }

    #[test]
    fn simplifier_rules() {
        // X = 0 or (2 X^2 (y + 1) = 1 and 2 X^2 != 0) or (2 X^2 = 0 and y = 3)
        let xx = Term::mul(Term::constant(int(2)), Term::mul(x(), x()));
        let f = Formula::or(
            Formula::is_zero(x()),
            Formula::or(
                Formula::and(
                    Formula::eq(Term::mul(xx.clone(), Term::add(y(), Term::One)), Term::One),
                    Formula::not(Formula::is_zero(xx.clone())),
                ),
                Formula::and(Formula::is_zero(xx), Formula::eq(y(), Term::constant(int(3)))),
            ),
        );
        let g = simplify(&f).unwrap();
        sweep(&f, &g);
        assert!(!g.has_negation());
        assert_eq!(g.atom_count(), 2);
    }
}
