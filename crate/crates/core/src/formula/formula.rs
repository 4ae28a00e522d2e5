use std::collections::BTreeSet;

use super::term::{Assignment, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn is_zero(t: Term) -> Formula {
        Formula::Eq(t, Term::Zero)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    /// Right-nested conjunction; `None` for an empty list.
    pub fn and_all(fs: Vec<Formula>) -> Option<Formula> {
        fs.into_iter().rev().reduce(|acc, f| Formula::and(f, acc))
    }

    pub fn or_all(fs: Vec<Formula>) -> Option<Formula> {
        fs.into_iter().rev().reduce(|acc, f| Formula::or(f, acc))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn has_inv(&self) -> bool {
        match self {
            Formula::Eq(a, b) => a.has_inv() || b.has_inv(),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.has_inv(),
            Formula::And(a, b) | Formula::Or(a, b) => a.has_inv() || b.has_inv(),
        }
    }

    pub fn has_negation(&self) -> bool {
        match self {
            Formula::Eq(..) => false,
            Formula::Not(_) => true,
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.has_negation(),
            Formula::And(a, b) | Formula::Or(a, b) => a.has_negation() || b.has_negation(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Eq(a, b) => {
                let mut s = a.vars();
                b.vars_into(&mut s);
                s
            }
            Formula::Not(f) => f.free_vars(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                let mut s = a.free_vars();
                s.extend(b.free_vars());
                s
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s
            }
        }
    }

    pub fn bound_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Eq(..) => BTreeSet::new(),
            Formula::Not(f) => f.bound_vars(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                let mut s = a.bound_vars();
                s.extend(b.bound_vars());
                s
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut s = f.bound_vars();
                s.insert(v.clone());
                s
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut s = self.free_vars();
        s.extend(self.bound_vars());
        s
    }

    /// Number of quantifier nodes.
    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::Eq(..) => 0,
            Formula::Not(f) => f.quantifier_count(),
            Formula::And(a, b) | Formula::Or(a, b) => a.quantifier_count() + b.quantifier_count(),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_count(),
        }
    }

    pub fn atom_count(&self) -> usize {
        match self {
            Formula::Eq(..) => 1,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.atom_count(),
            Formula::And(a, b) | Formula::Or(a, b) => a.atom_count() + b.atom_count(),
        }
    }

    /// Truth value of a quantifier-free formula, with 0^-1 = 0.
    pub fn eval_qf(&self, env: &Assignment) -> Result<bool> {
        match self {
            Formula::Eq(a, b) => Ok(a.eval(env)? == b.eval(env)?),
            Formula::Not(f) => Ok(!f.eval_qf(env)?),
            Formula::And(a, b) => Ok(a.eval_qf(env)? && b.eval_qf(env)?),
            Formula::Or(a, b) => Ok(a.eval_qf(env)? || b.eval_qf(env)?),
            Formula::Exists(..) | Formula::Forall(..) => Err(Error::NotQuantifierFree),
        }
    }

    /// Capture-avoiding substitution of `by` for the free variable `var`.
    pub fn substitute(&self, var: &str, by: &Term) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute(var, by), b.substitute(var, by)),
            Formula::Not(f) => Formula::not(f.substitute(var, by)),
            Formula::And(a, b) => Formula::and(a.substitute(var, by), b.substitute(var, by)),
            Formula::Or(a, b) => Formula::or(a.substitute(var, by), b.substitute(var, by)),
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let exists = matches!(self, Formula::Exists(..));
                let rebuild = |v: &str, f: Formula| {
                    if exists {
                        Formula::exists(v, f)
                    } else {
                        Formula::forall(v, f)
                    }
                };
                if v == var {
                    return self.clone();
                }
                if by.vars().contains(v) {
                    let mut avoid = f.all_vars();
                    avoid.extend(by.vars());
                    avoid.insert(var.to_string());
                    let fresh = fresh_name(v, &avoid);
                    let renamed = f.substitute(v, &Term::var(&fresh));
                    rebuild(&fresh, renamed.substitute(var, by))
                } else {
                    rebuild(v, f.substitute(var, by))
                }
            }
        }
    }

    /// Applies `f` to every atom (t, s), rebuilding the formula.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Term, &Term) -> Formula) -> Formula {
        match self {
            Formula::Eq(a, b) => f(a, b),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(a, b) => {
                let a = a.map_atoms(f);
                Formula::and(a, b.map_atoms(f))
            }
            Formula::Or(a, b) => {
                let a = a.map_atoms(f);
                Formula::or(a, b.map_atoms(f))
            }
            Formula::Exists(v, g) => Formula::exists(v, g.map_atoms(f)),
            Formula::Forall(v, g) => Formula::forall(v, g.map_atoms(f)),
        }
    }
}

/// `base` with a numeric suffix, avoiding every name in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|c| !avoid.contains(c))
        .expect("infinitely many candidates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn env(pairs: &[(&str, i64)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), int(*v))).collect()
    }

    #[test]
    fn eval_examples() {
        let x = Term::var("x");
        let f = Formula::eq(Term::mul(x.clone(), x.clone()), Term::constant(int(4)));
        assert!(f.eval_qf(&env(&[("x", 2)])).unwrap());
        let f = Formula::eq(Term::inv(x.clone()), Term::Zero);
        assert!(f.eval_qf(&env(&[("x", 0)])).unwrap());
        let f = Formula::and(
            Formula::not(Formula::is_zero(x.clone())),
            Formula::eq(Term::mul(x.clone(), Term::inv(x.clone())), Term::One),
        );
        assert!(f.eval_qf(&env(&[("x", 3)])).unwrap());
        assert_eq!(
            Formula::exists("x", f).eval_qf(&env(&[])),
            Err(Error::NotQuantifierFree)
        );
    }

    #[test]
    fn substitution_avoids_capture() {
        // (exists y. x = y + 1)[x := y]
        let f = Formula::exists(
            "y",
            Formula::eq(Term::var("x"), Term::add(Term::var("y"), Term::One)),
        );
        let g = f.substitute("x", &Term::var("y"));
        assert_eq!(g.free_vars(), ["y".to_string()].into_iter().collect());
        match g {
            Formula::Exists(v, _) => assert_ne!(v, "y"),
            _ => unreachable!(),
        }
        // bound occurrences are untouched
        let h = f.substitute("y", &Term::One);
        assert_eq!(h, f);
    }
}
