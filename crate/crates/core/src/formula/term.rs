use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Terms over the field signature; ring terms are those without `Inv`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Const(Rational),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

pub type Assignment = BTreeMap<String, Rational>;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// 0 and 1 map to the dedicated constructors.
    pub fn constant(c: Rational) -> Term {
        if c.is_zero() {
            Term::Zero
        } else if c.is_one() {
            Term::One
        } else {
            Term::Const(c)
        }
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    pub fn pow(a: Term, k: u32) -> Term {
        match k {
            0 => Term::One,
            _ => (1..k).fold(a.clone(), |acc, _| Term::mul(acc, a.clone())),
        }
    }

    pub fn has_inv(&self) -> bool {
        match self {
            Term::Inv(_) => true,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => a.has_inv() || b.has_inv(),
            _ => false,
        }
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
                a.vars_into(out);
                b.vars_into(out);
            }
            Term::Inv(a) => a.vars_into(out),
            _ => {}
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    /// Evaluation over the rationals with 0^-1 = 0.
    pub fn eval(&self, env: &Assignment) -> Result<Rational> {
        Ok(match self {
            Term::Zero => Rational::zero(),
            Term::One => Rational::one(),
            Term::Const(c) => c.clone(),
            Term::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            Term::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Term::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Term::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Term::Inv(a) => {
                let v = a.eval(env)?;
                if v.is_zero() {
                    v
                } else {
                    v.recip()
                }
            }
        })
    }

    /// Replaces every occurrence of the variable.
    pub fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Add(a, b) => Term::add(a.substitute(var, by), b.substitute(var, by)),
            Term::Sub(a, b) => Term::sub(a.substitute(var, by), b.substitute(var, by)),
            Term::Mul(a, b) => Term::mul(a.substitute(var, by), b.substitute(var, by)),
            Term::Inv(a) => Term::inv(a.substitute(var, by)),
            _ => self.clone(),
        }
    }

    /// Replaces every occurrence of the subterm `from`.
    pub fn replace(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::Add(a, b) => Term::add(a.replace(from, to), b.replace(from, to)),
            Term::Sub(a, b) => Term::sub(a.replace(from, to), b.replace(from, to)),
            Term::Mul(a, b) => Term::mul(a.replace(from, to), b.replace(from, to)),
            Term::Inv(a) => Term::inv(a.replace(from, to)),
            _ => self.clone(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => 1 + a.depth().max(b.depth()),
            Term::Inv(a) => 1 + a.depth(),
            _ => 0,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
            Term::Inv(a) => 1 + a.size(),
            _ => 1,
        }
    }

    /// Distinct `Inv` subterms.
    pub fn inv_subterms_into(&self, out: &mut BTreeSet<Term>) {
        match self {
            Term::Inv(a) => {
                out.insert(self.clone());
                a.inv_subterms_into(out);
            }
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
                a.inv_subterms_into(out);
                b.inv_subterms_into(out);
            }
            _ => {}
        }
    }
}
