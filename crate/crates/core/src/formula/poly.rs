//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::term::{Assignment, Term};
use crate::arith::Rational;
use crate::error::Result;

/// A polynomial indeterminate: a named variable, or an opaque subterm (an
/// `Inv` node) treated as a variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyVar {
    Var(String),
    Opaque(Term),
}

impl PolyVar {
    fn to_term(&self) -> Term {
        match self {
            PolyVar::Var(v) => Term::Var(v.clone()),
            PolyVar::Opaque(t) => t.clone(),
        }
    }
}

/// Exponent vector, sorted by variable, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(PolyVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: PolyVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(PolyVar, u32)] {
        &self.0
    }

    pub fn degree_in(&self, v: &PolyVar) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(PolyVar, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ord = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    /// This monomial with `v` removed.
    fn without(&self, v: &PolyVar) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }

    /// Whether `other` divides this monomial.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.0.iter().all(|(v, e)| self.degree_in(v) >= *e)
    }
}

/// Lexicographic order: the earliest variable (in `PolyVar` order) with a
/// differing exponent decides, larger exponent first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: PolyVar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Rational::one());
        p
    }

    pub fn named(v: &str) -> Self {
        Poly::var(PolyVar::Var(v.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    /// A constant polynomial's value.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Single term c * m.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_in(&self, v: &PolyVar) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Coefficients f_i with self = sum_i v^i f_i.
    pub fn coefficients_in(&self, v: &PolyVar) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (m, c) in &self.terms {
            out[m.degree_in(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_term(t: &Term) -> Poly {
        match t {
            Term::Zero => Poly::zero(),
            Term::One => Poly::constant(Rational::one()),
            Term::Const(c) => Poly::constant(c.clone()),
            Term::Var(v) => Poly::named(v),
            Term::Add(a, b) => &Poly::from_term(a) + &Poly::from_term(b),
            Term::Sub(a, b) => &Poly::from_term(a) - &Poly::from_term(b),
            Term::Mul(a, b) => &Poly::from_term(a) * &Poly::from_term(b),
            Term::Inv(_) => Poly::var(PolyVar::Opaque(t.clone())),
        }
    }

    /// Sum of monomials in descending lex order; negative coefficients after
    /// the first become subtractions.
    pub fn to_term(&self) -> Term {
        let mut acc: Option<Term> = None;
        for (m, c) in self.terms.iter().rev() {
            let mono = m
                .0
                .iter()
                .flat_map(|(v, e)| std::iter::repeat_n(v.to_term(), *e as usize))
                .reduce(Term::mul);
            let with_coeff = |c: &Rational| match &mono {
                None => Term::constant(c.clone()),
                Some(mt) if c.is_one() => mt.clone(),
                Some(mt) => Term::mul(Term::constant(c.clone()), mt.clone()),
            };
            acc = Some(match acc {
                None => with_coeff(c),
                Some(prev) if c.is_negative() => Term::sub(prev, with_coeff(&-c)),
                Some(prev) => Term::add(prev, with_coeff(c)),
            });
        }
        acc.unwrap_or(Term::Zero)
    }

    pub fn eval(&self, env: &Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                let x = v.to_term().eval(env)?;
                t *= num_traits::pow(x, *e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Scaled to integer coefficients with trivial content and a positive
    /// leading coefficient; the zero set is unchanged.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        let lead_negative = self.terms.values().next_back().is_some_and(|c| c.is_negative());
        let scale = Rational::new(if lead_negative { -lcm } else { lcm }, gcd);
        self.scale(&scale)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Whether every monomial of the polynomial is divisible by `m`.
    pub fn divisible_by_monomial(&self, m: &Monomial) -> bool {
        self.terms.keys().all(|k| k.divisible_by(m))
    }

    pub fn vars(&self) -> Vec<PolyVar> {
        let mut vs: Vec<PolyVar> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }
}
