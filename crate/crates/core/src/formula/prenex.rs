use std::collections::BTreeSet;

use super::formula::{fresh_name, Formula};
use super::term::Term;
use crate::error::{Error, Result};

/// An existential formula in prenex form over a quantifier-free matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrenexExistential {
    pub bound_vars: Vec<String>,
    pub matrix: Formula,
}

impl PrenexExistential {
    pub fn new(bound_vars: Vec<String>, matrix: Formula) -> Result<Self> {
        if !matrix.is_quantifier_free() {
            return Err(Error::NotQuantifierFree);
        }
        let distinct: BTreeSet<&String> = bound_vars.iter().collect();
        if distinct.len() != bound_vars.len() {
            return Err(Error::PreconditionViolated("repeated bound variable".into()));
        }
        Ok(PrenexExistential { bound_vars, matrix })
    }

    pub fn quantifier_count(&self) -> usize {
        self.bound_vars.len()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut f = self.matrix.free_vars();
        for v in &self.bound_vars {
            f.remove(v);
        }
        f
    }

    pub fn to_formula(&self) -> Formula {
        self.bound_vars
            .iter()
            .rev()
            .fold(self.matrix.clone(), |acc, v| Formula::exists(v, acc))
    }

    /// The universal formula (forall vars) of the negated matrix, i.e. the negation.
    pub fn negation_as_universal(&self) -> Formula {
        self.bound_vars
            .iter()
            .rev()
            .fold(Formula::not(self.matrix.clone()), |acc, v| Formula::forall(v, acc))
    }

    /// Renames bound variables according to `names` (same length).
    fn rename_bound(&self, names: &[String]) -> PrenexExistential {
        let mut avoid = self.matrix.all_vars();
        avoid.extend(names.iter().cloned());
        // go through temporaries so that swaps cannot collide
        let temps: Vec<String> = self
            .bound_vars
            .iter()
            .map(|v| {
                let t = fresh_name(&format!("{v}_tmp"), &avoid);
                avoid.insert(t.clone());
                t
            })
            .collect();
        let mut m = self.matrix.clone();
        for (v, t) in self.bound_vars.iter().zip(&temps) {
            m = m.substitute(v, &Term::var(t));
        }
        for (t, n) in temps.iter().zip(names) {
            m = m.substitute(t, &Term::var(n));
        }
        PrenexExistential {
            bound_vars: names.to_vec(),
            matrix: m,
        }
    }

    /// Exists x (phi) or exists y (psi), sharing bound variables so the
    /// count is the larger of the two.
    pub fn disjoin(&self, other: &PrenexExistential) -> Result<PrenexExistential> {
        let (big, small) = if self.bound_vars.len() >= other.bound_vars.len() {
            (self, other)
        } else {
            (other, self)
        };
        let free: BTreeSet<String> = self.free_vars().union(&other.free_vars()).cloned().collect();
        if big.bound_vars.iter().any(|v| free.contains(v)) {
            return Err(Error::PreconditionViolated("bound variable is free in the other disjunct".into()));
        }
        let renamed = small.rename_bound(&big.bound_vars[..small.bound_vars.len()]);
        let (first, second) = if std::ptr::eq(big, self) {
            (big.matrix.clone(), renamed.matrix)
        } else {
            (renamed.matrix, big.matrix.clone())
        };
        PrenexExistential::new(big.bound_vars.clone(), Formula::or(first, second))
    }

    /// Conjunction with bound variables kept apart.
    pub fn conjoin(&self, other: &PrenexExistential) -> Result<PrenexExistential> {
        let mut avoid = self.matrix.all_vars();
        avoid.extend(self.bound_vars.iter().cloned());
        avoid.extend(other.free_vars());
        let names: Vec<String> = other
            .bound_vars
            .iter()
            .map(|v| {
                let n = if avoid.contains(v) { fresh_name(v, &avoid) } else { v.clone() };
                avoid.insert(n.clone());
                n
            })
            .collect();
        let renamed = other.rename_bound(&names);
        let mut vars = self.bound_vars.clone();
        vars.extend(names);
        PrenexExistential::new(vars, Formula::and(self.matrix.clone(), renamed.matrix))
    }

    /// Substitutes a term for a free variable, renaming bound variables
    /// that would capture it.
    pub fn substitute(&self, var: &str, by: &Term) -> PrenexExistential {
        let clash: Vec<String> = self
            .bound_vars
            .iter()
            .filter(|v| by.vars().contains(*v))
            .cloned()
            .collect();
        let mut base = self.clone();
        if !clash.is_empty() {
            let mut avoid = self.matrix.all_vars();
            avoid.extend(by.vars());
            let names: Vec<String> = self
                .bound_vars
                .iter()
                .map(|v| {
                    if clash.contains(v) {
                        let n = fresh_name(v, &avoid);
                        avoid.insert(n.clone());
                        n
                    } else {
                        v.clone()
                    }
                })
                .collect();
            base = base.rename_bound(&names);
        }
        if base.bound_vars.iter().any(|v| v == var) {
            return base;
        }
        PrenexExistential {
            matrix: base.matrix.substitute(var, by),
            bound_vars: base.bound_vars,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::formula::term::Assignment;

    fn p(vars: &[&str], m: Formula) -> PrenexExistential {
        PrenexExistential::new(vars.iter().map(|s| s.to_string()).collect(), m).unwrap()
    }

    #[test]
    fn disjoin_shares_variables() {
        let a = p(&["Y1", "Y2"], Formula::eq(Term::var("X"), Term::mul(Term::var("Y1"), Term::var("Y2"))));
        let b = p(&["Z"], Formula::eq(Term::var("X"), Term::var("Z")));
        let c = a.disjoin(&b).unwrap();
        assert_eq!(c.quantifier_count(), 2);
        assert_eq!(c.free_vars(), ["X".to_string()].into_iter().collect());
        let d = a.conjoin(&a).unwrap();
        assert_eq!(d.quantifier_count(), 4);
        assert_eq!(d.free_vars().len(), 1);
    }

    #[test]
    fn substitution_renames_clashing_bound_variables() {
        let a = p(&["Y"], Formula::eq(Term::var("X"), Term::var("Y")));
        let b = a.substitute("X", &Term::add(Term::var("Y"), Term::One));
        assert_eq!(b.quantifier_count(), 1);
        assert_ne!(b.bound_vars[0], "Y");
        let mut env = Assignment::new();
        env.insert("Y".into(), int(3));
        env.insert(b.bound_vars[0].clone(), int(4));
        assert!(b.matrix.eval_qf(&env).unwrap());
        assert!(PrenexExistential::new(vec![], Formula::exists("x", Formula::eq(Term::Zero, Term::Zero))).is_err());
    }
}
