//! S-expression text form of terms and formulas.
//!
//! Atoms: `0`, `1`, identifiers, rational constants such as `-3/4`.
//! Compound forms: `(+ t s)`, `(− t s)`, `(· t s)`, `(⁻¹ t)`, `(≐ t s)`,
//! `(¬ φ)`, `(∧ φ ψ)`, `(∨ φ ψ)`, `(∃ x φ)`, `(∀ x φ)`.
//! A constant equal to 0 or 1 that is not the symbol itself prints as `0/1`
//! or `1/1`, so printing and parsing are mutually inverse.

use std::fmt::Write;

use num_traits::{One, Zero};

use super::formula::Formula;
use super::term::Term;
use crate::arith::{fmt_rational, parse_rational};
use crate::error::{Error, Result};

pub fn term_to_string(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

pub fn formula_to_string(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    let bin = |op: &str, a: &Term, b: &Term, out: &mut String| {
        write!(out, "({op} ").unwrap();
        write_term(a, out);
        out.push(' ');
        write_term(b, out);
        out.push(')');
    };
    match t {
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Var(v) => out.push_str(v),
        Term::Const(c) if c.is_zero() => out.push_str("0/1"),
        Term::Const(c) if c.is_one() => out.push_str("1/1"),
        Term::Const(c) => out.push_str(&fmt_rational(c)),
        Term::Add(a, b) => bin("+", a, b, out),
        Term::Sub(a, b) => bin("\u{2212}", a, b, out),
        Term::Mul(a, b) => bin("\u{b7}", a, b, out),
        Term::Inv(a) => {
            out.push_str("(\u{207b}\u{b9} ");
            write_term(a, out);
            out.push(')');
        }
    }
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Eq(a, b) => {
            out.push_str("(\u{2250} ");
            write_term(a, out);
            out.push(' ');
            write_term(b, out);
            out.push(')');
        }
        Formula::Not(g) => {
            out.push_str("(\u{ac} ");
            write_formula(g, out);
            out.push(')');
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let op = if matches!(f, Formula::And(..)) { '\u{2227}' } else { '\u{2228}' };
            write!(out, "({op} ").unwrap();
            write_formula(a, out);
            out.push(' ');
            write_formula(b, out);
            out.push(')');
        }
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let op = if matches!(f, Formula::Exists(..)) { '\u{2203}' } else { '\u{2200}' };
            write!(out, "({op} {v} ").unwrap();
            write_formula(g, out);
            out.push(')');
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

fn read(src: &str) -> Result<Sexp> {
    let mut stack: Vec<(Vec<Sexp>, usize)> = Vec::new();
    let mut done: Option<Sexp> = None;
    let mut chars = src.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c == ' ' || c == '\n' || c == '\t' || c == '\r' {
            continue;
        }
        if done.is_some() {
            return err(i, "trailing input");
        }
        let item = match c {
            '(' => {
                stack.push((Vec::new(), i));
                continue;
            }
            ')' => {
                let Some((items, start)) = stack.pop() else {
                    return err(i, "unbalanced ')'");
                };
                Sexp::List(items, start)
            }
            _ => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if d == '(' || d == ')' || d.is_whitespace() {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                Sexp::Atom(src[i..end].to_string(), i)
            }
        };
        match stack.last_mut() {
            Some((items, _)) => items.push(item),
            None => done = Some(item),
        }
    }
    if let Some((_, start)) = stack.last() {
        return err(*start, "unclosed '('");
    }
    done.ok_or(Error::Parse { pos: src.len(), msg: "empty input".into() })
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_numeral(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut parts = body.splitn(2, '/');
    let digits = |p: Option<&str>| p.is_some_and(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()));
    let n = parts.next();
    match parts.next() {
        None => digits(n),
        d => digits(n) && digits(d),
    }
}

fn to_term(e: &Sexp) -> Result<Term> {
    match e {
        Sexp::Atom(s, p) => match s.as_str() {
            "0" => Ok(Term::Zero),
            "1" => Ok(Term::One),
            _ if is_numeral(s) => match parse_rational(s) {
                Some(c) => Ok(Term::Const(c)),
                None => err(*p, format!("bad constant {s}")),
            },
            _ if is_identifier(s) => Ok(Term::Var(s.clone())),
            _ => err(*p, format!("unexpected token {s}")),
        },
        Sexp::List(items, p) => {
            let Some(Sexp::Atom(op, _)) = items.first() else {
                return err(*p, "expected an operator");
            };
            let args = &items[1..];
            match (op.as_str(), args.len()) {
                ("+", 2) => Ok(Term::add(to_term(&args[0])?, to_term(&args[1])?)),
                ("\u{2212}", 2) => Ok(Term::sub(to_term(&args[0])?, to_term(&args[1])?)),
                ("\u{b7}", 2) => Ok(Term::mul(to_term(&args[0])?, to_term(&args[1])?)),
                ("\u{207b}\u{b9}", 1) => Ok(Term::inv(to_term(&args[0])?)),
                _ => err(*p, format!("bad term operator {op} with {} arguments", args.len())),
            }
        }
    }
}

fn to_formula(e: &Sexp) -> Result<Formula> {
    let Sexp::List(items, p) = e else {
        return err(e.pos(), "expected a formula");
    };
    let Some(Sexp::Atom(op, _)) = items.first() else {
        return err(*p, "expected a connective");
    };
    let args = &items[1..];
    match (op.as_str(), args.len()) {
        ("\u{2250}", 2) => Ok(Formula::eq(to_term(&args[0])?, to_term(&args[1])?)),
        ("\u{ac}", 1) => Ok(Formula::not(to_formula(&args[0])?)),
        ("\u{2227}", 2) => Ok(Formula::and(to_formula(&args[0])?, to_formula(&args[1])?)),
        ("\u{2228}", 2) => Ok(Formula::or(to_formula(&args[0])?, to_formula(&args[1])?)),
        ("\u{2203}" | "\u{2200}", 2) => {
            let Sexp::Atom(v, vp) = &args[0] else {
                return err(args[0].pos(), "expected a variable");
            };
            if !is_identifier(v) || v == "0" || v == "1" {
                return err(*vp, format!("bad variable {v}"));
            }
            let body = to_formula(&args[1])?;
            Ok(if op == "\u{2203}" {
                Formula::exists(v, body)
            } else {
                Formula::forall(v, body)
            })
        }
        _ => err(*p, format!("bad connective {op} with {} arguments", args.len())),
    }
}

pub fn parse_term(src: &str) -> Result<Term> {
    to_term(&read(src)?)
}

pub fn parse_formula(src: &str) -> Result<Formula> {
    to_formula(&read(src)?)
}
