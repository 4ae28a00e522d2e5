//! Line-oriented certificate documents for semilocal and universal
//! definitions.
//!
//! Every line is `key = value`, keys in a fixed order. The last line is
//! `digest = <hex>`, the SHA-256 of everything before it. Loading checks the
//! digest, rebuilds the definition from its parameters, validates it, and
//! requires the re-emitted formula to match the stored one byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::arith::{fmt_rational, parse_rational, Prime, Rational};
use crate::error::{Error, Result};
use crate::formula::{emit_semilocal_exists3, formula_to_string, PrenexExistential};
use crate::local::QuatAlg;
use crate::ring::{
    build_encoding, join_primes, ProductEncoding, SemilocalDefinition, SemilocalSpec,
};
use crate::universal::{assemble_certificate, UniversalCertificate};

pub const SEMILOCAL_FORMAT: &str = "ringdef-semilocal/1";
pub const UNIVERSAL_FORMAT: &str = "ringdef-universal/1";

fn cert_err(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

/// Ordered key/value lines with a trailing digest.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Doc {
    lines: Vec<(String, String)>,
}

impl Doc {
    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    fn body(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    fn render(&self) -> String {
        let body = self.body();
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        format!("{body}digest = {digest}\n")
    }

    fn parse(text: &str) -> Result<Doc> {
        let mut doc = Doc::default();
        let mut digest = None;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            if digest.is_some() {
                return Err(cert_err(format!("line {}: content after the digest", i + 1)));
            }
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| cert_err(format!("line {}: expected `key = value`", i + 1)))?;
            if k == "digest" {
                digest = Some(v.to_string());
            } else {
                doc.put(k, v);
            }
        }
        let digest = digest.ok_or_else(|| cert_err("missing digest"))?;
        let expect = hex::encode(Sha256::digest(doc.body().as_bytes()));
        if digest != expect {
            return Err(cert_err("digest mismatch"));
        }
        Ok(doc)
    }

    fn get(&self, key: &str) -> Result<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| cert_err(format!("missing key {key}")))
    }

    fn rational(&self, key: &str) -> Result<Rational> {
        let v = self.get(key)?;
        parse_rational(v).ok_or_else(|| cert_err(format!("{key}: bad rational {v}")))
    }
}

pub fn parse_primes(s: &str) -> Result<BTreeSet<Prime>> {
    s.split(',')
        .map(|t| {
            let n: u64 = t
                .trim()
                .parse()
                .map_err(|_| cert_err(format!("bad prime list {s}")))?;
            Prime::new(n)
        })
        .collect()
}

fn put_encoding(doc: &mut Doc, prefix: &str, enc: &ProductEncoding) {
    doc.put(format!("{prefix}degree"), enc.degree);
    for f in &enc.factors {
        let c: Vec<String> = f.coeffs.iter().map(fmt_rational).collect();
        doc.put(format!("{prefix}{}.poly", f.prime), c.join(","));
        doc.put(format!("{prefix}{}.alpha", f.prime), fmt_rational(&f.alpha));
    }
}

fn put_semilocal(doc: &mut Doc, prefix: &str, defn: &SemilocalDefinition) {
    doc.put(format!("{prefix}primes"), join_primes(defn.spec.primes()));
    doc.put(format!("{prefix}quaternion.a"), fmt_rational(defn.q.a()));
    doc.put(format!("{prefix}quaternion.b"), fmt_rational(defn.q.b()));
    doc.put(format!("{prefix}delta"), join_primes(&defn.q.delta().finite));
    doc.put(format!("{prefix}pi"), fmt_rational(&defn.pi));
    doc.put(format!("{prefix}a"), fmt_rational(&defn.a));
}

fn read_semilocal(doc: &Doc, prefix: &str) -> Result<SemilocalDefinition> {
    let spec = SemilocalSpec::new(parse_primes(doc.get(&format!("{prefix}primes"))?)?)?;
    let q = QuatAlg::new(
        doc.rational(&format!("{prefix}quaternion.a"))?,
        doc.rational(&format!("{prefix}quaternion.b"))?,
    )?;
    let defn = SemilocalDefinition {
        q,
        pi: doc.rational(&format!("{prefix}pi"))?,
        a: doc.rational(&format!("{prefix}a"))?,
        spec,
    };
    defn.validate()
        .map_err(|e| cert_err(format!("{prefix}parameters invalid: {e}")))?;
    let delta = join_primes(&defn.q.delta().finite);
    if doc.get(&format!("{prefix}delta"))? != delta {
        return Err(cert_err(format!("{prefix}delta does not match the recomputed {{{delta}}}")));
    }
    Ok(defn)
}

/// A loaded, re-verified semilocal certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilocalCertificate {
    pub definition: SemilocalDefinition,
    pub encoding: ProductEncoding,
    pub formula: PrenexExistential,
}

impl SemilocalCertificate {
    pub fn from_definition(definition: SemilocalDefinition) -> Result<Self> {
        let encoding = build_encoding(&definition.spec)?;
        let formula = emit_semilocal_exists3(&definition)?;
        Ok(SemilocalCertificate {
            definition,
            encoding,
            formula,
        })
    }

    pub fn to_text(&self) -> String {
        let mut doc = Doc::default();
        doc.put("format", SEMILOCAL_FORMAT);
        put_semilocal(&mut doc, "", &self.definition);
        put_encoding(&mut doc, "encoding.", &self.encoding);
        doc.put("formula.collapse", "conjunctions as sums of squares, valid over the rationals");
        doc.put("formula.quantifiers", self.formula.quantifier_count());
        doc.put("formula", formula_to_string(&self.formula.to_formula()));
        doc.render()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let doc = Doc::parse(text)?;
        if doc.get("format")? != SEMILOCAL_FORMAT {
            return Err(cert_err(format!("unsupported format {}", doc.get("format")?)));
        }
        let cert = Self::from_definition(read_semilocal(&doc, "")?)?;
        if cert.to_text() != text.trim_end().to_string() + "\n" {
            return Err(cert_err("stored encoding or formula differs from the re-emitted one"));
        }
        Ok(cert)
    }
}

pub fn universal_to_text(cert: &UniversalCertificate) -> Result<String> {
    let mut doc = Doc::default();
    doc.put("format", UNIVERSAL_FORMAT);
    doc.put("primes", join_primes(cert.s_user()));
    doc.put("enlarged", join_primes(&cert.params.s));
    doc.put("pi", fmt_rational(&cert.params.pi));
    doc.put("u", fmt_rational(&cert.params.u));
    for defn in &cert.extra {
        let p = join_primes(defn.spec.primes());
        put_semilocal(&mut doc, &format!("extra.{p}."), defn);
    }
    put_semilocal(&mut doc, "semilocal.", &cert.semilocal);
    put_encoding(&mut doc, "encoding.", &cert.encoding);
    for line in cert.ledger.lines() {
        let (k, v) = line.split_once(" = ").expect("ledger lines are key = value");
        doc.put(format!("ledger.{k}"), v);
    }
    doc.put("complement.quantifiers", cert.complement_quantifiers);
    doc.put("complement", formula_to_string(&cert.complement_formula()?.to_formula()));
    doc.put("witness.budget", cert.witness_budget);
    doc.put("duality", cert.duality_note());
    Ok(doc.render())
}

/// Reassembles the certificate for the stored primes and requires every
/// stored line to match, then re-checks each semilocal block on its own.
pub fn universal_from_text(text: &str) -> Result<UniversalCertificate> {
    let doc = Doc::parse(text)?;
    if doc.get("format")? != UNIVERSAL_FORMAT {
        return Err(cert_err(format!("unsupported format {}", doc.get("format")?)));
    }
    let s_user = parse_primes(doc.get("primes")?)?;
    let cert = assemble_certificate(&s_user)?;
    for defn in &cert.extra {
        let p = join_primes(defn.spec.primes());
        read_semilocal(&doc, &format!("extra.{p}."))?;
    }
    read_semilocal(&doc, "semilocal.")?;
    let fresh = Doc::parse(&universal_to_text(&cert)?)?;
    for (k, v) in &fresh.lines {
        if doc.get(k)? != v {
            return Err(cert_err(format!("{k} differs from the reassembled certificate")));
        }
    }
    if fresh.lines.len() != doc.lines.len() {
        return Err(cert_err("unexpected extra keys"));
    }
    Ok(cert)
}

/// Either kind of certificate, told apart by the `format` line.
#[derive(Debug, Clone)]
pub enum AnyCertificate {
    Semilocal(SemilocalCertificate),
    Universal(Box<UniversalCertificate>),
}

pub fn load_certificate(text: &str) -> Result<AnyCertificate> {
    let format = text
        .lines()
        .next()
        .and_then(|l| l.strip_prefix("format = "))
        .ok_or_else(|| cert_err("first line must be `format = ...`"))?;
    match format {
        SEMILOCAL_FORMAT => Ok(AnyCertificate::Semilocal(SemilocalCertificate::from_text(text)?)),
        UNIVERSAL_FORMAT => Ok(AnyCertificate::Universal(Box::new(universal_from_text(text)?))),
        other => Err(cert_err(format!("unsupported format {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::synthesize_semilocal;

    fn semilocal(ps: &[u64]) -> SemilocalCertificate {
        let d = synthesize_semilocal(&SemilocalSpec::from_u64(ps).unwrap()).unwrap();
        SemilocalCertificate::from_definition(d).unwrap()
    }

    #[test]
    fn semilocal_round_trip() {
        let c = semilocal(&[2]);
        let text = c.to_text();
        assert!(text.starts_with("format = ringdef-semilocal/1\nprimes = 2\nquaternion.a = -1/2\nquaternion.b = 3\ndelta = 2,3\npi = 6\na = 4\n"));
        assert!(text.contains("formula.quantifiers = 3\n"));
        let back = SemilocalCertificate::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn tampering_is_caught() {
        let text = semilocal(&[2, 3]).to_text();
        let edited = text.replace("\na = ", "\na = 1");
        assert!(matches!(SemilocalCertificate::from_text(&edited), Err(Error::Certificate(_))));
        // a consistent digest over wrong parameters is still rejected
        let body: String = edited.lines().filter(|l| !l.starts_with("digest")).map(|l| format!("{l}\n")).collect();
        let forged = format!("{body}digest = {}\n", hex::encode(Sha256::digest(body.as_bytes())));
        assert!(matches!(SemilocalCertificate::from_text(&forged), Err(Error::Certificate(_))));
        assert!(matches!(load_certificate("format = other/1\n"), Err(Error::Certificate(_))));
    }

    #[test]
    fn universal_round_trip() {
        let s: BTreeSet<Prime> = [Prime::new(5).unwrap()].into();
        let cert = assemble_certificate(&s).unwrap();
        let text = universal_to_text(&cert).unwrap();
        assert!(text.contains("\nenlarged = 2,3,5\npi = 30\n"));
        assert!(text.contains("ledger.paper_total = 10"));
        assert!(text.contains("ledger.naive_total = 12"));
        assert!(text.contains("complement.quantifiers = 12\n"));
        match load_certificate(&text).unwrap() {
            AnyCertificate::Universal(c) => assert_eq!(*c, cert),
            _ => panic!("wrong kind"),
        }
        let bad = text.replace("witness.budget = ", "witness.budget = 9");
        assert!(universal_from_text(&bad).is_err());
    }
}
