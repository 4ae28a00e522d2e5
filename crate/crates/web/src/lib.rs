//! Browser bindings. Every export returns plain text; failures come back as
//! a line starting with `error:`.

use wasm_bindgen::prelude::wasm_bindgen;

use ringdef_core::arith::{fmt_rational, parse_rational, Place, Rational};
use ringdef_core::cert::parse_primes;
use ringdef_core::formula::{decide_exists3, emit_semilocal_exists3, formula_to_string};
use ringdef_core::local::hilbert_symbol;
use ringdef_core::ring::{in_semilocal, synthesize_semilocal, SemilocalSpec};
use ringdef_core::universal::{assemble_certificate, in_s_integers};

/// Witness budget for the semilocal panel, kept small so the page stays responsive.
const WITNESS_HEIGHT: u64 = 1000;

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).ok_or_else(|| format!("not a rational number: {s}"))
}

fn or_error(r: Result<String, String>) -> String {
    r.unwrap_or_else(|e| format!("error: {e}"))
}

pub fn symbol_text(s: &str, t: &str, place: &str) -> Result<String, String> {
    let place = match place.trim() {
        "inf" | "real" => Place::Real,
        p => Place::prime(p.parse().map_err(|_| format!("bad place {p}"))?).map_err(|e| e.to_string())?,
    };
    let v = hilbert_symbol(&rational(s)?, &rational(t)?, place).map_err(|e| e.to_string())?;
    Ok(v.to_string())
}

pub fn semilocal_text(primes: &str, x: &str) -> Result<String, String> {
    let set = parse_primes(primes).map_err(|e| e.to_string())?;
    let x = rational(x)?;
    let spec = SemilocalSpec::new(set).map_err(|e| e.to_string())?;
    let defn = synthesize_semilocal(&spec).map_err(|e| e.to_string())?;
    let emitted = emit_semilocal_exists3(&defn).map_err(|e| e.to_string())?;
    let d = decide_exists3(&emitted, &defn, &x, WITNESS_HEIGHT).map_err(|e| e.to_string())?;
    let mut out = vec![
        format!("algebra = [{}, {})", fmt_rational(defn.q.a()), fmt_rational(defn.q.b())),
        format!("ramified = {}", defn.q.delta()),
        format!("x = {}", fmt_rational(&x)),
        format!("formula says {}", if d.member { "member" } else { "not a member" }),
        format!("valuations say {}", if in_semilocal(&spec, &x) { "member" } else { "not a member" }),
    ];
    match d.witness {
        Some(w) => {
            for (name, v) in &w.values {
                out.push(format!("{name} = {}", fmt_rational(v)));
            }
        }
        None if d.member => out.push(format!("no witness of height <= {WITNESS_HEIGHT} found")),
        None => {}
    }
    out.push(format!("formula = {}", formula_to_string(&emitted.to_formula())));
    Ok(out.join("\n"))
}

pub fn s_integer_text(primes: &str, x: &str) -> Result<String, String> {
    let set = parse_primes(primes).map_err(|e| e.to_string())?;
    let x = rational(x)?;
    let cert = assemble_certificate(&set).map_err(|e| e.to_string())?;
    let d = cert.decide(&x).map_err(|e| e.to_string())?;
    let oracle = in_s_integers(&set, &x).map_err(|e| e.to_string())?;
    Ok([
        format!("x = {}", fmt_rational(&x)),
        format!("certificate says {}", if d.member { "member" } else { "not a member" }),
        format!("valuations say {}", if oracle { "member" } else { "not a member" }),
        format!("route: {}", d.route.summary()),
    ]
    .join("\n"))
}

#[wasm_bindgen]
pub fn symbol(s: &str, t: &str, place: &str) -> String {
    or_error(symbol_text(s, t, place))
}

#[wasm_bindgen]
pub fn semilocal(primes: &str, x: &str) -> String {
    or_error(semilocal_text(primes, x))
}

#[wasm_bindgen]
pub fn s_integer(primes: &str, x: &str) -> String {
    or_error(s_integer_text(primes, x))
}
