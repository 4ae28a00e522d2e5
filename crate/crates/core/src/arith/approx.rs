use num_bigint::BigInt;
use num_traits::One;

use super::modular::crt;
use super::{reduce_mod, val, Prime, Rational, Valuation};
use crate::error::{Error, Result};

/// Finds x with v_p(x - a_p) > gamma for every target (p, a_p).
///
/// With k_p = max(0, -v_p(a_p)) and P = prod p^k_p, the result is y / P
/// where y is the least nonnegative CRT solution of
/// y = a_p P mod p^(gamma + k_p + 1).
pub fn weak_approx(targets: &[(Prime, Rational)], gamma: i64) -> Result<Rational> {
    let mut seen = std::collections::BTreeSet::new();
    for (p, _) in targets {
        if !seen.insert(*p) {
            return Err(Error::PreconditionViolated(format!("prime {p} listed twice")));
        }
    }
    let mut scale = BigInt::one();
    let mut shifts = Vec::with_capacity(targets.len());
    for (p, a) in targets {
        let k = match val(a, *p) {
            Valuation::Finite(v) if v < 0 => -v,
            _ => 0,
        };
        scale *= BigInt::from(p.get()).pow(k as u32);
        shifts.push(k);
    }
    let scale_q = Rational::from_integer(scale.clone());
    let mut residues = Vec::with_capacity(targets.len());
    for ((p, a), k) in targets.iter().zip(&shifts) {
        let e = (gamma + k + 1).max(0);
        let modulus = BigInt::from(p.get()).pow(e as u32);
        let target = a * &scale_q;
        let r = reduce_mod(&target, &modulus).expect("target is p-integral after scaling");
        residues.push((r, modulus));
    }
    let (y, _) = crt(&residues).expect("prime powers are coprime");
    Ok(Rational::new(y, scale))
}
