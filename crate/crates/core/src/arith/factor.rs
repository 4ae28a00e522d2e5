use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Prime, Rational};
use crate::error::{Error, Result};

/// Effort limits for integer factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Trial division covers every prime up to this bound.
    pub trial_bound: u64,
    /// Iterations allowed per Pollard-Brent attempt on a composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 22,
        }
    }
}

const SIEVE_LIMIT: u64 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::with_capacity(80_000);
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// All primes strictly below `n` (n at most 10^6).
pub fn primes_below(n: u64) -> Vec<u64> {
    small_primes()
        .iter()
        .map(|&p| p as u64)
        .take_while(|&p| p < n)
        .collect()
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime_u64(m);
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64, budget: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..20u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        let mut spent = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            spent += r;
            r *= 2;
            if spent > budget {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigUint, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1..10u32 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut spent = 0;
        loop {
            let mut q = one.clone();
            let (xs, ys) = (x.clone(), y.clone());
            for _ in 0..64 {
                x = f(&x);
                y = f(&f(&y));
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            spent += 64;
            let mut g = q.gcd(n);
            if g == *n {
                // back up and step singly
                let (mut x1, mut y1) = (xs, ys);
                g = one.clone();
                for _ in 0..64 {
                    x1 = f(&x1);
                    y1 = f(&f(&y1));
                    let diff = if x1 > y1 { &x1 - &y1 } else { &y1 - &x1 };
                    g = diff.gcd(n);
                    if g != one {
                        break;
                    }
                }
            }
            if g != one {
                if g != *n {
                    return Some(g);
                }
                break;
            }
            if spent > budget {
                return None;
            }
        }
    }
    None
}

fn split_cofactor(n: BigUint, cfg: &FactorConfig, out: &mut BTreeMap<BigUint, u32>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime_big(&n) {
        *out.entry(n).or_insert(0) += 1;
        return Ok(());
    }
    let d = match n.to_u64() {
        Some(m) => rho_u64(m, cfg.rho_iterations).map(BigUint::from),
        None => rho_big(&n, cfg.rho_iterations),
    };
    let d = d.ok_or_else(|| Error::FactorizationBudgetExceeded(n.to_string()))?;
    let e = &n / &d;
    split_cofactor(d, cfg, out)?;
    split_cofactor(e, cfg, out)
}

/// Prime factorization of a positive integer, ascending.
pub fn factor_uint(n: &BigUint, cfg: &FactorConfig) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    if let Some(mut small) = m.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p > cfg.trial_bound || p.saturating_mul(p) > small {
                break;
            }
            if small % p == 0 {
                let mut k = 0;
                while small % p == 0 {
                    small /= p;
                    k += 1;
                }
                out.insert(BigUint::from(p), k);
                if is_prime_u64(small) {
                    break;
                }
            }
        }
        m = BigUint::from(small);
    } else {
        for &p in small_primes() {
            let p = p as u64;
            if p > cfg.trial_bound {
                break;
            }
            if (&m % p).is_zero() {
                let mut k = 0;
                while (&m % p).is_zero() {
                    m /= p;
                    k += 1;
                }
                out.insert(BigUint::from(p), k);
                if is_probable_prime_big(&m) {
                    break;
                }
            }
            if let Some(s) = m.to_u64() {
                // finish on the machine-word path
                let rest = factor_uint(&BigUint::from(s), cfg)?;
                for (q, k) in rest {
                    *out.entry(q).or_insert(0) += k;
                }
                m = BigUint::one();
                break;
            }
        }
    }
    split_cofactor(m, cfg, &mut out)?;
    Ok(out.into_iter().collect())
}

pub fn factor_int(n: &BigInt, cfg: &FactorConfig) -> Result<Vec<(BigUint, u32)>> {
    factor_uint(n.magnitude(), cfg)
}

/// Primes where the valuation of `x` is nonzero.
pub fn support(x: &Rational, cfg: &FactorConfig) -> Result<Vec<Prime>> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut primes = Vec::new();
    for part in [x.numer(), x.denom()] {
        for (p, _) in factor_int(part, cfg)? {
            let p = p.to_u64().ok_or_else(|| Error::PrimeTooLarge(p.to_string()))?;
            primes.push(Prime::new(p)?);
        }
    }
    primes.sort();
    Ok(primes)
}
