//! Modular helpers: inverses, Legendre symbols, square roots, CRT.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    assert!(n.is_positive() && n.is_odd(), "jacobi needs odd positive modulus");
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        a >>= z;
        let r8 = (&n % 8u32).to_u32().unwrap_or(0);
        if z % 2 == 1 && (r8 == 3 || r8 == 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Legendre symbol of an integer modulo an odd prime: 0, 1 or -1.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    jacobi(a, &BigInt::from(p))
}

/// A square root of `a` modulo the odd prime `p` (Tonelli-Shanks), if one exists.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if *p == BigInt::from(2) {
        return Some(a);
    }
    if jacobi(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let pm1: BigInt = p - &one;
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q: BigInt = &pm1 >> s;
    if s == 1 {
        return Some(a.modpow(&((p + &one) >> 2), p));
    }
    let mut z = BigInt::from(2);
    while jacobi(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    Some(r)
}

/// Chinese remaindering of `x = r_i mod m_i` for pairwise coprime moduli.
/// Returns the least nonnegative solution and the product modulus.
pub fn crt(residues: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt)> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mi) in residues {
        let r = r.mod_floor(mi);
        // x + m*k = r mod mi
        let inv = mod_inverse(&m, mi)?;
        let k = ((&r - &x) * inv).mod_floor(mi);
        x += &m * k;
        m *= mi;
    }
    Some((x.mod_floor(&m), m))
}

pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
