use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SemilocalSpec;
use crate::arith::{int, modular::legendre, val, Prime, Rational};
use crate::error::{Error, Result};

/// Monic quadratic X^2 + c1 X + c0 whose residue at p is irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFactor {
    pub prime: Prime,
    /// constant term first
    pub coeffs: [Rational; 3],
    pub alpha: Rational,
}

impl LocalFactor {
    /// Homogenization f*(x, y) = y^2 f(x / y).
    pub fn homogeneous(&self, x: &Rational, y: &Rational) -> Rational {
        let [c0, c1, c2] = &self.coeffs;
        c2 * x * x + c1 * x * y + c0 * y * y
    }
}

/// The binary form F = sum_p alpha_p f_p*(X, Y)^(d / 2) of degree d = 2^|S|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEncoding {
    pub factors: Vec<LocalFactor>,
    pub degree: u32,
}

impl ProductEncoding {
    pub fn primes(&self) -> impl Iterator<Item = Prime> + '_ {
        self.factors.iter().map(|f| f.prime)
    }

    /// Coefficients of F, the i-th being the coefficient of X^(d-i) Y^i.
    pub fn coefficients(&self) -> Vec<Rational> {
        let d = self.degree as usize;
        let mut total = vec![Rational::zero(); d + 1];
        for f in &self.factors {
            // f* as a form: X^2 -> c2, XY -> c1, Y^2 -> c0
            let base = [f.coeffs[2].clone(), f.coeffs[1].clone(), f.coeffs[0].clone()];
            let mut power = vec![Rational::one()];
            for _ in 0..d / 2 {
                let mut next = vec![Rational::zero(); power.len() + 2];
                for (i, c) in power.iter().enumerate() {
                    for (j, b) in base.iter().enumerate() {
                        next[i + j] += c * b;
                    }
                }
                power = next;
            }
            for (t, c) in total.iter_mut().zip(power) {
                *t += &f.alpha * c;
            }
        }
        total
    }
}

fn residue_has_root(coeffs: &[Rational; 3], p: u64) -> bool {
    let m = BigInt::from(p);
    (0..p).any(|r| {
        let r = int(r as i64);
        let v = &coeffs[0] + &coeffs[1] * &r + &coeffs[2] * &r * &r;
        crate::arith::reduce_mod(&v, &m).is_some_and(|x| x.is_zero())
    })
}

pub fn build_encoding(spec: &SemilocalSpec) -> Result<ProductEncoding> {
    let primes: Vec<Prime> = spec.primes().iter().copied().collect();
    let product: u64 = primes.iter().map(|p| p.get()).product();
    let mut factors = Vec::new();
    for &p in &primes {
        let coeffs = if p.get() == 2 {
            [int(1), int(1), int(1)]
        } else {
            let r = (2..p.get())
                .find(|&r| legendre(&BigInt::from(r), p.get()) == -1)
                .expect("odd primes have non-residues");
            [int(-(r as i64)), int(0), int(1)]
        };
        if residue_has_root(&coeffs, p.get()) {
            return Err(Error::InvariantViolated(format!("residue of f_{p} has a root")));
        }
        let others = product / p.get();
        let alpha = (1..)
            .map(|k| k * others)
            .find(|m| m % p.get() == 1)
            .expect("others is invertible modulo p");
        let alpha = int(alpha as i64);
        if val(&alpha, p) != 0 || primes.iter().any(|&q| q != p && val(&alpha, q) < 1) {
            return Err(Error::InvariantViolated(format!("alpha_{p} = {alpha}")));
        }
        factors.push(LocalFactor { prime: p, coeffs, alpha });
    }
    let degree = 1u32 << primes.len();
    Ok(ProductEncoding { factors, degree })
}

/// F(x, y), evaluated as F(x dx dy, y dx dy) / (dx dy)^d so that the large
/// powers are integer powers and only the final quotient is reduced. The
/// factors built here have integer coefficients.
pub fn encode_pair(enc: &ProductEncoding, x: &Rational, y: &Rational) -> Rational {
    let e = enc.degree / 2;
    let (dx, dy) = (x.denom(), y.denom());
    let nx = x.numer() * dy;
    let ny = y.numer() * dx;
    let mut total = BigInt::zero();
    for f in &enc.factors {
        debug_assert!(f.alpha.is_integer() && f.coeffs.iter().all(|c| c.is_integer()));
        let [c0, c1, c2] = f.coeffs.clone().map(|c| c.to_integer());
        let h = c2 * &nx * &nx + c1 * &nx * &ny + c0 * &ny * &ny;
        total += f.alpha.to_integer() * num_traits::pow(h, e as usize);
    }
    Rational::new(total, num_traits::pow(dx * dy, enc.degree as usize))
}

/// G_1 = x_1, G_i = F(G_{i-1}, x_i).
pub fn encode_tuple(enc: &ProductEncoding, xs: &[Rational]) -> Result<Rational> {
    let (first, rest) = xs
        .split_first()
        .ok_or_else(|| Error::PreconditionViolated("empty tuple".into()))?;
    Ok(rest.iter().fold(first.clone(), |g, x| encode_pair(enc, &g, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn enc(p: &[u64]) -> ProductEncoding {
        build_encoding(&SemilocalSpec::from_u64(p).unwrap()).unwrap()
    }

    #[test]
    fn encoding_examples() {
        let e2 = enc(&[2]);
        assert_eq!(e2.degree, 2);
        assert_eq!(e2.coefficients(), vec![int(1), int(1), int(1)]);
        let e3 = enc(&[3]);
        assert_eq!(e3.coefficients(), vec![int(1), int(0), int(-2)]);
        let e23 = enc(&[2, 3]);
        assert_eq!(e23.degree, 4);
        assert_eq!(e23.factors[0].alpha, int(3));
        assert_eq!(e23.factors[1].alpha, int(4));
    }

    #[test]
    fn pair_examples() {
        assert_eq!(encode_pair(&enc(&[2]), &int(0), &int(0)), int(0));
        assert_eq!(encode_pair(&enc(&[3]), &rat(1, 3), &int(1)), rat(-17, 9));
        assert_eq!(encode_pair(&enc(&[2]), &int(2), &int(4)), int(28));
    }

    #[test]
    fn coefficients_match_evaluation() {
        let e = enc(&[2, 3, 5]);
        let c = e.coefficients();
        let (x, y) = (rat(3, 7), rat(-2, 5));
        let d = e.degree as usize;
        let direct: Rational = c
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(x.clone(), d - i) * num_traits::pow(y.clone(), i))
            .sum();
        assert_eq!(direct, encode_pair(&e, &x, &y));
    }

    #[test]
    fn tuple_examples() {
        let e2 = enc(&[2]);
        assert_eq!(encode_tuple(&e2, &[rat(5, 3)]).unwrap(), rat(5, 3));
        let p2 = Prime::new(2).unwrap();
        assert!(val(&encode_tuple(&e2, &[rat(1, 2), int(1)]).unwrap(), p2) < 0);
        let g = encode_tuple(&enc(&[2, 3]), &[int(1), int(2), int(3)]).unwrap();
        assert!(val(&g, p2) >= 0 && val(&g, Prime::new(3).unwrap()) >= 0);
        assert!(encode_tuple(&e2, &[]).is_err());
    }
}
