//! Rational points on diagonal conics, by Lagrange descent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::{crt, sqrt_mod_prime};
use super::{factor_int, squarefree_integer_part, FactorConfig, Rational};
use crate::error::Result;

type Triple = (BigInt, BigInt, BigInt);

/// Nontrivial integers (x, y, z) with a x^2 + b y^2 = z^2, or `None` when the
/// conic has no rational point. `a` and `b` must be nonzero.
pub fn solve_legendre(a: &BigInt, b: &BigInt, cfg: &FactorConfig) -> Result<Option<Triple>> {
    assert!(!a.is_zero() && !b.is_zero(), "degenerate conic");
    let (a0, f) = squarefree_integer_part(a, cfg)?;
    let (b0, g) = squarefree_integer_part(b, cfg)?;
    let found = match reduced_point(&a0, &b0, cfg)? {
        Some(p) => Some(p),
        None => descend(a0, b0, cfg)?,
    };
    let Some((x, y, z)) = found else {
        return Ok(None);
    };
    // a0 f^2 (x g)^2 + b0 g^2 (y f)^2 = (z f g)^2
    let (x, y, z) = (x * &g, y * &f, z * &f * &g);
    Ok(Some(primitive((x, y, z))))
}

fn primitive((x, y, z): Triple) -> Triple {
    let g = x.gcd(&y).gcd(&z);
    if g.is_zero() || g.is_one() {
        return (x, y, z);
    }
    (x / &g, y / &g, z / &g)
}

/// Square root of `b` modulo a squarefree `m`.
fn sqrt_mod_squarefree(b: &BigInt, m: &BigInt, cfg: &FactorConfig) -> Result<Option<BigInt>> {
    let mut residues = Vec::new();
    for (p, _) in factor_int(m, cfg)? {
        let p = BigInt::from(p);
        match sqrt_mod_prime(b, &p) {
            Some(r) => residues.push((r, p)),
            None => return Ok(None),
        }
    }
    Ok(crt(&residues).map(|(t, _)| t))
}

/// a, b squarefree.
fn descend(a: BigInt, b: BigInt, cfg: &FactorConfig) -> Result<Option<Triple>> {
    let one = BigInt::one();
    if a.is_one() {
        return Ok(Some((one.clone(), BigInt::zero(), one)));
    }
    if b.is_one() {
        return Ok(Some((BigInt::zero(), one.clone(), one)));
    }
    if a.magnitude() < b.magnitude() {
        return Ok(descend(b, a, cfg)?.map(|(x, y, z)| (y, x, z)));
    }
    if a.magnitude().is_one() {
        // a = b = -1
        return Ok(None);
    }
    let m = a.abs();
    let Some(mut t) = sqrt_mod_squarefree(&b, &m, cfg)? else {
        return Ok(None);
    };
    if &t * 2 > m {
        t -= &m;
    }
    let k = (&t * &t - &b) / &a;
    debug_assert!(!k.is_zero());
    let (k0, r) = squarefree_integer_part(&k, cfg)?;
    let Some((x1, y1, z1)) = descend(k0, b.clone(), cfg)? else {
        return Ok(None);
    };
    // k X^2 + b Y^2 = Z^2 with X = x1 / r
    // a (k X)^2 = (t Z + b Y)^2 - b (t Y + Z)^2, scaled by r
    let (xx, yy, zz) = (x1, y1 * &r, z1 * &r);
    let x = &k * &xx;
    let z = &t * &zz + &b * &yy;
    let y = &t * &yy + &zz;
    let (x, y, z) = primitive((x, y, z));
    debug_assert_eq!(&a * &x * &x + &b * &y * &y, &z * &z);
    Ok(Some((x, y, z)))
}

/// A small point on a x^2 + b y^2 = z^2 (a, b squarefree) from a reduced
/// basis of the lattice of vectors on which the form vanishes modulo its
/// discriminant. `None` means only that no point was found this way.
fn reduced_point(a: &BigInt, b: &BigInt, cfg: &FactorConfig) -> Result<Option<Triple>> {
    // a x^2 + b y^2 = z^2 with g = gcd(a, b), z = g w:  a1 x^2 + b1 y^2 - g w^2 = 0
    let g = a.gcd(b);
    let (a1, b1, c1) = (a / &g, b / &g, -g.clone());
    let Some((x, y, w)) = ternary_lattice_point(&a1, &b1, &c1, cfg)? else {
        return Ok(None);
    };
    let z = w * &g;
    debug_assert_eq!(a * &x * &x + b * &y * &y, &z * &z);
    Ok(Some(primitive((x, y, z))))
}

/// Square root of -n / d modulo |m| (0 when |m| = 1).
fn ratio_root(n: &BigInt, d: &BigInt, m: &BigInt, cfg: &FactorConfig) -> Result<Option<BigInt>> {
    let m = m.abs();
    if m.is_one() {
        return Ok(Some(BigInt::zero()));
    }
    let Some(dinv) = super::modular::mod_inverse(&d.mod_floor(&m), &m) else {
        return Ok(None);
    };
    let target = (-n * dinv).mod_floor(&m);
    sqrt_mod_squarefree(&target, &m, cfg)
}

/// Nonzero (x, y, z) with a x^2 + b y^2 + c z^2 = 0 for squarefree, pairwise
/// coprime a, b, c, searched among short vectors of an LLL-reduced basis.
fn ternary_lattice_point(a: &BigInt, b: &BigInt, c: &BigInt, cfg: &FactorConfig) -> Result<Option<Triple>> {
    // y = al z (mod a), z = be x (mod b), x = ga y (mod c)
    let (Some(al), Some(be), Some(ga)) = (
        ratio_root(c, b, a, cfg)?,
        ratio_root(a, c, b, cfg)?,
        ratio_root(b, a, c, cfg)?,
    ) else {
        return Ok(None);
    };
    let (ma, mb, mc) = (a.abs(), b.abs(), c.abs());
    let one = BigInt::one();
    let ga_inv = if mc.is_one() {
        BigInt::zero()
    } else {
        match super::modular::mod_inverse(&ga, &mc) {
            Some(v) => v,
            None => return Ok(None),
        }
    };
    let z1 = be.clone();
    let Some((y1, _)) = crt(&[((&al * &z1).mod_floor(&ma), ma.clone()), (ga_inv, mc.clone())]) else {
        return Ok(None);
    };
    let Some((y2, _)) = crt(&[((&al * &mb).mod_floor(&ma), ma.clone()), (BigInt::zero(), mc.clone())]) else {
        return Ok(None);
    };
    let basis = [
        [one.clone(), y1, z1],
        [BigInt::zero(), y2, mb.clone()],
        [BigInt::zero(), &ma * &mc, BigInt::zero()],
    ];
    let weights = [ma, mb, mc];
    let reduced = lll(basis, &weights);
    let form = |v: &[BigInt; 3]| a * &v[0] * &v[0] + b * &v[1] * &v[1] + c * &v[2] * &v[2];
    let mut best: Option<(BigInt, [BigInt; 3])> = None;
    for i in -2i64..=2 {
        for j in -2i64..=2 {
            for k in -2i64..=2 {
                let v: [BigInt; 3] = std::array::from_fn(|t| {
                    &reduced[0][t] * i + &reduced[1][t] * j + &reduced[2][t] * k
                });
                if v.iter().all(|e| e.is_zero()) || !form(&v).is_zero() {
                    continue;
                }
                let size = v.iter().map(|e| e.abs()).max().expect("three entries");
                if best.as_ref().is_none_or(|(s, _)| size < *s) {
                    best = Some((size, v));
                }
            }
        }
    }
    Ok(best.map(|(_, [x, y, z])| (x, y, z)))
}

/// LLL reduction (delta = 99/100) for the positive form sum w_i v_i^2.
fn lll(mut b: [[BigInt; 3]; 3], w: &[BigInt; 3]) -> [[BigInt; 3]; 3] {
    let delta = Rational::new(BigInt::from(99), BigInt::from(100));
    let mut k = 1usize;
    let mut guard = 0usize;
    while k < 3 && guard < 10_000 {
        guard += 1;
        // Gram-Schmidt, recomputed: three vectors only
        let mut star: Vec<Vec<Rational>> = Vec::new();
        let mut mu: [[Rational; 3]; 3] = Default::default();
        let mut norms: Vec<Rational> = Vec::new();
        for i in 0..3 {
            let mut v: Vec<Rational> = b[i].iter().map(|e| Rational::from_integer(e.clone())).collect();
            for j in 0..i {
                let num: Rational = (0..3)
                    .map(|t| Rational::from_integer(&w[t] * &b[i][t]) * &star[j][t])
                    .sum();
                mu[i][j] = num / &norms[j];
                for t in 0..3 {
                    let d = &mu[i][j] * &star[j][t];
                    v[t] -= d;
                }
            }
            let n: Rational = (0..3).map(|t| Rational::from_integer(w[t].clone()) * &v[t] * &v[t]).sum();
            norms.push(n);
            star.push(v);
        }
        // size-reduce b_k
        let mut changed = false;
        for j in (0..k).rev() {
            if mu[k][j].abs() * BigInt::from(2) <= Rational::one() {
                continue;
            }
            let q = mu[k][j].round().to_integer();
            {
                for t in 0..3 {
                    let d = &q * &b[j][t];
                    b[k][t] -= d;
                }
                changed = true;
                break;
            }
        }
        if changed {
            continue;
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Rational (u, v) with s u^2 + t v^2 = d, all nonzero rationals.
pub fn solve_diagonal(
    s: &Rational,
    t: &Rational,
    d: &Rational,
    cfg: &FactorConfig,
) -> Result<Option<(Rational, Rational)>> {
    let alpha = s / d;
    let beta = t / d;
    let ai = alpha.numer() * alpha.denom();
    let bi = beta.numer() * beta.denom();
    let Some(p0) = solve_legendre(&ai, &bi, cfg)? else {
        return Ok(None);
    };
    let (x, y, z) = if p0.2.is_zero() { move_off_infinity(&ai, &bi, p0) } else { p0 };
    let z = Rational::from_integer(z);
    let u = Rational::from_integer(alpha.denom().clone() * x) / &z;
    let v = Rational::from_integer(beta.denom().clone() * y) / &z;
    debug_assert_eq!(s * &u * &u + t * &v * &v, *d);
    Ok(Some((u, v)))
}

/// Given a point with z = 0 on a x^2 + b y^2 = z^2, returns one with z != 0.
fn move_off_infinity(a: &BigInt, b: &BigInt, p: Triple) -> Triple {
    let form = |v: &Triple| a * &v.0 * &v.0 + b * &v.1 * &v.1 - &v.2 * &v.2;
    let polar = |u: &Triple, v: &Triple| a * &u.0 * &v.0 + b * &u.1 * &v.1 - &u.2 * &v.2;
    for i in 0i64..8 {
        for j in 0i64..8 {
            let v: Triple = (BigInt::from(i), BigInt::from(j), BigInt::one());
            let q = form(&v);
            let bl = polar(&p, &v);
            let cand: Triple = (
                &q * &p.0 - 2 * &bl * &v.0,
                &q * &p.1 - 2 * &bl * &v.1,
                &q * &p.2 - 2 * &bl * &v.2,
            );
            if !cand.2.is_zero() {
                return primitive(cand);
            }
        }
    }
    unreachable!("a nondegenerate conic with one point has points off any line")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn hasse_solvable_brute(a: i64, b: i64) -> bool {
        // search small primitive solutions; only used where solutions are small
        for x in 0i64..60 {
            for y in 0i64..60 {
                if x == 0 && y == 0 {
                    continue;
                }
                let z2 = a * x * x + b * y * y;
                if z2 >= 0 {
                    let z = (z2 as f64).sqrt().round() as i64;
                    if z * z == z2 {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn descent_finds_points_on_small_conics() {
        let cfg = FactorConfig::default();
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                if a == 0 || b == 0 {
                    continue;
                }
                let sol = solve_legendre(&BigInt::from(a), &BigInt::from(b), &cfg).unwrap();
                match sol {
                    Some((x, y, z)) => {
                        assert!(!(x.is_zero() && y.is_zero() && z.is_zero()));
                        assert_eq!(BigInt::from(a) * &x * &x + BigInt::from(b) * &y * &y, &z * &z);
                    }
                    None => assert!(!hasse_solvable_brute(a, b), "missed ({a}, {b})"),
                }
            }
        }
    }

    #[test]
    fn diagonal_with_rational_coefficients() {
        let cfg = FactorConfig::default();
        let (s, t, d) = (rat(-3, 5), int(7), rat(22, 9));
        if let Some((u, v)) = solve_diagonal(&s, &t, &d, &cfg).unwrap() {
            assert_eq!(&s * &u * &u + &t * &v * &v, d);
        }
        let (u, v) = solve_diagonal(&int(1), &int(1), &int(2), &cfg).unwrap().unwrap();
        assert_eq!(&u * &u + &v * &v, int(2));
        assert!(solve_diagonal(&int(1), &int(1), &int(3), &cfg).unwrap().is_none());
    }

    #[test]
    fn lattice_points_are_small() {
        let cfg = FactorConfig::default();
        for (a, b) in [(3i64, 5i64), (-7, 11), (13, 17), (-1, 2), (10, 11), (6, 15), (1001, -5)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            if let Some((x, y, z)) = reduced_point(&a, &b, &cfg).unwrap() {
                assert_eq!(&a * &x * &x + &b * &y * &y, &z * &z);
                // Holzer-type bound, with slack for LLL
                let bound = BigInt::from(4) * (&a * &b).abs().sqrt() + BigInt::from(4);
                assert!(x.abs() <= bound && y.abs() <= bound, "({x}, {y}, {z})");
            }
        }
        let big = BigInt::from(1_000_003i64) * BigInt::from(999_983i64);
        // 1000003 = 3 mod 4 is not a sum of two squares
        assert!(solve_legendre(&big, &BigInt::from(-1), &cfg).unwrap().is_none());
        // a product of primes 1 mod 4 is
        let big = BigInt::from(1_000_033i64) * BigInt::from(1_000_037i64);
        let (x, y, z) = solve_legendre(&big, &BigInt::from(-1), &cfg).unwrap().unwrap();
        assert_eq!(&big * &x * &x - &y * &y, &z * &z);
        assert!(z.abs() < BigInt::from(10_000_000i64), "{z}");
    }

    #[test]
    fn isotropic_binary_form_moves_off_line() {
        let cfg = FactorConfig::default();
        // 1 u^2 - 1 v^2 = 5 : the Lagrange point may sit at z = 0
        let (u, v) = solve_diagonal(&int(1), &int(-1), &int(5), &cfg).unwrap().unwrap();
        assert_eq!(&u * &u - &v * &v, int(5));
    }
}
