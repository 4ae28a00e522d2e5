use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{height_u64, int, primes_below, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub height_bound: u64,
    pub count: usize,
    pub seed: u64,
    pub include_boundary: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            height_bound: 1000,
            count: 1000,
            seed: 1,
            include_boundary: true,
        }
    }
}

/// 0, +-1, +-1/2, and p, 1/p, p/q for primes p, q <= 13.
pub fn boundary_values() -> Vec<Rational> {
    let mut out = vec![int(0), int(1), int(-1), rat(1, 2), rat(-1, 2)];
    let ps: Vec<i64> = primes_below(14).into_iter().map(|p| p as i64).collect();
    for &p in &ps {
        out.push(int(p));
        out.push(rat(1, p));
    }
    for &p in &ps {
        for &q in &ps {
            if p != q {
                out.push(rat(p, q));
            }
        }
    }
    dedup(out)
}

fn dedup(xs: Vec<Rational>) -> Vec<Rational> {
    let mut seen = BTreeSet::new();
    xs.into_iter().filter(|x| seen.insert(x.clone())).collect()
}

/// Boundary values (when requested) followed by `count` distinct random
/// rationals of height at most `height_bound`, none repeating a boundary value.
/// Stops early only if the height bound admits fewer values.
pub fn generate_corpus(spec: &CorpusSpec) -> Vec<Rational> {
    let mut out = if spec.include_boundary {
        boundary_values()
            .into_iter()
            .filter(|x| height_u64(x) <= spec.height_bound)
            .collect()
    } else {
        Vec::new()
    };
    let mut seen: BTreeSet<Rational> = out.iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let h = spec.height_bound.max(1) as i64;
    let mut fresh = 0;
    let mut misses = 0usize;
    while fresh < spec.count && misses < 64 * spec.count + 1024 {
        let n: i64 = rng.gen_range(-h..=h);
        let d: i64 = rng.gen_range(1..=h);
        let x = Rational::new(BigInt::from(n), BigInt::from(d));
        if seen.insert(x.clone()) {
            out.push(x);
            fresh += 1;
        } else {
            misses += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_contract() {
        let spec = CorpusSpec {
            height_bound: 10,
            count: 5,
            seed: 1,
            include_boundary: false,
        };
        let xs = generate_corpus(&spec);
        assert_eq!(xs.len(), 5);
        assert!(xs.iter().all(|x| height_u64(x) <= 10));
        assert_eq!(xs.iter().collect::<BTreeSet<_>>().len(), 5);
        assert_eq!(xs, generate_corpus(&spec));
        let with = generate_corpus(&CorpusSpec {
            include_boundary: true,
            height_bound: 20,
            ..spec
        });
        assert_eq!(with[0], int(0));
        assert!(with.contains(&rat(13, 11)));
        assert!(with.contains(&rat(-1, 2)));
    }

    #[test]
    fn small_height_stops() {
        let xs = generate_corpus(&CorpusSpec {
            height_bound: 1,
            count: 10,
            seed: 3,
            include_boundary: false,
        });
        assert_eq!(xs.len(), 3);
    }
}
