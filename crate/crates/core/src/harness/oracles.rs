//! Brute-force oracles that share no code with the library's closed forms.

/// Representatives of the square classes of Q_p^*: {1, e, p, ep} for odd p
/// with e the least non-residue, {±1, ±5, ±2, ±10} for p = 2.
pub fn square_class_reps(p: u64) -> Vec<i64> {
    if p == 2 {
        return vec![1, 3, 5, 7, 2, 6, 10, 14];
    }
    let e = (2..p).find(|&r| (1..p).all(|x| x * x % p != r)).expect("odd prime") as i64;
    let p = p as i64;
    vec![1, e, p, e * p]
}

/// Hilbert symbol (s, t)_p for s, t of valuation 0 or 1, by searching for a
/// primitive zero of z^2 - s x^2 - t y^2 modulo p^k.
///
/// With valuations at most 1 the partial derivatives at a primitive point
/// have valuation at most v(2) + 1, so a primitive zero mod p^3 (odd p) or
/// 2^7 lifts to a p-adic zero.
pub fn hilbert_brute(s: i64, t: i64, p: u64) -> i8 {
    let k = if p == 2 { 7 } else { 3 };
    let m = (p as i64).pow(k);
    let p = p as i64;
    let mut square = vec![false; m as usize];
    let mut unit_square = vec![false; m as usize];
    for z in 0..m {
        let q = (z * z % m) as usize;
        square[q] = true;
        if z % p != 0 {
            unit_square[q] = true;
        }
    }
    let (s, t) = (s.rem_euclid(m), t.rem_euclid(m));
    for x in 0..m {
        let sx = s * (x * x % m) % m;
        for y in 0..m {
            if x == 0 && y == 0 {
                continue;
            }
            let v = ((sx + t * (y * y % m)) % m) as usize;
            let primitive_xy = x % p != 0 || y % p != 0;
            if (primitive_xy && square[v]) || unit_square[v] {
                return 1;
            }
        }
    }
    -1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_values() {
        assert_eq!(hilbert_brute(-1, -1, 2), -1);
        assert_eq!(hilbert_brute(-1, 3, 3), -1);
        assert_eq!(hilbert_brute(2, 3, 3), -1);
        assert_eq!(hilbert_brute(1, 5, 5), 1);
        assert_eq!(hilbert_brute(2, 5, 5), -1);
        assert_eq!(hilbert_brute(3, 5, 2), 1);
        assert_eq!(hilbert_brute(3, 3, 2), -1);
        assert_eq!(hilbert_brute(2, 3, 2), -1);
        assert_eq!(square_class_reps(7), vec![1, 3, 7, 21]);
    }
}
