//! Probabilistic irreducibility test for plane curves over the rationals.
//!
//! A factor of degree `k` of `F` shows up as a factor of degree `k` of
//! the restriction of `F` to any line, so the degrees achievable as sums
//! of factor degrees mod `p` always contain `k`. Intersecting these sets
//! over random lines and primes until only `{0, n}` remains shows that no
//! such `k` exists.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::modp;
use crate::scalar::{Field, Rat};
use crate::QPoly;

const SAMPLES: usize = 24;

/// True when the test proves that `f` has no factor over the rationals,
/// assuming the sampled reductions are representative. A `false` result
/// means either a factor exists or the samples did not rule it out.
pub fn likely_irreducible(f: &QPoly, seed: u64) -> bool {
    let n = f.degree() as usize;
    if n <= 1 {
        return !f.is_zero();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut possible = vec![true; n + 1];
    let mut used = 0;
    for attempt in 0..SAMPLES * 4 {
        if used == SAMPLES {
            break;
        }
        let p = modp::prime(attempt % 40);
        let a = [0, 1, 2].map(|_| Rat::from_i64(rng.gen_range(-30..=30)));
        let b = [0, 1, 2].map(|_| Rat::from_i64(rng.gen_range(-30..=30)));
        let Some(uni) = restriction_mod(f, &a, &b, p) else { continue };
        if uni.len() != n + 1 {
            continue;
        }
        let d = modp::ugcd(&uni, &modp::uderiv(&uni, p), p);
        if d.len() != 1 {
            continue;
        }
        used += 1;
        let degrees = modp::factor_degrees(&uni, p);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for k in degrees {
            for s in (k..=n).rev() {
                if sums[s - k] {
                    sums[s] = true;
                }
            }
        }
        for (slot, ok) in possible.iter_mut().zip(&sums) {
            *slot &= ok;
        }
        if possible[1..n].iter().all(|v| !v) {
            return true;
        }
    }
    false
}

/// `f(s a + b)` as a dense polynomial in `s` modulo `p`.
fn restriction_mod(f: &QPoly, a: &[Rat; 3], b: &[Rat; 3], p: u64) -> Option<Vec<u64>> {
    let r = f.restrict_to_line(a, b);
    let n = r.degree() as usize;
    let mut out = vec![0u64; n + 1];
    for (m, c) in r.terms() {
        out[m.0[0] as usize] = c.to_modp(p)?;
    }
    modp::trim(&mut out);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_and_reducible() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let cubic = &(&x.pow(3) + &y.pow(3)) + &z.pow(3);
        assert!(likely_irreducible(&cubic, 1));
        // irreducible over Q though it splits over Q(i)
        let conic = &(&x * &x) + &(&y * &y);
        assert!(likely_irreducible(&conic, 2));
        let product = &cubic * &(&x - &z);
        assert!(!likely_irreducible(&product, 3));
        let square = &conic * &conic;
        assert!(!likely_irreducible(&square, 4));
    }
}
