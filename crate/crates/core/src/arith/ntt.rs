//! Fast univariate arithmetic modulo primes `c 2^32 + 1 < 2^62`:
//! Montgomery multiplication, number-theoretic transforms, Newton
//! division and half-gcd.
//!
//! Polynomials are dense coefficient vectors in ordinary (non-Montgomery)
//! representation, lowest degree first, trimmed.

use rand::Rng;

use crate::arith::modp::{self, deg, trim, UniP};

const TWO_ADICITY: u32 = 32;
const SMALL_MUL: usize = 64;
const SMALL_GCD: usize = 128;

/// A prime field with transforms of every length up to `2^32`.
#[derive(Clone, Debug)]
pub struct NttField {
    p: u64,
    pinv: u64,
    r2: u64,
    root: u64,
}

impl NttField {
    /// `p` must be a prime below `2^62` with `2^32 | p - 1`.
    pub fn new(p: u64) -> Option<Self> {
        if p >= 1 << 62 || !(p - 1).is_multiple_of(1u64 << TWO_ADICITY) || !modp::is_prime(p) {
            return None;
        }
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = modp::mul(r, r, p);
        let root = primitive_root(p);
        Some(NttField { p, pinv: inv.wrapping_neg(), r2, root })
    }

    /// A uniformly chosen admissible prime.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let c: u64 = rng.gen_range((1 << 28)..(1 << 30));
            if let Some(f) = Self::new((c << TWO_ADICITY) | 1) {
                return f;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mmul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    fn to_mont(&self, a: u64) -> u64 {
        self.mmul(a, self.r2)
    }

    #[inline]
    fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    /// In-place transform of a Montgomery-form vector whose length is a
    /// power of two; the inverse includes the division by the length.
    fn transform(&self, a: &mut [u64], inverse: bool) {
        let n = a.len();
        let p = self.p;
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut w = modp::pow(self.root, (p - 1) / n as u64, p);
        if inverse {
            w = modp::inv(w, p);
        }
        // powers of the n-th root, reused at every stage with a stride
        let mut tw = Vec::with_capacity(n / 2);
        let wm = self.to_mont(w);
        let mut cur = self.to_mont(1);
        for _ in 0..n / 2 {
            tw.push(cur);
            cur = self.mmul(cur, wm);
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let u = a[start + k];
                    let v = self.mmul(a[start + k + half], tw[k * stride]);
                    a[start + k] = modp::add(u, v, p);
                    a[start + k + half] = modp::sub(u, v, p);
                }
            }
            len <<= 1;
        }
        if inverse {
            let ninv = self.to_mont(modp::inv(n as u64 % p, p));
            for v in a.iter_mut() {
                *v = self.mmul(*v, ninv);
            }
        }
    }

    /// Forward transform of `a` padded to length `n`.
    /// Inputs longer than `n` are reduced modulo `x^n - 1`.
    pub fn forward(&self, a: &[u64], n: usize) -> Vec<u64> {
        let mut v: Vec<u64> = a.iter().take(n).map(|&c| self.to_mont(c)).collect();
        v.resize(n, 0);
        for (i, &c) in a.iter().enumerate().skip(n) {
            v[i % n] = modp::add(v[i % n], self.to_mont(c), self.p);
        }
        self.transform(&mut v, false);
        v
    }

    /// Inverse of [`NttField::forward`], trimmed.
    pub fn backward(&self, mut v: Vec<u64>) -> UniP {
        self.transform(&mut v, true);
        let mut out: Vec<u64> = v.into_iter().map(|c| self.from_mont(c)).collect();
        trim(&mut out);
        out
    }

    /// Pointwise product of transformed vectors.
    pub fn pointwise(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.mmul(x, y)).collect()
    }

    /// Product of two transformed values.
    pub fn mul_point(&self, a: u64, b: u64) -> u64 {
        self.mmul(a, b)
    }

    /// Converts an ordinary residue for use with [`NttField::pointwise`].
    pub fn lift(&self, c: u64) -> u64 {
        self.to_mont(c)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> UniP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if a.len().min(b.len()) < SMALL_MUL {
            return modp::umul(a, b, self.p);
        }
        let n = (a.len() + b.len() - 1).next_power_of_two();
        let fa = self.forward(a, n);
        let fb = self.forward(b, n);
        self.backward(self.pointwise(&fa, &fb))
    }

    /// `a^{-1} mod x^n`; `a[0]` must be nonzero.
    fn inv_series(&self, a: &[u64], n: usize) -> UniP {
        let p = self.p;
        let mut g = vec![modp::inv(a[0], p)];
        let mut k = 1;
        while k < n {
            k = (2 * k).min(n);
            let trunc: Vec<u64> = a.iter().take(k).copied().collect();
            // g <- g (2 - a g)  mod x^k
            let mut ag = self.mul(&trunc, &g);
            ag.resize(k, 0);
            for v in ag.iter_mut() {
                *v = modp::sub(0, *v, p);
            }
            ag[0] = modp::add(ag[0], 2, p);
            let mut ng = self.mul(&g, &ag);
            ng.resize(k, 0);
            g = ng;
        }
        g.truncate(n);
        trim(&mut g);
        g
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (UniP, UniP) {
        let db = deg(b).expect("division by zero polynomial");
        let Some(da) = deg(a) else { return (Vec::new(), Vec::new()) };
        if da < db {
            return (Vec::new(), a.to_vec());
        }
        let k = da - db + 1;
        if k < SMALL_MUL || db < SMALL_MUL {
            return modp::udivrem(a, b, self.p);
        }
        let ra: Vec<u64> = a.iter().rev().take(k).copied().collect();
        let rb: Vec<u64> = b.iter().rev().copied().collect();
        let mut q = self.mul(&ra, &self.inv_series(&rb, k));
        q.resize(k, 0);
        q.reverse();
        trim(&mut q);
        let bq = self.mul(b, &q);
        let mut r: Vec<u64> =
            a.iter().zip(bq.iter().chain(std::iter::repeat(&0))).map(|(&x, &y)| modp::sub(x, y, self.p)).collect();
        r.truncate(db);
        trim(&mut r);
        (q, r)
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> UniP {
        modp::usub(a, b, self.p)
    }

    /// `x_i x_j + x_k x_l` for each row `[i, j, k, l]`, transforming each
    /// operand once. Every result must have fewer than `cap` coefficients;
    /// the transforms are cyclic of length at least `cap`.
    fn dot_many(&self, xs: &[&[u64]], rows: &[[usize; 4]], cap: usize) -> Vec<UniP> {
        let len = |i: usize| xs[i].len();
        let out_len = rows
            .iter()
            .flat_map(|r| [(r[0], r[1]), (r[2], r[3])])
            .filter(|&(i, j)| len(i) > 0 && len(j) > 0)
            .map(|(i, j)| len(i) + len(j) - 1)
            .max()
            .unwrap_or(0);
        let small = xs.iter().any(|x| !x.is_empty() && x.len() < SMALL_MUL);
        if out_len == 0 || small {
            return rows
                .iter()
                .map(|r| modp::uadd(&self.mul(xs[r[0]], xs[r[1]]), &self.mul(xs[r[2]], xs[r[3]]), self.p))
                .collect();
        }
        let n = out_len.min(cap).next_power_of_two();
        let fx: Vec<Vec<u64>> = xs.iter().map(|x| self.forward(x, n)).collect();
        rows.iter()
            .map(|r| {
                let v: Vec<u64> = (0..n)
                    .map(|i| {
                        let s = self.mmul(fx[r[0]][i], fx[r[1]][i]);
                        modp::add(s, self.mmul(fx[r[2]][i], fx[r[3]][i]), self.p)
                    })
                    .collect();
                self.backward(v)
            })
            .collect()
    }

    fn apply(&self, m: &Mat, a: &[u64], b: &[u64]) -> (UniP, UniP) {
        let xs = [&m[0][0][..], &m[0][1], &m[1][0], &m[1][1], a, b];
        // both results are remainders of degree at most deg a
        let cap = a.len().max(b.len());
        let mut out = self.dot_many(&xs, &[[0, 4, 1, 5], [2, 4, 3, 5]], cap);
        let y = out.pop().unwrap();
        (out.pop().unwrap(), y)
    }

    fn mat_mul(&self, m: &Mat, n: &Mat) -> Mat {
        let xs = [&m[0][0][..], &m[0][1], &m[1][0], &m[1][1], &n[0][0], &n[0][1], &n[1][0], &n[1][1]];
        let mut out =
            self.dot_many(&xs, &[[0, 4, 1, 6], [0, 5, 1, 7], [2, 4, 3, 6], [2, 5, 3, 7]], usize::MAX).into_iter();
        let mut next = || out.next().unwrap();
        [[next(), next()], [next(), next()]]
    }

    /// A matrix `M` with `M (a, b) = (a', b')` consecutive remainders of
    /// the Euclidean sequence and `deg b' < ceil(deg a / 2) <= deg a'`.
    fn half_gcd(&self, a: &[u64], b: &[u64]) -> Mat {
        let da = deg(a).unwrap_or(0);
        let m = da.div_ceil(2);
        if deg(b).is_none_or(|d| d < m) {
            return identity();
        }
        let r = self.half_gcd(&a[m..], &b[m..]);
        let (a1, b1) = self.apply(&r, a, b);
        if deg(&b1).is_none_or(|d| d < m) {
            return r;
        }
        let (q, rem) = self.divrem(&a1, &b1);
        let step: Mat = [[Vec::new(), vec![1]], [vec![1], self.sub(&[], &q)]];
        let qr = self.mat_mul(&step, &r);
        let Some(dr) = deg(&rem) else { return qr };
        if dr < m {
            return qr;
        }
        let k = 2 * m - deg(&b1).unwrap();
        let s = self.half_gcd(&b1[k..], &rem[k..]);
        self.mat_mul(&s, &qr)
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> UniP {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        if deg(&a) < deg(&b) {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if a.len() < SMALL_GCD {
                return modp::ugcd(&a, &b, self.p);
            }
            if a.len() == b.len() {
                let (_, r) = self.divrem(&a, &b);
                a = std::mem::replace(&mut b, r);
                continue;
            }
            let m = self.half_gcd(&a, &b);
            let (x, y) = self.apply(&m, &a, &b);
            a = x;
            b = y;
            if b.is_empty() {
                break;
            }
            let (_, r) = self.divrem(&a, &b);
            a = b;
            b = r;
        }
        modp::monic(&a, self.p)
    }
}

type Mat = [[UniP; 2]; 2];

fn identity() -> Mat {
    [[vec![1], Vec::new()], [Vec::new(), vec![1]]]
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = vec![2u64];
    let mut c = (p - 1) >> TWO_ADICITY;
    let mut d = 3;
    while d * d <= c {
        if c.is_multiple_of(d) {
            factors.push(d);
            while c.is_multiple_of(d) {
                c /= d;
            }
        }
        d += 2;
    }
    if c > 1 {
        factors.push(c);
    }
    (2..).find(|&g| factors.iter().all(|&q| modp::pow(g, (p - 1) / q, p) != 1)).expect("a primitive root exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly<R: Rng>(rng: &mut R, n: usize, p: u64) -> UniP {
        let mut v: UniP = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn transform_multiplication_matches_karatsuba() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = NttField::random(&mut rng);
        let p = f.modulus();
        let a = random_poly(&mut rng, 700, p);
        let b = random_poly(&mut rng, 333, p);
        assert_eq!(f.mul(&a, &b), modp::umul(&a, &b, p));
    }

    #[test]
    fn fast_division_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = NttField::random(&mut rng);
        let p = f.modulus();
        let a = random_poly(&mut rng, 900, p);
        let b = random_poly(&mut rng, 300, p);
        assert_eq!(f.divrem(&a, &b), modp::udivrem(&a, &b, p));
    }

    #[test]
    fn half_gcd_matches_euclid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = NttField::random(&mut rng);
        let p = f.modulus();
        for (n, k) in [(600, 0), (700, 37), (500, 300), (1000, 900)] {
            let g = random_poly(&mut rng, k + 1, p);
            let a = f.mul(&random_poly(&mut rng, n - k, p), &g);
            let b = f.mul(&random_poly(&mut rng, n - k - 5, p), &g);
            let fast = f.gcd(&a, &b);
            assert_eq!(fast, modp::ugcd(&a, &b, p));
            assert_eq!(deg(&fast), Some(k));
        }
        let g = random_poly(&mut rng, 41, p);
        let a = f.mul(&random_poly(&mut rng, 400, p), &g);
        let b = f.mul(&random_poly(&mut rng, 400, p), &g);
        assert_eq!(f.gcd(&a, &b), modp::ugcd(&a, &b, p));
    }
}
