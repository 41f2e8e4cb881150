//! Rational roots of univariate polynomials and binary forms.
//!
//! Roots are found modulo a word-sized prime, lifted by Newton iteration
//! and recovered by rational reconstruction; every candidate is checked
//! exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::gcd::rational_reconstruct_bounded;
use crate::arith::hompoly::HomPoly;
use crate::arith::modp;
use crate::arith::unipoly::UniPoly;
use crate::scalar::{bigint_mod, Rat};

/// Distinct rational roots of a nonzero polynomial, ascending.
pub fn rational_roots(f: &UniPoly<Rat>) -> Vec<Rat> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let b = f.homogenize(f.degree().unwrap() as u32);
    let mut out: Vec<Rat> = binary_roots(&b).into_iter().filter(|[_, v]| !v.is_zero()).map(|[u, v]| u / v).collect();
    out.sort();
    out
}

/// Distinct rational zeros `(u : v)` of a binary form in `x, y`, with
/// the last nonzero coordinate equal to 1.
pub fn binary_roots(b: &HomPoly<Rat>) -> Vec<[Rat; 2]> {
    assert!(b.degree_in(2) == 0, "binary form expected");
    if b.is_zero() || b.degree() == 0 {
        return Vec::new();
    }
    let sq = squarefree_binary(b);
    let mut out = Vec::new();
    // (1 : 0) is a root iff the x^d coefficient vanishes
    let d = sq.degree();
    if sq.coeff([d, 0, 0]).is_zero() {
        out.push([Rat::one(), Rat::zero()]);
    }
    let (rest, _) = sq.strip_var(0);
    if rest.degree() < sq.degree() {
        out.push([Rat::zero(), Rat::one()]);
    }
    let uni = UniPoly::dehomogenize(&rest);
    for r in integer_poly_roots(&integral_coeffs(&uni)) {
        out.push([r, Rat::one()]);
    }
    out
}

/// Squarefree part of a binary form: divides out `gcd(B_x, B_y)`.
pub fn squarefree_binary(b: &HomPoly<Rat>) -> HomPoly<Rat> {
    if b.degree() <= 1 {
        return b.canonical();
    }
    let g = b.derivative(0).gcd(&b.derivative(1));
    if g.is_constant() {
        return b.canonical();
    }
    b.exact_div(&g).expect("gcd of partials divides the form").canonical()
}

fn integral_coeffs(f: &UniPoly<Rat>) -> Vec<BigInt> {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

fn eval_int(f: &[BigInt], t: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * t + c).mod_floor(m))
}

fn deriv_int(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Rational roots of a squarefree integer polynomial with nonzero
/// constant term (lowest degree first).
fn integer_poly_roots(f: &[BigInt]) -> Vec<Rat> {
    let deg = f.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![Rat::new(-f[0].clone(), f[1].clone())];
    }
    let lc = f[deg].abs();
    let c0 = f[0].abs();
    // roots a/b satisfy |a| <= |f0| and b <= |lc|
    let bound = BigInt::from(2) * &c0 * &lc + BigInt::one();
    let df = deriv_int(f);
    for i in 0..64 {
        let p = modp::prime(i);
        if bigint_mod(&f[deg], p) == 0 {
            continue;
        }
        let fp: Vec<u64> = f.iter().map(|c| bigint_mod(c, p)).collect();
        let dfp: Vec<u64> = df.iter().map(|c| bigint_mod(c, p)).collect();
        let mut fpt = fp.clone();
        modp::trim(&mut fpt);
        let mut dpt = dfp.clone();
        modp::trim(&mut dpt);
        if modp::ugcd(&fpt, &dpt, p).len() != 1 {
            continue;
        }
        let mut out = Vec::new();
        for r in modp::uroots(&fpt, p) {
            let mut modulus = BigInt::from(p);
            let mut root = BigInt::from(r);
            while modulus <= bound {
                modulus = &modulus * &modulus;
                let fv = eval_int(f, &root, &modulus);
                let dv = eval_int(&df, &root, &modulus);
                let Some(inv) = inv_mod(&dv, &modulus) else { break };
                root = (root - fv * inv).mod_floor(&modulus);
            }
            if let Some(cand) = rational_reconstruct_bounded(&root, &modulus, &c0, &lc) {
                if is_root(f, &cand) {
                    out.push(cand);
                }
            }
        }
        return out;
    }
    // every tried prime divided the discriminant; fall back to the
    // slow but certain search through the rational root theorem
    divisor_search(f)
}

fn is_root(f: &[BigInt], r: &Rat) -> bool {
    let (a, b) = (r.numer(), r.denom());
    let n = f.len() - 1;
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    let mut terms: Vec<BigInt> = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        terms.push(bpow.clone());
        bpow *= b;
    }
    let mut apow = BigInt::one();
    for (i, c) in f.iter().enumerate() {
        acc += c * &apow * &terms[n - i];
        apow *= a;
    }
    acc.is_zero()
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn divisor_search(f: &[BigInt]) -> Vec<Rat> {
    let mut out = Vec::new();
    for a in small_divisors(&f[0]) {
        for b in small_divisors(&f[f.len() - 1]) {
            for s in [a.clone(), -a.clone()] {
                let r = Rat::new(s, b.clone());
                if !out.contains(&r) && is_root(f, &r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rat {
        Rat::new(a.into(), b.into())
    }

    #[test]
    fn roots_of_product_of_linear_factors() {
        // (2x - 3)(x + 5)(7x - 1)(x^2 + 1)
        let mut f = UniPoly::<Rat>::from_i64s(&[-3, 2]);
        for g in [[5, 1], [-1, 7]] {
            f = &f * &UniPoly::from_i64s(&g);
        }
        f = &f * &UniPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(rational_roots(&f), vec![q(-5, 1), q(1, 7), q(3, 2)]);
    }

    #[test]
    fn repeated_roots_and_infinity() {
        // binary form x^2 y^3 (x - 2y)^2: roots (0:1), (1:0)? no: y^3 gives (1:0)
        let x = HomPoly::<Rat>::x();
        let y = HomPoly::<Rat>::y();
        let f = &(&x.pow(2) * &y.pow(3)) * &(&x - &y.scale(&q(2, 1))).pow(2);
        let mut roots = binary_roots(&f);
        roots.sort();
        assert_eq!(roots, vec![[q(0, 1), q(1, 1)], [q(1, 1), q(0, 1)], [q(2, 1), q(1, 1)]]);
    }

    #[test]
    fn large_roots() {
        let big: BigInt = num_traits::pow(BigInt::from(10), 30) + 1;
        let r = Rat::new(big.clone(), BigInt::from(97));
        let f = UniPoly::new(vec![-r.clone(), Rat::one()]);
        let g = &f * &UniPoly::from_i64s(&[1, 1, 1]);
        assert_eq!(rational_roots(&g), vec![r]);
    }
}
