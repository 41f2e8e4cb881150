//! Multivariate gcd over the rationals by multi-prime reduction.
//!
//! Each prime yields a gcd image computed with Brown's dense bivariate
//! algorithm on the chart `z = 1`. Images of minimal degree are combined
//! by Chinese remaindering and rational reconstruction. A candidate is
//! accepted only after exact division of the inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::hompoly::HomPoly;
use crate::arith::modp::{self, HomTerms};
use crate::arith::mono::Mono3;
use crate::scalar::{Field, Fp, Rat};

/// Upper bound on primes tried before giving up. Each prime is about 62
/// bits, so this allows results with coefficients of several thousand
/// digits.
const MAX_PRIMES: usize = 4096;

pub fn prime_field_hom_gcd<const P: u64>(a: &HomPoly<Fp<P>>, b: &HomPoly<Fp<P>>) -> HomPoly<Fp<P>> {
    let ta = a.to_modp(P).expect("prime field element");
    let tb = b.to_modp(P).expect("prime field element");
    let g = modp::hom_gcd(&ta, &tb, P);
    from_modp_terms(&g, Fp::<P>::new)
}

fn from_modp_terms<K: Field>(t: &HomTerms, conv: impl Fn(u64) -> K) -> HomPoly<K> {
    HomPoly::from_terms(t.iter().map(|(e, v)| (*e, conv(*v)))).expect("homogeneous by construction")
}

/// Accumulates residues of a dense coefficient vector across primes.
struct Crt {
    residues: Vec<BigInt>,
    modulus: BigInt,
}

impl Crt {
    fn new(len: usize) -> Self {
        Crt { residues: vec![BigInt::zero(); len], modulus: BigInt::one() }
    }

    fn push(&mut self, image: &[u64], p: u64) {
        let pb = BigInt::from(p);
        if self.modulus.is_one() {
            for (r, &v) in self.residues.iter_mut().zip(image) {
                *r = BigInt::from(v);
            }
            self.modulus = pb;
            return;
        }
        let m_mod_p = crate::scalar::bigint_mod(&self.modulus, p);
        let m_inv = modp::inv(m_mod_p, p);
        for (r, &v) in self.residues.iter_mut().zip(image) {
            let r_mod_p = crate::scalar::bigint_mod(r, p);
            let k = modp::mul(modp::sub(v, r_mod_p, p), m_inv, p);
            if k != 0 {
                *r += &self.modulus * BigInt::from(k);
            }
        }
        self.modulus *= pb;
    }

    fn reconstruct(&self) -> Option<Vec<Rat>> {
        self.residues.iter().map(|r| rational_reconstruct(r, &self.modulus)).collect()
    }
}

/// Finds `a/b` with `a = b r mod m` and `|a|, b <= sqrt(m/2)`.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / BigInt::from(2)).sqrt();
    rational_reconstruct_bounded(r, m, &bound, &bound)
}

/// Finds `a/b` with `a = b r mod m`, `|a| <= n`, `0 < b <= d`. Unique when
/// `2 n d < m`.
pub fn rational_reconstruct_bounded(r: &BigInt, m: &BigInt, n: &BigInt, d: &BigInt) -> Option<Rat> {
    let r = r.mod_floor(m);
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let (mut r0, mut r1) = (m.clone(), r);
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > n {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > *d || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rat::new(r1, s1))
}

fn dense_image(t: &HomTerms, degree: u32) -> Vec<u64> {
    let mut v = vec![0u64; Mono3::count_of_degree(degree)];
    for (e, c) in t {
        v[Mono3(*e).dense_index(degree)] = *c;
    }
    v
}

fn from_dense(v: Vec<Rat>, degree: u32) -> HomPoly<Rat> {
    let terms =
        Mono3::all_of_degree(degree).zip(v.into_iter().rev()).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.0, c));
    HomPoly::from_terms(terms).expect("homogeneous by construction")
}

/// Whether the leading (graded-lex) coefficient survives reduction mod p.
fn lead_survives(t: &HomTerms, poly: &HomPoly<Rat>) -> bool {
    match (t.first(), poly.leading()) {
        (Some((e, _)), Some((m, _))) => *e == m.0,
        (None, None) => true,
        _ => false,
    }
}

/// Primitive integer representative, as used for reduction.
fn integral(a: &HomPoly<Rat>) -> HomPoly<Rat> {
    a.canonical()
}

pub fn rational_hom_gcd(a: &HomPoly<Rat>, b: &HomPoly<Rat>) -> HomPoly<Rat> {
    if a.is_zero() {
        return b.canonical();
    }
    if b.is_zero() {
        return a.canonical();
    }
    if a.is_constant() || b.is_constant() {
        return HomPoly::one();
    }
    let a = integral(a);
    let b = integral(b);
    if a.proj_eq(&b) {
        return a;
    }
    let mut best: Option<(u32, Crt)> = None;
    let mut previous: Option<Vec<Rat>> = None;
    for i in 0..MAX_PRIMES {
        let p = modp::prime(i);
        let ta = a.to_modp(p).unwrap();
        let tb = b.to_modp(p).unwrap();
        if !lead_survives(&ta, &a) || !lead_survives(&tb, &b) {
            continue;
        }
        let g = modp::hom_gcd(&ta, &tb, p);
        let dg = g.first().map_or(0, |(e, _)| e.iter().sum());
        if dg == 0 {
            return HomPoly::one();
        }
        match &mut best {
            Some((d, _)) if dg > *d => continue,
            Some((d, crt)) if dg == *d => crt.push(&dense_image(&g, dg), p),
            _ => {
                let mut crt = Crt::new(Mono3::count_of_degree(dg));
                crt.push(&dense_image(&g, dg), p);
                best = Some((dg, crt));
                previous = None;
            }
        }
        let (dg, crt) = best.as_ref().unwrap();
        let Some(coeffs) = crt.reconstruct() else {
            continue;
        };
        if previous.as_ref() == Some(&coeffs) {
            let cand = from_dense(coeffs.clone(), *dg).canonical();
            if a.exact_div(&cand).is_ok() && b.exact_div(&cand).is_ok() {
                return cand;
            }
        }
        previous = Some(coeffs);
    }
    panic!("rational gcd did not stabilize within {MAX_PRIMES} primes");
}

/// Divides a family of forms by their greatest common divisor.
///
/// Returns the cofactors (scaled jointly, so that `polys[i] = g * out[i]`
/// for the returned `g`) together with `g` itself. The cofactors are
/// reconstructed directly, which is much cheaper than reconstructing `g`
/// when the common factor is large and the cofactors are small, as in
/// compositions that collapse.
pub fn cancel_common_factor(polys: &[HomPoly<Rat>]) -> (Vec<HomPoly<Rat>>, HomPoly<Rat>) {
    let live: Vec<usize> = (0..polys.len()).filter(|&i| !polys[i].is_zero()).collect();
    if live.is_empty() {
        return (polys.to_vec(), HomPoly::one());
    }
    if live.iter().any(|&i| polys[i].is_constant()) {
        return (polys.to_vec(), HomPoly::one());
    }
    // a common scalar keeps the relation polys[i] = g * q[i] exact
    let scale = common_integral_scale(polys);
    let ints: Vec<HomPoly<Rat>> = polys.iter().map(|f| f.scale(&scale)).collect();

    let mut best: Option<(u32, Vec<Crt>)> = None;
    let mut previous: Option<Vec<Vec<Rat>>> = None;
    for k in 0..MAX_PRIMES {
        let p = modp::prime(k);
        let images: Vec<HomTerms> = live.iter().map(|&i| ints[i].to_modp(p).unwrap()).collect();
        if live.iter().zip(&images).any(|(&i, t)| !lead_survives(t, &ints[i])) {
            continue;
        }
        let mut g = images[0].clone();
        for t in &images[1..] {
            g = modp::hom_gcd(&g, t, p);
        }
        let dg: u32 = g.first().map_or(0, |(e, _)| e.iter().sum());
        if dg == 0 {
            return (polys.to_vec(), HomPoly::one());
        }
        let cof: Vec<HomTerms> =
            live.iter().zip(&images).map(|(&i, t)| divide_image(t, &g, ints[i].degree() - dg, p)).collect();
        // normalize so the first cofactor's leading coefficient is 1
        let lead = cof[0][0].1;
        let li = modp::inv(lead, p);
        let cof: Vec<HomTerms> =
            cof.into_iter().map(|t| t.into_iter().map(|(e, v)| (e, modp::mul(v, li, p))).collect()).collect();
        match &mut best {
            Some((d, _)) if dg > *d => continue,
            Some((d, crts)) if dg == *d => {
                for ((&i, c), crt) in live.iter().zip(&cof).zip(crts.iter_mut()) {
                    crt.push(&dense_image(c, ints[i].degree() - dg), p);
                }
            }
            _ => {
                let mut crts = Vec::new();
                for (&i, c) in live.iter().zip(&cof) {
                    let e = ints[i].degree() - dg;
                    let mut crt = Crt::new(Mono3::count_of_degree(e));
                    crt.push(&dense_image(c, e), p);
                    crts.push(crt);
                }
                best = Some((dg, crts));
                previous = None;
            }
        }
        let (dg, crts) = best.as_ref().unwrap();
        let rec: Option<Vec<Vec<Rat>>> = crts.iter().map(|c| c.reconstruct()).collect();
        let Some(rec) = rec else { continue };
        if previous.as_ref() == Some(&rec) {
            if let Some(out) = verify_cofactors(&ints, &live, &rec, *dg) {
                let (qs, g) = out;
                let g = g.scale(&scale.inv());
                return (qs, g);
            }
        }
        previous = Some(rec);
    }
    panic!("cofactor reconstruction did not stabilize within {MAX_PRIMES} primes");
}

/// Positive scalar making all coefficients of the family jointly
/// primitive integers.
fn common_integral_scale(polys: &[HomPoly<Rat>]) -> Rat {
    let coeffs: Vec<Rat> = polys.iter().flat_map(|f| f.terms().iter().map(|(_, c)| c.clone())).collect();
    let n = Rat::normalizer(coeffs.iter());
    n.abs()
}

fn divide_image(h: &HomTerms, g: &HomTerms, degree: u32, p: u64) -> HomTerms {
    let bh = to_biv(h);
    let bg = to_biv(g);
    let q = modp::bdiv_exact(&bh, &bg, p).expect("gcd image divides its input");
    let mut out = HomTerms::new();
    for (i, row) in q.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                let (i, j) = (i as u32, j as u32);
                out.push(([i, j, degree - i - j], v));
            }
        }
    }
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out
}

fn to_biv(a: &HomTerms) -> modp::BivP {
    let dx = a.iter().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
    let mut out: modp::BivP = vec![Vec::new(); dx + 1];
    for (e, v) in a {
        let row = &mut out[e[0] as usize];
        let j = e[1] as usize;
        if row.len() <= j {
            row.resize(j + 1, 0);
        }
        row[j] = *v;
    }
    out
}

fn verify_cofactors(
    ints: &[HomPoly<Rat>],
    live: &[usize],
    rec: &[Vec<Rat>],
    dg: u32,
) -> Option<(Vec<HomPoly<Rat>>, HomPoly<Rat>)> {
    let qs: Vec<HomPoly<Rat>> =
        live.iter().zip(rec).map(|(&i, v)| from_dense(v.clone(), ints[i].degree() - dg)).collect();
    // joint integral scaling of the cofactors
    let s = common_integral_scale(&qs);
    let qs: Vec<HomPoly<Rat>> = qs.iter().map(|q| q.scale(&s)).collect();
    let pivot = (0..qs.len()).filter(|&k| !qs[k].is_zero()).min_by_key(|&k| qs[k].len())?;
    let g = ints[live[pivot]].exact_div(&qs[pivot]).ok()?;
    for (k, &i) in live.iter().enumerate() {
        if k != pivot && g.mul_ref(&qs[k]) != ints[i] {
            return None;
        }
    }
    let mut out = vec![HomPoly::zero(); ints.len()];
    for (k, &i) in live.iter().enumerate() {
        out[i] = qs[k].clone();
    }
    Some((out, g))
}

/// Bit length of the largest coefficient numerator or denominator.
pub fn height_bits(a: &HomPoly<Rat>) -> u64 {
    a.terms().iter().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = HomPoly<Rat>;

    fn q(v: i64) -> Rat {
        Rat::from_i64(v)
    }

    #[test]
    fn simple_gcds() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        assert_eq!(rational_hom_gcd(&(&x * &y), &(&x * &z)), x);
        assert_eq!(rational_hom_gcd(&(&x + &y), &(&x + &z)), Q::one());
        let tau = [&y * &z, &x * &z, &x * &y];
        let comps: Vec<Q> = tau.iter().map(|f| f.substitute(&tau).unwrap()).collect();
        let g = rational_hom_gcd(&rational_hom_gcd(&comps[0], &comps[1]), &comps[2]);
        assert_eq!(g, &(&x * &y) * &z);
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let big = Rat::from_integer(BigInt::from(10).pow(40) + 7);
        let c = &(&x.scale(&big) + &y) - &z.scale(&q(3));
        let a = &(&c * &c) * &(&x + &z);
        let b = &c * &(&(&y * &y) + &(&x * &z).scale(&q(5)));
        assert_eq!(rational_hom_gcd(&a, &b), c.canonical());
    }

    #[test]
    fn cofactor_cancellation() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let g = &(&x + &y.scale(&q(2))) * &(&(&x * &z) - &(&y * &y));
        let polys = vec![&g * &x, &g * &y, Q::zero(), &g * &z.scale(&q(-7))];
        let (qs, h) = cancel_common_factor(&polys);
        for (p, qi) in polys.iter().zip(&qs) {
            assert_eq!(&h * qi, *p);
        }
        assert!(h.proj_eq(&g));
        assert_eq!(qs[0], x);
        assert!(qs[2].is_zero());
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_000_007u64);
        let r = (BigInt::from(3) * BigInt::from(modp::inv(7, 1_000_000_007))) % &m;
        assert_eq!(rational_reconstruct(&r, &m), Some(Rat::new(3.into(), 7.into())));
    }
}
