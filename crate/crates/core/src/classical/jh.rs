//! The de Jonquières group `J_h` attached to `y^2 = h(x)`, and lifts of
//! automorphisms of the hyperelliptic curve.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::ratfunc::RatFunc1;
use crate::curve::{affine_fixes, affine_preserves, AffineMap2};
use crate::error::{Error, Result};
use crate::map::CremonaMap;
use crate::scalar::{Field, Rat};
use crate::{QPoint, QPoly, UniPoly};

/// The class of the matrix `[[a1, h a2], [a2, a1]]` modulo `Q(x)*`,
/// kept as `(1, a2/a1)` or `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JhElement {
    h: UniPoly<Rat>,
    a1: RatFunc1,
    a2: RatFunc1,
}

impl JhElement {
    pub fn h(&self) -> &UniPoly<Rat> {
        &self.h
    }

    pub fn a1(&self) -> &RatFunc1 {
        &self.a1
    }

    pub fn a2(&self) -> &RatFunc1 {
        &self.a2
    }

    /// Genus of `y^2 = h`.
    pub fn genus(&self) -> usize {
        (self.h.degree().unwrap_or(0).saturating_sub(2)) / 2
    }

    pub fn is_identity(&self) -> bool {
        self.a2.is_zero()
    }

    /// The involution `(x, h/y)`.
    pub fn is_sigma(&self) -> bool {
        self.a1.is_zero()
    }
}

fn check_h(h: &UniPoly<Rat>) -> Result<()> {
    match h.degree() {
        Some(d) if d >= 2 && d % 2 == 0 => {}
        d => return Err(Error::Precondition(format!("h must have even degree at least 2, got {d:?}"))),
    }
    if !h.is_squarefree() {
        return Err(Error::MultipleRoots);
    }
    Ok(())
}

pub fn jh_make(h: &UniPoly<Rat>, a1: &RatFunc1, a2: &RatFunc1) -> Result<JhElement> {
    check_h(h)?;
    let hf = RatFunc1::from_poly(h.clone());
    if a1.mul(a1).sub(&hf.mul(a2).mul(a2)).is_zero() {
        return Err(Error::DegenerateElement("a1^2 - h a2^2 vanishes".into()));
    }
    Ok(normalize(h.clone(), a1, a2))
}

fn normalize(h: UniPoly<Rat>, a1: &RatFunc1, a2: &RatFunc1) -> JhElement {
    if a1.is_zero() {
        JhElement { h, a1: RatFunc1::zero(), a2: RatFunc1::one() }
    } else {
        let a2 = a2.div(a1).expect("a1 is nonzero");
        JhElement { h, a1: RatFunc1::one(), a2 }
    }
}

pub fn jh_identity(h: &UniPoly<Rat>) -> Result<JhElement> {
    jh_make(h, &RatFunc1::one(), &RatFunc1::zero())
}

pub fn jh_sigma(h: &UniPoly<Rat>) -> Result<JhElement> {
    jh_make(h, &RatFunc1::zero(), &RatFunc1::one())
}

pub fn jh_mul(e1: &JhElement, e2: &JhElement) -> Result<JhElement> {
    if e1.h != e2.h {
        return Err(Error::Precondition("elements belong to different h".into()));
    }
    let hf = RatFunc1::from_poly(e1.h.clone());
    let b1 = e1.a1.mul(&e2.a1).add(&hf.mul(&e1.a2).mul(&e2.a2));
    let b2 = e1.a1.mul(&e2.a2).add(&e1.a2.mul(&e2.a1));
    Ok(normalize(e1.h.clone(), &b1, &b2))
}

pub fn jh_inv(e: &JhElement) -> JhElement {
    normalize(e.h.clone(), &e.a1, &e.a2.neg())
}

/// `u(x)` as a form in `x, z` of degree `d`.
fn xz_form(u: &UniPoly<Rat>, d: u32) -> QPoly {
    QPoly::from_terms(
        u.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ([i as u32, 0, d - i as u32], c.clone())),
    )
    .expect("terms of one degree")
}

/// Homogenization of `y A(x) + B(x)`.
fn y_linear_form(a: &UniPoly<Rat>, b: &UniPoly<Rat>) -> QPoly {
    let da = a.degree().map(|d| d as u32 + 1).unwrap_or(0);
    let db = b.degree().map(|d| d as u32).unwrap_or(0);
    let d = da.max(db);
    let mut f = xz_form(b, d);
    if !a.is_zero() {
        f = &f + &xz_form(a, d - 1).mul_var_pow(1, 1);
    }
    f
}

/// `(x, (a1 y + h a2) / (a2 y + a1))`.
pub fn jh_to_affine(e: &JhElement) -> AffineMap2 {
    let (n1, d1) = (e.a1.num(), e.a1.den());
    let (n2, d2) = (e.a2.num(), e.a2.den());
    let p = |a: &UniPoly<Rat>, b: &UniPoly<Rat>| a * b;
    let num = y_linear_form(&p(n1, d2), &p(&p(&e.h, n2), d1));
    let den = y_linear_form(&p(n2, d1), &p(n1, d2));
    AffineMap2::new(QPoly::x(), QPoly::z(), num, den).expect("denominator a2 y + a1 is nonzero")
}

/// The plane model `y^2 z^(d-2) = h(x, z)` of degree `d = deg h`.
pub fn hyperelliptic_model(h: &UniPoly<Rat>) -> QPoly {
    let d = h.degree().unwrap_or(0).max(2) as u32;
    &QPoly::y().pow(2).mul_var_pow(2, d - 2) - &xz_form(h, d)
}

/// The affine element as a plane map `(x M : z N : z M)`, where `N / M`
/// is the second component; agreement with the chart is checked on
/// random points.
pub fn jh_homogenize(e: &JhElement) -> Result<CremonaMap> {
    let aff = jh_to_affine(e);
    let (n, m) = &aff.components()[1];
    let (x, z) = (QPoly::x(), QPoly::z());
    let map = CremonaMap::new([&x * m, &z * n, &z * m])?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a68);
    let mut agreed = 0;
    for _ in 0..200 {
        let a = Rat::from_i64(rng.gen_range(-20..=20));
        let b = Rat::from_i64(rng.gen_range(-20..=20));
        let Some((u, v)) = aff.eval(&a, &b) else { continue };
        let Ok(img) = map.apply(&QPoint::new(a, b, Rat::one())?) else { continue };
        if img != QPoint::new(u, v, Rat::one())? {
            return Err(Error::Other("homogenized map disagrees with the affine chart".into()));
        }
        agreed += 1;
        if agreed == 5 {
            return Ok(map);
        }
    }
    Err(Error::Other("too few points where both charts are defined".into()))
}

/// Lifts `x ↦ μ(x)` to `(x, y) ↦ (μ(x), ε c(x) y)` on `y^2 = h`, which
/// requires `h(μ) = c^2 h`.
pub fn extend_hyperelliptic_auto(h: &UniPoly<Rat>, mu: &RatFunc1, c: &RatFunc1, eps: i32) -> Result<AffineMap2> {
    check_h(h)?;
    if eps != 1 && eps != -1 {
        return Err(Error::Precondition(format!("sign must be 1 or -1, got {eps}")));
    }
    let (mn, md) = (mu.num(), mu.den());
    let low = |u: &UniPoly<Rat>| u.degree().unwrap_or(0) <= 1;
    if !low(mn) || !low(md) || (mn.degree().unwrap_or(0) == 0 && md.degree().unwrap_or(0) == 0) {
        return Err(Error::Precondition(format!("{mu} is not a Möbius transformation")));
    }
    let hf = RatFunc1::from_poly(h.clone());
    if c.is_zero() || hf.compose(mu)? != c.mul(c).mul(&hf) {
        return Err(Error::Precondition("h(mu(x)) differs from c(x)^2 h(x)".into()));
    }
    let ynum = y_linear_form(&c.num().scale(&Rat::from_i64(eps as i64)), &UniPoly::zero());
    let yden = xz_form(c.den(), c.den().degree().unwrap_or(0) as u32);
    let psi = AffineMap2::new(xz_form(mn, 1), xz_form(md, 1), ynum, yden)?;
    if !affine_preserves(&psi, &hyperelliptic_model(h))? {
        return Err(Error::Other("lift does not preserve the curve".into()));
    }
    Ok(psi)
}

/// True iff the image of `e` restricts to the identity on `y^2 = h`.
pub fn jh_fixes_curve(e: &JhElement) -> Result<bool> {
    affine_fixes(&jh_to_affine(e), &hyperelliptic_model(&e.h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::preserves;

    fn q(v: i64) -> Rat {
        Rat::from_i64(v)
    }

    fn poly(c: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc1 {
        RatFunc1::new(poly(n), poly(d)).unwrap()
    }

    fn h6() -> UniPoly<Rat> {
        poly(&[1, 0, 0, 0, 0, 0, 1])
    }

    #[test]
    fn sigma_is_an_involution() {
        let s = jh_sigma(&h6()).unwrap();
        assert!(jh_mul(&s, &s).unwrap().is_identity());
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let h = &x.pow(6) + &z.pow(6);
        let expect = AffineMap2::new(x.clone(), z.clone(), h, &y * &z.pow(5)).unwrap();
        assert_eq!(jh_to_affine(&s), expect);
        assert!(jh_fixes_curve(&s).unwrap());
    }

    #[test]
    fn rejects_bad_data() {
        assert!(matches!(jh_sigma(&poly(&[0, 0, 1])), Err(Error::MultipleRoots)));
        assert!(jh_make(&h6(), &RatFunc1::zero(), &RatFunc1::zero()).is_err());
    }

    #[test]
    fn group_law_and_homomorphism() {
        let e1 = jh_make(&h6(), &rf(&[1, 2], &[1]), &rf(&[3], &[1, 1])).unwrap();
        let e2 = jh_make(&h6(), &rf(&[-2, 0, 1], &[1]), &rf(&[1, -1], &[1])).unwrap();
        let p = jh_mul(&e1, &e2).unwrap();
        assert_eq!(p, jh_mul(&e2, &e1).unwrap());
        assert!(jh_mul(&e1, &jh_inv(&e1)).unwrap().is_identity());
        let lhs = jh_to_affine(&p);
        let rhs = jh_to_affine(&e1).compose(&jh_to_affine(&e2)).unwrap();
        assert_eq!(lhs, rhs);
        assert!(jh_fixes_curve(&p).unwrap());
    }

    #[test]
    fn homogenized_sigma_on_quartic_model() {
        let h = poly(&[-1, 0, 0, 0, 1]);
        let s = jh_sigma(&h).unwrap();
        let g = jh_homogenize(&s).unwrap();
        let model = hyperelliptic_model(&h);
        assert!(preserves(&g, &model).is_some());
        let img = g.apply(&QPoint::from_i64(2, 3, 1)).unwrap();
        assert_eq!(img, QPoint::new(q(2), q(5), q(1)).unwrap());
        assert!(g.compose(&g).unwrap().is_identity());
        assert!(jh_homogenize(&jh_identity(&h).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn lines_x_const_are_kept() {
        let e = jh_make(&h6(), &rf(&[1, 1], &[1]), &rf(&[2, -1], &[1])).unwrap();
        let g = jh_homogenize(&e).unwrap();
        let (x, z) = (QPoly::x(), QPoly::z());
        let line = &x - &z.scale(&q(3));
        assert!(preserves(&g, &line).is_some());
    }

    #[test]
    fn hyperelliptic_lifts() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let id = RatFunc1::x();
        let inv = extend_hyperelliptic_auto(&h6(), &id, &RatFunc1::one(), -1).unwrap();
        assert_eq!(inv, AffineMap2::new(x.clone(), z.clone(), -y.clone(), z.clone()).unwrap());
        let refl = extend_hyperelliptic_auto(&h6(), &RatFunc1::x().neg(), &RatFunc1::one(), 1).unwrap();
        assert_eq!(refl, AffineMap2::new(-x.clone(), z.clone(), y.clone(), z.clone()).unwrap());
        let recip = rf(&[1], &[0, 1]);
        let m = extend_hyperelliptic_auto(&h6(), &recip, &recip.pow(3), 1).unwrap();
        assert_eq!(m, AffineMap2::new(z.clone(), x.clone(), &y * &z.pow(2), x.pow(3)).unwrap());
        assert!(extend_hyperelliptic_auto(&h6(), &recip, &RatFunc1::one(), 1).is_err());
    }
}
