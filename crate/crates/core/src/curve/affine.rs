//! Rational maps of the affine plane `z = 1`.

use std::fmt;

use crate::arith::gcd::cancel_common_factor;
use crate::error::{Error, Result};
use num_traits::{One, Zero};

use crate::scalar::Rat;
use crate::QPoly;

/// `(x, y) ↦ (P1/Q1, P2/Q2)`, each ratio stored as two forms of equal
/// degree and read on the chart `z = 1`.
#[derive(Clone)]
pub struct AffineMap2 {
    comps: [(QPoly, QPoly); 2],
}

fn pad(f: &QPoly, d: u32) -> QPoly {
    f.mul_var_pow(2, d - f.degree())
}

fn reduce(num: &QPoly, den: &QPoly) -> (QPoly, QPoly) {
    let (q, _) = cancel_common_factor(&[num.clone(), den.clone()]);
    let (num, den) = (q[0].clone(), q[1].clone());
    let s = den.normalizer();
    (num.scale(&s), den.scale(&s))
}

/// `f` with every power of `z` divided out: the homogenization of its
/// restriction to `z = 1`.
fn affine_part(f: &QPoly) -> QPoly {
    f.strip_var(2).0
}

impl AffineMap2 {
    /// Numerators and denominators may have different degrees; they are
    /// padded with powers of `z`.
    pub fn new(xnum: QPoly, xden: QPoly, ynum: QPoly, yden: QPoly) -> Result<Self> {
        let ratio = |n: QPoly, d: QPoly| -> Result<(QPoly, QPoly)> {
            if d.is_zero() {
                return Err(Error::ZeroInput("denominator"));
            }
            if n.is_zero() {
                return Ok((QPoly::zero(), QPoly::one()));
            }
            let e = n.degree().max(d.degree());
            Ok(reduce(&pad(&n, e), &pad(&d, e)))
        };
        Ok(AffineMap2 { comps: [ratio(xnum, xden)?, ratio(ynum, yden)?] })
    }

    pub fn identity() -> Self {
        let z = QPoly::z();
        AffineMap2 { comps: [(QPoly::x(), z.clone()), (QPoly::y(), z)] }
    }

    pub fn components(&self) -> &[(QPoly, QPoly); 2] {
        &self.comps
    }

    /// The map as a triple of forms `(P1 Q2 : P2 Q1 : Q1 Q2)`.
    pub fn triple(&self) -> [QPoly; 3] {
        let [(p1, q1), (p2, q2)] = &self.comps;
        [p1 * q2, p2 * q1, q1 * q2]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap2) -> Result<AffineMap2> {
        let t = other.triple();
        let sub = |f: &QPoly| -> QPoly {
            if f.is_zero() {
                QPoly::zero()
            } else {
                f.substitute(&t).expect("equal degrees")
            }
        };
        let mut comps = Vec::with_capacity(2);
        for (p, q) in &self.comps {
            let den = sub(q);
            if den.is_zero() {
                return Err(Error::DegenerateComposition("denominator vanishes identically".into()));
            }
            let num = sub(p);
            comps.push(if num.is_zero() { (num, QPoly::one()) } else { reduce(&num, &den) });
        }
        let y = comps.pop().unwrap();
        let x = comps.pop().unwrap();
        Ok(AffineMap2 { comps: [x, y] })
    }

    /// Value at the affine point `(a, b)`, unless a denominator vanishes.
    pub fn eval(&self, a: &Rat, b: &Rat) -> Option<(Rat, Rat)> {
        let pt = [a.clone(), b.clone(), Rat::one()];
        let val = |(p, q): &(QPoly, QPoly)| {
            let d = q.eval(&pt);
            (!d.is_zero()).then(|| p.eval(&pt) / d)
        };
        Some((val(&self.comps[0])?, val(&self.comps[1])?))
    }
}

impl PartialEq for AffineMap2 {
    fn eq(&self, other: &Self) -> bool {
        self.comps.iter().zip(&other.comps).all(|((p, q), (r, s))| {
            let lhs = p * s;
            let rhs = r * q;
            lhs == rhs || (lhs.is_zero() && rhs.is_zero())
        })
    }
}

impl fmt::Display for AffineMap2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [(p1, q1), (p2, q2)] = &self.comps;
        write!(f, "({})/({}), ({})/({})", p1, q1, p2, q2)
    }
}

impl fmt::Debug for AffineMap2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMap2({self})")
    }
}

fn check_denominators(psi: &AffineMap2, fa: &QPoly) -> Result<()> {
    for (_, q) in psi.components() {
        if fa.divides(&affine_part(q)) {
            return Err(Error::Precondition("a denominator vanishes on the curve".into()));
        }
    }
    Ok(())
}

/// True iff the curve `f = 0` is mapped into itself: `f` divides the
/// numerator of `f ∘ ψ`.
pub fn affine_preserves(psi: &AffineMap2, f: &QPoly) -> Result<bool> {
    let fa = affine_part(f);
    if fa.is_constant() {
        return Err(Error::ZeroInput("curve equation"));
    }
    check_denominators(psi, &fa)?;
    let num = fa.substitute(&psi.triple())?;
    Ok(fa.divides(&affine_part(&num)))
}

/// True iff `ψ` restricts to the identity on `f = 0`.
pub fn affine_fixes(psi: &AffineMap2, f: &QPoly) -> Result<bool> {
    let fa = affine_part(f);
    if fa.is_constant() {
        return Err(Error::ZeroInput("curve equation"));
    }
    check_denominators(psi, &fa)?;
    let z = QPoly::z();
    let v = [QPoly::x(), QPoly::y()];
    Ok(psi.components().iter().zip(&v).all(|((p, q), x)| {
        let n = &(&z * p) - &(x * q);
        n.is_zero() || fa.divides(&affine_part(&n))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::scalar::Field;

    fn q(v: i64) -> Rat {
        Rat::from_i64(v)
    }

    #[test]
    fn involution_on_hyperelliptic_curve() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        // h = x^5 - 1 homogenized to degree 5; sigma = (x, h/y)
        let h = &x.pow(5) - &z.pow(5);
        let sigma = AffineMap2::new(x.clone(), z.clone(), h.clone(), &y * &z.pow(4)).unwrap();
        let f = &(&y.pow(2) * &z.pow(3)) - &h;
        assert!(affine_fixes(&sigma, &f).unwrap());
        assert!(affine_preserves(&sigma, &f).unwrap());
        assert_eq!(sigma.compose(&sigma).unwrap(), AffineMap2::identity());
        assert_eq!(sigma.eval(&q(2), &q(1)), Some((q(2), q(31))));
    }

    #[test]
    fn line_fixed_by_quadratic_map() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let m = AffineMap2::new(&x * &z, &(&x * &y) + &z.pow(2), y.clone(), z.clone()).unwrap();
        assert!(affine_fixes(&m, &x).unwrap());
        assert!(affine_fixes(&m, &y).unwrap());
        assert!(!affine_fixes(&m, &(&x - &y)).unwrap());
    }

    #[test]
    fn denominator_on_curve_rejected() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let m = AffineMap2::new(x.clone(), z.clone(), z.clone(), y.clone()).unwrap();
        assert!(affine_preserves(&m, &y).is_err());
    }
}
