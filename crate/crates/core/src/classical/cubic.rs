//! Chord-tangent arithmetic on plane cubics, and quadratic maps
//! preserving a smooth cubic.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::linalg::{mat3_apply, mat3_det, mat3_from_columns, mat3_inv, projective_frame, Mat3};
use crate::arith::resultant::resultant;
use crate::curve::preserves;
use crate::error::{Error, Result};
use crate::map::CremonaMap;
use crate::scalar::{Field, Rat};
use crate::{QPoint, QPoly};

/// A plane cubic with a chosen smooth point as origin of the group law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicWithOrigin {
    curve: QPoly,
    origin: QPoint,
}

impl CubicWithOrigin {
    pub fn new(curve: QPoly, origin: QPoint) -> Result<Self> {
        if curve.degree() != 3 {
            return Err(Error::Precondition(format!("expected a cubic, got degree {}", curve.degree())));
        }
        on_curve(&curve, &origin)?;
        if gradient_at(&curve, &origin).iter().all(|v| v.is_zero()) {
            return Err(Error::ZeroGradient(origin.to_string()));
        }
        Ok(CubicWithOrigin { curve, origin })
    }

    pub fn curve(&self) -> &QPoly {
        &self.curve
    }

    pub fn origin(&self) -> &QPoint {
        &self.origin
    }

    pub fn third(&self, p: &QPoint, q: &QPoint) -> Result<QPoint> {
        cubic_third(&self.curve, p, q)
    }

    pub fn neg(&self, q: &QPoint) -> Result<QPoint> {
        cubic_neg(&self.curve, &self.origin, q)
    }

    pub fn add(&self, p: &QPoint, q: &QPoint) -> Result<QPoint> {
        cubic_add(&self.curve, &self.origin, p, q)
    }

    /// `k q` for `k >= 0`.
    pub fn mul(&self, k: u32, q: &QPoint) -> Result<QPoint> {
        let mut acc = self.origin.clone();
        for _ in 0..k {
            acc = self.add(&acc, q)?;
        }
        Ok(acc)
    }
}

fn on_curve(e: &QPoly, p: &QPoint) -> Result<()> {
    if !e.eval(p.coords()).is_zero() {
        return Err(Error::Precondition(format!("{p} is not on the cubic")));
    }
    Ok(())
}

fn gradient_at(e: &QPoly, p: &QPoint) -> [Rat; 3] {
    e.gradient().map(|g| g.eval(p.coords()))
}

/// The linear binary form's zero `(s : t)`, as the point `s p + t r`.
fn root_on_line(l: &QPoly, p: &QPoint, r: &[Rat; 3]) -> Result<QPoint> {
    let a = l.coeff([1, 0, 0]);
    let b = l.coeff([0, 1, 0]);
    QPoint::from_array(QPoint::combine(&b, p.coords(), &-a, r))
}

/// Third intersection of the line through `p` and `q` (the tangent when
/// `p = q`) with the cubic.
pub fn cubic_third(e: &QPoly, p: &QPoint, q: &QPoint) -> Result<QPoint> {
    if e.degree() != 3 {
        return Err(Error::Precondition(format!("expected a cubic, got degree {}", e.degree())));
    }
    on_curve(e, p)?;
    on_curve(e, q)?;
    let (r, known) = if p == q {
        let l = gradient_at(e, p);
        if l.iter().all(|v| v.is_zero()) {
            return Err(Error::ZeroGradient(p.to_string()));
        }
        let units = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|u| u.map(Rat::from_i64));
        let r = std::iter::once(QPoint::cross(&l, p.coords()))
            .chain(units.iter().map(|u| QPoint::cross(&l, u)))
            .find(|v| !QPoint::is_zero_vec(v) && QPoint::from_array(v.clone()).ok().as_ref() != Some(p))
            .expect("a line has two distinct points");
        // p is the root (1 : 0), doubled
        (r, QPoly::y().pow(2))
    } else {
        (q.coords().clone(), &QPoly::x() * &QPoly::y())
    };
    let g = e.restrict_to_line(p.coords(), &r);
    if g.is_zero() {
        return Err(Error::LineInCurve);
    }
    let l = g.exact_div(&known).map_err(|_| Error::Other("restricted cubic lacks the known roots".into()))?;
    root_on_line(&l, p, &r)
}

/// `-q` for the group law with origin `o`.
pub fn cubic_neg(e: &QPoly, o: &QPoint, q: &QPoint) -> Result<QPoint> {
    let t = cubic_third(e, o, o)?;
    cubic_third(e, q, &t)
}

/// `p + q` for the group law with origin `o`.
pub fn cubic_add(e: &QPoly, o: &QPoint, p: &QPoint, q: &QPoint) -> Result<QPoint> {
    let t = cubic_third(e, p, q)?;
    cubic_third(e, &t, o)
}

/// True unless the cubic may be singular. Projects the partials from a
/// random centre; a singular point would give a common factor of both
/// eliminants in every projection.
pub fn is_smooth_cubic(e: &QPoly, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let m: Mat3<Rat> = [0, 1, 2].map(|_| [0, 1, 2].map(|_| Rat::from_i64(rng.gen_range(-5..=5))));
        if mat3_det(&m).is_zero() {
            continue;
        }
        let g = e.linear_change(&m).gradient();
        let centre = [Rat::zero(), Rat::zero(), Rat::from_i64(1)];
        if g.iter().any(|f| f.is_zero() || f.eval(&centre).is_zero()) {
            continue;
        }
        let (Ok(r1), Ok(r2)) = (resultant(&g[0], &g[1], 2), resultant(&g[0], &g[2], 2)) else { continue };
        if r1.form.is_zero() || r2.form.is_zero() {
            continue;
        }
        if r1.form.gcd(&r2.form).is_constant() {
            return true;
        }
    }
    false
}

/// A quadratic map preserving a smooth cubic, with its three base points
/// on the cubic and the translation it induces there.
#[derive(Clone, Debug)]
pub struct DecQuadratic {
    pub map: CremonaMap,
    pub base_points: [QPoint; 3],
    pub translation: QPoint,
}

/// The quadratic map with base points `p, q, r` that restricts to
/// `x ↦ x + w` on the cubic, where `r` is the unique point making such a
/// map exist: `p + q + r = 3 w + t` with `t` the third point of the
/// tangent at the origin.
pub fn dec_cubic_quadratic(c: &CubicWithOrigin, p: &QPoint, q: &QPoint, w: &QPoint) -> Result<DecQuadratic> {
    let t = c.third(c.origin(), c.origin())?;
    let r = c.add(&c.add(&t, &c.mul(3, w)?)?, &c.neg(&c.add(p, q)?)?)?;
    if p == q || p == &r || q == &r || QPoint::collinear(p, q, &r) {
        return Err(Error::NotGeneralPosition(format!("base points {p}, {q}, {r} are not a triangle")));
    }
    let frame = mat3_inv(&mat3_from_columns([p.coords(), q.coords(), r.coords()])).expect("triangle");
    let l = frame.clone().map(|row| QPoly::linear(&row));
    let phi0 = CremonaMap::new([&l[1] * &l[2], &l[0] * &l[2], &l[0] * &l[1]])?;

    let mut samples: Vec<(QPoint, QPoint)> = Vec::new();
    let gens = [p, q, w];
    let mut cands: Vec<QPoint> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        cands.push(c.neg(a)?);
        cands.push(c.add(a, a)?);
        for b in &gens[i + 1..] {
            cands.push(c.add(a, b)?);
            cands.push(c.add(a, &c.neg(b)?)?);
        }
    }
    let mut seen: Vec<QPoint> = vec![p.clone(), q.clone(), r.clone()];
    for x in cands {
        if seen.contains(&x) {
            continue;
        }
        seen.push(x.clone());
        let Ok(img) = phi0.apply(&x) else { continue };
        samples.push((img, c.add(&x, w)?));
    }
    let a = calibrate(&samples).ok_or_else(|| Error::Calibration("no certified linear correction".into()))?;
    let map = phi0.then_linear(&a)?;
    if preserves(&map, c.curve()).is_none() {
        return Err(Error::Calibration("calibrated map does not preserve the cubic".into()));
    }
    Ok(DecQuadratic { map, base_points: [p.clone(), q.clone(), r], translation: w.clone() })
}

/// A matrix sending the first point of every pair to the second, fitted
/// on four pairs in general position and checked on at least four more.
pub(crate) fn calibrate(pairs: &[(QPoint, QPoint)]) -> Option<Mat3<Rat>> {
    let n = pairs.len();
    if n < 8 {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let idx = [i, j, k, l];
                    let src = idx.map(|t| pairs[t].0.coords().clone());
                    let dst = idx.map(|t| pairs[t].1.coords().clone());
                    let Some(a) = projective_frame(&src, &dst) else { continue };
                    let rest: Vec<&(QPoint, QPoint)> = (0..n).filter(|t| !idx.contains(t)).map(|t| &pairs[t]).collect();
                    let ok = rest
                        .iter()
                        .all(|(s, d)| QPoint::from_array(mat3_apply(&a, s.coords())).ok().as_ref() == Some(d));
                    return ok.then_some(a);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64, c: i64) -> QPoint {
        QPoint::from_i64(a, b, c)
    }

    fn mordell() -> CubicWithOrigin {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let e = &(&(&y.pow(2) * &z) - &x.pow(3)) - &z.pow(3).scale(&Rat::from_i64(17));
        CubicWithOrigin::new(e, pt(0, 1, 0)).unwrap()
    }

    #[test]
    fn chord_through_two_torsion() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let e = &(&(&y.pow(2) * &z) - &x.pow(3)) + &(&x * &z.pow(2));
        assert_eq!(cubic_third(&e, &pt(0, 0, 1), &pt(1, 0, 1)).unwrap(), pt(-1, 0, 1));
        // the tangent at (0:0:1) is x = 0, which meets the curve again at (0:1:0)
        assert_eq!(cubic_third(&e, &pt(0, 0, 1), &pt(0, 0, 1)).unwrap(), pt(0, 1, 0));
        let line = &(&y * &z.pow(2)) - &y.pow(3);
        assert!(cubic_third(&line, &pt(0, 0, 1), &pt(1, 0, 0)).is_err());
    }

    #[test]
    fn group_axioms_on_mordell_curve() {
        let c = mordell();
        let o = c.origin().clone();
        let (p, q, r) = (pt(-2, 3, 1), pt(-1, 4, 1), pt(2, 5, 1));
        assert_eq!(c.neg(&o).unwrap(), o);
        assert_eq!(c.add(&p, &o).unwrap(), p);
        assert_eq!(c.add(&q, &c.neg(&q).unwrap()).unwrap(), o);
        assert_eq!(c.neg(&p).unwrap(), pt(-2, -3, 1));
        assert_eq!(c.add(&p, &q).unwrap(), c.add(&q, &p).unwrap());
        let lhs = c.add(&c.add(&p, &q).unwrap(), &r).unwrap();
        let rhs = c.add(&p, &c.add(&q, &r).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(cubic_third(c.curve(), &p, &q).is_ok());
        let third = c.third(&p, &q).unwrap();
        assert_eq!(c.third(&p, &third).unwrap(), q);
    }

    #[test]
    fn smoothness_test() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        assert!(is_smooth_cubic(mordell().curve(), 1));
        let nodal = &(&(&y.pow(2) * &z) - &x.pow(3)) - &(&x.pow(2) * &z);
        assert!(!is_smooth_cubic(&nodal, 1));
        // a cone, singular at its vertex
        assert!(!is_smooth_cubic(&(&x.pow(3) - &y.pow(3).scale(&Rat::from_i64(2))), 1));
    }

    #[test]
    fn quadratic_element_translates_the_cubic() {
        let c = mordell();
        let (p, q, w) = (pt(-2, 3, 1), pt(-1, 4, 1), pt(2, 5, 1));
        let d = dec_cubic_quadratic(&c, &p, &q, &w).unwrap();
        assert_eq!(d.map.degree(), 2);
        assert!(preserves(&d.map, c.curve()).is_some());
        assert!(!crate::curve::fixes(&d.map, c.curve()));
        let x = pt(4, 9, 1);
        assert_eq!(d.map.apply(&x).unwrap(), c.add(&x, &w).unwrap());
        let mut bps: Vec<QPoint> = d.map.rational_base_points().unwrap().into_iter().map(|b| b.point).collect();
        let mut expect = d.base_points.to_vec();
        bps.sort_by(|a, b| a.coords().cmp(b.coords()));
        expect.sort_by(|a, b| a.coords().cmp(b.coords()));
        assert_eq!(bps, expect);
    }
}
