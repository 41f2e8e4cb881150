//! Certificates built from curves and maps: the base-point theorem,
//! strict transforms, Halphen and Coble configurations, and stability of
//! the adjoint system.

use serde::Serialize;

use crate::curve::dec::preserves;
use crate::curve::system::{adjoint, linear_system, LinearSystem};
use crate::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::map::CremonaMap;
use crate::{QPoint, QPoly};

const PROPER_ONLY: &str =
    "only proper base points with rational coordinates are examined; infinitely near or non-rational base points are not seen";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasePointEntry {
    pub point: String,
    pub map_multiplicity: u32,
    pub curve_multiplicity: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasePointReport {
    pub curve_degree: u32,
    pub entries: Vec<BasePointEntry>,
    pub violations: Vec<String>,
    pub pass: bool,
    /// No base point of any nonlinear map can satisfy `3 m = n` on this
    /// curve, so no nonlinear map passes.
    pub nonlinear_excluded: bool,
    pub caveat: String,
}

/// True when `3 m = n` fails for every multiplicity a point of the curve
/// can have (1, or a declared singular multiplicity), assuming the
/// declared singularities are all of them.
pub fn no_nonlinear_map_passes(c: &PlaneCurve) -> bool {
    let n = c.degree();
    std::iter::once(1).chain(c.singularities().iter().map(|(_, m)| *m)).all(|m| 3 * m != n)
}

/// Checks that every rational base point `q` of `φ` lies on the curve
/// with `3 m_q(C) = n`.
pub fn basepoint_theorem_check(c: &PlaneCurve, phi: &CremonaMap, image_degree_bound: u32) -> Result<BasePointReport> {
    let n = c.degree();
    if let Some((p, m)) = c.singularities().iter().find(|(_, m)| 3 * m > n) {
        return Err(Error::Precondition(format!("3 * {m} > {n} at {p}")));
    }
    if image_degree_bound > n {
        return Err(Error::Precondition(format!("image degree bound {image_degree_bound} exceeds {n}")));
    }
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    if !phi.is_linear() {
        for bp in phi.rational_base_points()? {
            let m = c.multiplicity_at(&bp.point);
            let ok = 3 * m == n;
            if m == 0 {
                violations.push(format!("base point {} is not on the curve", bp.point));
            } else if !ok {
                violations.push(format!("base point {}: 3 * {m} != {n}", bp.point));
            }
            entries.push(BasePointEntry {
                point: bp.point.to_string(),
                map_multiplicity: bp.multiplicity,
                curve_multiplicity: m,
                ok,
            });
        }
    }
    Ok(BasePointReport {
        curve_degree: n,
        pass: violations.is_empty(),
        entries,
        violations,
        nonlinear_excluded: no_nonlinear_map_passes(c),
        caveat: PROPER_ONLY.into(),
    })
}

/// Removes from `g` every factor it shares with `j`.
fn saturate(mut g: QPoly, j: &QPoly) -> QPoly {
    if j.is_constant() {
        return g;
    }
    loop {
        let common = g.gcd(j);
        if common.is_constant() {
            return g;
        }
        g = g.exact_div(&common).expect("gcd divides");
    }
}

/// `φ(C)`, computed as the strict transform of `C` under the inverse.
pub fn image_curve(phi: &CremonaMap, inverse: &CremonaMap, f: &QPoly) -> Result<QPoly> {
    if !phi.verify_inverse(inverse) {
        return Err(Error::Precondition("the supplied map is not an inverse".into()));
    }
    if f.is_constant() {
        return Err(Error::ZeroInput("curve equation"));
    }
    let g = saturate(f.substitute(inverse.components())?, &inverse.jacobian());
    if g.is_constant() {
        return Err(Error::Other("saturation removed every factor".into()));
    }
    let g = g.canonical();
    if preserves(phi, f).is_some() && !g.proj_eq(f) {
        return Err(Error::Other("preserved curve has a different image; saturation over-divided".into()));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalphenReport {
    pub dimension: i64,
    pub system: LinearSystem,
    pub pencil: bool,
}

/// Curves of degree `3n` with multiplicity `n` at nine points.
pub fn halphen_check(points: &[QPoint], n: u32) -> Result<HalphenReport> {
    if points.len() != 9 {
        return Err(Error::TooFewEntries { need: 9, got: points.len() });
    }
    if n == 0 {
        return Err(Error::Precondition("index must be positive".into()));
    }
    let conds: Vec<(QPoint, u32)> = points.iter().map(|p| (p.clone(), n)).collect();
    let system = linear_system(3 * n, &conds)?;
    let dimension = system.dimension();
    Ok(HalphenReport { dimension, system, pencil: dimension == 1 })
}

/// A sextic whose declared singularities are exactly ten nodes.
pub fn coble_check(c: &PlaneCurve) -> bool {
    c.degree() == 6 && c.singularities().len() == 10 && c.singularities().iter().all(|(_, m)| *m == 2)
}

/// True iff every adjoint curve is carried by `φ` into the adjoint
/// system.
pub fn adjoint_stability(phi: &CremonaMap, inverse: &CremonaMap, c: &PlaneCurve) -> Result<bool> {
    if preserves(phi, c.form()).is_none() {
        return Err(Error::Precondition("the map does not preserve the curve".into()));
    }
    let adj = adjoint(c)?;
    if adj.basis.is_empty() {
        return Err(Error::Precondition("the adjoint system is empty".into()));
    }
    if !phi.verify_inverse(inverse) {
        return Err(Error::Precondition("the supplied map is not an inverse".into()));
    }
    let jac = inverse.jacobian();
    let subs: Vec<QPoly> = adj.basis.iter().map(|a| a.substitute(inverse.components())).collect::<Result<_>>()?;
    // the fixed part of the transformed system, restricted to the curves
    // the inverse contracts; a member may itself be contracted
    let common = subs[1..].iter().fold(subs[0].clone(), |acc, f| acc.gcd(f));
    let fixed = common.exact_div(&saturate(common.clone(), &jac)).expect("saturation divides");
    for s in &subs {
        let img = s.exact_div(&fixed).expect("fixed part divides every member");
        if adj.coordinates_of(&img).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Rat};

    fn vars() -> (QPoly, QPoly, QPoly) {
        (QPoly::x(), QPoly::y(), QPoly::z())
    }

    #[test]
    fn image_of_a_line_under_tau() {
        let (x, y, z) = vars();
        let t = CremonaMap::standard_quadratic();
        let l = &(&x + &y) + &z;
        let img = image_curve(&t, &t, &l).unwrap();
        assert!(img.proj_eq(&(&(&(&x * &y) + &(&y * &z)) + &(&x * &z))));
        let id = CremonaMap::identity();
        assert_eq!(image_curve(&id, &id, &l).unwrap(), l);
    }

    #[test]
    fn grid_halphen_indices() {
        let pts: Vec<QPoint> = (0..3).flat_map(|a| (0..3).map(move |b| QPoint::from_i64(a, b, 1))).collect();
        let one = halphen_check(&pts, 1).unwrap();
        assert!(one.pencil);
        assert!(halphen_check(&pts, 2).unwrap().dimension >= 2);
    }

    #[test]
    fn quartic_excludes_nonlinear_maps() {
        let (x, y, z) = vars();
        let q = PlaneCurve::smooth(&(&x.pow(4) + &y.pow(4)) + &z.pow(4)).unwrap();
        assert!(no_nonlinear_map_passes(&q));
        let rep = basepoint_theorem_check(&q, &CremonaMap::standard_quadratic(), 4).unwrap();
        assert!(!rep.pass);
        assert!(rep.nonlinear_excluded);
        let cubic = PlaneCurve::smooth(&(&x.pow(3) + &y.pow(3)) + &z.pow(3).scale(&Rat::from_i64(2))).unwrap();
        assert!(!no_nonlinear_map_passes(&cubic));
    }

    #[test]
    fn adjoint_stability_for_identity() {
        let (x, y, z) = vars();
        let q = PlaneCurve::smooth(&(&x.pow(4) + &y.pow(4)) + &z.pow(4)).unwrap();
        let id = CremonaMap::identity();
        assert!(adjoint_stability(&id, &id, &q).unwrap());
        let t = CremonaMap::standard_quadratic();
        assert!(adjoint_stability(&t, &t, &q).is_err());
    }
}
