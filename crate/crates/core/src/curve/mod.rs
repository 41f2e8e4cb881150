//! Plane curves with ordinary singularities and the linear systems
//! attached to them.

mod affine;
mod checks;
mod dec;
pub mod irreducible;
mod system;

pub use affine::{affine_fixes, affine_preserves, AffineMap2};
pub use checks::{
    adjoint_stability, basepoint_theorem_check, coble_check, halphen_check, image_curve, no_nonlinear_map_passes,
    BasePointEntry, BasePointReport, HalphenReport,
};
pub use dec::{fixes, preserves};
pub use system::{adjoint, adjoint_tower, genus_formula, linear_system, LinearSystem, TowerStep};

use num_traits::Zero;

use crate::arith::roots::squarefree_binary;
use crate::arith::zeros::tangent_cone;
use crate::error::{Error, Result};
use crate::{QPoint, QPoly};

/// A plane curve `F = 0` with its declared singular points, each an
/// ordinary point of multiplicity at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    form: QPoly,
    sing: Vec<(QPoint, u32)>,
}

impl PlaneCurve {
    /// Verifies every declared singularity and spot-checks
    /// irreducibility.
    pub fn new(form: QPoly, sing: Vec<(QPoint, u32)>) -> Result<Self> {
        if form.is_zero() || form.degree() == 0 {
            return Err(Error::InvalidCurve("form must be nonconstant".into()));
        }
        for (i, (p, m)) in sing.iter().enumerate() {
            if sing[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::InvalidCurve(format!("point {p} declared twice")));
            }
            if *m < 2 {
                return Err(Error::InvalidCurve(format!("multiplicity {m} at {p} is not singular")));
            }
            let (order, cone) = tangent_cone(&form, p);
            if order != *m {
                return Err(Error::InvalidCurve(format!("declared multiplicity {m} at {p}, found {order}")));
            }
            if squarefree_binary(&cone).degree() != *m {
                return Err(Error::InvalidCurve(format!("singularity at {p} is not ordinary")));
            }
        }
        if !irreducible::likely_irreducible(&form, 0x5eed) {
            return Err(Error::InvalidCurve("form appears reducible".into()));
        }
        Ok(PlaneCurve { form: form.canonical(), sing })
    }

    pub fn smooth(form: QPoly) -> Result<Self> {
        Self::new(form, Vec::new())
    }

    pub fn form(&self) -> &QPoly {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn singularities(&self) -> &[(QPoint, u32)] {
        &self.sing
    }

    /// Declared multiplicity at `p`: 0 off the curve, 1 at undeclared
    /// points of the curve.
    pub fn multiplicity_at(&self, p: &QPoint) -> u32 {
        if let Some((_, m)) = self.sing.iter().find(|(q, _)| q == p) {
            return *m;
        }
        u32::from(self.form.eval(p.coords()).is_zero())
    }

    /// Geometric genus from the degree and the declared singularities.
    pub fn genus(&self) -> Result<i64> {
        let g = genus_formula(self.degree() as i64, self.sing.iter().map(|(_, m)| *m));
        if g < 0 {
            return Err(Error::Inconsistent(format!("negative genus {g}")));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::Rat;

    fn vars() -> (QPoly, QPoly, QPoly) {
        (QPoly::x(), QPoly::y(), QPoly::z())
    }

    #[test]
    fn smooth_cubic_has_genus_one() {
        let (x, y, z) = vars();
        let c = PlaneCurve::smooth(&(&x.pow(3) + &y.pow(3)) + &z.pow(3)).unwrap();
        assert_eq!(c.genus().unwrap(), 1);
    }

    #[test]
    fn nodal_quartic() {
        let (x, y, z) = vars();
        // node at (0:0:1) with tangents y = x and y = -x
        let f = &(&(&y.pow(2) * &z.pow(2)) - &(&x.pow(2) * &z.pow(2))) - &(&x.pow(4) + &y.pow(4));
        let c = PlaneCurve::new(f.clone(), vec![(QPoint::from_i64(0, 0, 1), 2)]).unwrap();
        assert_eq!(c.genus().unwrap(), 2);
        assert_eq!(c.multiplicity_at(&QPoint::from_i64(0, 0, 1)), 2);
        assert_eq!(c.multiplicity_at(&QPoint::from_i64(1, 1, 1)), 0);
        // tacnode y^2 z^2 - x^4 - y^4 is not ordinary
        let t = &(&y.pow(2) * &z.pow(2)) - &(&x.pow(4) + &y.pow(4));
        assert!(PlaneCurve::new(t, vec![(QPoint::from_i64(0, 0, 1), 2)]).is_err());
    }

    #[test]
    fn wrong_declarations_rejected() {
        let (x, y, z) = vars();
        let cubic = &(&x.pow(3) + &y.pow(3)) + &z.pow(3);
        let on = QPoint::from_i64(-1, 1, 0);
        assert!(matches!(PlaneCurve::new(cubic.clone(), vec![(on.clone(), 2)]), Err(Error::InvalidCurve(_))));
        let reducible = &cubic * &(&x + &z.scale(&Rat::from_i64(2)));
        assert!(PlaneCurve::smooth(reducible).is_err());
    }
}
