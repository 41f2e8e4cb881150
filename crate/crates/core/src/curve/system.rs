//! Linear systems with assigned base points, adjoints and their towers.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::linalg::nullspace;
use crate::arith::mono::Mono3;
use crate::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};
use crate::{QPoint, QPoly};

/// Forms of one degree with prescribed multiplicities at given points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub degree: u32,
    pub conditions: Vec<(QPoint, u32)>,
    pub basis: Vec<QPoly>,
}

impl LinearSystem {
    /// Projective dimension; -1 for the empty system.
    pub fn dimension(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    /// Coordinates of `f` in the basis, if `f` lies in the span.
    pub fn coordinates_of(&self, f: &QPoly) -> Option<Vec<Rat>> {
        if f.is_zero() {
            return Some(vec![Rat::zero(); self.basis.len()]);
        }
        if f.degree() != self.degree {
            return None;
        }
        let monos: Vec<Mono3> = Mono3::all_of_degree(self.degree).collect();
        let rows: Vec<Vec<Rat>> = monos.iter().map(|m| self.basis.iter().map(|b| b.coeff(m.0)).collect()).collect();
        let rhs: Vec<Rat> = monos.iter().map(|m| f.coeff(m.0)).collect();
        crate::arith::linalg::solve(&rows, &rhs)
    }
}

/// Genus of a curve of degree `d` with ordinary points of the given
/// multiplicities. May be negative for impossible data.
pub fn genus_formula(d: i64, mults: impl IntoIterator<Item = u32>) -> i64 {
    let delta: i64 = mults.into_iter().map(|m| (m as i64) * (m as i64 - 1) / 2).sum();
    (d - 1) * (d - 2) / 2 - delta
}

/// `∂^a (x^e)` evaluated at `p`.
fn partial_at(e: [u32; 3], a: [u32; 3], pw: &[Vec<Rat>; 3]) -> Rat {
    let mut v = Rat::one();
    for i in 0..3 {
        if e[i] < a[i] {
            return Rat::zero();
        }
        let falling: i64 = ((e[i] - a[i] + 1)..=e[i]).map(|k| k as i64).product();
        v *= Rat::from_i64(falling) * &pw[i][(e[i] - a[i]) as usize];
    }
    v
}

/// All forms of degree `d` with multiplicity at least `m` at each `p`.
pub fn linear_system(d: u32, conditions: &[(QPoint, u32)]) -> Result<LinearSystem> {
    for (i, (p, _)) in conditions.iter().enumerate() {
        if conditions[..i].iter().any(|(q, _)| q == p) {
            return Err(Error::Precondition(format!("point {p} given twice")));
        }
    }
    let monos: Vec<Mono3> = Mono3::all_of_degree(d).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (p, m) in conditions {
        if *m == 0 {
            continue;
        }
        let c = p.coords();
        let pw: [Vec<Rat>; 3] = [0, 1, 2].map(|i| {
            let mut v = vec![Rat::one()];
            for k in 0..d as usize {
                let next = &v[k] * &c[i];
                v.push(next);
            }
            v
        });
        for a in Mono3::all_of_degree(m - 1) {
            rows.push(monos.iter().map(|e| partial_at(e.0, a.0, &pw)).collect());
        }
    }
    let basis: Vec<QPoly> = nullspace(&rows, monos.len())
        .into_iter()
        .map(|v| {
            QPoly::from_terms(monos.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.0, c)))
                .expect("monomials of one degree")
                .canonical()
        })
        .collect();
    for f in &basis {
        for (p, m) in conditions {
            if *m > 0 && crate::arith::zeros::vanishing_order(f, p) < *m {
                return Err(Error::Other(format!("basis element fails the condition at {p}")));
            }
        }
    }
    Ok(LinearSystem { degree: d, conditions: conditions.to_vec(), basis })
}

/// Curves of degree `n - 3` with multiplicity `m - 1` at each singular
/// point; its projective dimension must be `g - 1`.
pub fn adjoint(c: &PlaneCurve) -> Result<LinearSystem> {
    let n = c.degree();
    if n < 3 {
        return Err(Error::Precondition(format!("adjoint needs degree at least 3, got {n}")));
    }
    let conds: Vec<(QPoint, u32)> = c.singularities().iter().map(|(p, m)| (p.clone(), m - 1)).collect();
    let sys = linear_system(n - 3, &conds)?;
    let g = c.genus()?;
    if sys.dimension() != g - 1 {
        return Err(Error::Inconsistent(format!(
            "adjoint has projective dimension {} but genus - 1 = {}",
            sys.dimension(),
            g - 1
        )));
    }
    Ok(sys)
}

/// One step of the adjoint tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerStep {
    pub degree: u32,
    pub conditions: Vec<(String, u32)>,
    pub basis_size: usize,
    /// Genus of a member, assuming it has exactly the assigned ordinary
    /// singularities.
    pub genus_proxy: i64,
    /// The basis size differs from the genus proxy of the previous step,
    /// so members do not behave like the assigned data predicts.
    pub divergent: bool,
}

/// Iterates `(d, {m}) -> (d - 3, {m - 1})`, dropping conditions that
/// reach multiplicity 0, until the genus proxy is at most 1 or the system
/// is empty. The curve itself is not part of the output.
pub fn adjoint_tower(c: &PlaneCurve) -> Result<Vec<TowerStep>> {
    if c.degree() < 3 {
        return Err(Error::Precondition("adjoint needs degree at least 3".into()));
    }
    let mut d = c.degree();
    let mut conds: Vec<(QPoint, u32)> = c.singularities().to_vec();
    let mut prev_genus = c.genus()?;
    let mut steps = Vec::new();
    while d >= 3 {
        d -= 3;
        conds = conds.into_iter().filter(|(_, m)| *m >= 2).map(|(p, m)| (p, m - 1)).collect();
        let sys = linear_system(d, &conds)?;
        let proxy = genus_formula(d as i64, conds.iter().map(|(_, m)| *m));
        steps.push(TowerStep {
            degree: d,
            conditions: conds.iter().map(|(p, m)| (p.to_string(), *m)).collect(),
            basis_size: sys.basis.len(),
            genus_proxy: proxy,
            divergent: sys.basis.len() as i64 != prev_genus,
        });
        if proxy <= 1 || sys.basis.is_empty() {
            break;
        }
        prev_genus = proxy;
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64, i64)]) -> Vec<QPoint> {
        v.iter().map(|&(a, b, c)| QPoint::from_i64(a, b, c)).collect()
    }

    #[test]
    fn lines_through_two_points() {
        let p = pts(&[(1, 2, 1), (3, -1, 1)]);
        let s = linear_system(1, &[(p[0].clone(), 1), (p[1].clone(), 1)]).unwrap();
        assert_eq!(s.basis.len(), 1);
    }

    #[test]
    fn cubics_and_octics_through_seven_points() {
        let p = pts(&[(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (2, -1, 5), (-3, 4, 2)]);
        let simple: Vec<_> = p.iter().map(|q| (q.clone(), 1)).collect();
        assert_eq!(linear_system(3, &simple).unwrap().basis.len(), 3);
        let triple: Vec<_> = p.iter().map(|q| (q.clone(), 3)).collect();
        assert_eq!(linear_system(8, &triple).unwrap().basis.len(), 3);
    }

    #[test]
    fn empty_system_and_duplicates() {
        let p = pts(&[(1, 0, 0), (0, 1, 0), (0, 0, 1)]);
        let conds: Vec<_> = p.iter().map(|q| (q.clone(), 2)).collect();
        assert!(linear_system(2, &conds).unwrap().basis.is_empty());
        assert!(linear_system(2, &[(p[0].clone(), 1), (p[0].clone(), 1)]).is_err());
    }

    #[test]
    fn genus_formula_values() {
        assert_eq!(genus_formula(3, []), 1);
        assert_eq!(genus_formula(4, [2]), 2);
        assert_eq!(genus_formula(6, [2; 7]), 3);
        assert_eq!(genus_formula(9, [3; 8]), 4);
    }

    #[test]
    fn smooth_quartic_adjoint_is_all_lines() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let f = &(&x.pow(4) + &y.pow(4)) + &z.pow(4);
        let c = PlaneCurve::smooth(f).unwrap();
        assert_eq!(adjoint(&c).unwrap().dimension(), 2);
        let tower = adjoint_tower(&c).unwrap();
        assert_eq!(tower.len(), 1);
        assert_eq!((tower[0].degree, tower[0].basis_size, tower[0].genus_proxy), (1, 3, 0));
        assert!(!tower[0].divergent);
    }
}
