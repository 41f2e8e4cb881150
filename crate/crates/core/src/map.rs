//! Plane Cremona transformations as triples of forms.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::gcd::cancel_common_factor;
use crate::arith::linalg::{det, Mat3};
use crate::arith::zeros::{common_rational_zeros, vanishing_order};
use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};
use crate::{QPoint, QPoly};

/// A rational self-map of the plane `(f0 : f1 : f2)`.
///
/// Components are coprime, of one degree, and scaled so that the first
/// one is canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct CremonaMap {
    comps: [QPoly; 3],
    degree: u32,
}

/// A proper base point together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    pub point: QPoint,
    pub multiplicity: u32,
}

/// Outcome of the two numerical conditions on a homaloidal net.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomaloidalReport {
    pub degree: u32,
    pub sum: u64,
    pub sum_sq: u64,
    pub expected_sum: u64,
    pub expected_sum_sq: u64,
    pub pass: bool,
}

impl CremonaMap {
    /// Normalizes a raw triple: cancels the common factor, checks degrees
    /// and rejects triples whose image is not the whole plane.
    pub fn new(raw: [QPoly; 3]) -> Result<Self> {
        Ok(Self::with_factor(raw)?.0)
    }

    /// Like [`CremonaMap::new`], also returning the cancelled factor.
    pub fn with_factor(raw: [QPoly; 3]) -> Result<(Self, QPoly)> {
        if raw.iter().any(|c| c.is_zero()) {
            return Err(Error::ZeroInput("map component"));
        }
        if raw.iter().any(|c| c.degree() != raw[0].degree()) {
            return Err(Error::UnequalComponentDegrees(raw.iter().map(|c| c.degree()).collect()));
        }
        let (q, g) = cancel_common_factor(&raw);
        let s = q[0].normalizer();
        let comps = [q[0].scale(&s), q[1].scale(&s), q[2].scale(&s)];
        let g = g.scale(&s.inv());
        let degree = comps[0].degree();
        if degree == 0 {
            return Err(Error::DegenerateMap("image is a point".into()));
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if comps[i].proj_eq(&comps[j]) {
                return Err(Error::DegenerateMap(format!("components {i} and {j} are proportional")));
            }
        }
        let map = CremonaMap { comps, degree };
        if !map.jacobian_is_nonzero() {
            return Err(Error::DegenerateMap("image is a curve".into()));
        }
        Ok((map, g))
    }

    pub fn from_linear(m: &Mat3<Rat>) -> Result<Self> {
        Self::new([QPoly::linear(&m[0]), QPoly::linear(&m[1]), QPoly::linear(&m[2])])
    }

    pub fn identity() -> Self {
        CremonaMap { comps: [QPoly::x(), QPoly::y(), QPoly::z()], degree: 1 }
    }

    /// The standard quadratic involution `(yz : xz : xy)`.
    pub fn standard_quadratic() -> Self {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        Self::new([&y * &z, &x * &z, &x * &y]).expect("valid map")
    }

    pub fn components(&self) -> &[QPoly; 3] {
        &self.comps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }

    pub fn is_identity(&self) -> bool {
        self.degree == 1 && self.comps == [QPoly::x(), QPoly::y(), QPoly::z()]
    }

    /// `self ∘ other`, that is `p ↦ self(other(p))`.
    pub fn compose(&self, other: &CremonaMap) -> Result<CremonaMap> {
        Ok(self.compose_with_factor(other)?.0)
    }

    /// Composition together with the common factor removed from the
    /// naive substitution.
    pub fn compose_with_factor(&self, other: &CremonaMap) -> Result<(CremonaMap, QPoly)> {
        if self.is_identity() {
            return Ok((other.clone(), QPoly::one()));
        }
        if other.is_identity() {
            return Ok((self.clone(), QPoly::one()));
        }
        let raw = [0, 1, 2].map(|i| self.comps[i].substitute(&other.comps).expect("equal degrees"));
        Self::with_factor(raw).map_err(|e| Error::DegenerateComposition(e.to_string()))
    }

    /// `A ∘ self` for an invertible matrix `A`.
    pub fn then_linear(&self, a: &Mat3<Rat>) -> Result<CremonaMap> {
        let raw =
            a.clone().map(|row| row.iter().zip(&self.comps).fold(QPoly::zero(), |acc, (c, f)| &acc + &f.scale(c)));
        Self::new(raw)
    }

    /// `n`-fold composite; stops early when a power is the identity.
    pub fn power(&self, n: u64) -> Result<CremonaMap> {
        if n == 0 || self.is_identity() {
            return Ok(Self::identity());
        }
        let mut acc = self.clone();
        let mut k = 1u64;
        while k < n {
            if acc.is_identity() {
                return self.power(n % k);
            }
            acc = self.compose(&acc)?;
            k += 1;
        }
        Ok(acc)
    }

    pub fn apply(&self, p: &QPoint) -> Result<QPoint> {
        let v = self.comps.clone().map(|c| c.eval(p.coords()));
        QPoint::from_array(v).map_err(|_| Error::IndeterminateAt(p.to_string()))
    }

    /// Curve of fixed points: the gcd of the 2x2 minors of
    /// `[x y z; f0 f1 f2]`. Isolated fixed points are not reported.
    pub fn fixed_curve(&self) -> Result<Option<QPoly>> {
        if self.is_identity() {
            return Err(Error::IdentityMap);
        }
        let g = self.fixed_minors().iter().filter(|m| !m.is_zero()).fold(QPoly::zero(), |acc, m| acc.gcd(m));
        Ok((!g.is_constant()).then(|| g.canonical()))
    }

    /// The minors `x f1 - y f0`, `x f2 - z f0`, `y f2 - z f1`.
    pub fn fixed_minors(&self) -> [QPoly; 3] {
        let v = [QPoly::x(), QPoly::y(), QPoly::z()];
        let f = &self.comps;
        let minor = |i: usize, j: usize| &(&v[i] * &f[j]) - &(&v[j] * &f[i]);
        [minor(0, 1), minor(0, 2), minor(1, 2)]
    }

    /// Determinant of the matrix of first partials, degree `3(d - 1)`.
    pub fn jacobian(&self) -> QPoly {
        let g = self.comps.clone().map(|c| c.gradient());
        let cof = |a: usize, b: usize, c: usize, d: usize| &(&g[1][a] * &g[2][b]) - &(&g[1][c] * &g[2][d]);
        let t0 = &g[0][0] * &cof(1, 2, 2, 1);
        let t1 = &g[0][1] * &cof(0, 2, 2, 0);
        let t2 = &g[0][2] * &cof(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    /// Evaluates the Jacobian at random points; only if every sample
    /// vanishes is the full determinant expanded.
    fn jacobian_is_nonzero(&self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1ac0b1a);
        let grads = self.comps.clone().map(|c| c.gradient());
        for _ in 0..6 {
            let p = [0, 1, 2].map(|_| Rat::from_i64(rng.gen_range(-50..=50)));
            let m: Vec<Vec<Rat>> = grads.iter().map(|g| g.iter().map(|d| d.eval(&p)).collect()).collect();
            if !det(m).is_zero() {
                return true;
            }
        }
        !self.jacobian().is_zero()
    }

    /// Proper rational base points with their multiplicities. Infinitely
    /// near and non-rational base points are not found.
    pub fn rational_base_points(&self) -> Result<Vec<BasePoint>> {
        self.rational_base_points_seeded(0)
    }

    pub fn rational_base_points_seeded(&self, seed: u64) -> Result<Vec<BasePoint>> {
        if self.is_linear() {
            return Err(Error::Precondition("a linear map has no base points".into()));
        }
        let pts = common_rational_zeros(&self.comps, seed)?;
        Ok(pts
            .into_iter()
            .map(|p| {
                let multiplicity = self.comps.iter().map(|c| vanishing_order(c, &p)).min().unwrap_or(0);
                BasePoint { point: p, multiplicity }
            })
            .collect())
    }

    /// True iff both composites are the identity.
    pub fn verify_inverse(&self, other: &CremonaMap) -> bool {
        let ok = |a: &CremonaMap, b: &CremonaMap| a.compose(b).map(|c| c.is_identity()).unwrap_or(false);
        ok(self, other) && ok(other, self)
    }
}

/// Projective equality.
pub fn maps_equal(a: &CremonaMap, b: &CremonaMap) -> bool {
    a == b
}

/// Checks `Σ a_i = 3(d - 1)` and `Σ a_i^2 = d^2 - 1`.
pub fn homaloidal_check(degree: u32, multiplicities: &[u32]) -> HomaloidalReport {
    let d = degree as u64;
    let sum: u64 = multiplicities.iter().map(|&a| a as u64).sum();
    let sum_sq: u64 = multiplicities.iter().map(|&a| (a as u64).pow(2)).sum();
    let expected_sum = 3 * (d.max(1) - 1);
    let expected_sum_sq = d * d - 1;
    HomaloidalReport {
        degree,
        sum,
        sum_sq,
        expected_sum,
        expected_sum_sq,
        pass: sum == expected_sum && sum_sq == expected_sum_sq,
    }
}

impl fmt::Display for CremonaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}; {}", self.comps[0], self.comps[1], self.comps[2])
    }
}

impl fmt::Debug for CremonaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CremonaMap({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> (QPoly, QPoly, QPoly) {
        (QPoly::x(), QPoly::y(), QPoly::z())
    }

    fn g1() -> CremonaMap {
        let (x, y, z) = vars();
        CremonaMap::new([&y * &z, &x * &y, -(&x * &z)]).unwrap()
    }

    #[test]
    fn normalization_cancels_factor() {
        let (x, y, z) = vars();
        let xyz = &(&x * &y) * &z;
        let (m, g) = CremonaMap::with_factor([&xyz * &x, &xyz * &y, &xyz * &z]).unwrap();
        assert!(m.is_identity());
        assert!(g.proj_eq(&xyz));
    }

    #[test]
    fn degenerate_triples_rejected() {
        let (x, y, z) = vars();
        assert!(matches!(
            CremonaMap::new([x.clone(), x.scale(&Rat::from_i64(2)), y.clone()]),
            Err(Error::DegenerateMap(_))
        ));
        assert!(matches!(CremonaMap::new([x.clone(), y.clone(), QPoly::zero()]), Err(Error::ZeroInput(_))));
        assert!(matches!(CremonaMap::new([&x * &x, y.clone(), z.clone()]), Err(Error::UnequalComponentDegrees(_))));
        // image is the conic: (x^2 : xy : y^2)
        assert!(matches!(CremonaMap::new([&x * &x, &x * &y, &y * &y]), Err(Error::DegenerateMap(_))));
    }

    #[test]
    fn tau_is_an_involution() {
        let t = CremonaMap::standard_quadratic();
        let (c, g) = t.compose_with_factor(&t).unwrap();
        assert!(c.is_identity());
        let (x, y, z) = vars();
        assert!(g.proj_eq(&(&(&x * &y) * &z)));
        assert!(t.verify_inverse(&t));
        assert!(!t.verify_inverse(&CremonaMap::identity()));
    }

    #[test]
    fn square_of_order_four_generator() {
        let (x, y, z) = vars();
        let sq = g1().compose(&g1()).unwrap();
        assert_eq!(sq, CremonaMap::new([-x, y, z]).unwrap());
        assert!(g1().verify_inverse(&g1().power(3).unwrap()));
        assert!(g1().power(4).unwrap().is_identity());
    }

    #[test]
    fn scaling_is_projective() {
        let (x, y, z) = vars();
        let two = Rat::from_i64(2);
        let t2 = CremonaMap::new([(&y * &z).scale(&two), (&x * &z).scale(&two), (&x * &y).scale(&two)]).unwrap();
        assert!(maps_equal(&t2, &CremonaMap::standard_quadratic()));
        assert!(!CremonaMap::standard_quadratic().is_identity());
    }

    #[test]
    fn apply_and_indeterminacy() {
        let t = CremonaMap::standard_quadratic();
        assert_eq!(t.apply(&QPoint::from_i64(1, 1, 1)).unwrap(), QPoint::from_i64(1, 1, 1));
        assert_eq!(t.apply(&QPoint::from_i64(1, 2, 3)).unwrap(), QPoint::from_i64(6, 3, 2));
        assert!(matches!(t.apply(&QPoint::from_i64(1, 0, 0)), Err(Error::IndeterminateAt(_))));
    }

    #[test]
    fn fixed_curves() {
        let (x, y, z) = vars();
        assert_eq!(CremonaMap::standard_quadratic().fixed_curve().unwrap(), None);
        let refl = CremonaMap::new([x, y, -z.clone()]).unwrap();
        assert_eq!(refl.fixed_curve().unwrap(), Some(z));
        assert_eq!(CremonaMap::identity().fixed_curve(), Err(Error::IdentityMap));
    }

    #[test]
    fn jacobians() {
        let (x, y, z) = vars();
        assert!(CremonaMap::identity().jacobian().is_constant());
        let j = CremonaMap::standard_quadratic().jacobian();
        assert_eq!(j, (&(&x * &y) * &z).scale(&Rat::from_i64(2)));
    }

    #[test]
    fn base_points_of_tau() {
        let bps = CremonaMap::standard_quadratic().rational_base_points().unwrap();
        assert_eq!(bps.len(), 3);
        assert!(bps.iter().all(|b| b.multiplicity == 1));
        assert!(CremonaMap::identity().rational_base_points().is_err());
    }

    #[test]
    fn homaloidal_numbers() {
        assert!(homaloidal_check(2, &[1, 1, 1]).pass);
        assert!(homaloidal_check(8, &[3; 7]).pass);
        assert!(homaloidal_check(17, &[6; 8]).pass);
        assert!(!homaloidal_check(2, &[1, 1]).pass);
    }
}
