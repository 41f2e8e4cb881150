//! Common rational zeros of ternary forms, and local data at a point.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::hompoly::HomPoly;
use crate::arith::linalg::{mat3_apply, mat3_det, Mat3};
use crate::arith::point::Point;
use crate::arith::resultant::resultant;
use crate::arith::roots::binary_roots;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};

type Q = HomPoly<Rat>;

fn random_matrix<R: Rng>(rng: &mut R) -> Mat3<Rat> {
    loop {
        let m: Mat3<Rat> = [0, 1, 2].map(|_| [0, 1, 2].map(|_| Rat::from_i64(rng.gen_range(-6..=6))));
        if !mat3_det(&m).is_zero() {
            return m;
        }
    }
}

/// All rational points where every form vanishes.
///
/// Two passes with independent random coordinates are made and their
/// results merged; each point is certified by evaluation. Fails when the
/// forms share a curve component.
pub fn common_rational_zeros(forms: &[Q], seed: u64) -> Result<Vec<Point<Rat>>> {
    let live: Vec<&Q> = forms.iter().filter(|f| !f.is_zero()).collect();
    if live.is_empty() {
        return Err(Error::PositiveDimensional);
    }
    if live.iter().any(|f| f.is_constant()) {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Point<Rat>> = Vec::new();
    for _ in 0..2 {
        for p in zeros_pass(&live, &mut rng)? {
            if !found.contains(&p) {
                found.push(p);
            }
        }
    }
    found.sort_by(|a, b| a.coords().cmp(b.coords()));
    Ok(found)
}

fn zeros_pass<R: Rng>(forms: &[&Q], rng: &mut R) -> Result<Vec<Point<Rat>>> {
    if forms.len() == 1 {
        return Err(Error::PositiveDimensional);
    }
    let same_degree = forms.iter().all(|f| f.degree() == forms[0].degree());
    for _attempt in 0..32 {
        let m = random_matrix(rng);
        let g: Vec<Q> = forms.iter().map(|f| f.linear_change(&m)).collect();
        let (a, b) = if same_degree {
            let mut combo = |g: &[Q]| {
                g.iter().fold(Q::zero(), |acc, f| {
                    let c = Rat::from_i64(rng.gen_range(1..=25));
                    &acc + &f.scale(&c)
                })
            };
            (combo(&g), combo(&g))
        } else {
            (g[0].clone(), g[1].clone())
        };
        let (da, db) = (a.degree(), b.degree());
        // the centre (0:0:1) must not lie on either curve
        if a.coeff([0, 0, da]).is_zero() || b.coeff([0, 0, db]).is_zero() {
            continue;
        }
        let res = resultant(&a, &b, 2)?;
        if res.form.is_zero() {
            let common = g.iter().skip(1).fold(g[0].clone(), |acc, f| acc.gcd(f));
            if !common.is_constant() {
                return Err(Error::PositiveDimensional);
            }
            continue;
        }
        let mut pts = Vec::new();
        for [u, v] in binary_roots(&res.form) {
            let dir = [u, v, Rat::from_i64(0)];
            let centre = [Rat::from_i64(0), Rat::from_i64(0), Rat::from_i64(1)];
            let mut h = Q::zero();
            for f in &g {
                h = h.gcd(&f.restrict_to_line(&dir, &centre));
            }
            if h.is_zero() {
                return Err(Error::PositiveDimensional);
            }
            for [s, t] in binary_roots(&h) {
                let local = Point::combine(&s, &dir, &t, &centre);
                let global = mat3_apply(&m, &local);
                let p = Point::from_array(global)?;
                if forms.iter().all(|f| f.eval(p.coords()).is_zero()) {
                    pts.push(p);
                }
            }
        }
        return Ok(pts);
    }
    Err(Error::Other("no admissible projection found".into()))
}

/// A linear map sending `(0:0:1)` to `p`, as a matrix whose third column
/// is `p`.
pub fn frame_at<K: Field>(p: &Point<K>) -> Mat3<K> {
    let c = p.coords();
    // complete p to a basis with two unit vectors
    let k = (0..3).rev().find(|&i| !c[i].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut m: Mat3<K> = [0, 1, 2].map(|_| [K::zero(), K::zero(), K::zero()]);
    m[others[0]][0] = K::one();
    m[others[1]][1] = K::one();
    for i in 0..3 {
        m[i][2] = c[i].clone();
    }
    m
}

/// Order of vanishing of `f` at `p`.
pub fn vanishing_order<K: Field>(f: &HomPoly<K>, p: &Point<K>) -> u32 {
    if f.is_zero() {
        return u32::MAX;
    }
    let g = f.linear_change(&frame_at(p));
    g.terms().iter().map(|(m, _)| m.0[0] + m.0[1]).min().unwrap_or(0)
}

/// Lowest-order homogeneous part of `f` at `p` in local coordinates, as
/// a binary form in `x, y`: the tangent cone.
pub fn tangent_cone<K: Field>(f: &HomPoly<K>, p: &Point<K>) -> (u32, HomPoly<K>) {
    let g = f.linear_change(&frame_at(p));
    let m = g.terms().iter().map(|(t, _)| t.0[0] + t.0[1]).min().unwrap_or(0);
    let cone = HomPoly::from_terms(
        g.terms().iter().filter(|(t, _)| t.0[0] + t.0[1] == m).map(|(t, c)| ([t.0[0], t.0[1], 0], c.clone())),
    )
    .expect("homogeneous slice");
    (m, cone)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rat {
        Rat::from_i64(v)
    }

    #[test]
    fn coordinate_points_of_tau() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let comps = [&y * &z, &x * &z, &x * &y];
        let pts = common_rational_zeros(&comps, 7).unwrap();
        assert_eq!(pts.len(), 3);
        for p in [Point::from_i64(1, 0, 0), Point::from_i64(0, 1, 0), Point::from_i64(0, 0, 1)] {
            assert!(pts.contains(&p));
        }
    }

    #[test]
    fn grid_points() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let a = &(&x * &(&x - &z)) * &(&x - &z.scale(&q(2)));
        let b = &(&y * &(&y - &z)) * &(&y - &z.scale(&q(2)));
        let pts = common_rational_zeros(&[a, b], 1).unwrap();
        assert_eq!(pts.len(), 9);
    }

    #[test]
    fn shared_component_is_reported() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let r = common_rational_zeros(&[&x * &y, &x * &z], 3);
        assert_eq!(r, Err(Error::PositiveDimensional));
    }

    #[test]
    fn local_data() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        // nodal cubic y^2 z - x^2 (x + z) at the origin
        let f = &(&(&y * &y) * &z) - &(&(&x * &x) * &(&x + &z));
        let o = Point::from_i64(0, 0, 1);
        assert_eq!(vanishing_order(&f, &o), 2);
        let (m, cone) = tangent_cone(&f, &o);
        assert_eq!(m, 2);
        assert!(cone.proj_eq(&(&(&y * &y) - &(&x * &x))));
        assert_eq!(vanishing_order(&f, &Point::from_i64(-1, 0, 1)), 1);
        assert_eq!(vanishing_order(&f, &Point::from_i64(1, 1, 1)), 0);
    }
}
