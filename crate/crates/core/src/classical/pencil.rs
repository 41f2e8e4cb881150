//! Ninth base points of cubic pencils, and the Geiser and Bertini
//! involutions built from them.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::linalg::{mat3_apply, mat3_inv};
use crate::arith::resultant::resultant;
use crate::arith::roots::binary_roots;
use crate::arith::zeros::{common_rational_zeros, frame_at};
use crate::classical::cubic::{calibrate, cubic_neg, is_smooth_cubic};
use crate::curve::linear_system;
use crate::error::{Error, Result};
use crate::map::CremonaMap;
use crate::scalar::{Field, Rat};
use crate::{QPoint, QPoly};

fn simple(points: &[QPoint]) -> Vec<(QPoint, u32)> {
    points.iter().map(|p| (p.clone(), 1)).collect()
}

fn cubic_pencil(points8: &[QPoint]) -> Result<(QPoly, QPoly)> {
    if points8.len() != 8 {
        return Err(Error::TooFewEntries { need: 8, got: points8.len() });
    }
    let sys = linear_system(3, &simple(points8))?;
    if sys.basis.len() != 2 {
        return Err(Error::NotGeneralPosition(format!(
            "cubics through the points have basis size {}, not 2",
            sys.basis.len()
        )));
    }
    Ok((sys.basis[0].clone(), sys.basis[1].clone()))
}

/// The ninth base point of the pencil of cubics through eight points.
pub fn pencil_ninth_point(points8: &[QPoint]) -> Result<QPoint> {
    let (a, b) = cubic_pencil(points8)?;
    ninth_of(&a, &b, points8)
}

fn ninth_of(a: &QPoly, b: &QPoly, known: &[QPoint]) -> Result<QPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9_0009);
    'attempt: for _ in 0..32 {
        let centre = QPoint::new(
            Rat::from_i64(rng.gen_range(-9..=9)),
            Rat::from_i64(rng.gen_range(-9..=9)),
            Rat::from_i64(rng.gen_range(1..=9)),
        )?;
        if a.eval(centre.coords()).is_zero() || b.eval(centre.coords()).is_zero() {
            continue;
        }
        let m = frame_at(&centre);
        let minv = mat3_inv(&m).expect("frame is invertible");
        let (la, lb) = (a.linear_change(&m), b.linear_change(&m));
        let mut res = resultant(&la, &lb, 2)?.form;
        if res.is_zero() {
            continue;
        }
        let local: Vec<[Rat; 3]> = known.iter().map(|p| mat3_apply(&minv, p.coords())).collect();
        for v in &local {
            let lin = QPoly::linear(&[v[1].clone(), -v[0].clone(), Rat::zero()]);
            match res.exact_div(&lin) {
                Ok(q) => res = q,
                Err(_) => continue 'attempt,
            }
        }
        let dirs = binary_roots(&res);
        if res.degree() != 1 || dirs.len() != 1 {
            continue;
        }
        let dir = [dirs[0][0].clone(), dirs[0][1].clone(), Rat::zero()];
        let e3 = [Rat::zero(), Rat::zero(), Rat::from_i64(1)];
        let common = la.restrict_to_line(&dir, &e3).gcd(&lb.restrict_to_line(&dir, &e3));
        let found: Vec<QPoint> = binary_roots(&common)
            .into_iter()
            .filter_map(|[s, t]| QPoint::from_array(mat3_apply(&m, &QPoint::combine(&s, &dir, &t, &e3))).ok())
            .collect();
        let fresh: Vec<&QPoint> = found.iter().filter(|p| !known.contains(p)).collect();
        let pick = match fresh.as_slice() {
            [p] => (*p).clone(),
            [] if found.len() == 1 => found[0].clone(),
            _ => continue,
        };
        if !a.eval(pick.coords()).is_zero() || !b.eval(pick.coords()).is_zero() {
            return Err(Error::Other(format!("extracted point {pick} is not a base point")));
        }
        return Ok(pick);
    }
    Err(Error::Other("no admissible projection for the ninth point".into()))
}

fn cubic_net_check(points7: &[QPoint]) -> Result<()> {
    if points7.len() != 7 {
        return Err(Error::TooFewEntries { need: 7, got: points7.len() });
    }
    let n = linear_system(3, &simple(points7))?.basis.len();
    if n != 3 {
        return Err(Error::NotGeneralPosition(format!("cubics through the points have basis size {n}, not 3")));
    }
    Ok(())
}

/// Image of `q` under the Geiser involution of seven points.
pub fn geiser_point(points7: &[QPoint], q: &QPoint) -> Result<QPoint> {
    cubic_net_check(points7)?;
    if points7.contains(q) {
        return Err(Error::Precondition(format!("{q} is one of the seven points")));
    }
    let mut eight = points7.to_vec();
    eight.push(q.clone());
    pencil_ninth_point(&eight)
}

/// The Geiser involution as a map of degree 8, from the net of octics
/// with triple points at the seven points, corrected by a linear map
/// fitted on sample points.
pub fn geiser_map(points7: &[QPoint]) -> Result<CremonaMap> {
    cubic_net_check(points7)?;
    let conds: Vec<(QPoint, u32)> = points7.iter().map(|p| (p.clone(), 3)).collect();
    let sys = linear_system(8, &conds)?;
    if sys.basis.len() != 3 {
        return Err(Error::NotGeneralPosition(format!("octic net has basis size {}, not 3", sys.basis.len())));
    }
    let rho = CremonaMap::new([sys.basis[0].clone(), sys.basis[1].clone(), sys.basis[2].clone()])?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e15e4);
    let mut pairs: Vec<(QPoint, QPoint)> = Vec::new();
    for _ in 0..200 {
        if pairs.len() == 8 {
            break;
        }
        let q = QPoint::new(
            Rat::from_i64(rng.gen_range(-7..=7)),
            Rat::from_i64(rng.gen_range(-7..=7)),
            Rat::from_i64(rng.gen_range(1..=7)),
        )?;
        if pairs.iter().any(|(s, _)| s == &q) || points7.contains(&q) {
            continue;
        }
        let (Ok(img), Ok(g)) = (rho.apply(&q), geiser_point(points7, &q)) else { continue };
        pairs.push((img, g));
    }
    let a = calibrate(&pairs).ok_or_else(|| Error::Calibration("Geiser correction not certified".into()))?;
    rho.then_linear(&a)
}

/// Image of `q` under the Bertini involution of eight points: minus `q`
/// on the pencil member through `q`, with the ninth base point as origin.
pub fn bertini_point(points8: &[QPoint], q: &QPoint) -> Result<QPoint> {
    let (a, b) = cubic_pencil(points8)?;
    let p9 = ninth_of(&a, &b, points8)?;
    if *q == p9 {
        return Ok(p9);
    }
    if points8.contains(q) {
        return Err(Error::Precondition(format!("{q} is a base point")));
    }
    let (va, vb) = (a.eval(q.coords()), b.eval(q.coords()));
    let e = &a.scale(&vb) - &b.scale(&va);
    if e.is_zero() {
        return Err(Error::Other(format!("no pencil member isolated by {q}")));
    }
    if !is_smooth_cubic(&e, 0xbe27) {
        return Err(Error::Precondition(format!("{q} lies on a singular member of the pencil")));
    }
    cubic_neg(&e, &p9, q)
}

/// Independent route to the Bertini image: the base point of the net of
/// sextics through `q` with double points at the eight points, other
/// than those points.
pub fn bertini_point_via_net(points8: &[QPoint], q: &QPoint) -> Result<QPoint> {
    if points8.len() != 8 {
        return Err(Error::TooFewEntries { need: 8, got: points8.len() });
    }
    if points8.contains(q) {
        return Err(Error::Precondition(format!("{q} is a base point")));
    }
    let mut conds: Vec<(QPoint, u32)> = points8.iter().map(|p| (p.clone(), 2)).collect();
    conds.push((q.clone(), 1));
    let sys = linear_system(6, &conds)?;
    if sys.basis.len() != 3 {
        return Err(Error::NotGeneralPosition(format!("sextic net has basis size {}, not 3", sys.basis.len())));
    }
    let zeros = common_rational_zeros(&sys.basis, 0x5e7)?;
    let rest: Vec<QPoint> = zeros.into_iter().filter(|p| p != q && !points8.contains(p)).collect();
    match rest.as_slice() {
        [p] => Ok(p.clone()),
        [] => Ok(q.clone()),
        _ => Err(Error::Other(format!("{} extra base points of the sextic net", rest.len()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64, i64)]) -> Vec<QPoint> {
        v.iter().map(|&(a, b, c)| QPoint::from_i64(a, b, c)).collect()
    }

    fn grid_without(skip: (i64, i64)) -> Vec<QPoint> {
        (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|&ab| ab != skip)
            .map(|(a, b)| QPoint::from_i64(a, b, 1))
            .collect()
    }

    #[test]
    fn grid_pencil_ninth_points() {
        assert_eq!(pencil_ninth_point(&grid_without((2, 2))).unwrap(), QPoint::from_i64(2, 2, 1));
        assert_eq!(pencil_ninth_point(&grid_without((0, 1))).unwrap(), QPoint::from_i64(0, 1, 1));
    }

    fn seven() -> Vec<QPoint> {
        pts(&[(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (2, -1, 5), (-3, 4, 2)])
    }

    #[test]
    fn geiser_point_is_an_involution() {
        let p7 = seven();
        let q = QPoint::from_i64(3, 1, 2);
        let g = geiser_point(&p7, &q).unwrap();
        assert_ne!(g, q);
        assert_eq!(geiser_point(&p7, &g).unwrap(), q);
        assert!(geiser_point(&p7, &p7[3]).is_err());
    }

    #[test]
    fn bertini_point_is_an_involution() {
        let mut p8 = seven();
        p8.push(QPoint::from_i64(5, 3, -2));
        let q = QPoint::from_i64(2, 3, 1);
        let b = bertini_point(&p8, &q).unwrap();
        assert_ne!(b, q);
        assert_eq!(bertini_point(&p8, &b).unwrap(), q);
        let p9 = pencil_ninth_point(&p8).unwrap();
        assert_eq!(bertini_point(&p8, &p9).unwrap(), p9);
    }
}
