//! Sylvester resultants of ternary forms, by evaluation and interpolation.

use crate::arith::hompoly::HomPoly;
use crate::arith::linalg::{det, Matrix};
use crate::arith::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Result of eliminating one variable from two forms.
#[derive(Clone, Debug)]
pub struct Resultant<K: Field> {
    /// Binary form in the two remaining variables, written in `x, y`
    /// (the remaining variables in their original order).
    pub form: HomPoly<K>,
    /// Leading coefficients of the inputs as polynomials in the
    /// eliminated variable. Where both vanish the resultant vanishes
    /// without a finite common root.
    pub leading: [HomPoly<K>; 2],
}

/// Moves variable `var` to the last slot, keeping the others in order.
fn to_last<K: Field>(f: &HomPoly<K>, var: usize) -> HomPoly<K> {
    if var == 2 {
        return f.clone();
    }
    let order: [usize; 3] = match var {
        0 => [1, 2, 0],
        _ => [0, 2, 1],
    };
    HomPoly::from_terms(f.terms().iter().map(|(m, c)| ([m.0[order[0]], m.0[order[1]], m.0[order[2]]], c.clone())))
        .expect("permutation keeps degree")
}

/// Coefficients of `f` as a polynomial in `z`: entry `k` is the binary
/// form multiplying `z^k`.
fn z_coefficients<K: Field>(f: &HomPoly<K>) -> Vec<HomPoly<K>> {
    let m = f.degree_in(2) as usize;
    let mut buckets: Vec<Vec<([u32; 3], K)>> = vec![Vec::new(); m + 1];
    for (mono, c) in f.terms() {
        let e = mono.0;
        buckets[e[2] as usize].push(([e[0], e[1], 0], c.clone()));
    }
    buckets.into_iter().map(|b| HomPoly::from_terms(b).expect("homogeneous slice")).collect()
}

/// `Res_var(a, b)`.
pub fn resultant<K: Field>(a: &HomPoly<K>, b: &HomPoly<K>, var: usize) -> Result<Resultant<K>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("resultant operand"));
    }
    let a = to_last(a, var);
    let b = to_last(b, var);
    let (m, n) = (a.degree_in(2), b.degree_in(2));
    if m == 0 || n == 0 {
        return Err(Error::NoPositiveDegree(crate::arith::hompoly::VARS[var]));
    }
    let ca = z_coefficients(&a);
    let cb = z_coefficients(&b);
    let leading = [ca[m as usize].clone(), cb[n as usize].clone()];
    let total = m * b.degree() + n * a.degree() - m * n;

    // values at (t : 1) for t = 0..=total, then Newton interpolation
    let size = (m + n) as usize;
    let mut xs = Vec::with_capacity(total as usize + 1);
    let mut ys = Vec::with_capacity(total as usize + 1);
    for t in 0..=total as i64 {
        let pt = [K::from_i64(t), K::one(), K::zero()];
        let va: Vec<K> = ca.iter().map(|f| f.eval(&pt)).collect();
        let vb: Vec<K> = cb.iter().map(|f| f.eval(&pt)).collect();
        let mut mat: Matrix<K> = vec![vec![K::zero(); size]; size];
        for r in 0..n as usize {
            for (k, v) in va.iter().enumerate().rev() {
                mat[r][r + (m as usize - k)] = v.clone();
            }
        }
        for r in 0..m as usize {
            for (k, v) in vb.iter().enumerate().rev() {
                mat[n as usize + r][r + (n as usize - k)] = v.clone();
            }
        }
        xs.push(K::from_i64(t));
        ys.push(det(mat));
    }
    let uni = interpolate(&xs, &ys);
    Ok(Resultant { form: uni.homogenize(total), leading })
}

/// Newton interpolation through the given nodes.
pub fn interpolate<K: Field>(xs: &[K], ys: &[K]) -> UniPoly<K> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - j].clone());
        }
    }
    let mut acc = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UniPoly::new(vec![-xs[i].clone(), K::one()]);
        acc = &(&acc * &lin) + &UniPoly::constant(dd[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type Q = HomPoly<Rat>;

    #[test]
    fn linear_case() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let r = resultant(&(&z - &x), &(&z - &y), 2).unwrap();
        assert!(r.form.proj_eq(&(&x - &y)));
    }

    #[test]
    fn shared_factor_vanishes() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let c = &z - &x;
        let r = resultant(&(&c * &y), &(&c * &(&x + &z)), 2).unwrap();
        assert!(r.form.is_zero());
    }

    #[test]
    fn eliminating_other_variables() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        // Res_x(x - y, x - z) eliminates x; remaining variables (y, z)
        let r = resultant(&(&x - &y), &(&x - &z), 0).unwrap();
        assert!(r.form.proj_eq(&(&x - &y)));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UniPoly::<Rat>::from_i64s(&[3, -1, 0, 2]);
        let xs: Vec<Rat> = (0..4).map(Rat::from_i64).collect();
        let ys: Vec<Rat> = xs.iter().map(|t| p.eval(t)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }
}
