//! Exact dense linear algebra over a field.

use crate::scalar::Field;

pub type Matrix<K> = Vec<Vec<K>>;
pub type Mat3<K> = [[K; 3]; 3];

/// Reduces `m` in place to reduced row echelon form and returns the
/// pivot columns.
pub fn rref<K: Field>(m: &mut Matrix<K>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for v in m[row][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    let t = f.clone() * pv.clone();
                    other[c] -= &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<K: Field>(rows: &[Vec<K>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of the right kernel `{v : rows * v = 0}`.
pub fn nullspace<K: Field>(rows: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![K::zero(); ncols];
        v[free] = K::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `a x = b`, if one exists.
pub fn solve<K: Field>(a: &[Vec<K>], b: &[K]) -> Option<Vec<K>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Matrix<K> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![K::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][ncols].clone();
    }
    Some(x)
}

/// Determinant by fraction-free elimination, which keeps integer entries
/// integral along the way.
pub fn det<K: Field>(mut m: Matrix<K>) -> K {
    let n = m.len();
    if n == 0 {
        return K::one();
    }
    let mut sign = false;
    let mut prev = K::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return K::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone()) / prev.clone();
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

pub fn mat3_identity<K: Field>() -> Mat3<K> {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| if i == j { K::one() } else { K::zero() }))
}

pub fn mat3_mul<K: Field>(a: &Mat3<K>, b: &Mat3<K>) -> Mat3<K> {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| (0..3).fold(K::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())))
}

pub fn mat3_apply<K: Field>(a: &Mat3<K>, v: &[K; 3]) -> [K; 3] {
    [0, 1, 2].map(|i| (0..3).fold(K::zero(), |acc, k| acc + a[i][k].clone() * v[k].clone()))
}

pub fn mat3_det<K: Field>(a: &Mat3<K>) -> K {
    det(a.iter().map(|r| r.to_vec()).collect())
}

pub fn mat3_inv<K: Field>(a: &Mat3<K>) -> Option<Mat3<K>> {
    let d = mat3_det(a);
    if d.is_zero() {
        return None;
    }
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        a[r0][c0].clone() * a[r1][c1].clone() - a[r0][c1].clone() * a[r1][c0].clone()
    };
    // inverse = adjugate / det, adjugate = transpose of cofactors
    Some([0, 1, 2].map(|i| [0, 1, 2].map(|j| c(j, i) / d.clone())))
}

pub fn mat3_from_columns<K: Field>(cols: [&[K; 3]; 3]) -> Mat3<K> {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| cols[j][i].clone()))
}

/// The projective transformation sending `src[k]` to a multiple of
/// `dst[k]` for `k = 0..4`. Both quadruples must be in general position.
pub fn projective_frame<K: Field>(src: &[[K; 3]; 4], dst: &[[K; 3]; 4]) -> Option<Mat3<K>> {
    let scaled = |q: &[[K; 3]; 4]| -> Option<Mat3<K>> {
        let base = mat3_from_columns([&q[0], &q[1], &q[2]]);
        let c = mat3_apply(&mat3_inv(&base)?, &q[3]);
        if c.iter().any(|v| v.is_zero()) {
            return None;
        }
        Some([0, 1, 2].map(|i| [0, 1, 2].map(|j| base[i][j].clone() * c[j].clone())))
    };
    let s = scaled(src)?;
    let t = scaled(dst)?;
    Some(mat3_mul(&t, &mat3_inv(&s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        rows.iter().map(|r| r.iter().map(|&v| Rat::from_i64(v)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let s = row.iter().zip(v).fold(Rat::from_i64(0), |acc, (x, y)| acc + x * y);
                assert_eq!(s, Rat::from_i64(0));
            }
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(det(a.clone()), Rat::from_i64(6));
        let a3: Mat3<Rat> = [0, 1, 2].map(|i| [0, 1, 2].map(|j| a[i][j].clone()));
        let inv = mat3_inv(&a3).unwrap();
        assert_eq!(mat3_mul(&a3, &inv), mat3_identity());
        let singular = m(&[&[0, 1], &[0, 2]]);
        assert_eq!(det(singular), Rat::from_i64(0));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[Rat::from_i64(3), Rat::from_i64(1)]).unwrap();
        assert_eq!(x, vec![Rat::from_i64(2), Rat::from_i64(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[Rat::from_i64(1), Rat::from_i64(3)]).is_none());
    }

    #[test]
    fn frame_maps_points() {
        let v = |a: i64, b: i64, c: i64| [Rat::from_i64(a), Rat::from_i64(b), Rat::from_i64(c)];
        let src = [v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(1, 1, 1)];
        let dst = [v(1, 2, 3), v(0, 1, 5), v(2, -1, 1), v(1, 1, -4)];
        let a = projective_frame(&src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            let img = mat3_apply(&a, s);
            let cr = crate::arith::point::Point::cross(&img, d);
            assert!(cr.iter().all(|c| *c == Rat::from_i64(0)));
        }
    }
}
