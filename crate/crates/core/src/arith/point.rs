use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A point of the projective plane, stored with its last nonzero
/// coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point<K> {
    c: [K; 3],
}

impl<K: Field> Point<K> {
    pub fn new(x: K, y: K, z: K) -> Result<Self> {
        Self::from_array([x, y, z])
    }

    pub fn from_array(mut c: [K; 3]) -> Result<Self> {
        let last = (0..3).rev().find(|&i| !c[i].is_zero()).ok_or(Error::ZeroInput("point"))?;
        let s = c[last].inv();
        for v in c.iter_mut() {
            *v *= &s;
        }
        Ok(Point { c })
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        Self::new(K::from_i64(x), K::from_i64(y), K::from_i64(z)).expect("nonzero point")
    }

    pub fn coords(&self) -> &[K; 3] {
        &self.c
    }

    pub fn into_array(self) -> [K; 3] {
        self.c
    }

    /// Cross product of representatives: the line through two points, or
    /// the intersection point of two lines.
    pub fn cross(a: &[K; 3], b: &[K; 3]) -> [K; 3] {
        [
            a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
            a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
        ]
    }

    pub fn is_zero_vec(v: &[K; 3]) -> bool {
        v.iter().all(|c| c.is_zero())
    }

    /// `s * self + t * other` as a coordinate vector.
    pub fn combine(s: &K, a: &[K; 3], t: &K, b: &[K; 3]) -> [K; 3] {
        [0, 1, 2].map(|i| s.clone() * a[i].clone() + t.clone() * b[i].clone())
    }

    pub fn collinear(a: &Self, b: &Self, c: &Self) -> bool {
        let l = Self::cross(&a.c, &b.c);
        dot(&l, &c.c).is_zero()
    }
}

pub fn dot<K: Field>(a: &[K; 3], b: &[K; 3]) -> K {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

impl<K: Field> fmt::Display for Point<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.c[0], self.c[1], self.c[2])
    }
}

impl<K: Field> fmt::Debug for Point<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn canonical_scaling() {
        let p = Point::<Rat>::from_i64(2, 4, 2);
        assert_eq!(p, Point::from_i64(1, 2, 1));
        let q = Point::<Rat>::from_i64(-3, 6, 0);
        assert_eq!(q.to_string(), "(-1/2:1:0)");
    }

    #[test]
    fn zero_rejected() {
        assert!(Point::new(Rat::from_i64(0), Rat::from_i64(0), Rat::from_i64(0)).is_err());
    }
}
