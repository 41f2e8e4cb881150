//! Dense univariate polynomials in `x`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::hompoly::HomPoly;
use crate::scalar::Field;

/// Coefficients lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<K> {
    c: Vec<K>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut c: Vec<K>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(v: K) -> Self {
        Self::new(vec![v])
    }

    pub fn x() -> Self {
        Self::new(vec![K::zero(), K::one()])
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&a| K::from_i64(a)).collect())
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> K {
        self.c.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, with `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> K {
        self.c.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn scale(&self, s: &K) -> Self {
        Self::new(self.c.iter().map(|v| v.clone() * s.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv())
    }

    pub fn eval(&self, t: &K) -> K {
        self.c.iter().rev().fold(K::zero(), |acc, v| acc * t.clone() + v.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, v)| v.clone() * K::from_i64(i as i64)).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by the zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= db {
            return (Self::zero(), self.clone());
        }
        let inv = b.lead().inv();
        let mut q = vec![K::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let coef = r[i + db].clone() * inv.clone();
            if !coef.is_zero() {
                for (j, bj) in b.c.iter().enumerate() {
                    let t = coef.clone() * bj.clone();
                    r[i + j] -= &t;
                }
            }
            q[i] = coef;
        }
        r.truncate(db);
        (Self::new(q), Self::new(r))
    }

    /// Monic gcd; zero only if both inputs are zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Homogenization to a binary form of degree `d` in `x, y`, with `y`
    /// as the homogenizing variable.
    pub fn homogenize(&self, d: u32) -> HomPoly<K> {
        let deg = self.degree().unwrap_or(0) as u32;
        assert!(d >= deg || self.is_zero(), "homogenizing degree too small");
        HomPoly::from_terms(self.c.iter().enumerate().map(|(i, v)| ([i as u32, d - i as u32, 0], v.clone())))
            .expect("homogeneous by construction")
    }

    /// `B(t, 1)` for a binary form `B` in `x, y`.
    pub fn dehomogenize(b: &HomPoly<K>) -> Self {
        let d = b.degree_in(0) as usize;
        let mut c = vec![K::zero(); d + 1];
        for (m, v) in b.terms() {
            c[m.0[0] as usize] += v;
        }
        Self::new(c)
    }
}

impl<K: Field> Add for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn add(self, o: Self) -> UniPoly<K> {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<K: Field> Sub for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn sub(self, o: Self) -> UniPoly<K> {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<K: Field> Mul for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn mul(self, o: Self) -> UniPoly<K> {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![K::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                let t = a.clone() * b.clone();
                out[i + j] += &t;
            }
        }
        UniPoly::new(out)
    }
}

impl<K: Field> Neg for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn neg(self) -> UniPoly<K> {
        UniPoly::new(self.c.iter().map(|v| -v.clone()).collect())
    }
}

impl<K: Field> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let s = v.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (mono.is_empty(), mag == "1") {
                (true, _) => f.write_str(&mag)?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type P = UniPoly<Rat>;

    #[test]
    fn arithmetic_and_gcd() {
        let a = P::from_i64s(&[-1, 0, 1]);
        let b = P::from_i64s(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, P::from_i64s(&[1, 1]));
        assert!(r.is_zero());
        assert!(a.is_squarefree());
        assert!(!(&b * &b).is_squarefree());
    }

    #[test]
    fn display() {
        assert_eq!(P::from_i64s(&[1, 0, 1]).to_string(), "x^2 + 1");
        assert_eq!(P::from_i64s(&[0, -3, 2]).to_string(), "2*x^2 - 3*x");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn homogenize_round_trip() {
        let a = P::from_i64s(&[5, 0, -2]);
        assert_eq!(P::dehomogenize(&a.homogenize(4)), a);
    }
}
