//! Sparse homogeneous polynomials in `x, y, z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::mono::Mono3;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A homogeneous polynomial with terms sorted in descending graded-lex
/// order. The zero polynomial has no terms and reports degree 0; it is
/// compatible with every degree in sums.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly<K> {
    degree: u32,
    terms: Vec<(Mono3, K)>,
}

pub const VARS: [&str; 3] = ["x", "y", "z"];

impl<K: Field> HomPoly<K> {
    pub fn zero() -> Self {
        HomPoly { degree: 0, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: K, e: [u32; 3]) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let m = Mono3(e);
        HomPoly { degree: m.total(), terms: vec![(m, c)] }
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(K::one(), e)
    }

    pub fn x() -> Self {
        Self::var(0)
    }
    pub fn y() -> Self {
        Self::var(1)
    }
    pub fn z() -> Self {
        Self::var(2)
    }

    /// The linear form `a x + b y + c z`.
    pub fn linear(c: &[K; 3]) -> Self {
        let terms = (0..3)
            .filter(|&i| !c[i].is_zero())
            .map(|i| {
                let mut e = [0; 3];
                e[i] = 1;
                (Mono3(e), c[i].clone())
            })
            .collect();
        Self::from_sorted(1, terms)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros. Fails if two nonzero terms have different degrees.
    pub fn from_terms<I>(it: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([u32; 3], K)>,
    {
        let mut acc: BTreeMap<Mono3, K> = BTreeMap::new();
        for (e, c) in it {
            let slot = acc.entry(Mono3(e)).or_insert_with(K::zero);
            *slot += &c;
        }
        let mut degree = None;
        let mut terms = Vec::with_capacity(acc.len());
        for (m, c) in acc.into_iter().rev() {
            if c.is_zero() {
                continue;
            }
            match degree {
                None => degree = Some(m.total()),
                Some(d) if d != m.total() => return Err(Error::DegreeMismatch { left: d, right: m.total() }),
                _ => {}
            }
            terms.push((m, c));
        }
        Ok(HomPoly { degree: degree.unwrap_or(0), terms })
    }

    /// Trusted constructor: terms already sorted descending, nonzero, of
    /// total degree `degree`.
    pub(crate) fn from_sorted(degree: u32, terms: Vec<(Mono3, K)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(m, c)| m.total() == degree && !c.is_zero()));
        if terms.is_empty() {
            return Self::zero();
        }
        HomPoly { degree, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Mono3, K)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono3, K)> {
        self.terms.first()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.degree == 0
    }

    pub fn coeff(&self, e: [u32; 3]) -> K {
        let m = Mono3(e);
        self.terms.binary_search_by(|(t, _)| m.cmp(t)).map(|i| self.terms[i].1.clone()).unwrap_or_else(|_| K::zero())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())).collect();
        HomPoly { degree: self.degree, terms }
    }

    /// Scalar that makes this polynomial canonical.
    pub fn normalizer(&self) -> K {
        K::normalizer(self.terms.iter().map(|(_, c)| c))
    }

    /// Canonical representative: over the rationals, primitive integer
    /// coefficients with positive leading coefficient; over a prime
    /// field, monic.
    pub fn canonical(&self) -> Self {
        self.scale(&self.normalizer())
    }

    pub fn is_canonical(&self) -> bool {
        self.normalizer().is_one()
    }

    /// Equality up to a nonzero scalar.
    pub fn proj_eq(&self, o: &Self) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        if self.degree != o.degree || self.terms.len() != o.terms.len() {
            return false;
        }
        let ratio = o.terms[0].1.clone() / self.terms[0].1.clone();
        self.terms.iter().zip(&o.terms).all(|((m1, c1), (m2, c2))| m1 == m2 && c1.clone() * ratio.clone() == *c2)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.combine(o, false)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, true)
    }

    fn combine(&self, o: &Self, negate: bool) -> Result<Self> {
        if self.is_zero() {
            return Ok(if negate { -o.clone() } else { o.clone() });
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != o.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: o.degree });
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if negate {
                        c -= &b[j].1;
                    } else {
                        c += &b[j].1;
                    }
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(Self::from_sorted(self.degree, out))
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let degree = self.degree + o.degree;
        Self::from_sorted(degree, K::mul_terms(&self.terms, &o.terms, degree))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Self {
        if self.degree == 0 {
            return Self::zero();
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut n = m.0;
            n[var] -= 1;
            let v = c.clone() * K::from_i64(e as i64);
            if !v.is_zero() {
                terms.push((Mono3(n), v));
            }
        }
        Self::from_sorted(self.degree - 1, terms)
    }

    /// Mixed partial derivative `d^a/dx^a d^b/dy^b d^c/dz^c`.
    pub fn partial(&self, order: [u32; 3]) -> Self {
        let mut p = self.clone();
        for (v, &k) in order.iter().enumerate() {
            for _ in 0..k {
                p = p.derivative(v);
            }
        }
        p
    }

    pub fn gradient(&self) -> [Self; 3] {
        [self.derivative(0), self.derivative(1), self.derivative(2)]
    }

    pub fn eval(&self, p: &[K; 3]) -> K {
        let d = self.degree as usize;
        let powers: Vec<Vec<K>> = p
            .iter()
            .map(|v| {
                let mut pw = Vec::with_capacity(d + 1);
                pw.push(K::one());
                for i in 0..d {
                    let next = pw[i].clone() * v.clone();
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..3 {
                t *= &powers[v][m.0[v] as usize];
            }
            acc += &t;
        }
        acc
    }

    /// Largest exponent of the given variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Smallest exponent of the given variable.
    pub fn valuation_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).min().unwrap_or(0)
    }

    /// Divides by `var^k`, which must divide every term.
    pub fn div_var_pow(&self, var: usize, k: u32) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        assert!(self.valuation_in(var) >= k, "variable power does not divide");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0;
                e[var] -= k;
                (Mono3(e), c.clone())
            })
            .collect();
        Self::from_sorted(self.degree - k, terms)
    }

    pub fn mul_var_pow(&self, var: usize, k: u32) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0;
                e[var] += k;
                (Mono3(e), c.clone())
            })
            .collect();
        Self::from_sorted(self.degree + k, terms)
    }

    /// Removes the largest power of `var` dividing the polynomial.
    pub fn strip_var(&self, var: usize) -> (Self, u32) {
        let k = self.valuation_in(var);
        (self.div_var_pow(var, k), k)
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> HomPoly<L> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = f(c);
                (!v.is_zero()).then_some((*m, v))
            })
            .collect();
        HomPoly::from_sorted(self.degree, terms)
    }

    /// `self(f0, f1, f2)` for a triple of forms of equal degree.
    pub fn substitute(&self, comps: &[HomPoly<K>; 3]) -> Result<Self> {
        let nonzero: Vec<u32> = comps.iter().filter(|c| !c.is_zero()).map(|c| c.degree).collect();
        if nonzero.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::UnequalComponentDegrees(comps.iter().map(|c| c.degree).collect()));
        }
        Ok(self.substitute_unchecked(comps))
    }

    fn substitute_unchecked(&self, comps: &[HomPoly<K>; 3]) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let d = self.degree;
        let [f0, f1, f2] = comps;
        let mut f2pow = vec![Self::one()];
        for i in 0..d as usize {
            let next = f2pow[i].mul_ref(f2);
            f2pow.push(next);
        }
        // group terms by the exponent of x, then Horner in f0 and f1
        let mut by_x: Vec<Vec<(u32, K)>> = vec![Vec::new(); d as usize + 1];
        for (m, c) in &self.terms {
            by_x[m.0[0] as usize].push((m.0[1], c.clone()));
        }
        let mut acc = Self::zero();
        for ex in (0..=d).rev() {
            if !acc.is_zero() {
                acc = acc.mul_ref(f0);
            }
            let k = d - ex;
            let row = &by_x[ex as usize];
            if row.is_empty() {
                continue;
            }
            let mut coeff_of = vec![K::zero(); k as usize + 1];
            for (ey, c) in row {
                coeff_of[*ey as usize] = c.clone();
            }
            let mut inner = Self::zero();
            for j in (0..=k).rev() {
                if !inner.is_zero() {
                    inner = inner.mul_ref(f1);
                }
                let c = &coeff_of[j as usize];
                if !c.is_zero() {
                    let t = f2pow[(k - j) as usize].scale(c);
                    inner = add_any(&inner, &t);
                }
            }
            acc = add_any(&acc, &inner);
        }
        acc
    }

    /// `self(M v)`: substitution of the linear forms given by the rows of
    /// `m`.
    pub fn linear_change(&self, m: &[[K; 3]; 3]) -> Self {
        let comps = [Self::linear(&m[0]), Self::linear(&m[1]), Self::linear(&m[2])];
        self.substitute_unchecked(&comps)
    }

    /// Exact quotient `self / b`. Over a field the quotient is unique
    /// when it exists.
    pub fn exact_div(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if b.degree > self.degree {
            return Err(Error::NotDivisible);
        }
        let (bm, bc) = b.terms[0].clone();
        let binv = bc.inv();
        if b.terms.len() == 1 {
            if !self.terms.iter().all(|(m, _)| bm.divides(*m)) {
                return Err(Error::NotDivisible);
            }
            let terms = self.terms.iter().map(|(m, c)| (bm.quotient_of(*m), c.clone() * binv.clone())).collect();
            return Ok(Self::from_sorted(self.degree - b.degree, terms));
        }
        // cheap necessary condition: the lowest term must also divide
        let (lm, _) = self.terms.last().unwrap();
        let (blm, _) = b.terms.last().unwrap();
        if !blm.divides(*lm) {
            return Err(Error::NotDivisible);
        }
        let mut rem: BTreeMap<Mono3, K> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono3, K)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !bm.divides(m) {
                return Err(Error::NotDivisible);
            }
            let qm = bm.quotient_of(m);
            let qc = c * binv.clone();
            for (tm, tc) in &b.terms[1..] {
                let key = tm.mul(qm);
                let delta = tc.clone() * qc.clone();
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Ok(Self::from_sorted(self.degree - b.degree, quot))
    }

    pub fn divides(&self, a: &Self) -> bool {
        a.exact_div(self).is_ok()
    }

    /// Greatest common divisor in canonical form.
    pub fn gcd(&self, o: &Self) -> Self {
        K::hom_gcd(self, o)
    }

    /// Restriction to the line `s*p + t*q`, as a binary form whose `x`
    /// and `y` play the roles of `s` and `t`.
    pub fn restrict_to_line(&self, p: &[K; 3], q: &[K; 3]) -> Self {
        let m = [
            [p[0].clone(), q[0].clone(), K::zero()],
            [p[1].clone(), q[1].clone(), K::zero()],
            [p[2].clone(), q[2].clone(), K::zero()],
        ];
        self.linear_change(&m)
    }

    /// Reduction modulo `p` as sparse exponent/coefficient pairs, or
    /// `None` if some coefficient has a denominator divisible by `p`.
    pub fn to_modp(&self, p: u64) -> Option<Vec<([u32; 3], u64)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = c.to_modp(p)?;
            if v != 0 {
                out.push((m.0, v));
            }
        }
        Some(out)
    }
}

fn add_any<K: Field>(a: &HomPoly<K>, b: &HomPoly<K>) -> HomPoly<K> {
    a.checked_add(b).expect("degrees agree by construction")
}

/// Dense product of two term lists, used as the default multiplication
/// kernel.
pub fn mul_terms_generic<K: Field>(a: &[(Mono3, K)], b: &[(Mono3, K)], degree: u32) -> Vec<(Mono3, K)> {
    if a.len() * b.len() < 64 {
        let mut acc: BTreeMap<Mono3, K> = BTreeMap::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let slot = acc.entry(ma.mul(*mb)).or_insert_with(K::zero);
                *slot += &(ca.clone() * cb.clone());
            }
        }
        return acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
    }
    let mut dense = vec![K::zero(); Mono3::count_of_degree(degree)];
    for (ma, ca) in a {
        for (mb, cb) in b {
            let idx = ma.mul(*mb).dense_index(degree);
            let mut t = ca.clone();
            t *= cb;
            dense[idx] += &t;
        }
    }
    collect_dense(dense, degree)
}

pub(crate) fn collect_dense<K: Field>(dense: Vec<K>, degree: u32) -> Vec<(Mono3, K)> {
    Mono3::all_of_degree(degree).zip(dense.into_iter().rev()).filter(|(_, c)| !c.is_zero()).collect()
}

impl<K: Field> Add for HomPoly<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.checked_add(&o).expect("adding forms of different degrees")
    }
}

impl<K: Field> Add for &HomPoly<K> {
    type Output = HomPoly<K>;
    fn add(self, o: Self) -> HomPoly<K> {
        self.checked_add(o).expect("adding forms of different degrees")
    }
}

impl<K: Field> Sub for HomPoly<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(&o).expect("subtracting forms of different degrees")
    }
}

impl<K: Field> Sub for &HomPoly<K> {
    type Output = HomPoly<K>;
    fn sub(self, o: Self) -> HomPoly<K> {
        self.checked_sub(o).expect("subtracting forms of different degrees")
    }
}

impl<K: Field> Mul for HomPoly<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<K: Field> Mul for &HomPoly<K> {
    type Output = HomPoly<K>;
    fn mul(self, o: Self) -> HomPoly<K> {
        self.mul_ref(o)
    }
}

impl<K: Field> Neg for HomPoly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        HomPoly { degree: self.degree, terms }
    }
}

impl<K: Field> fmt::Display for HomPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let is_unit = mag == "1";
            if m.total() == 0 {
                f.write_str(&mag)?;
            } else if is_unit {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for HomPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[{}]({self})", self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rat};

    type Q = HomPoly<Rat>;

    fn q(v: i64) -> Rat {
        Rat::from_i64(v)
    }

    #[test]
    fn ring_basics() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let a = &x + &y;
        let b = &x - &y;
        assert_eq!((&a * &b).to_string(), "x^2 - y^2");
        let s = &(&x + &y) + &z;
        assert_eq!(s.pow(2).to_string(), "x^2 + 2*x*y + 2*x*z + y^2 + 2*y*z + z^2");
        assert!((&x - &x).is_zero());
        assert!(x.checked_add(&(&x * &y)).is_err());
    }

    #[test]
    fn exact_division() {
        let (x, y) = (Q::x(), Q::y());
        let a = &(&x * &x) - &(&y * &y);
        let b = &x - &y;
        assert_eq!(a.exact_div(&b).unwrap(), &x + &y);
        assert_eq!((&x * &x).exact_div(&y), Err(Error::NotDivisible));
        assert_eq!(x.exact_div(&Q::zero()), Err(Error::DivisionByZeroPoly));
    }

    #[test]
    fn substitution_and_eval() {
        let (x, y, z) = (Q::x(), Q::y(), Q::z());
        let tau = [&y * &z, &x * &z, &x * &y];
        let f = &(&x * &y) * &z;
        let g = f.substitute(&tau).unwrap();
        assert_eq!(g, Q::monomial(q(1), [2, 2, 2]));
        let h = Q::monomial(q(1), [2, 1, 0]);
        assert_eq!(h.eval(&[q(2), q(3), q(1)]), q(12));
    }

    #[test]
    fn line_restriction() {
        let x = Q::x();
        let r = x.restrict_to_line(&[q(1), q(0), q(0)], &[q(0), q(1), q(0)]);
        assert_eq!(r, Q::x());
        let r = x.restrict_to_line(&[q(0), q(1), q(0)], &[q(0), q(0), q(1)]);
        assert!(r.is_zero());
    }

    #[test]
    fn canonical_scaling() {
        let half = Rat::new(1.into(), 2.into());
        let p = Q::monomial(-half.clone(), [2, 0, 0]) + Q::monomial(half * q(3), [0, 1, 1]);
        assert_eq!(p.canonical().to_string(), "x^2 - 3*y*z");
        let f: HomPoly<Fp<101>> = HomPoly::monomial(Fp::new(5), [1, 0, 0]);
        assert_eq!(f.canonical(), HomPoly::x());
    }

    #[test]
    fn derivatives() {
        let p = Q::monomial(q(3), [2, 1, 0]) + Q::monomial(q(1), [0, 0, 3]);
        assert_eq!(p.derivative(0), Q::monomial(q(6), [1, 1, 0]));
        assert_eq!(p.partial([0, 0, 2]), Q::monomial(q(6), [0, 0, 1]));
    }
}
