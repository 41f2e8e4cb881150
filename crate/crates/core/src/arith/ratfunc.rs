use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};

/// A univariate rational function over the rationals, kept reduced with
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc1 {
    num: UniPoly<Rat>,
    den: UniPoly<Rat>,
}

impl RatFunc1 {
    pub fn new(num: UniPoly<Rat>, den: UniPoly<Rat>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput("denominator"));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.divrem(&g).0;
        let den = den.divrem(&g).0;
        let lc = den.lead();
        Ok(RatFunc1 { num: num.scale(&lc.inv()), den: den.monic() })
    }

    pub fn from_poly(p: UniPoly<Rat>) -> Self {
        RatFunc1 { num: p, den: UniPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rat::from_i64(c))
    }

    pub fn x() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly<Rat> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<Rat> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc1 { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFunc1 { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Value at `t`, or `None` at a pole.
    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }

    /// `p(self)` for a polynomial `p`.
    pub fn compose_into(&self, p: &UniPoly<Rat>) -> Self {
        let mut acc = Self::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `self(g)` for a rational function `g`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        g.compose_into(&self.num).div(&g.compose_into(&self.den))
    }

    /// Scalar making numerator and denominator jointly primitive integral.
    pub fn clearing_scalar(&self) -> Rat {
        let coeffs: Vec<&Rat> = self.num.coeffs().iter().chain(self.den.coeffs()).collect();
        Rat::normalizer(coeffs.into_iter().rev()).abs()
    }
}

impl fmt::Display for RatFunc1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UniPoly<Rat>| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc1({self})")
    }
}
