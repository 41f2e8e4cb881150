//! Coefficient fields.
//!
//! Everything in [`crate::arith`] is generic over [`Field`]. Two fields are
//! provided: the rationals ([`Rat`]) and prime fields with a compile-time
//! modulus ([`Fp`]).

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, NumAssign, One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::arith::gcd;
use crate::arith::hompoly::{self, HomPoly};
use crate::arith::modp;
use crate::arith::mono::Mono3;

/// Arbitrary-precision rationals, always reduced with positive denominator.
pub type Rat = BigRational;

/// A commutative field of characteristic zero or large prime characteristic.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Num
    + NumAssign
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn from_i64(v: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Scalar that brings a coefficient list (leading coefficient first)
    /// into canonical form when every entry is multiplied by it.
    fn normalizer<'a, I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a;

    /// Greatest common divisor of two homogeneous polynomials, in
    /// canonical form.
    fn hom_gcd(a: &HomPoly<Self>, b: &HomPoly<Self>) -> HomPoly<Self>;

    /// Image in `Z/pZ`, or `None` when `p` divides a denominator.
    fn to_modp(&self, p: u64) -> Option<u64>;

    /// A small random element, used for evaluation points and random
    /// linear combinations.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Product of two sorted term lists whose product has total degree
    /// `degree`.
    fn mul_terms(a: &[(Mono3, Self)], b: &[(Mono3, Self)], degree: u32) -> Vec<(Mono3, Self)> {
        hompoly::mul_terms_generic(a, b, degree)
    }
}

impl Field for Rat {
    fn from_i64(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn normalizer<'a, I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut it = coeffs.into_iter().peekable();
        let negative = match it.peek() {
            Some(c) => c.is_negative(),
            None => return Rat::one(),
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in it {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rat::one();
        }
        let s = Rat::new(den_lcm, num_gcd);
        if negative {
            -s
        } else {
            s
        }
    }

    fn hom_gcd(a: &HomPoly<Self>, b: &HomPoly<Self>) -> HomPoly<Self> {
        gcd::rational_hom_gcd(a, b)
    }

    fn to_modp(&self, p: u64) -> Option<u64> {
        let n = bigint_mod(self.numer(), p);
        let d = bigint_mod(self.denom(), p);
        if d == 0 {
            None
        } else {
            Some(modp::mul(n, modp::inv(d, p), p))
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Rat::from_i64(rng.gen_range(-40..=40))
    }

    // Clears denominators once so the inner loop runs on integers.
    fn mul_terms(a: &[(Mono3, Self)], b: &[(Mono3, Self)], degree: u32) -> Vec<(Mono3, Self)> {
        if a.len() * b.len() < 64 {
            return hompoly::mul_terms_generic(a, b, degree);
        }
        let (ai, da) = integerize(a);
        let (bi, db) = integerize(b);
        let mut dense = vec![BigInt::zero(); Mono3::count_of_degree(degree)];
        for ((ma, _), ca) in a.iter().zip(&ai) {
            for ((mb, _), cb) in b.iter().zip(&bi) {
                dense[ma.mul(*mb).dense_index(degree)] += ca * cb;
            }
        }
        let den = da * db;
        Mono3::all_of_degree(degree)
            .zip(dense.into_iter().rev())
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rat::new(c, den.clone())))
            .collect()
    }
}

/// Integer numerators over a common denominator.
fn integerize(t: &[(Mono3, Rat)]) -> (Vec<BigInt>, BigInt) {
    let den = t.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let nums = t.iter().map(|(_, c)| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Reduces an arbitrary-precision integer into `[0, p)`.
pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Element of the prime field `Z/PZ`. `P` must be an odd prime below 2^62.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(modp::add(self.0, o.0, P))
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(modp::sub(self.0, o.0, P))
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(modp::mul(self.0, o.0, P))
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero in F_p");
        Fp(modp::mul(self.0, modp::inv(o.0, P), P))
    }
}

impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    fn rem(self, _o: Self) -> Self {
        Fp(0)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(modp::sub(0, self.0, P))
    }
}

macro_rules! fp_assign {
    ($tr:ident, $m:ident, $op:ident) => {
        impl<const P: u64> $tr for Fp<P> {
            fn $m(&mut self, o: Self) {
                *self = (*self).$op(o);
            }
        }
        impl<'a, const P: u64> $tr<&'a Fp<P>> for Fp<P> {
            fn $m(&mut self, o: &'a Self) {
                *self = (*self).$op(*o);
            }
        }
    };
}

fp_assign!(AddAssign, add_assign, add);
fp_assign!(SubAssign, sub_assign, sub);
fp_assign!(MulAssign, mul_assign, mul);
fp_assign!(DivAssign, div_assign, div);
fp_assign!(RemAssign, rem_assign, rem);

impl<const P: u64> Num for Fp<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        u64::from_str_radix(s, radix).map(Fp::new)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn inv(&self) -> Self {
        Fp(modp::inv(self.0, P))
    }

    fn normalizer<'a, I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        match coeffs.into_iter().next() {
            Some(c) if !c.is_zero() => c.inv(),
            _ => Fp(1),
        }
    }

    fn hom_gcd(a: &HomPoly<Self>, b: &HomPoly<Self>) -> HomPoly<Self> {
        gcd::prime_field_hom_gcd(a, b)
    }

    fn to_modp(&self, p: u64) -> Option<u64> {
        (p == P).then_some(self.0)
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
}
