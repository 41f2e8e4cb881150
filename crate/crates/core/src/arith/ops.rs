//! Polynomial operations on canonical rational forms.
//!
//! These wrap the ring operations of [`HomPoly`] and return canonical
//! representatives, so equality up to scalars is plain equality.

use crate::arith::hompoly::HomPoly;
use crate::arith::point::Point;
use crate::arith::resultant::{self, Resultant};
use crate::error::{Error, Result};
use crate::scalar::Rat;

type Q = HomPoly<Rat>;

pub fn poly_add(a: &Q, b: &Q) -> Result<Q> {
    Ok(a.checked_add(b)?.canonical())
}

pub fn poly_sub(a: &Q, b: &Q) -> Result<Q> {
    Ok(a.checked_sub(b)?.canonical())
}

pub fn poly_mul(a: &Q, b: &Q) -> Q {
    a.mul_ref(b).canonical()
}

pub fn exact_div(a: &Q, b: &Q) -> Result<Q> {
    Ok(a.exact_div(b)?.canonical())
}

pub fn poly_gcd(a: &Q, b: &Q) -> Q {
    a.gcd(b)
}

pub fn substitute(f: &Q, phi: &[Q; 3]) -> Result<Q> {
    f.substitute(phi)
}

pub fn resultant(a: &Q, b: &Q, var: usize) -> Result<Resultant<Rat>> {
    resultant::resultant(a, b, var)
}

pub fn restrict_to_line(f: &Q, p: &Point<Rat>, q: &Point<Rat>) -> Result<Q> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    Ok(f.restrict_to_line(p.coords(), q.coords()))
}

pub fn eval(f: &Q, p: &Point<Rat>) -> Rat {
    f.eval(p.coords())
}
