//! Exact computations with plane Cremona transformations.
//!
//! The arithmetic core is generic over [`Field`]; the geometric layers
//! work over the rationals through the aliases below.

pub mod arith;
pub mod classical;
pub mod curve;
pub mod dynamics;
pub mod error;
pub mod map;
pub mod scalar;

pub use arith::hompoly::HomPoly;
pub use arith::point::Point;
pub use arith::ratfunc::RatFunc1;
pub use arith::unipoly::UniPoly;
pub use curve::PlaneCurve;
pub use error::{Error, Result};
pub use map::{BasePoint, CremonaMap};
pub use scalar::{Field, Fp, Rat};

/// Forms over the rationals.
pub type QPoly = HomPoly<Rat>;
/// Points with rational coordinates.
pub type QPoint = Point<Rat>;
