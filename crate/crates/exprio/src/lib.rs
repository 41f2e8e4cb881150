//! Text input and output for the `cremona` crate: a small polynomial
//! grammar with located errors, map/curve/point file formats, and the
//! JSON envelope used by the command-line tool.

pub mod error;
pub mod files;
pub mod json;
mod lex;
mod parse;

use cremona::{CremonaMap, QPoly, RatFunc1};

pub use error::{ParseError, ParseErrorKind, SourceSpan};
pub use files::{format_curve, format_point, format_points, parse_curve, parse_point, parse_points, CurveSpec};
pub use json::{validate_envelope, Envelope, Status};
pub use parse::{parse_map, parse_poly, parse_poly_raw, parse_ratfunc};

/// Graded-lex descending terms; `parse_poly` reads it back.
pub fn format_poly(p: &QPoly) -> String {
    p.to_string()
}

/// `f0; f1; f2`.
pub fn format_map(m: &CremonaMap) -> String {
    format_components(m.components())
}

pub fn format_components(c: &[QPoly; 3]) -> String {
    format!("{}; {}; {}", c[0], c[1], c[2])
}

pub fn format_ratfunc(f: &RatFunc1) -> String {
    f.to_string()
}
