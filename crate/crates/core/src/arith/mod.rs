//! Exact arithmetic: coefficients, forms, gcds, resultants, roots.

pub mod gcd;
pub mod hompoly;
pub mod linalg;
pub mod modp;
pub mod mono;
pub mod ntt;
pub mod ops;
pub mod point;
pub mod ratfunc;
pub mod resultant;
pub mod roots;
pub mod unipoly;
pub mod zeros;
