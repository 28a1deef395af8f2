//! Exact arithmetic over the rationals and real quadratic fields, and the
//! integer / field linear algebra the star complement machinery needs.

pub mod matrix;
pub mod number;
pub mod poly;

pub use matrix::{char_polynomial, field_rank, minimal_polynomial, scaled_resolvent, FieldMatrix, IntMatrix};
pub use number::{AlgebraicNumber, NumberField, QuadField, Rational, RootSign};
pub use poly::IntPolynomial;
