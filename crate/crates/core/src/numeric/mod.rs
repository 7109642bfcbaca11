//! Exact rationals, arbitrary-precision floats, and shared tables.

mod apfloat;
pub mod linalg;
mod rational;
mod scalar;

pub use apfloat::{ApFloat, DEFAULT_PRECISION, GUARD_BITS};
pub use num_rational::BigRational;
pub use rational::{
    binomial, binomial_q, factorial, format_rational, int, parse_rational, rat, rational_to_f64, serde_rational,
};
pub use scalar::{Real, Scalar};
