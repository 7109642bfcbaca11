//! Approximate degree of Boolean functions through exact linear programming
//! and explicit dual polynomials, plus Markov-type dual certificates.
//!
//! Cube points are indexed by integers: bit `i` set means `x_i = -1`, and
//! `-1` stands for logical true.

pub mod andor;
pub mod boolfn;
pub mod dualcore;
pub mod error;
pub mod fourier;
pub mod lp;
pub mod markov;
pub mod numeric;
pub mod symdual;

pub use dualcore::RealCubeFn;
pub use error::{Error, Result};
pub use numeric::{ApFloat, BigRational};

/// Markov certificate at arbitrary precision.
pub type ApCertificate = markov::Certificate<ApFloat>;
/// Certificate in machine doubles, for quick looks.
pub type F64Certificate = markov::Certificate<f64>;
