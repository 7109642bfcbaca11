//! Dual certificates for Markov-type derivative bounds at the Chebyshev
//! nodes, and the trigonometric sums behind them.

mod certificate;
mod chebyshev;
mod derivative;
mod trig;
mod vandermonde;

pub use certificate::{
    certificate_at_one, certificate_at_zero, higher_certificate, Certificate, CertificateKind, CramerCheck,
};
pub use chebyshev::{chebyshev_deriv_at_one, chebyshev_deriv_at_one_closed_form, ChebyshevPoly, NodeReport};
pub use derivative::{derivative_bound_check, DerivativeReport};
pub use trig::{trig_identity_suite, IdentityResult, TrigReport};
pub use vandermonde::{elementary_symmetric, vandermonde_skip_check, VandermondeReport};

use crate::numeric::Real;

/// `x^i` by repeated multiplication; `x^0 = 1` even for `x = 0`.
pub(crate) fn powi<T: Real>(x: &T, i: usize, ctx: T::Ctx) -> T {
    let mut acc = T::from_i64(1, ctx);
    for _ in 0..i {
        acc = acc * x.clone();
    }
    acc
}
