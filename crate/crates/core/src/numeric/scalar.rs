use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Num, Signed};

use super::apfloat::ApFloat;
use super::rational::rational_to_f64;

/// Ordered field element: what the generic Walsh transform, simplex and
/// elimination routines need.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {}

impl<T> Scalar for T where T: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {}

/// Scalars that can also approximate reals: trigonometric values at rational
/// multiples of π and conversions from exact rationals.
pub trait Real: Scalar {
    /// Evaluation context; the bit precision for [`ApFloat`], nothing for machine floats.
    type Ctx: Copy + Debug + Send + Sync;

    fn from_rational(q: &BigRational, ctx: Self::Ctx) -> Self;
    fn from_i64(v: i64, ctx: Self::Ctx) -> Self;
    fn cos_pi_mul(j: i64, n: u64, ctx: Self::Ctx) -> Self;
    fn sin_pi_mul(j: i64, n: u64, ctx: Self::Ctx) -> Self;
    fn pow2(e: i32, ctx: Self::Ctx) -> Self;
    fn to_f64(&self) -> f64;
    /// Significand bits carried at this context.
    fn precision(ctx: Self::Ctx) -> u32;
    /// Context with extra guard bits, for measuring errors of values computed at `ctx`.
    fn widened(ctx: Self::Ctx) -> Self::Ctx;
}

impl Real for ApFloat {
    type Ctx = u32;

    fn from_rational(q: &BigRational, prec: u32) -> Self {
        ApFloat::from_rational(q, prec)
    }
    fn from_i64(v: i64, prec: u32) -> Self {
        ApFloat::from_int(v, prec)
    }
    fn cos_pi_mul(j: i64, n: u64, prec: u32) -> Self {
        ApFloat::cos_pi_mul(j, n, prec)
    }
    fn sin_pi_mul(j: i64, n: u64, prec: u32) -> Self {
        ApFloat::sin_pi_mul(j, n, prec)
    }
    fn pow2(e: i32, prec: u32) -> Self {
        ApFloat::pow2(e, prec)
    }
    fn to_f64(&self) -> f64 {
        ApFloat::to_f64(self)
    }
    fn precision(prec: u32) -> u32 {
        prec
    }
    fn widened(prec: u32) -> u32 {
        prec + super::apfloat::GUARD_BITS
    }
}

macro_rules! machine_real {
    ($t:ty) => {
        impl Real for $t {
            type Ctx = ();

            fn from_rational(q: &BigRational, _: ()) -> Self {
                rational_to_f64(q) as $t
            }
            fn from_i64(v: i64, _: ()) -> Self {
                v as $t
            }
            fn cos_pi_mul(j: i64, n: u64, _: ()) -> Self {
                ApFloat::cos_pi_mul(j, n, <$t>::MANTISSA_DIGITS + 8).to_f64() as $t
            }
            fn sin_pi_mul(j: i64, n: u64, _: ()) -> Self {
                ApFloat::sin_pi_mul(j, n, <$t>::MANTISSA_DIGITS + 8).to_f64() as $t
            }
            fn pow2(e: i32, _: ()) -> Self {
                (2.0 as $t).powi(e)
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn precision(_: ()) -> u32 {
                <$t>::MANTISSA_DIGITS
            }
            fn widened(_: ()) {}
        }
    };
}

machine_real!(f64);
machine_real!(f32);
