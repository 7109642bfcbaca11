use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use rug::float::Constant;
use rug::integer::Order;
use rug::{Float, Integer};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 256;
/// Extra bits used internally by transcendental evaluations before the final rounding.
pub const GUARD_BITS: u32 = 64;
/// Precision of constants built without context (`zero()`, `one()`); wide enough
/// that small-integer sums stay exact.
const BASE_PRECISION: u32 = 64;

/// Arbitrary-precision binary float. Each value carries its precision; binary
/// operations round to the larger of the two operand precisions.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct ApFloat(Float);

impl ApFloat {
    pub fn with_prec(prec: u32, v: f64) -> Self {
        ApFloat(Float::with_val(prec, v))
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        ApFloat(Float::with_val(prec, v))
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        ApFloat(Float::with_val(prec, to_rug_integer(v)))
    }

    /// Correctly rounded at `prec`.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let r = rug::Rational::from((to_rug_integer(q.numer()), to_rug_integer(q.denom())));
        ApFloat(Float::with_val(prec, &r))
    }

    pub fn pi(prec: u32) -> Self {
        ApFloat(Float::with_val(prec, Constant::Pi))
    }

    /// Exact `2^e`.
    pub fn pow2(e: i32, prec: u32) -> Self {
        ApFloat(Float::with_val(prec, 1) << e)
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn round_to(&self, prec: u32) -> Self {
        ApFloat(Float::with_val(prec, &self.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// log2 of the magnitude; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let a = Float::with_val(64, self.0.abs_ref());
        a.log2().to_f64()
    }

    pub fn abs(&self) -> Self {
        ApFloat(Float::with_val(self.prec(), self.0.abs_ref()))
    }

    pub fn recip(&self) -> Self {
        ApFloat(Float::with_val(self.prec(), self.0.recip_ref()))
    }

    pub fn powi(&self, k: u32) -> Self {
        use rug::ops::Pow;
        ApFloat(Float::with_val(self.prec(), (&self.0).pow(k)))
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    /// `cos(jπ/n)` at `prec` bits. The angle is reduced to `[0, π/2]` by exact
    /// integer arithmetic, so the values at multiples of π/2 are exact.
    pub fn cos_pi_mul(j: i64, n: u64, prec: u32) -> Self {
        assert!(n >= 1, "cos_pi_mul needs n >= 1");
        let two_n = 2 * n as i128;
        let mut r = (j as i128).rem_euclid(two_n);
        if r > n as i128 {
            r = two_n - r;
        }
        let mut negate = false;
        if 2 * r > n as i128 {
            r = n as i128 - r;
            negate = true;
        }
        let value = if r == 0 {
            Float::with_val(prec, 1)
        } else if 2 * r == n as i128 {
            Float::with_val(prec, 0)
        } else {
            let wp = prec + GUARD_BITS;
            let mut x = Float::with_val(wp, Constant::Pi);
            x *= r as i64;
            x /= n as i64;
            Float::with_val(prec, x.cos())
        };
        ApFloat(if negate { -value } else { value })
    }

    /// `sin(jπ/n) = cos((n − 2j)π/(2n))`.
    pub fn sin_pi_mul(j: i64, n: u64, prec: u32) -> Self {
        Self::cos_pi_mul(n as i64 - 2 * j, 2 * n, prec)
    }

    /// `0x<hex significand>p<binary exponent>@<precision>`.
    pub fn to_hex_string(&self) -> String {
        match self.0.to_integer_exp() {
            Some((m, e)) if !m.is_zero() => {
                // strip trailing zero bits so the text is canonical
                let tz = m.find_one(0).unwrap_or(0);
                let m = Integer::from(&m >> tz);
                let e = e + tz as i32;
                let (sign, mag) = if m < 0 { ("-", Integer::from(-&m)) } else { ("", m) };
                format!("{sign}0x{}p{e}@{}", mag.to_string_radix(16), self.prec())
            }
            Some(_) => format!("0x0p0@{}", self.prec()),
            None => format!("{}@{}", self.0, self.prec()),
        }
    }

    pub fn parse_hex(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a hex float: {s:?}"));
        let (body, prec) = s.trim().rsplit_once('@').ok_or_else(bad)?;
        let prec: u32 = prec.parse().map_err(|_| bad())?;
        if !(rug::float::prec_min()..=rug::float::prec_max()).contains(&prec) {
            return Err(bad());
        }
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body),
        };
        let body = body.strip_prefix("0x").ok_or_else(bad)?;
        let (mant, exp) = body.split_once('p').ok_or_else(bad)?;
        let mant = Integer::from_str_radix(mant, 16).map_err(|_| bad())?;
        let exp: i32 = exp.parse().map_err(|_| bad())?;
        let mut f = Float::with_val(prec, mant) << exp;
        if neg {
            f = -f;
        }
        Ok(ApFloat(f))
    }
}

pub(crate) fn to_rug_integer(v: &BigInt) -> Integer {
    let (sign, digits) = v.to_u32_digits();
    let mag = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

impl fmt::Debug for ApFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ApFloat({})", self.to_hex_string())
    }
}

impl fmt::Display for ApFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.0.to_string_radix(10, Some(digits.clamp(1, 80))))
    }
}

fn joint_prec(a: &ApFloat, b: &ApFloat) -> u32 {
    a.prec().max(b.prec())
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for ApFloat {
            type Output = ApFloat;
            fn $m(self, rhs: ApFloat) -> ApFloat {
                let p = joint_prec(&self, &rhs);
                ApFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a ApFloat> for &'a ApFloat {
            type Output = ApFloat;
            fn $m(self, rhs: &'a ApFloat) -> ApFloat {
                let p = joint_prec(self, rhs);
                ApFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Rem for ApFloat {
    type Output = ApFloat;
    fn rem(self, rhs: ApFloat) -> ApFloat {
        let p = joint_prec(&self, &rhs);
        let mut q = Float::with_val(p, &self.0 / &rhs.0);
        q.trunc_mut();
        ApFloat(Float::with_val(p, &self.0 - Float::with_val(p, &q * &rhs.0)))
    }
}

impl Neg for ApFloat {
    type Output = ApFloat;
    fn neg(self) -> ApFloat {
        ApFloat(-self.0)
    }
}

impl Zero for ApFloat {
    fn zero() -> Self {
        ApFloat(Float::new(BASE_PRECISION))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for ApFloat {
    fn one() -> Self {
        ApFloat(Float::with_val(BASE_PRECISION, 1))
    }
}

impl Num for ApFloat {
    type FromStrRadixErr = Error;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self> {
        let radix = i32::try_from(radix).map_err(|_| Error::Parse("radix".into()))?;
        Float::parse_radix(s, radix)
            .map(|p| ApFloat(Float::with_val(DEFAULT_PRECISION, p)))
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Signed for ApFloat {
    fn abs(&self) -> Self {
        ApFloat::abs(self)
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Self::zero()
        } else {
            self - other
        }
    }
    fn signum(&self) -> Self {
        match self.0.partial_cmp(&0) {
            Some(Ordering::Greater) => Self::one(),
            Some(Ordering::Less) => -Self::one(),
            _ => Self::zero(),
        }
    }
    fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }
    fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }
}

impl serde::Serialize for ApFloat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex_string())
    }
}

impl<'de> serde::Deserialize<'de> for ApFloat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ApFloat::parse_hex(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series_cos(q: &BigRational, prec: u32) -> Float {
        // Taylor series for cos(qπ) at doubled precision, an independent route
        let wp = 2 * prec;
        let x = Float::with_val(wp, Constant::Pi)
            * Float::with_val(wp, &rug::Rational::from((to_rug_integer(q.numer()), to_rug_integer(q.denom()))));
        let x2 = Float::with_val(wp, &x * &x);
        let mut term = Float::with_val(wp, 1);
        let mut sum = Float::with_val(wp, 1);
        for k in 1..400u32 {
            term = -term * &x2 / ((2 * k - 1) * (2 * k));
            sum += &term;
        }
        sum
    }

    #[test]
    fn exact_special_angles() {
        assert_eq!(ApFloat::cos_pi_mul(0, 5, 256), ApFloat::from_int(1, 256));
        assert_eq!(ApFloat::cos_pi_mul(3, 3, 256), ApFloat::from_int(-1, 256));
        assert!(ApFloat::cos_pi_mul(2, 4, 256).is_zero());
        assert!(ApFloat::cos_pi_mul(-6, 4, 256).is_zero());
        assert_eq!(ApFloat::cos_pi_mul(10, 5, 256), ApFloat::from_int(1, 256));
    }

    #[test]
    fn cos_pi_over_3_matches_series() {
        let c = ApFloat::cos_pi_mul(1, 3, 256);
        let half = Float::with_val(256, 0.5);
        let diff = Float::with_val(256, c.as_float() - &half).abs();
        assert!(diff <= Float::with_val(64, 1) << -255i32);
        let s = series_cos(&BigRational::new(1.into(), 3.into()), 256);
        assert!(Float::with_val(512, c.as_float() - &s).abs() < (Float::with_val(64, 1) << -250i32));
    }

    #[test]
    fn sin_via_cos() {
        let s = ApFloat::sin_pi_mul(1, 6, 128);
        assert!((s.to_f64() - 0.5).abs() < 1e-30);
        assert_eq!(ApFloat::sin_pi_mul(1, 2, 128), ApFloat::from_int(1, 128));
    }

    #[test]
    fn precision_propagates() {
        let a = ApFloat::from_int(1, 64);
        let b = ApFloat::from_int(3, 300);
        assert_eq!((a / b).prec(), 300);
        let three = ApFloat::one() + ApFloat::one() + ApFloat::one();
        assert_eq!(three, ApFloat::from_int(3, 64));
    }

    #[test]
    fn hex_roundtrip_specials() {
        for v in [ApFloat::zero(), ApFloat::from_int(-5, 100), ApFloat::pow2(-300, 80)] {
            assert_eq!(ApFloat::parse_hex(&v.to_hex_string()).unwrap(), v);
        }
        assert!(ApFloat::parse_hex("0x1q3@64").is_err());
    }

    #[test]
    fn from_rational_rounds_correctly() {
        let q = BigRational::new(1.into(), 3.into());
        let a = ApFloat::from_rational(&q, 200);
        let err = Float::with_val(400, a.as_float() * 3u32) - 1u32;
        assert!(err.abs() < (Float::with_val(64, 1) << -198i32));
    }

    proptest! {
        #[test]
        fn reflection(j in -50i64..50, n in 1u64..60, prec in 64u32..400) {
            let a = ApFloat::cos_pi_mul(j, n, prec);
            let b = ApFloat::cos_pi_mul(n as i64 - j, n, prec);
            let s = (a + b).abs();
            prop_assert!(s <= ApFloat::pow2(4 - prec as i32, prec));
        }

        #[test]
        fn monotone_refinement(j in 0i64..40, n in 1u64..40, prec in 64u32..300, extra in 1u32..200) {
            let lo = ApFloat::cos_pi_mul(j, n, prec);
            let hi = ApFloat::cos_pi_mul(j, n, prec + extra);
            let diff = (&lo - &hi).abs();
            prop_assert!(diff <= hi.abs() * ApFloat::pow2(8 - prec as i32, prec + extra));
        }

        #[test]
        fn hex_roundtrip(m in any::<i64>(), e in -500i32..500, prec in 64u32..512) {
            let v = ApFloat(Float::with_val(prec, m) << e);
            prop_assert_eq!(ApFloat::parse_hex(&v.to_hex_string()).unwrap(), v);
        }
    }
}
