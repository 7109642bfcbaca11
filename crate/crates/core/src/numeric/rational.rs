use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Shorthand for a small rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Always emits `num/den`, including `n/1` for integers.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // very large or tiny: scale through the bit lengths
        let nb = q.numer().bits() as i64;
        let db = q.denom().bits() as i64;
        let shift = nb - db;
        let scaled = if shift > 0 {
            q / BigRational::from_integer(BigInt::one() << shift as usize)
        } else {
            q * BigRational::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * (shift as f64).exp2()
    })
}

static PASCAL: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();

fn pascal() -> &'static RwLock<Vec<Vec<BigInt>>> {
    PASCAL.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

/// Exact binomial coefficient; zero when `k > n`. Rows are memoized.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    {
        let rows = pascal().read().expect("binomial table poisoned");
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = pascal().write().expect("binomial table poisoned");
    while rows.len() <= n {
        let prev = rows.last().expect("row 0 present");
        let mut row = Vec::with_capacity(prev.len() + 1);
        row.push(BigInt::one());
        for w in prev.windows(2) {
            row.push(&w[0] + &w[1]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows[n][k].clone()
}

pub fn binomial_q(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}


/// Serde adapter writing rationals as `num/den` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(9, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn binomial_20_10_matches_multiplicative_formula() {
        // product formula, independent of the Pascal table
        let mut acc = BigRational::one();
        for i in 1..=10i64 {
            acc *= rat(10 + i, i);
        }
        assert_eq!(binomial_q(20, 10), acc);
        assert_eq!(binomial(20, 10), BigInt::from(184756));
    }

    #[test]
    fn factorial_matches_binomial_ratio() {
        assert_eq!(factorial(10) / (factorial(4) * factorial(6)), binomial(10, 4));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&int(2)), "2/1");
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = BigRational::from_integer(BigInt::one() << 2000usize);
        let q = &big / (&big * int(3));
        assert!((rational_to_f64(&q) - 1.0 / 3.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn rational_string_roundtrip(a in any::<i64>(), b in 1i64..i64::MAX) {
            let q = rat(a, b);
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }

        #[test]
        fn pascal_rule(n in 1usize..60, k in 1usize..60) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}
