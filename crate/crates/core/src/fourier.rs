//! Fourier analysis on the cube: characters, the Walsh transform, pure high
//! degree, correlation and ℓ1 mass.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::boolfn::BoolFn;
use crate::error::{guard, precondition, Error, Result};
use crate::numeric::{format_rational, parse_rational, BigRational, Scalar};

/// The transform refuses larger arities.
pub const WALSH_MAX_ARITY: usize = 20;
/// Spectra above this arity are stored sparsely.
pub const DENSE_MAX_ARITY: usize = 12;

/// `χ_S(x)` for a subset mask and a point index.
pub fn character(subset: usize, x: usize) -> i8 {
    if (subset & x).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Real-valued function on `{-1,1}^n`, same index encoding as [`BoolFn`].
#[derive(Debug, Clone, PartialEq)]
pub struct CubeFn<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> CubeFn<T> {
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if n > WALSH_MAX_ARITY {
            return Err(guard(format!("cube function of arity {n}"), WALSH_MAX_ARITY as u64));
        }
        if values.len() != 1 << n {
            return Err(Error::ArityMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(CubeFn { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> T) -> Result<Self> {
        if n > WALSH_MAX_ARITY {
            return Err(guard(format!("cube function of arity {n}"), WALSH_MAX_ARITY as u64));
        }
        Ok(CubeFn {
            n,
            values: (0..1usize << n).map(f).collect(),
        })
    }

    pub fn from_boolfn(f: &BoolFn) -> Self {
        let one = T::one();
        let values = f
            .table()
            .iter()
            .map(|&v| if v == 1 { one.clone() } else { -one.clone() })
            .collect();
        CubeFn { n: f.arity(), values }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn at(&self, idx: usize) -> &T {
        &self.values[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        CubeFn {
            n: self.n,
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn l1_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc + v.abs())
    }

    /// `Σ φ(x) f(x)`.
    pub fn correlation(&self, f: &BoolFn) -> Result<T> {
        if f.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: f.arity(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(f.table())
            .fold(T::zero(), |acc, (v, &s)| if s == 1 { acc + v.clone() } else { acc - v.clone() }))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Coeffs<T> {
    Dense(Vec<T>),
    Sparse(BTreeMap<usize, T>),
}

/// Coefficients `ĝ(S)` indexed by subset masks.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum<T> {
    n: usize,
    coeffs: Coeffs<T>,
}

impl<T: Scalar> FourierSpectrum<T> {
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, subset: usize) -> T {
        match &self.coeffs {
            Coeffs::Dense(v) => v.get(subset).cloned().unwrap_or_else(T::zero),
            Coeffs::Sparse(m) => m.get(&subset).cloned().unwrap_or_else(T::zero),
        }
    }

    /// Nonzero coefficients in increasing mask order.
    pub fn nonzero(&self) -> Vec<(usize, T)> {
        match &self.coeffs {
            Coeffs::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(s, c)| (s, c.clone()))
                .collect(),
            Coeffs::Sparse(m) => m.iter().map(|(s, c)| (*s, c.clone())).collect(),
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.coeffs, Coeffs::Sparse(_))
    }

    /// Largest `d` with `ĝ(S) = 0` for every `|S| ≤ d`; `-1` when `ĝ(∅) ≠ 0`.
    pub fn pure_high_degree(&self) -> Result<i64> {
        let lowest = self.nonzero().iter().map(|(s, _)| s.count_ones() as i64).min();
        match lowest {
            Some(k) => Ok(k - 1),
            None => precondition("pure high degree of the zero function"),
        }
    }

    fn dense_values(&self) -> Vec<T> {
        match &self.coeffs {
            Coeffs::Dense(v) => v.clone(),
            Coeffs::Sparse(m) => {
                let mut v = vec![T::zero(); 1 << self.n];
                for (s, c) in m {
                    v[*s] = c.clone();
                }
                v
            }
        }
    }
}

impl FourierSpectrum<BigRational> {
    /// Lines `S=<mask> c=<num/den>`, zeros omitted, preceded by `n=<k>`.
    pub fn to_dump_string(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for (s, c) in self.nonzero() {
            let _ = writeln!(out, "S={s} c={}", format_rational(&c));
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let bad = |l: &str| Error::Parse(format!("bad spectrum line {l:?}"));
        let head = lines.next().ok_or_else(|| Error::Parse("empty spectrum".into()))?;
        let n: usize = head
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| bad(head))?;
        if n > WALSH_MAX_ARITY {
            return Err(guard(format!("spectrum of arity {n}"), WALSH_MAX_ARITY as u64));
        }
        let mut m = BTreeMap::new();
        for line in lines {
            let (s, c) = line.split_once(' ').ok_or_else(|| bad(line))?;
            let s: usize = s.strip_prefix("S=").and_then(|v| v.parse().ok()).ok_or_else(|| bad(line))?;
            let c = parse_rational(c.strip_prefix("c=").ok_or_else(|| bad(line))?)?;
            if s >= 1 << n {
                return Err(bad(line));
            }
            if !c.is_zero() {
                m.insert(s, c);
            }
        }
        Ok(pack(n, m.into_iter()))
    }
}

fn pack<T: Scalar>(n: usize, nonzero: impl Iterator<Item = (usize, T)>) -> FourierSpectrum<T> {
    let coeffs = if n <= DENSE_MAX_ARITY {
        let mut v = vec![T::zero(); 1 << n];
        for (s, c) in nonzero {
            v[s] = c;
        }
        Coeffs::Dense(v)
    } else {
        Coeffs::Sparse(nonzero.filter(|(_, c)| !c.is_zero()).collect())
    };
    FourierSpectrum { n, coeffs }
}

fn butterfly<T: Scalar>(v: &mut [T]) {
    let len = v.len();
    let mut h = 1;
    while h < len {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, w) = (a.clone(), b.clone());
                *a = u.clone() + w.clone();
                *b = u - w;
            }
        }
        h *= 2;
    }
}

/// `ĝ(S) = 2^-n Σ_x g(x) χ_S(x)`.
pub fn walsh_transform<T: Scalar>(g: &CubeFn<T>) -> FourierSpectrum<T> {
    let mut v = g.values.clone();
    butterfly(&mut v);
    let two = T::one() + T::one();
    let scale = (0..g.n).fold(T::one(), |acc, _| acc * two.clone());
    let n = g.n;
    pack(n, v.into_iter().map(|c| c / scale.clone()).enumerate())
}

pub fn inverse_walsh<T: Scalar>(s: &FourierSpectrum<T>) -> CubeFn<T> {
    let mut v = s.dense_values();
    butterfly(&mut v);
    CubeFn { n: s.n, values: v }
}

pub fn pure_high_degree<T: Scalar>(phi: &CubeFn<T>) -> Result<i64> {
    if phi.is_zero() {
        return precondition("pure high degree of the zero function");
    }
    walsh_transform(phi).pure_high_degree()
}

pub fn correlation<T: Scalar>(phi: &CubeFn<T>, f: &BoolFn) -> Result<T> {
    phi.correlation(f)
}

pub fn l1_norm<T: Scalar>(phi: &CubeFn<T>) -> T {
    phi.l1_norm()
}

/// `2^-n` as an exact rational.
pub fn uniform_weight(n: usize) -> BigRational {
    BigRational::new(One::one(), num_bigint::BigInt::one() << n)
}
