use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{precondition, Result};
use crate::numeric::{BigRational, Real};

/// `T_n` with integer coefficients in the monomial basis, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevPoly {
    coeffs: Vec<BigInt>,
}

impl ChebyshevPoly {
    /// Built by `T_{j+1} = 2x T_j − T_{j−1}`.
    pub fn new(n: usize) -> Self {
        let mut prev = vec![BigInt::one()];
        if n == 0 {
            return ChebyshevPoly { coeffs: prev };
        }
        let mut cur = vec![BigInt::zero(), BigInt::one()];
        for _ in 1..n {
            let mut next = vec![BigInt::zero(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c * 2;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        ChebyshevPoly { coeffs: cur }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients of the `k`-th derivative.
    pub fn derivative_coeffs(&self, k: usize) -> Vec<BigInt> {
        let mut c = self.coeffs.clone();
        for _ in 0..k {
            if c.len() <= 1 {
                return vec![BigInt::zero()];
            }
            c = c.iter().enumerate().skip(1).map(|(i, a)| a * i).collect();
        }
        c
    }

    pub fn eval_rational(coeffs: &[BigInt], x: &BigRational) -> BigRational {
        coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval<T: Real>(&self, x: &T, ctx: T::Ctx) -> T {
        self.coeffs.iter().rev().fold(T::from_i64(0, ctx), |acc, c| {
            acc * x.clone() + T::from_rational(&BigRational::from_integer(c.clone()), ctx)
        })
    }

    /// `|T_n(cos(jπ/n))| = 1` with sign `(−1)^j` at every node.
    pub fn node_check<T: Real>(&self, ctx: T::Ctx) -> NodeReport {
        let n = self.degree().max(1) as u64;
        let mut max_dev = 0f64;
        let mut signs_alternate = true;
        for j in 0..=self.degree() as i64 {
            let v = self.eval(&T::cos_pi_mul(j, n, ctx), ctx);
            let target = if j % 2 == 0 { 1 } else { -1 };
            max_dev = max_dev.max((v.clone() - T::from_i64(target, ctx)).abs().to_f64());
            signs_alternate &= v.is_positive() == (target == 1);
        }
        NodeReport {
            max_dev,
            signs_alternate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeReport {
    pub max_dev: f64,
    pub signs_alternate: bool,
}

/// `T_n^{(k)}(1)`, by differentiating the recurrence-built coefficients.
pub fn chebyshev_deriv_at_one(n: usize, k: usize) -> Result<BigRational> {
    if k > n {
        return precondition(format!("derivative order {k} exceeds degree {n}"));
    }
    let d = ChebyshevPoly::new(n).derivative_coeffs(k);
    Ok(BigRational::from_integer(d.iter().sum()))
}

/// `T_n^{(k)}(1) = Π_{j<k} (n² − j²)/(2j + 1)`.
pub fn chebyshev_deriv_at_one_closed_form(n: usize, k: usize) -> BigRational {
    let (n, k) = (n as i64, k as i64);
    (0..k).fold(BigRational::one(), |acc, j| {
        acc * BigRational::new(BigInt::from(n * n - j * j), BigInt::from(2 * j + 1))
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ApFloat};
    use proptest::prelude::*;

    #[test]
    fn small_polys() {
        let t4 = ChebyshevPoly::new(4);
        let want: Vec<BigInt> = [1, 0, -8, 0, 8].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(t4.coeffs(), &want[..]);
        assert_eq!(chebyshev_deriv_at_one(4, 2).unwrap(), int(80));
        assert_eq!(chebyshev_deriv_at_one(7, 0).unwrap(), int(1));
        assert_eq!(chebyshev_deriv_at_one(7, 1).unwrap(), int(49));
        assert!(chebyshev_deriv_at_one(3, 4).is_err());
    }

    #[test]
    fn nodes_equioscillate() {
        for n in 1..40 {
            let r = ChebyshevPoly::new(n).node_check::<ApFloat>(256);
            assert!(r.signs_alternate && r.max_dev < 1e-60, "n={n} {r:?}");
        }
    }

    proptest! {
        #[test]
        fn closed_form_agrees(n in 0usize..40, k in 0usize..40) {
            prop_assume!(k <= n);
            prop_assert_eq!(chebyshev_deriv_at_one(n, k).unwrap(), chebyshev_deriv_at_one_closed_form(n, k));
        }

        #[test]
        fn recurrence_matches_cosine(n in 0usize..30, num in -8i64..9) {
            // T_n(cos θ) = cos(nθ) at θ = num·π/8
            let x = ApFloat::cos_pi_mul(num, 8, 256);
            let lhs = ChebyshevPoly::new(n).eval(&x, 256);
            let rhs = ApFloat::cos_pi_mul(num * n as i64, 8, 256);
            prop_assert!((lhs - rhs).abs().to_f64() < 1e-60);
        }
    }
}
