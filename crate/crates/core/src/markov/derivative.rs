use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::chebyshev::ChebyshevPoly;
use crate::error::{precondition, Result};
use crate::lp::{Direction, LinearProgram, Sense};
use crate::numeric::{serde_rational, BigRational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeReport {
    pub n: usize,
    #[serde(with = "serde_rational")]
    pub x0: BigRational,
    pub grid: usize,
    /// `max p'(x0)` subject to `|p| ≤ 1` on the grid only.
    #[serde(with = "serde_rational")]
    pub lp_optimum: BigRational,
    /// `|T_n'(x0)|`.
    #[serde(with = "serde_rational")]
    pub chebyshev_slope: BigRational,
    /// `min((n+1)/(1−|x0|), n²/|x0|)`, the second term only for `x0 ≠ 0`.
    #[serde(with = "serde_rational")]
    pub corollary_bound: BigRational,
    pub lp_dominates: bool,
    pub bound_dominates: bool,
}

impl DerivativeReport {
    pub fn passed(&self) -> bool {
        self.lp_dominates && self.bound_dominates
    }
}

/// Relaxed derivative LP on `grid` equispaced points of `[−1, 1]`, compared
/// with the Chebyshev slope and the scaled derivative bounds. The relaxation
/// only bounds the true supremum from above, so just those directions are checked.
pub fn derivative_bound_check(n: usize, x0: &BigRational, grid: usize) -> Result<DerivativeReport> {
    let one = BigRational::one();
    if x0.abs() >= one {
        return precondition("x0 must lie strictly inside (-1, 1)");
    }
    if grid < 2 * n + 2 {
        return precondition(format!("grid of {grid} points is too sparse for degree {n}; need {}", 2 * n + 2));
    }
    // p(x) = Σ c_i (x − x0)^i, so p'(x0) = c_1
    let mut cost = vec![BigRational::zero(); n + 1];
    if n >= 1 {
        cost[1] = one.clone();
    }
    let mut lp = LinearProgram::new(Direction::Max, cost);
    for j in 0..grid {
        let x = BigRational::new((2 * j as i64 - (grid as i64 - 1)).into(), (grid as i64 - 1).into());
        let h = &x - x0;
        let row: Vec<BigRational> = (0..=n).map(|i| num_traits::pow(h.clone(), i)).collect();
        lp.add_constraint(row.clone(), Sense::Le, one.clone())?;
        lp.add_constraint(row, Sense::Ge, -one.clone())?;
    }
    let lp_optimum = lp.solve()?.into_optimal()?.objective;

    let t = ChebyshevPoly::new(n);
    let chebyshev_slope = ChebyshevPoly::eval_rational(&t.derivative_coeffs(1), x0).abs();
    let nq = BigRational::from_integer(n.into());
    let mut corollary_bound = (&nq + &one) / (&one - x0.abs());
    if !x0.is_zero() {
        let other = &nq * &nq / x0.abs();
        if other < corollary_bound {
            corollary_bound = other;
        }
    }
    Ok(DerivativeReport {
        n,
        x0: x0.clone(),
        grid,
        lp_dominates: lp_optimum >= chebyshev_slope,
        bound_dominates: corollary_bound >= chebyshev_slope,
        lp_optimum,
        chebyshev_slope,
        corollary_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn zero_odd_degree() {
        for n in [1usize, 3, 5, 7] {
            let r = derivative_bound_check(n, &int(0), 2 * n + 3).unwrap();
            assert_eq!(r.chebyshev_slope, int(n as i64));
            assert_eq!(r.corollary_bound, int(n as i64 + 1));
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn half_degree_five() {
        // T5' = 80x^4 − 60x^2 + 5 is 5 − 15 + 5 at 1/2
        let r = derivative_bound_check(5, &rat(1, 2), 24).unwrap();
        assert_eq!(r.chebyshev_slope, int(5));
        assert!(r.passed());
    }

    #[test]
    fn approaching_the_endpoint() {
        let x0 = rat(99, 100);
        let r = derivative_bound_check(4, &x0, 20).unwrap();
        assert_eq!(r.corollary_bound, &int(16) / &x0);
        assert!(r.chebyshev_slope < int(16));
        assert!(r.passed());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(derivative_bound_check(3, &int(1), 20).is_err());
        assert!(derivative_bound_check(3, &int(0), 7).is_err());
    }
}
