use serde::Serialize;

use super::chebyshev::chebyshev_deriv_at_one;
use super::powi;
use crate::error::{precondition, Error, Result};
use crate::numeric::linalg::{determinant, mat_vec, solve};
use crate::numeric::{factorial, serde_rational, BigRational, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    AtZero,
    AtOne,
    Higher(usize),
}

/// Cramer's rule on the last coordinate: `y_n = det(M_n)/det(M)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CramerCheck<T> {
    pub det: T,
    pub det_replaced: T,
    pub ratio_positive: bool,
    pub matches_solution: bool,
}

/// A dual vector `y` for `M y = rhs` with the measured quality of the fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct Certificate<T> {
    pub n: usize,
    pub kind: CertificateKind,
    pub precision: u32,
    #[serde(skip)]
    pub matrix: Vec<Vec<T>>,
    #[serde(skip)]
    pub rhs: Vec<T>,
    pub y: Vec<T>,
    /// `max_i |(M y − rhs)_i|`, with `M` rebuilt at guard precision so the
    /// figure reflects the error in `y` rather than the rounding of `M`.
    pub residual: T,
    /// `Σ y`.
    pub dual_value: T,
    #[serde(with = "serde_rational")]
    pub expected_dual: BigRational,
    /// `|Σ y − expected| / max(1, |expected|)`.
    pub dual_error: T,
    pub min_entry: T,
    pub min_pivot: Option<T>,
    pub cramer: Option<CramerCheck<T>>,
    pub residual_ok: bool,
    pub dual_ok: bool,
    pub positive_ok: bool,
}

impl<T: Real> Certificate<T> {
    pub fn passed(&self) -> bool {
        self.residual_ok
            && self.dual_ok
            && self.positive_ok
            && self
                .cramer
                .as_ref()
                .is_none_or(|c| c.ratio_positive && c.matches_solution)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        n: usize,
        kind: CertificateKind,
        matrix: Vec<Vec<T>>,
        wide: Vec<Vec<T>>,
        rhs: Vec<T>,
        y: Vec<T>,
        expected_dual: BigRational,
        min_pivot: Option<T>,
        cramer: Option<CramerCheck<T>>,
        ctx: T::Ctx,
    ) -> Self {
        let prec = T::precision(ctx);
        let my = mat_vec(&wide, &y);
        let residual = max_abs(my.iter().zip(&rhs).map(|(a, b)| a.clone() - b.clone()), ctx);
        // rounding scale of each row: Σ_j |M_ij y_j|
        let scale = max_abs(
            matrix.iter().map(|row| {
                row.iter()
                    .zip(&y)
                    .fold(T::from_i64(0, ctx), |acc, (m, v)| acc + (m.clone() * v.clone()).abs())
            }),
            ctx,
        );
        let dual_value = y.iter().fold(T::from_i64(0, ctx), |acc, v| acc + v.clone());
        let expected = T::from_rational(&expected_dual, ctx);
        let denom = if expected.abs() > T::from_i64(1, ctx) {
            expected.abs()
        } else {
            T::from_i64(1, ctx)
        };
        let dual_error = (dual_value.clone() - expected).abs() / denom;
        let min_entry = y
            .iter()
            .cloned()
            .reduce(|a, b| if b < a { b } else { a })
            .expect("at least two entries");
        let n2 = T::from_i64((n * n) as i64, ctx);
        let half = T::pow2(-((prec / 2) as i32), ctx);
        let residual_ok = residual <= T::pow2(8 - prec as i32, ctx) * n2 * max_one(scale, ctx);
        Certificate {
            n,
            kind,
            precision: prec,
            matrix,
            rhs,
            residual_ok,
            dual_ok: dual_error <= half,
            positive_ok: min_entry > half,
            y,
            residual,
            dual_value,
            expected_dual,
            dual_error,
            min_entry,
            min_pivot,
            cramer,
        }
    }
}

fn max_abs<T: Real>(it: impl Iterator<Item = T>, ctx: T::Ctx) -> T {
    it.map(|v| v.abs()).fold(T::from_i64(0, ctx), |a, b| if b > a { b } else { a })
}

fn max_one<T: Real>(v: T, ctx: T::Ctx) -> T {
    let one = T::from_i64(1, ctx);
    if v > one {
        v
    } else {
        one
    }
}

fn unit<T: Real>(len: usize, at: usize, value: T, ctx: T::Ctx) -> Vec<T> {
    (0..len)
        .map(|i| if i == at { value.clone() } else { T::from_i64(0, ctx) })
        .collect()
}

fn sign<T: Real>(negative: bool, v: T) -> T {
    if negative {
        -v
    } else {
        v
    }
}

/// `A_ij = (−1)^{j+m} cos^i(jπ/n)` with the explicit
/// `y = (1/n)(1/2, sec²(π/n), …, sec²((n−1)π/n), 1/2)`; `Σy` should be `n`.
pub fn certificate_at_zero<T: Real>(n: usize, ctx: T::Ctx) -> Result<Certificate<T>> {
    if n < 3 || n.is_multiple_of(2) {
        return precondition(format!("the certificate at zero needs odd n >= 3, got {n}"));
    }
    let matrix = matrix_a(n, ctx);
    let nodes: Vec<T> = (0..=n as i64).map(|j| T::cos_pi_mul(j, n as u64, ctx)).collect();
    let nn = T::from_i64(n as i64, ctx);
    let y: Vec<T> = (0..=n)
        .map(|j| {
            if j == 0 || j == n {
                T::from_rational(&BigRational::new(1.into(), (2 * n).into()), ctx)
            } else {
                let c = nodes[j].clone();
                T::from_i64(1, ctx) / (c.clone() * c) / nn.clone()
            }
        })
        .collect();
    let rhs = unit(n + 1, 1, T::from_i64(1, ctx), ctx);
    Ok(Certificate::assemble(
        n,
        CertificateKind::AtZero,
        matrix,
        matrix_a(n, T::widened(ctx)),
        rhs,
        y,
        BigRational::from_integer(n.into()),
        None,
        None,
        ctx,
    ))
}

/// `A_ij = (−1)^{j+m} cos^i(jπ/n)`, `n = 2m + 1`.
fn matrix_a<T: Real>(n: usize, ctx: T::Ctx) -> Vec<Vec<T>> {
    let m = (n - 1) / 2;
    let nodes: Vec<T> = (0..=n as i64).map(|j| T::cos_pi_mul(j, n as u64, ctx)).collect();
    (0..=n)
        .map(|i| {
            nodes
                .iter()
                .enumerate()
                .map(|(j, c)| sign((j + m) % 2 == 1, powi(c, i, ctx)))
                .collect()
        })
        .collect()
}

/// `B_00 = 1`, `B_ij = (−1)^j (cos(jπ/n) − 1)^i` otherwise.
fn matrix_b<T: Real>(n: usize, ctx: T::Ctx) -> Vec<Vec<T>> {
    let shifted: Vec<T> = (0..=n as i64)
        .map(|j| T::cos_pi_mul(j, n as u64, ctx) - T::from_i64(1, ctx))
        .collect();
    (0..=n)
        .map(|i| {
            shifted
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    if i == 0 && j == 0 {
                        T::from_i64(1, ctx)
                    } else if j == 0 {
                        T::from_i64(0, ctx)
                    } else {
                        sign(j % 2 == 1, powi(s, i, ctx))
                    }
                })
                .collect()
        })
        .collect()
}

/// `B` with the explicit `y = ((2n²+1)/6, csc²(π/2n), …, csc²((n−1)π/2n), 1/2)`;
/// `Σy` should be `n²`.
pub fn certificate_at_one<T: Real>(n: usize, ctx: T::Ctx) -> Result<Certificate<T>> {
    if n < 2 {
        return precondition(format!("the certificate at one needs n >= 2, got {n}"));
    }
    let matrix = matrix_b(n, ctx);
    let y: Vec<T> = (0..=n)
        .map(|j| {
            if j == 0 {
                T::from_rational(&BigRational::new((2 * n * n + 1).into(), 6.into()), ctx)
            } else if j == n {
                T::from_rational(&BigRational::new(1.into(), 2.into()), ctx)
            } else {
                let s = T::sin_pi_mul(j as i64, 2 * n as u64, ctx);
                T::from_i64(1, ctx) / (s.clone() * s)
            }
        })
        .collect();
    let rhs = unit(n + 1, 1, T::from_i64(1, ctx), ctx);
    Ok(Certificate::assemble(
        n,
        CertificateKind::AtOne,
        matrix,
        matrix_b(n, T::widened(ctx)),
        rhs,
        y,
        BigRational::from_integer((n * n).into()),
        None,
        None,
        ctx,
    ))
}

/// Solves `B y = k!·e_k` by elimination; `Σy` should be `T_n^{(k)}(1)`.
/// Fails with [`Error::InsufficientPrecision`] when a pivot drops below `2^(−P/2)`.
pub fn higher_certificate<T: Real>(n: usize, k: usize, ctx: T::Ctx) -> Result<Certificate<T>> {
    if k == 0 || k > n {
        return precondition(format!("derivative order must satisfy 1 <= k <= n, got k={k}, n={n}"));
    }
    let prec = T::precision(ctx);
    let matrix = matrix_b(n, ctx);
    let kf = T::from_rational(&BigRational::from_integer(factorial(k)), ctx);
    let rhs = unit(n + 1, k, kf, ctx);
    let elim = solve(&matrix, &rhs)?;
    let floor = T::pow2(-((prec / 2) as i32), ctx);
    if elim.min_pivot < floor {
        return Err(Error::InsufficientPrecision {
            pivot_log2: elim.min_pivot.to_f64().abs().log2(),
            floor_bits: prec / 2,
        });
    }
    let mut replaced = matrix.clone();
    for (row, r) in replaced.iter_mut().zip(&rhs) {
        row[n] = r.clone();
    }
    let det_replaced = determinant(&replaced)?;
    let ratio = det_replaced.clone() / elim.determinant.clone();
    let y_last = elim.solution[n].clone();
    let tol = T::pow2(16 - prec as i32, ctx) * max_one(y_last.abs(), ctx);
    let cramer = CramerCheck {
        ratio_positive: ratio.is_positive(),
        matches_solution: (ratio - y_last).abs() <= tol,
        det: elim.determinant,
        det_replaced,
    };
    Ok(Certificate::assemble(
        n,
        CertificateKind::Higher(k),
        matrix,
        matrix_b(n, T::widened(ctx)),
        rhs,
        elim.solution,
        chebyshev_deriv_at_one(n, k)?,
        Some(elim.min_pivot),
        Some(cramer),
        ctx,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ApFloat};
    use num_traits::Zero;

    fn close(a: &ApFloat, q: BigRational, bits: i32) -> bool {
        (a.clone() - ApFloat::from_rational(&q, 256)).abs() < ApFloat::pow2(-bits, 256)
    }

    #[test]
    fn at_zero_three() {
        let c = certificate_at_zero::<ApFloat>(3, 256).unwrap();
        let want = [BigRational::new(1.into(), 6.into()), BigRational::new(4.into(), 3.into())];
        assert!(close(&c.y[0], want[0].clone(), 250) && close(&c.y[3], want[0].clone(), 250));
        assert!(close(&c.y[1], want[1].clone(), 240) && close(&c.y[2], want[1].clone(), 240));
        assert!(close(&c.dual_value, int(3), 240));
        assert!(c.residual < ApFloat::pow2(-200, 256));
        assert!(c.passed());
        assert!(matches!(certificate_at_zero::<ApFloat>(4, 256), Err(Error::Precondition(_))));
    }

    #[test]
    fn at_one_two() {
        let c = certificate_at_one::<ApFloat>(2, 256).unwrap();
        assert!(close(&c.y[0], BigRational::new(3.into(), 2.into()), 250));
        assert!(close(&c.y[1], int(2), 240));
        assert!(close(&c.dual_value, int(4), 240));
        assert!(c.passed());
        assert!(certificate_at_one::<ApFloat>(1, 256).is_err());
    }

    #[test]
    fn explicit_duals_sweep() {
        for n in (3..60).step_by(2) {
            assert!(certificate_at_zero::<ApFloat>(n, 256).unwrap().passed(), "zero n={n}");
        }
        for n in 2..60 {
            assert!(certificate_at_one::<ApFloat>(n, 256).unwrap().passed(), "one n={n}");
        }
    }

    #[test]
    fn higher_first_order_is_the_explicit_one() {
        for n in 2..16 {
            let h = higher_certificate::<ApFloat>(n, 1, 256).unwrap();
            let e = certificate_at_one::<ApFloat>(n, 256).unwrap();
            for (a, b) in h.y.iter().zip(&e.y) {
                assert!((a.clone() - b.clone()).abs() < ApFloat::pow2(-180, 256), "n={n}");
            }
        }
    }

    #[test]
    fn higher_four_two() {
        let c = higher_certificate::<ApFloat>(4, 2, 256).unwrap();
        assert_eq!(c.expected_dual, int(80));
        assert!(close(&c.dual_value, int(80), 200));
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn higher_positive_sweep() {
        for n in 1..=20 {
            for k in 1..=n {
                let c = higher_certificate::<ApFloat>(n, k, 256).unwrap();
                assert!(c.passed(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn low_precision_is_refused() {
        assert!(matches!(
            higher_certificate::<ApFloat>(30, 5, 64),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn machine_floats_track_small_cases() {
        let c = certificate_at_one::<f64>(10, ()).unwrap();
        assert!((c.dual_value - 100.0).abs() < 1e-9);
        let h = higher_certificate::<f64>(6, 2, ()).unwrap();
        assert!(h.passed(), "{h:?}");
    }

    #[test]
    fn doubling_precision_shrinks_residual() {
        for n in [5usize, 11, 21] {
            let lo = certificate_at_zero::<ApFloat>(n, 128).unwrap().residual;
            let hi = certificate_at_zero::<ApFloat>(n, 256).unwrap().residual;
            let lo = lo.to_f64().max(f64::MIN_POSITIVE);
            assert!(hi.is_zero() || hi.log2_abs() <= lo.log2() - 64.0, "n={n}");
        }
    }
}
