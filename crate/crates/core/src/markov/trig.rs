use serde::Serialize;

use super::powi;
use crate::numeric::{BigRational, Real};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest `|lhs − rhs| / max(1, |rhs|, Σ|terms|)` seen, as `log2`.
    pub worst_log2_error: f64,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigReport {
    pub n_max: usize,
    pub precision: u32,
    pub tol_exp: i32,
    pub identities: Vec<IdentityResult>,
}

impl TrigReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityResult::passed)
    }
}

/// Accumulates `lhs` term by term together with `Σ|term|` for scaling.
struct Side<T: Real> {
    sum: T,
    mass: T,
}

impl<T: Real> Side<T> {
    fn new(ctx: T::Ctx) -> Self {
        Side {
            sum: T::from_i64(0, ctx),
            mass: T::from_i64(0, ctx),
        }
    }

    fn push(&mut self, v: T) {
        self.mass = self.mass.clone() + v.abs();
        self.sum = self.sum.clone() + v;
    }
}

struct Tally<T: Real> {
    result: IdentityResult,
    tol: T,
    ctx: T::Ctx,
}

impl<T: Real> Tally<T> {
    fn new(name: &'static str, tol_exp: i32, ctx: T::Ctx) -> Self {
        Tally {
            result: IdentityResult {
                name,
                cases: 0,
                failures: 0,
                worst_log2_error: f64::NEG_INFINITY,
            },
            tol: T::pow2(tol_exp, ctx),
            ctx,
        }
    }

    fn record(&mut self, lhs: Side<T>, rhs: T) {
        let one = T::from_i64(1, self.ctx);
        let mut scale = if rhs.abs() > one { rhs.abs() } else { one };
        if lhs.mass > scale {
            scale = lhs.mass;
        }
        let err = (lhs.sum - rhs).abs() / scale;
        self.result.cases += 1;
        if err > self.tol {
            self.result.failures += 1;
        }
        let e = err.to_f64();
        let l = if e > 0.0 { e.log2() } else { f64::NEG_INFINITY };
        if l > self.result.worst_log2_error {
            self.result.worst_log2_error = l;
        }
    }
}

fn sgn(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

fn q<T: Real>(num: i64, den: i64, ctx: T::Ctx) -> T {
    T::from_rational(&BigRational::new(num.into(), den.into()), ctx)
}

fn signed<T: Real>(odd: bool, v: T) -> T {
    if odd {
        -v
    } else {
        v
    }
}

/// Angles `aπ/b` used for the identity in a free angle.
const ANGLE_DENOMINATORS: [i64; 3] = [5, 12, 17];

/// Evaluates each side of the eight trigonometric sums for every admissible
/// parameter with `n ≤ n_max` and compares them at relative tolerance `2^tol_exp`.
pub fn trig_identity_suite<T: Real>(n_max: usize, ctx: T::Ctx, tol_exp: i32) -> TrigReport {
    let nm = n_max as i64;
    let one = || T::from_i64(1, ctx);
    let mut out = Vec::new();

    // Σ_{j=0}^n (−1)^j cos(jθ) = 1/2 + (−1)^n cos((n+½)θ) / (2cos(θ/2))
    let mut t = Tally::<T>::new("alternating_cosine", tol_exp, ctx);
    for n in 0..=nm {
        for b in ANGLE_DENOMINATORS {
            for a in 0..b {
                let mut lhs = Side::new(ctx);
                for j in 0..=n {
                    lhs.push(signed(j % 2 == 1, T::cos_pi_mul(j * a, b as u64, ctx)));
                }
                let frac = T::cos_pi_mul((2 * n + 1) * a, 2 * b as u64, ctx)
                    / (T::from_i64(2, ctx) * T::cos_pi_mul(a, 2 * b as u64, ctx));
                t.record(lhs, q::<T>(1, 2, ctx) + signed(n % 2 == 1, frac));
            }
        }
    }
    out.push(t.result);

    // i < n both odd: Σ_{j=0}^n (−1)^j cos^i(jπ/n) = 1
    let mut t = Tally::<T>::new("odd_cosine_power", tol_exp, ctx);
    for n in (3..=nm).step_by(2) {
        let nodes: Vec<T> = (0..=n).map(|j| T::cos_pi_mul(j, n as u64, ctx)).collect();
        for i in (1..n).step_by(2) {
            let mut lhs = Side::new(ctx);
            for (j, c) in nodes.iter().enumerate() {
                lhs.push(signed(j % 2 == 1, powi(c, i as usize, ctx)));
            }
            t.record(lhs, one());
        }
    }
    out.push(t.result);

    // 1 ≤ i, 2i < n: Σ_{j=0}^n (−1)^j sin^{2i}(jπ/2n) = (−1)^n/2
    let mut t = Tally::<T>::new("even_sine_power", tol_exp, ctx);
    for n in 3..=nm {
        let sq: Vec<T> = (0..=n)
            .map(|j| {
                let s = T::sin_pi_mul(j, 2 * n as u64, ctx);
                s.clone() * s
            })
            .collect();
        for i in (1..).take_while(|i| 2 * i < n) {
            let mut lhs = Side::new(ctx);
            for (j, s) in sq.iter().enumerate() {
                lhs.push(signed(j % 2 == 1, powi(s, i as usize, ctx)));
            }
            t.record(lhs, q::<T>(sgn(n % 2 == 1), 2, ctx));
        }
    }
    out.push(t.result);

    // n = 2m+1: Σ_{k=0}^n (−1)^k sec(kπ/n) = (−1)^m n + 1
    let mut t = Tally::<T>::new("alternating_secant", tol_exp, ctx);
    for n in (1..=nm).step_by(2) {
        let m = (n - 1) / 2;
        let mut lhs = Side::new(ctx);
        for k in 0..=n {
            lhs.push(signed(k % 2 == 1, one() / T::cos_pi_mul(k, n as u64, ctx)));
        }
        t.record(lhs, T::from_i64(sgn(m % 2 == 1) * n + 1, ctx));
    }
    out.push(t.result);

    // n odd: Σ_{k=0}^{n−1} sec²(kπ/n) = n²
    let mut t = Tally::<T>::new("secant_square", tol_exp, ctx);
    for n in (1..=nm).step_by(2) {
        let mut lhs = Side::new(ctx);
        for k in 0..n {
            let c = T::cos_pi_mul(k, n as u64, ctx);
            lhs.push(one() / (c.clone() * c));
        }
        t.record(lhs, T::from_i64(n * n, ctx));
    }
    out.push(t.result);

    let csc2 = |j: i64, n: i64| {
        let s = T::sin_pi_mul(j, 2 * n as u64, ctx);
        T::from_i64(1, ctx) / (s.clone() * s)
    };

    // Σ_{j=1}^{n−1} csc²(jπ/2n) = (4n² − 4)/6
    let mut t = Tally::<T>::new("cosecant_square", tol_exp, ctx);
    for n in 1..=nm {
        let mut lhs = Side::new(ctx);
        (1..n).for_each(|j| lhs.push(csc2(j, n)));
        t.record(lhs, q::<T>(4 * n * n - 4, 6, ctx));
    }
    out.push(t.result);

    // Σ_{j odd < n} csc²(jπ/2n) = n²/2 + ((−1)^n − 1)/4
    let mut t = Tally::<T>::new("odd_cosecant_square", tol_exp, ctx);
    for n in 1..=nm {
        let mut lhs = Side::new(ctx);
        (1..n).step_by(2).for_each(|j| lhs.push(csc2(j, n)));
        t.record(lhs, q::<T>(2 * n * n + sgn(n % 2 == 1) - 1, 4, ctx));
    }
    out.push(t.result);

    // Σ_{j=1}^{n−1} (−1)^j csc²(jπ/2n) = −n²/3 − 1/6 − (−1)^n/2
    let mut t = Tally::<T>::new("alternating_cosecant_square", tol_exp, ctx);
    for n in 1..=nm {
        let mut lhs = Side::new(ctx);
        (1..n).for_each(|j| lhs.push(signed(j % 2 == 1, csc2(j, n))));
        t.record(lhs, q::<T>(-2 * n * n - 1 - 3 * sgn(n % 2 == 1), 6, ctx));
    }
    out.push(t.result);

    TrigReport {
        n_max,
        precision: T::precision(ctx),
        tol_exp,
        identities: out,
    }
}
