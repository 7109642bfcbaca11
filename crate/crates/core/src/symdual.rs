//! Univariate dual polynomials for symmetric functions, all in exact
//! rational arithmetic.
//!
//! A symmetric witness is a list `Q(0..=n)`; it stands for the cube function
//! `x ↦ Q(|x|)` and pairs with a profile through `P·Q = Σ C(n,i) P(i) Q(i)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::boolfn::SymmetricProfile;
use crate::error::{precondition, Error, Result};
use crate::fourier::{pure_high_degree, CubeFn};
use crate::numeric::{binomial, binomial_q, factorial, int, rat, serde_rational, ApFloat, BigRational};

/// Lifting to the cube for the independent phd check stops here.
pub const LIFT_MAX_ARITY: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Construction {
    Spalek,
    Majority,
    General,
}

/// Which `k` values the square arm `{t·k² + 4ℓ}` of the general set uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub enum SquareArm {
    /// `k = 0, 1, ..., K`.
    #[default]
    FromZero,
    /// `k = 1, ..., K`; kept for comparison, its minimizer drifts away from `t`.
    FromOne,
}

/// How a witness was built. Sets are in final (translated) coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub construction: Construction,
    pub t: usize,
    pub s_set: Vec<i64>,
    pub t_set: Vec<i64>,
    pub i_star: i64,
    pub sign: i8,
    pub offset: i64,
    #[serde(with = "serde_rational")]
    pub c: BigRational,
    pub h: usize,
    pub case: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnivariateDual {
    pub n: usize,
    #[serde(serialize_with = "ser_vec")]
    pub values: Vec<BigRational>,
    pub provenance: Provenance,
}

fn ser_vec<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&crate::numeric::format_rational(q))?;
    }
    seq.end()
}

impl UnivariateDual {
    /// `Q·F`.
    pub fn correlation(&self, f: &SymmetricProfile) -> Result<BigRational> {
        if f.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: f.arity(),
            });
        }
        Ok(sym_inner(&self.values, f.values()))
    }

    /// `‖Q‖₁ = Σ C(n,i)|Q(i)|`.
    pub fn l1(&self) -> BigRational {
        sym_l1(&self.values)
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = -v.clone());
        out.provenance.sign = -out.provenance.sign;
        out
    }

    /// Same witness with the sign that makes `Q·F ≥ 0`.
    pub fn oriented_for(&self, f: &SymmetricProfile) -> Result<Self> {
        Ok(if self.correlation(f)?.is_negative() {
            self.negated()
        } else {
            self.clone()
        })
    }

    /// `P(i) = (−1)^i Q(i)`.
    pub fn p_values(&self) -> Vec<BigRational> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, q)| if i % 2 == 0 { q.clone() } else { -q.clone() })
            .collect()
    }

    /// Cube function `x ↦ Q(|x|)/‖Q‖₁`.
    pub fn lift(&self) -> Result<CubeFn<BigRational>> {
        if self.n > LIFT_MAX_ARITY {
            return Err(crate::error::guard(format!("lift at arity {}", self.n), LIFT_MAX_ARITY as u64));
        }
        let l1 = self.l1();
        CubeFn::from_fn(self.n, |x| &self.values[x.count_ones() as usize] / &l1)
    }
}

fn sym_inner(q: &[BigRational], f: &[i8]) -> BigRational {
    q.iter().zip(f).enumerate().fold(BigRational::zero(), |acc, (i, (v, &s))| {
        if v.is_zero() {
            return acc;
        }
        let term = binomial_q(q.len() - 1, i) * v;
        if s == 1 {
            acc + term
        } else {
            acc - term
        }
    })
}

fn sym_l1(q: &[BigRational]) -> BigRational {
    q.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .fold(BigRational::zero(), |acc, (i, v)| acc + binomial_q(q.len() - 1, i) * v.abs())
}

/// `π_S(i) = Π_{i' ∈ S, i' ≠ i} |i − i'|`.
pub fn pi_s(set: &[i64], i: i64) -> Result<BigInt> {
    if !set.contains(&i) {
        return precondition(format!("{i} is not in the set"));
    }
    Ok(prod_dist(set, i))
}

fn prod_dist(set: &[i64], i: i64) -> BigInt {
    set.iter()
        .filter(|&&j| j != i)
        .fold(BigInt::one(), |acc, &j| acc * BigInt::from((i - j).abs()))
}

/// `C(n,r)|P(r)|` for `P = norm/n! · Π_{[n]∖T}(x − j)`, which collapses to
/// `norm / Π_{j ∈ T∖{r}} |r − j|` and is translation invariant.
fn relative_mass(t_set: &[i64], norm: &BigInt, r: i64) -> BigRational {
    BigRational::new(norm.clone(), prod_dist(t_set, r))
}

/// Values `Q(i) = (−1)^i P(i)` with `P(x) = sign · norm/n! · Π_{j ∈ [n]∖T} (x − j)`,
/// evaluated directly from the product.
fn q_values(n: usize, t_set: &[i64], norm: &BigInt, sign: i8) -> Vec<BigRational> {
    let support: BTreeSet<i64> = t_set.iter().copied().collect();
    let denom = factorial(n);
    (0..=n as i64)
        .map(|i| {
            if !support.contains(&i) {
                return BigRational::zero();
            }
            let prod = (0..=n as i64)
                .filter(|j| !support.contains(j))
                .fold(BigInt::from(sign), |acc, j| acc * BigInt::from(i - j));
            let p = BigRational::new(prod * norm, denom.clone());
            if i % 2 == 0 {
                p
            } else {
                -p
            }
        })
        .collect()
}

fn threshold_profile(n: usize, t: usize) -> SymmetricProfile {
    SymmetricProfile::threshold(n, t).expect("caller checked 1 <= t <= n")
}

fn orient(values: Vec<BigRational>, f: &SymmetricProfile) -> (Vec<BigRational>, i8) {
    if sym_inner(&values, f.values()).is_negative() {
        (values.into_iter().map(|v| -v).collect(), -1)
    } else {
        (values, 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpalekReport {
    /// `C(n,k²)|R(k²)| = 1/Π_{i ∈ S, i ≠ k²}|k² − i|` for every square.
    pub mass_identity_ok: bool,
    /// `Q·OR = 2 Q(0)`.
    pub or_correlation_identity_ok: bool,
}

/// OR witness on the perfect squares: `P = R/(x − 2)` with
/// `R = (1/n!) Π_{i ∈ [n]∖S} (x − i)`, oriented so `Q·OR > 0`.
pub fn spalek_or_dual(n: usize) -> Result<(UnivariateDual, SpalekReport)> {
    if n < 4 {
        return precondition("the square construction needs n >= 4");
    }
    let squares: Vec<i64> = (0..).map(|k: i64| k * k).take_while(|&s| s <= n as i64).collect();
    let mut t_set = squares.clone();
    t_set.push(2);
    t_set.sort_unstable();
    let one = BigInt::one();
    let or = threshold_profile(n, 1);
    let (values, sign) = orient(q_values(n, &t_set, &one, 1), &or);

    // R at the squares, straight from its product form
    let sq: BTreeSet<i64> = squares.iter().copied().collect();
    let mass_identity_ok = squares.iter().all(|&s| {
        let r = (0..=n as i64)
            .filter(|j| !sq.contains(j))
            .fold(BigInt::one(), |acc, j| acc * BigInt::from(s - j));
        let lhs = BigRational::new(binomial(n, s as usize) * r.abs(), factorial(n));
        lhs == BigRational::new(BigInt::one(), prod_dist(&squares, s))
    });
    let corr = sym_inner(&values, or.values());
    let dual = UnivariateDual {
        n,
        provenance: Provenance {
            construction: Construction::Spalek,
            t: 1,
            s_set: squares,
            t_set,
            i_star: 1,
            sign,
            offset: 0,
            c: BigRational::zero(),
            h: 0,
            case: None,
        },
        values,
    };
    let report = SpalekReport {
        mass_identity_ok,
        or_correlation_identity_ok: corr == &dual.values[0] * int(2),
    };
    Ok((dual, report))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajReport {
    #[serde(with = "serde_rational")]
    pub mass_at_t: BigRational,
    #[serde(with = "serde_rational")]
    pub mass_at_t_minus_1: BigRational,
    #[serde(with = "serde_rational")]
    pub mass_at_t_plus_1: BigRational,
    /// `‖P‖₁`, which the construction keeps at most `13/4`.
    #[serde(with = "serde_rational")]
    pub p_l1: BigRational,
    /// Signs of `Q(t−1), Q(t)` agree with `F(t−1), F(t)`.
    pub jump_signs_ok: bool,
}

impl MajReport {
    pub fn passed(&self) -> bool {
        self.mass_at_t == BigRational::one()
            && self.mass_at_t_minus_1 < BigRational::one()
            && self.mass_at_t_plus_1 < BigRational::one()
            && self.p_l1 <= rat(13, 4)
            && self.jump_signs_ok
    }
}

/// Witness for a jump at `t`: `S = {t + 4ℓ : |ℓ| ≤ h}`, `T = S ∪ {t ± 1}`,
/// normalized so `C(n,t)|P(t)| = 1`. Uses `h = ⌊min(t, n − t)/4⌋`, which
/// keeps `T` inside `[n]` for `t` on either side of `n/2`.
pub fn maj_dual(n: usize, t: usize) -> Result<(UnivariateDual, MajReport)> {
    if t == 0 || t >= n {
        return precondition(format!("jump {t} must lie in 1..={}", n.saturating_sub(1)));
    }
    let h = t.min(n - t) / 4;
    let ti = t as i64;
    let s_set: Vec<i64> = (-(h as i64)..=h as i64).map(|l| ti + 4 * l).collect();
    let mut t_set = s_set.clone();
    t_set.extend([ti - 1, ti + 1]);
    t_set.sort_unstable();
    // π_S(t) = 4^{2h} (h!)^2
    let norm = prod_dist(&s_set, ti);
    debug_assert_eq!(norm, (BigInt::from(4).pow(2 * h as u32)) * factorial(h) * factorial(h));
    let f = threshold_profile(n, t);
    let (values, sign) = orient(q_values(n, &t_set, &norm, 1), &f);
    let mass = |r: usize| binomial_q(n, r) * values[r].abs();
    let p_l1 = sym_l1(&values);
    let jump_signs_ok = values[t - 1].is_positive() == (f.at(t - 1) == 1)
        && values[t].is_positive() == (f.at(t) == 1)
        && !values[t - 1].is_zero()
        && !values[t].is_zero();
    let report = MajReport {
        mass_at_t: mass(t),
        mass_at_t_minus_1: mass(t - 1),
        mass_at_t_plus_1: mass(t + 1),
        p_l1,
        jump_signs_ok,
    };
    let dual = UnivariateDual {
        n,
        values,
        provenance: Provenance {
            construction: Construction::Majority,
            t,
            s_set,
            t_set,
            i_star: ti,
            sign,
            offset: 0,
            c: BigRational::zero(),
            h,
            case: None,
        },
    };
    Ok((dual, report))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralReport {
    pub arm: SquareArm,
    /// Minimizer of `π_S` before translation.
    pub i_star_raw: i64,
    /// `(1 − 4c)t ≤ i* ≤ (1 + 4c)t`.
    pub in_window: bool,
    pub case: u8,
    pub offset: i64,
    /// `C(n,r)|P(r)|` summed over `T` minus the three central points.
    #[serde(with = "serde_rational")]
    pub tail: BigRational,
    /// Points `t·k² + 4ℓ`, `k ≥ 2`, above `1/(t²(k² − 2)²)`.
    pub square_term_violations: usize,
    /// Points `i* + 4ℓ`, `ℓ ≠ 0`, above `1/(16ℓ² − 1)`.
    pub local_term_violations: usize,
    pub normalization_ok: bool,
}

impl GeneralReport {
    pub fn passed(&self) -> bool {
        self.in_window
            && self.tail <= rat(2, 5)
            && self.square_term_violations == 0
            && self.local_term_violations == 0
            && self.normalization_ok
    }
}

/// The interlaced construction for `2 ≤ t ≤ n/4` with `c = 1/32`.
pub fn general_sym_dual(n: usize, t: usize) -> Result<(UnivariateDual, GeneralReport)> {
    general_sym_dual_with(n, t, SquareArm::FromZero)
}

pub fn general_sym_dual_with(n: usize, t: usize, arm: SquareArm) -> Result<(UnivariateDual, GeneralReport)> {
    if t < 2 || 4 * t > n {
        return precondition(format!("general construction needs 2 <= t <= n/4, got t={t}, n={n}"));
    }
    let ti = t as i64;
    let reach = n as i64 - ti + 1;
    let big_l = ti / 32;
    let big_k = (1i64..).take_while(|k| ti * k * k <= reach).last().unwrap_or(0);
    let k_min = match arm {
        SquareArm::FromZero => 0,
        SquareArm::FromOne => 1,
    };
    let mut s: BTreeSet<i64> = BTreeSet::new();
    for k in k_min..=big_k {
        for l in 0..=big_l {
            s.insert(ti * k * k + 4 * l);
        }
    }
    for l in 0..=big_l {
        s.insert(ti - 4 * l);
    }
    let s_set: Vec<i64> = s.iter().copied().collect();
    let pis: Vec<BigInt> = s_set.iter().map(|&i| prod_dist(&s_set, i)).collect();
    let (idx, _) = pis
        .iter()
        .enumerate()
        .min_by(|(a, pa), (b, pb)| {
            pa.cmp(pb)
                .then((s_set[*a] - ti).abs().cmp(&(s_set[*b] - ti).abs()))
                .then(s_set[*a].cmp(&s_set[*b]))
        })
        .expect("S is nonempty");
    let i_star = s_set[idx];
    let norm = pis[idx].clone();
    let in_window = 8 * i_star >= 7 * ti && 8 * i_star <= 9 * ti;

    let mut t_raw = s.clone();
    t_raw.extend([i_star - 1, i_star + 1]);
    let t_raw: Vec<i64> = t_raw.into_iter().collect();
    let m_minus = relative_mass(&t_raw, &norm, i_star - 1);
    let m_plus = relative_mass(&t_raw, &norm, i_star + 1);
    let one = BigRational::one();
    // smallest of the three central masses decides the case; ties favour case 1
    let (case, target) = if m_minus >= m_plus && one >= m_plus {
        (1u8, ti)
    } else if one >= m_minus && m_plus >= m_minus {
        (2, ti - 1)
    } else {
        (3, ti + 1)
    };
    let offset = target - i_star;
    let t_set: Vec<i64> = t_raw.iter().map(|j| j + offset).collect();
    if t_set[0] < 0 || *t_set.last().expect("nonempty") > n as i64 {
        return precondition(format!(
            "translated support leaves [0, {n}] (i*={i_star}, case {case})"
        ));
    }

    let mut square_term_violations = 0;
    for k in 2..=big_k {
        for l in 0..=big_l {
            let r = ti * k * k + 4 * l;
            let bound = BigRational::new(BigInt::one(), BigInt::from(ti * ti * (k * k - 2) * (k * k - 2)));
            if relative_mass(&t_raw, &norm, r) > bound {
                square_term_violations += 1;
            }
        }
    }
    let mut local_term_violations = 0;
    for &v in &s_set {
        let d = v - i_star;
        if d != 0 && d % 4 == 0 {
            let l = d / 4;
            if relative_mass(&t_raw, &norm, v) > BigRational::new(BigInt::one(), BigInt::from(16 * l * l - 1)) {
                local_term_violations += 1;
            }
        }
    }
    let tail = t_raw
        .iter()
        .filter(|&&j| (j - i_star).abs() > 1)
        .fold(BigRational::zero(), |acc, &j| acc + relative_mass(&t_raw, &norm, j));

    let f = threshold_profile(n, t);
    let (values, sign) = orient(q_values(n, &t_set, &norm, 1), &f);
    let i_final = i_star + offset;
    let normalization_ok = binomial_q(n, i_final as usize) * values[i_final as usize].abs() == one;
    let report = GeneralReport {
        arm,
        i_star_raw: i_star,
        in_window,
        case,
        offset,
        tail,
        square_term_violations,
        local_term_violations,
        normalization_ok,
    };
    let dual = UnivariateDual {
        n,
        values,
        provenance: Provenance {
            construction: Construction::General,
            t,
            s_set: s_set.iter().map(|j| j + offset).collect(),
            t_set,
            i_star: i_final,
            sign,
            offset,
            c: rat(1, 32),
            h: big_l as usize,
            case: Some(case),
        },
    };
    Ok((dual, report))
}

/// Degree of the polynomial through `(i, p_i)`, `i = 0..len`, by repeated
/// differencing; `None` for the zero polynomial.
pub fn degree_by_differences(p: &[BigRational]) -> Option<usize> {
    let mut row = p.to_vec();
    let mut deg = None;
    let mut k = 0;
    while !row.is_empty() {
        if row.iter().any(|v| !v.is_zero()) {
            deg = Some(k);
        } else {
            break;
        }
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        k += 1;
    }
    // the loop stops at the first all-zero difference row
    deg
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymWitnessReport {
    #[serde(with = "serde_rational")]
    pub correlation: BigRational,
    #[serde(with = "serde_rational")]
    pub l1: BigRational,
    #[serde(with = "serde_rational")]
    pub ratio: BigRational,
    #[serde(with = "serde_rational")]
    pub eps: BigRational,
    pub claimed_phd: i64,
    /// `n − deg P − 1`, with `deg P` from finite differences.
    pub structural_phd: Option<i64>,
    /// Pure high degree of the cube lift, for `n ≤ 12`.
    pub lifted_phd: Option<i64>,
    pub ratio_ok: bool,
    pub phd_ok: bool,
    pub phd_agree: Option<bool>,
}

impl SymWitnessReport {
    pub fn passed(&self) -> bool {
        self.ratio_ok && self.phd_ok && self.phd_agree != Some(false)
    }
}

/// `(Q·F)/‖Q‖₁ > ε` and pure high degree at least `d_claim`, the latter
/// checked structurally and, for small `n`, on the cube.
pub fn verify_sym_witness(q: &UnivariateDual, f: &SymmetricProfile, d_claim: i64, eps: &BigRational) -> Result<SymWitnessReport> {
    let correlation = q.correlation(f)?;
    let l1 = q.l1();
    if l1.is_zero() {
        return precondition("zero witness");
    }
    let ratio = &correlation / &l1;
    let structural_phd = degree_by_differences(&q.p_values()).map(|d| q.n as i64 - d as i64 - 1);
    let lifted_phd = if q.n <= LIFT_MAX_ARITY {
        Some(pure_high_degree(&q.lift()?)?)
    } else {
        None
    };
    let phd_agree = lifted_phd.map(|l| Some(l) == structural_phd);
    Ok(SymWitnessReport {
        ratio_ok: ratio > *eps,
        phd_ok: structural_phd.is_some_and(|p| p >= d_claim) && lifted_phd.is_none_or(|p| p >= d_claim),
        phd_agree,
        correlation,
        l1,
        ratio,
        eps: eps.clone(),
        claimed_phd: d_claim,
        structural_phd,
        lifted_phd,
    })
}

/// Pure high degree guaranteed by the support size: `|T| − 2`.
pub fn support_phd(q: &UnivariateDual) -> i64 {
    q.provenance.t_set.len() as i64 - 2
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinProdReport {
    /// `Π_{j ≤ m, j ≠ k} |k² − j²|` is smallest at `k = 1`, for every `m`.
    pub minimized_at_one: bool,
    /// Equals `½ (m+k)! (m−k)!` for `1 ≤ k ≤ m`.
    pub closed_form_ok: bool,
    /// Largest partial sum of `Σ_{j ∈ Z∖{±k}, |j| ≤ J} 1/|j² − k²|` seen.
    pub max_partial_sum: f64,
    /// Every partial sum stayed below `π²/3`.
    pub reciprocal_sum_ok: bool,
}

impl MinProdReport {
    pub fn passed(&self) -> bool {
        self.minimized_at_one && self.closed_form_ok && self.reciprocal_sum_ok
    }
}

fn square_diff_product(m: i64, k: i64) -> BigInt {
    (0..=m)
        .filter(|&j| j != k)
        .fold(BigInt::one(), |acc, j| acc * BigInt::from((k * k - j * j).abs()))
}

/// Exhaustive check of the square-difference product facts for all `m ≤ m_max`
/// and the reciprocal bound for `k ≤ k_max`, truncated at `|j| ≤ terms`.
pub fn min_prod_facts_check(m_max: usize, k_max: usize, terms: usize, prec: u32) -> Result<MinProdReport> {
    let mut minimized_at_one = true;
    let mut closed_form_ok = true;
    for m in 1..=m_max as i64 {
        let at_one = square_diff_product(m, 1);
        for k in 0..=m {
            let p = square_diff_product(m, k);
            minimized_at_one &= p >= at_one;
            if k >= 1 {
                closed_form_ok &= BigInt::from(2) * &p == factorial((m + k) as usize) * factorial((m - k) as usize);
            }
        }
    }
    let pi = ApFloat::pi(prec);
    let limit = &(&pi * &pi) / &ApFloat::from_int(3, prec);
    let mut max_partial = ApFloat::from_int(0, prec);
    let mut reciprocal_sum_ok = true;
    for k in 0..=k_max as i64 {
        let mut sum = ApFloat::from_int(0, prec);
        for j in 0..=terms as i64 {
            if j == k {
                continue;
            }
            let term = ApFloat::from_int(1, prec) / ApFloat::from_int((j * j - k * k).abs(), prec);
            // ±j contribute equally except at j = 0
            let times = if j == 0 { 1 } else { 2 };
            for _ in 0..times {
                sum = &sum + &term;
            }
            reciprocal_sum_ok &= sum < limit;
        }
        if sum > max_partial {
            max_partial = sum;
        }
    }
    Ok(MinProdReport {
        minimized_at_one,
        closed_form_ok,
        max_partial_sum: max_partial.to_f64(),
        reciprocal_sum_ok,
    })
}
