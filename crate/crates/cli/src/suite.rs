//! Acceptance runner. Every threshold lives in [`THRESHOLDS`]; bump
//! [`THRESHOLDS_VERSION`] when one changes.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dualdeg_core::andor::{check_facts, compose, find_component_witnesses, flip_probability_bound, verify_composition};
use dualdeg_core::boolfn::{BoolFn, Family, SymmetricProfile};
use dualdeg_core::dualcore::{approx_degree, best_eps, optimal_dual_witness, verify_witness};
use dualdeg_core::markov::{
    certificate_at_one, certificate_at_zero, chebyshev_deriv_at_one, chebyshev_deriv_at_one_closed_form,
    higher_certificate, trig_identity_suite, vandermonde_skip_check,
};
use dualdeg_core::numeric::{format_rational, int, rat, rational_to_f64};
use dualdeg_core::symdual::{general_sym_dual, maj_dual, spalek_or_dual, support_phd, verify_sym_witness, UnivariateDual};
use dualdeg_core::{ApFloat, BigRational, Error};

use crate::report::Check;

pub const THRESHOLDS_VERSION: &str = "1";

/// Ranges, precisions and tolerances of the acceptance run.
#[derive(Debug, Clone, Copy)]
pub struct Thresholds {
    pub random_cube3_functions: usize,
    pub compositions: &'static [(usize, usize)],
    pub refined_floor: (i64, i64),
    pub flip_alphas: &'static [(i64, i64)],
    pub flip_and_max: usize,
    pub flip_random_functions: usize,
    pub flip_random_max_arity: usize,
    pub maj_center_max_n: usize,
    pub maj_all_t_max_n: usize,
    pub maj_ratio: (i64, i64),
    pub general_max_n: usize,
    pub general_ratio: (i64, i64),
    pub general_tail: (i64, i64),
    pub spalek_max_n: usize,
    pub spalek_ratio: (i64, i64),
    pub lift_max_n: usize,
    pub markov_precision: u32,
    pub at_zero_max_n: usize,
    pub at_one_max_n: usize,
    pub dual_sum_tol_exp: i32,
    /// Residuals must stay below `2^exp · n²`.
    pub residual_tol_exp: i32,
    pub higher_max_n: usize,
    pub higher_precision: u32,
    pub higher_sum_tol_exp: i32,
    pub vandermonde_max_m: usize,
    pub vandermonde_trials: usize,
    pub trig_max_n: usize,
    pub trig_precision: u32,
    pub trig_tol_exp: i32,
}

pub const THRESHOLDS: Thresholds = Thresholds {
    random_cube3_functions: 200,
    compositions: &[(2, 2), (2, 3), (3, 2), (2, 4)],
    refined_floor: (1, 3),
    flip_alphas: &[(1, 16), (1, 8), (1, 4), (1, 2)],
    flip_and_max: 6,
    flip_random_functions: 50,
    flip_random_max_arity: 6,
    maj_center_max_n: 60,
    maj_all_t_max_n: 40,
    maj_ratio: (3, 13),
    general_max_n: 64,
    general_ratio: (1, 14),
    general_tail: (2, 5),
    spalek_max_n: 200,
    spalek_ratio: (1, 14),
    lift_max_n: 12,
    markov_precision: 256,
    at_zero_max_n: 101,
    at_one_max_n: 100,
    dual_sum_tol_exp: -128,
    residual_tol_exp: -200,
    higher_max_n: 30,
    // no precision is prescribed for the higher sweep; 256 bits cannot hold
    // 2^-100 absolute accuracy on sums near 2^137
    higher_precision: 512,
    higher_sum_tol_exp: -100,
    vandermonde_max_m: 6,
    vandermonde_trials: 40,
    trig_max_n: 50,
    trig_precision: 256,
    trig_tol_exp: -200,
};

/// Reduced ranges for `--quick`.
pub const QUICK: Thresholds = Thresholds {
    random_cube3_functions: 20,
    compositions: &[(2, 2), (2, 3)],
    flip_and_max: 4,
    flip_random_functions: 10,
    flip_random_max_arity: 4,
    maj_center_max_n: 30,
    maj_all_t_max_n: 20,
    general_max_n: 32,
    spalek_max_n: 60,
    lift_max_n: 8,
    at_zero_max_n: 31,
    at_one_max_n: 30,
    higher_max_n: 10,
    vandermonde_trials: 10,
    trig_max_n: 20,
    ..THRESHOLDS
};

/// Checks whose literal tolerance is out of reach at the prescribed
/// precision, with the reason. They still run and still report FAIL.
pub const KNOWN_SHORTFALLS: &[(&str, &str)] = &[(
    "markov.at_one.residual",
    "B has entries (cos(jπ/n) − 1)^i of size up to 2^n, so rounding y to 256 bits alone \
     leaves residuals near 2^(n−256); the 2^-200·n² bound is exceeded from n = 67 on",
)];

pub const SEED: u64 = 0x5eed_d0a1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

impl Scale {
    pub fn thresholds(self) -> Thresholds {
        match self {
            Scale::Quick => QUICK,
            Scale::Full => THRESHOLDS,
        }
    }
}

/// Checks produced for one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }
}

pub type SuiteResult<T> = std::result::Result<T, Error>;

fn q(p: (i64, i64)) -> BigRational {
    rat(p.0, p.1)
}

fn log2_text(v: &ApFloat) -> String {
    if v.as_float().is_zero() {
        "0".into()
    } else {
        format!("2^{:.2}", v.log2_abs())
    }
}

fn random_fn(rng: &mut ChaCha8Rng, n: usize, name: String) -> SuiteResult<BoolFn> {
    let table = (0..1usize << n).map(|_| if rng.gen::<bool>() { -1 } else { 1 }).collect();
    BoolFn::new(n, table, name)
}

fn all_fns(n: usize) -> SuiteResult<Vec<BoolFn>> {
    let size = 1usize << n;
    (0..1usize << size)
        .map(|code| BoolFn::from_fn(n, format!("f{n}_{code}"), |x| code >> x & 1 == 1))
        .collect()
}

pub fn lp_duality(th: &Thresholds) -> SuiteResult<CriterionOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut fns = all_fns(1)?;
    fns.extend(all_fns(2)?);
    for i in 0..th.random_cube3_functions {
        fns.push(random_fn(&mut rng, 3, format!("random3_{i}"))?);
    }
    let (mut pairs, mut mismatched, mut unverified, mut zero_opt) = (0usize, Vec::new(), Vec::new(), 0usize);
    for f in &fns {
        for d in 0..f.arity() {
            pairs += 1;
            let eps = best_eps(f, d)?;
            let w = optimal_dual_witness(f, d)?;
            let corr = w.phi.correlation(f)?;
            if corr != eps || w.claimed_correlation != eps {
                mismatched.push(format!("{}@{d}", f.name()));
            }
            // a witness reaching the optimum certifies every ε strictly below it
            let probe = if eps.is_zero() {
                zero_opt += 1;
                BigRational::zero()
            } else {
                &eps / int(2)
            };
            let r = verify_witness(&w, f, d, &probe)?;
            let ok = r.l1_ok && r.phd_ok && (eps.is_zero() || r.correlation_ok);
            if !ok {
                unverified.push(format!("{}@{d}", f.name()));
            }
        }
    }
    Ok(CriterionOutcome {
        name: "lp_duality",
        checks: vec![
            Check::new("lp.strong_duality", "dual witness correlation equals best error", mismatched.is_empty())
                .measured(format!("{} mismatches over {pairs} (f,d) pairs", mismatched.len()))
                .expected("0 mismatches")
                .tolerance("exact"),
            Check::new("lp.witness_verifies", "unit mass, pure high degree, correlation", unverified.is_empty())
                .measured(format!(
                    "{} failures over {pairs} pairs ({zero_opt} with optimum 0, mass and degree only)",
                    unverified.len()
                ))
                .expected("0 failures"),
        ],
    })
}

pub fn degree_sanity(_th: &Thresholds) -> SuiteResult<CriterionOutcome> {
    let and2 = BoolFn::named(Family::And { n: 2 })?;
    let deg = approx_degree(&and2, &rat(1, 3))?;
    let e1 = best_eps(&and2, 1)?;
    Ok(CriterionOutcome {
        name: "approx_degree_sanity",
        checks: vec![
            Check::new("degree.and2_third", "AND_2 needs degree 2 at error 1/3", deg == 2)
                .measured(deg)
                .expected(2),
            Check::new("degree.and2_linear_error", "best linear error for AND_2", e1 == rat(1, 2))
                .measured(format_rational(&e1))
                .expected("1/2"),
        ],
    })
}

pub fn composition(th: &Thresholds) -> SuiteResult<CriterionOutcome> {
    let mut checks = Vec::new();
    let floor = q(th.refined_floor);
    for &(m, n) in th.compositions {
        let choice = find_component_witnesses(m, n)?;
        let and = BoolFn::named(Family::And { n: m })?;
        let or = BoolFn::named(Family::Or { n })?;
        let zeta = compose(&choice.outer, &choice.inner)?;
        let r = verify_composition(&zeta, &and, &or)?;
        let facts = check_facts(&choice.outer, &choice.inner)?;
        let tag = format!("andor.M{m}_N{n}");
        checks.push(
            Check::new(format!("{tag}.l1"), "composed witness has unit mass", r.l1_ok)
                .measured(format_rational(&r.l1))
                .expected(1),
        );
        checks.push(
            Check::new(format!("{tag}.phd"), "pure high degree at least d·d'", r.phd_ok)
                .measured(r.phd)
                .expected(format!(">= {}", r.d * r.d_prime)),
        );
        let product = (r.d + 1) * (r.d_prime + 1) - 1;
        checks.push(
            Check::new(format!("{tag}.phd_product"), "pure high degree at least (d+1)(d'+1) − 1", r.phd >= product)
                .measured(r.phd)
                .expected(format!(">= {product}")),
        );
        checks.push(
            Check::new(format!("{tag}.generic"), "correlation at least ε − 4δ·bs(AND_M)", r.generic_bound_ok)
                .measured(format_rational(&r.correlation))
                .expected(format!(">= {}", format_rational(&r.generic_bound))),
        );
        let refined = r.refined_ok.unwrap_or(true);
        checks.push(
            Check::new(format!("{tag}.refined"), "correlation above 1/3 when ε − 4δ > 1/3", refined)
                .measured(format!(
                    "{} (promise {})",
                    format_rational(&r.correlation),
                    if r.refined_promise { "holds" } else { "absent" }
                ))
                .expected(format!("> {}", format_rational(&floor))),
        );
        checks.push(
            Check::new(format!("{tag}.facts"), "ψ(1_N) = (1−δ)/2 and Ψ(−1_M) = −ε/2", facts.passed())
                .measured(format!(
                    "{} , {}",
                    format_rational(&facts.inner_at_ones),
                    format_rational(&facts.outer_at_minus_ones)
                ))
                .expected(format!(
                    "{} , {}",
                    format_rational(&facts.inner_expected),
                    format_rational(&facts.outer_expected)
                )),
        );
        checks.push(
            Check::new(format!("{tag}.disagreement_mass"), "inner mass off the sign pattern is δ/2", r.disagreement_mass_ok)
                .measured(format_rational(&(&r.mass_a_plus + &r.mass_a_minus)))
                .expected(format_rational(&(&r.delta / int(2)))),
        );
    }
    Ok(CriterionOutcome {
        name: "and_or_composition",
        checks,
    })
}

pub fn flip_bound(th: &Thresholds) -> SuiteResult<CriterionOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xf11f);
    let mut fns = Vec::new();
    for m in 1..=th.flip_and_max {
        fns.push(BoolFn::named(Family::And { n: m })?);
    }
    for i in 0..th.flip_random_functions {
        let n = rng.gen_range(1..=th.flip_random_max_arity);
        fns.push(random_fn(&mut rng, n, format!("random{n}_{i}"))?);
    }
    let (mut cases, mut worst, mut violations) = (0usize, 0f64, 0usize);
    for f in &fns {
        for z in 0..1usize << f.arity() {
            for &a in th.flip_alphas {
                let r = flip_probability_bound(f, z, &q(a))?;
                cases += 1;
                if !r.holds {
                    violations += 1;
                }
                if !r.bound.is_zero() {
                    worst = worst.max(rational_to_f64(&(&r.probability / &r.bound)));
                }
            }
        }
    }
    Ok(CriterionOutcome {
        name: "noise_flip_bound",
        checks: vec![Check::new("flip.bound", "flip probability at most 2α·bs_z(F)", violations == 0)
            .measured(format!("{violations} violations in {cases} cases, max ratio {worst:.6}"))
            .expected("0 violations")],
    })
}

fn ratio(q: &UnivariateDual, f: &SymmetricProfile) -> SuiteResult<BigRational> {
    Ok(q.correlation(f)? / q.l1())
}

pub fn symmetric(th: &Thresholds) -> SuiteResult<CriterionOutcome> {
    let mut checks = Vec::new();

    let maj_bound = q(th.maj_ratio);
    let mut pairs: Vec<(usize, usize)> = (4..=th.maj_center_max_n).map(|n| (n, n.div_ceil(2))).collect();
    for n in 2..=th.maj_all_t_max_n {
        pairs.extend((1..=n / 2).map(|t| (n, t)));
    }
    pairs.sort_unstable();
    pairs.dedup();
    let (mut worst, mut bad) = (None::<BigRational>, Vec::new());
    for &(n, t) in &pairs {
        let (w, rep) = maj_dual(n, t)?;
        let r = ratio(&w, &SymmetricProfile::threshold(n, t)?)?;
        if r <= maj_bound || !rep.passed() {
            bad.push(format!("({n},{t})"));
        }
        if worst.as_ref().is_none_or(|x| r < *x) {
            worst = Some(r);
        }
    }
    checks.push(
        Check::new("sym.maj_ratio", "majority-type witness ratio above 3/13", bad.is_empty())
            .measured(format!(
                "min {:.6} over {} pairs, {} failing",
                rational_to_f64(&worst.unwrap_or_else(BigRational::zero)),
                pairs.len(),
                bad.len()
            ))
            .expected(format!("> {}", format_rational(&maj_bound))),
    );

    let (gen_bound, tail_bound) = (q(th.general_ratio), q(th.general_tail));
    let (mut worst, mut worst_tail, mut bad, mut count) = (None::<BigRational>, BigRational::zero(), Vec::new(), 0);
    for n in 8..=th.general_max_n {
        for t in 2..=n / 4 {
            count += 1;
            match general_sym_dual(n, t) {
                Ok((w, rep)) => {
                    let r = ratio(&w, &SymmetricProfile::threshold(n, t)?)?;
                    if r < gen_bound || rep.tail > tail_bound || !rep.passed() {
                        bad.push(format!("({n},{t})"));
                    }
                    if rep.tail > worst_tail {
                        worst_tail = rep.tail.clone();
                    }
                    if worst.as_ref().is_none_or(|x| r < *x) {
                        worst = Some(r);
                    }
                }
                Err(_) => bad.push(format!("({n},{t}) not built")),
            }
        }
    }
    checks.push(
        Check::new("sym.general_ratio", "general witness ratio at least 1/14", bad.is_empty())
            .measured(format!(
                "min {:.6} over {count} pairs, {} failing",
                rational_to_f64(&worst.unwrap_or_else(BigRational::zero)),
                bad.len()
            ))
            .expected(format!(">= {}", format_rational(&gen_bound))),
    );
    checks.push(
        Check::new("sym.general_tail", "tail mass at most 2/5", worst_tail <= tail_bound)
            .measured(format!("max {}", format_rational(&worst_tail)))
            .expected(format!("<= {}", format_rational(&tail_bound))),
    );

    let sp_bound = q(th.spalek_ratio);
    let (mut worst, mut bad) = (None::<BigRational>, 0);
    for n in 4..=th.spalek_max_n {
        let (w, rep) = spalek_or_dual(n)?;
        let r = ratio(&w, &SymmetricProfile::threshold(n, 1)?)?;
        if r < sp_bound || !rep.mass_identity_ok || !rep.or_correlation_identity_ok {
            bad += 1;
        }
        if worst.as_ref().is_none_or(|x| r < *x) {
            worst = Some(r);
        }
    }
    checks.push(
        Check::new("sym.or_ratio", "square-support OR witness ratio at least 1/14", bad == 0)
            .measured(format!("min {:.6}, {bad} failing", rational_to_f64(&worst.unwrap_or_else(BigRational::zero))))
            .expected(format!(">= {}", format_rational(&sp_bound))),
    );

    let (mut compared, mut disagree) = (0, 0);
    for n in 4..=th.lift_max_n {
        let mut ws = vec![spalek_or_dual(n)?.0];
        for t in 1..n {
            ws.push(maj_dual(n, t)?.0);
        }
        for t in 2..=n / 4 {
            ws.push(general_sym_dual(n, t)?.0);
        }
        for w in ws {
            let f = SymmetricProfile::threshold(n, w.provenance.t)?;
            let r = verify_sym_witness(&w, &f, support_phd(&w), &BigRational::zero())?;
            compared += 1;
            if r.phd_agree != Some(true) || !r.phd_ok {
                disagree += 1;
            }
        }
    }
    checks.push(
        Check::new("sym.phd_lift", "structural and cube pure high degree agree", disagree == 0)
            .measured(format!("{disagree} disagreements in {compared} witnesses"))
            .expected("0"),
    );
    Ok(CriterionOutcome {
        name: "symmetric_witnesses",
        checks,
    })
}

pub fn markov(th: &Thresholds) -> SuiteResult<CriterionOutcome> {
    let p = th.markov_precision;
    let sum_tol = ApFloat::pow2(th.dual_sum_tol_exp, p);
    let mut checks = Vec::new();

    for (label, kind_ns) in [
        ("at_zero", (3..=th.at_zero_max_n).step_by(2).collect::<Vec<_>>()),
        ("at_one", (2..=th.at_one_max_n).collect::<Vec<_>>()),
    ] {
        let (mut sum_bad, mut res_bad, mut worst_sum, mut worst_res) = (Vec::new(), Vec::new(), ApFloat::from_int(0, p), ApFloat::from_int(0, p));
        for &n in &kind_ns {
            let c = if label == "at_zero" {
                certificate_at_zero::<ApFloat>(n, p)?
            } else {
                certificate_at_one::<ApFloat>(n, p)?
            };
            let target = ApFloat::from_rational(&c.expected_dual, p);
            let err = (c.dual_value.clone() - target).abs();
            if !(err < sum_tol) || !c.positive_ok {
                sum_bad.push(n);
            }
            if err > worst_sum {
                worst_sum = err;
            }
            let n2 = ApFloat::from_int((n * n) as i64, p);
            let rel = c.residual.clone() / n2.clone();
            if !(c.residual < ApFloat::pow2(th.residual_tol_exp, p) * n2) {
                res_bad.push(n);
            }
            if rel > worst_res {
                worst_res = rel;
            }
        }
        let expected_sum = if label == "at_zero" { "n" } else { "n^2" };
        checks.push(
            Check::new(format!("markov.{label}.dual_value"), format!("explicit dual sums to {expected_sum}, entries positive"), sum_bad.is_empty())
                .measured(format!("max |Σy − {expected_sum}| {} , failing n {:?}", log2_text(&worst_sum), sum_bad))
                .expected(expected_sum)
                .tolerance(format!("2^{}", th.dual_sum_tol_exp)),
        );
        checks.push(
            Check::new(format!("markov.{label}.residual"), "explicit dual solves the node system", res_bad.is_empty())
                .measured(format!(
                    "max residual/n^2 {} , failing n {}",
                    log2_text(&worst_res),
                    compress(&res_bad)
                ))
                .expected("0")
                .tolerance(format!("2^{} * n^2 at {p} bits", th.residual_tol_exp)),
        );
    }

    let hp = th.higher_precision;
    let htol = ApFloat::pow2(th.higher_sum_tol_exp, hp);
    let (mut bad, mut symbolic_bad, mut worst, mut count) = (Vec::new(), 0, ApFloat::from_int(0, hp), 0);
    for n in 1..=th.higher_max_n {
        for k in 1..=n {
            count += 1;
            let exact = chebyshev_deriv_at_one(n, k)?;
            if exact != chebyshev_deriv_at_one_closed_form(n, k) {
                symbolic_bad += 1;
            }
            let c = higher_certificate::<ApFloat>(n, k, hp)?;
            let err = (c.dual_value.clone() - ApFloat::from_rational(&exact, hp)).abs();
            let positive = c.y.iter().all(|v| *v > ApFloat::from_int(0, hp));
            if !(err < htol) || !positive || !c.passed() {
                bad.push(format!("({n},{k})"));
            }
            if err > worst {
                worst = err;
            }
        }
    }
    checks.push(
        Check::new("markov.higher.dual_value", "positive dual summing to the k-th Chebyshev derivative at 1", bad.is_empty())
            .measured(format!("max |Σy − T_n^(k)(1)| {} over {count} (n,k), {} failing", log2_text(&worst), bad.len()))
            .expected("T_n^(k)(1)")
            .tolerance(format!("2^{} at {hp} bits", th.higher_sum_tol_exp)),
    );
    checks.push(
        Check::new("markov.higher.symbolic", "recurrence derivative matches the product formula", symbolic_bad == 0)
            .measured(format!("{symbolic_bad} mismatches"))
            .expected("0"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x7a4d);
    let (mut runs, mut fails) = (0, 0);
    for m in 1..=th.vandermonde_max_m {
        for _ in 0..th.vandermonde_trials {
            let mut pts: Vec<BigRational> = Vec::new();
            while pts.len() < m {
                let x = rat(rng.gen_range(-30..=30), rng.gen_range(1..=7));
                if !pts.contains(&x) {
                    pts.push(x);
                }
            }
            for k in 0..=m {
                runs += 1;
                if !vandermonde_skip_check(&pts, k)?.holds {
                    fails += 1;
                }
            }
        }
    }
    checks.push(
        Check::new("markov.vandermonde", "skip-row determinant is e_(m−k) times the Vandermonde", fails == 0)
            .measured(format!("{fails} failures in {runs} cases"))
            .expected("0"),
    );
    Ok(CriterionOutcome {
        name: "markov_certificates",
        checks,
    })
}

/// `[3, 4, 5, 9]` as `3-5, 9`.
fn compress(ns: &[usize]) -> String {
    if ns.is_empty() {
        return "none".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut start = ns[0];
    let mut prev = ns[0];
    for &n in &ns[1..] {
        if n != prev + 1 {
            parts.push(if start == prev { start.to_string() } else { format!("{start}-{prev}") });
            start = n;
        }
        prev = n;
    }
    parts.push(if start == prev { start.to_string() } else { format!("{start}-{prev}") });
    parts.join(", ")
}

pub fn trig(th: &Thresholds) -> SuiteResult<CriterionOutcome> {
    let r = trig_identity_suite::<ApFloat>(th.trig_max_n, th.trig_precision, th.trig_tol_exp);
    let checks = r
        .identities
        .iter()
        .map(|id| {
            Check::new(format!("trig.{}", id.name), "trigonometric sum identity", id.passed())
                .measured(format!("{} cases, {} failing, worst 2^{:.2}", id.cases, id.failures, id.worst_log2_error))
                .expected("lhs = rhs")
                .tolerance(format!("2^{} relative at {} bits", th.trig_tol_exp, th.trig_precision))
        })
        .collect();
    Ok(CriterionOutcome {
        name: "trig_identities",
        checks,
    })
}

/// Every criterion that can be judged within one process, in order.
pub fn run_suite(scale: Scale) -> SuiteResult<Vec<CriterionOutcome>> {
    let th = scale.thresholds();
    Ok(vec![
        lp_duality(&th)?,
        degree_sanity(&th)?,
        composition(&th)?,
        flip_bound(&th)?,
        symmetric(&th)?,
        markov(&th)?,
        trig(&th)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compress_ranges() {
        assert_eq!(compress(&[3, 4, 5, 9]), "3-5, 9");
        assert_eq!(compress(&[]), "none");
        assert_eq!(compress(&[7]), "7");
    }

    #[test]
    fn all_functions_count() {
        assert_eq!(all_fns(2).unwrap().len(), 16);
    }

    #[test]
    fn quick_scale_is_smaller() {
        assert!(QUICK.trig_max_n < THRESHOLDS.trig_max_n);
        assert_eq!(QUICK.maj_ratio, THRESHOLDS.maj_ratio);
    }
}
