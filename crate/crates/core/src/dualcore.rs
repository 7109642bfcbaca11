//! Approximate degree by linear programming, optimal dual witnesses, and the
//! three-condition witness check.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::boolfn::{BoolFn, SymmetricProfile};
use crate::error::{guard, precondition, Error, Result};
use crate::fourier::{character, pure_high_degree, uniform_weight, CubeFn};
use crate::lp::{Bound, Direction, LinearProgram, Sense};
use crate::numeric::{format_rational, int, parse_rational, serde_rational, BigRational};

/// Largest arity for the LPs over the whole cube.
pub const FULL_LP_MAX_ARITY: usize = 10;

pub type RealCubeFn = CubeFn<BigRational>;

/// Signed measure certifying `deg_ε(f) > d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualWitness {
    pub phi: RealCubeFn,
    pub claimed_phd: i64,
    pub claimed_correlation: BigRational,
    pub target: String,
}

fn check_full_arity(n: usize) -> Result<()> {
    if n > FULL_LP_MAX_ARITY {
        return Err(guard(format!("cube LP at arity {n}"), FULL_LP_MAX_ARITY as u64));
    }
    Ok(())
}

/// Subsets of `[n]` with at most `d` elements, in mask order.
fn low_sets(n: usize, d: usize) -> Vec<usize> {
    (0..1usize << n).filter(|s| s.count_ones() as usize <= d).collect()
}

fn sign_q(v: i8) -> BigRational {
    int(v as i64)
}

/// `min ε` over polynomials of degree `≤ d`, written in `e = ε − 1` so every
/// row is `≤` with right-hand side `1 ± f(x) ≥ 0` and the slack basis starts
/// feasible. Variables are `(c_S ..., e)`; the optimum is `1 + objective`.
pub fn primal_lp(f: &BoolFn, d: usize) -> Result<LinearProgram> {
    let n = f.arity();
    check_full_arity(n)?;
    let sets = low_sets(n, d);
    let k = sets.len();
    let mut cost = vec![BigRational::zero(); k + 1];
    cost[k] = BigRational::one();
    let mut lp = LinearProgram::new(Direction::Min, cost);
    for x in 0..1usize << n {
        let mut row: Vec<BigRational> = sets.iter().map(|&s| int(character(s, x) as i64)).collect();
        row.push(int(-1));
        let fx = f.eval(x) as i64;
        lp.add_constraint(row.clone(), Sense::Le, int(1 + fx))?;
        row.iter_mut().take(k).for_each(|v| *v = -v.clone());
        lp.add_constraint(row, Sense::Le, int(1 - fx))?;
    }
    Ok(lp)
}

/// `max Σ f·(φ⁺ − φ⁻)` with `Σ(φ⁺ + φ⁻) = 1` and `φ⁺ − φ⁻ ⟂ χ_S` for `|S| ≤ d`.
/// Variables are `φ⁺(0..2^n)` then `φ⁻(0..2^n)`.
pub fn dual_lp(f: &BoolFn, d: usize) -> Result<LinearProgram> {
    let n = f.arity();
    check_full_arity(n)?;
    let size = 1usize << n;
    let cost: Vec<BigRational> = (0..2 * size)
        .map(|v| {
            let s = sign_q(f.eval(v % size));
            if v < size {
                s
            } else {
                -s
            }
        })
        .collect();
    let mut lp = LinearProgram::new(Direction::Max, cost);
    for v in 0..2 * size {
        lp.set_bound(v, Bound::NonNeg)?;
    }
    lp.add_constraint(vec![BigRational::one(); 2 * size], Sense::Eq, BigRational::one())?;
    for s in low_sets(n, d) {
        let row = (0..2 * size)
            .map(|v| {
                let c = int(character(s, v % size) as i64);
                if v < size {
                    c
                } else {
                    -c
                }
            })
            .collect();
        lp.add_constraint(row, Sense::Eq, BigRational::zero())?;
    }
    Ok(lp)
}

/// Reduced primal over weight classes: `min ε` with `|q(w) − F(w)| ≤ ε` for a
/// univariate `q` of degree `≤ d`, variables `(a_0..a_d, ε)`.
pub fn symmetric_primal_lp(profile: &SymmetricProfile, d: usize) -> Result<LinearProgram> {
    let n = profile.arity();
    let mut cost = vec![BigRational::zero(); d + 2];
    cost[d + 1] = BigRational::one();
    let mut lp = LinearProgram::new(Direction::Min, cost);
    for w in 0..=n {
        let mut row: Vec<BigRational> = (0..=d as u32).map(|k| int(w as i64).pow(k as i32)).collect();
        row.push(int(-1));
        let fw = sign_q(profile.at(w));
        lp.add_constraint(row.clone(), Sense::Le, fw.clone())?;
        row[d + 1] = int(1);
        lp.add_constraint(row, Sense::Ge, fw)?;
    }
    Ok(lp)
}

fn check_degree(n: usize, d: usize) -> Result<()> {
    if d > n {
        return precondition(format!("degree {d} exceeds arity {n}"));
    }
    Ok(())
}

/// Exact best uniform error of a degree-`d` approximation on the cube.
pub fn best_eps_full(f: &BoolFn, d: usize) -> Result<BigRational> {
    check_degree(f.arity(), d)?;
    Ok(primal_lp(f, d)?.solve()?.into_optimal()?.objective + BigRational::one())
}

/// Same quantity for a symmetric function via its weight profile; symmetrizing
/// an optimal approximant shows the two agree.
pub fn best_eps_symmetric(profile: &SymmetricProfile, d: usize) -> Result<BigRational> {
    check_degree(profile.arity(), d)?;
    Ok(symmetric_primal_lp(profile, d)?.solve()?.into_optimal()?.objective)
}

/// Dispatches to the reduced program for symmetric `f` above the full-LP arity.
pub fn best_eps(f: &BoolFn, d: usize) -> Result<BigRational> {
    if f.arity() > FULL_LP_MAX_ARITY {
        if let Some(p) = f.to_profile() {
            return best_eps_symmetric(&p, d);
        }
    }
    best_eps_full(f, d)
}

/// Smallest `d` with `best_eps(f, d) ≤ ε`, ascending from zero.
pub fn approx_degree(f: &BoolFn, eps: &BigRational) -> Result<usize> {
    if eps.is_negative() || *eps >= BigRational::one() {
        return precondition("approximation error must lie in [0, 1)");
    }
    let mut prev: Option<BigRational> = None;
    for d in 0..=f.arity() {
        let e = best_eps(f, d)?;
        if let Some(p) = &prev {
            if e > *p {
                return Err(Error::Internal(format!("best error increased at degree {d}")));
            }
        }
        if e <= *eps {
            return Ok(d);
        }
        prev = Some(e);
    }
    Err(Error::Internal("full degree did not interpolate exactly".into()))
}

/// Optimal witness from the dual program, normalized to unit ℓ1 mass.
pub fn optimal_dual_witness(f: &BoolFn, d: usize) -> Result<DualWitness> {
    let n = f.arity();
    if d >= n {
        return precondition(format!("no dual witness at degree {d} >= arity {n}: every function has exact degree <= n"));
    }
    let sol = dual_lp(f, d)?.solve()?.into_optimal()?;
    let size = 1usize << n;
    let net: Vec<BigRational> = (0..size).map(|x| &sol.primal[x] - &sol.primal[x + size]).collect();
    let mut phi = CubeFn::new(n, net)?;
    if phi.is_zero() {
        // optimum is 0; the top character carries no low-degree mass
        phi = CubeFn::from_fn(n, |x| int(character(size - 1, x) as i64) * uniform_weight(n))?;
    } else {
        let l1 = phi.l1_norm();
        if l1 != BigRational::one() {
            phi = phi.scale(&l1.recip());
        }
    }
    let claimed_correlation = phi.correlation(f)?;
    if claimed_correlation < sol.objective {
        return Err(Error::Internal("normalized witness lost correlation".into()));
    }
    Ok(DualWitness {
        phi,
        claimed_phd: d as i64,
        claimed_correlation,
        target: f.name().to_string(),
    })
}

/// Measured quantities of a witness against the three conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    #[serde(with = "serde_rational")]
    pub correlation: BigRational,
    #[serde(with = "serde_rational")]
    pub eps: BigRational,
    #[serde(with = "serde_rational")]
    pub l1: BigRational,
    pub phd: Option<i64>,
    pub degree: usize,
    pub correlation_ok: bool,
    pub l1_ok: bool,
    pub phd_ok: bool,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.correlation_ok && self.l1_ok && self.phd_ok
    }
}

/// Correlation `> ε`, ℓ1 mass exactly one, pure high degree at least `d`.
pub fn verify_witness(w: &DualWitness, f: &BoolFn, d: usize, eps: &BigRational) -> Result<WitnessReport> {
    let correlation = w.phi.correlation(f)?;
    let l1 = w.phi.l1_norm();
    let phd = if w.phi.is_zero() {
        None
    } else {
        Some(pure_high_degree(&w.phi)?)
    };
    Ok(WitnessReport {
        correlation_ok: correlation > *eps,
        l1_ok: l1 == BigRational::one(),
        phd_ok: phd.is_some_and(|p| p >= d as i64),
        correlation,
        eps: eps.clone(),
        l1,
        phd,
        degree: d,
    })
}

impl DualWitness {
    /// Header lines `n=`, `d=`, `eps=` then `index value` for nonzero entries.
    pub fn to_file_string(&self) -> String {
        let mut out = format!(
            "n={}\nd={}\neps={}\n",
            self.phi.arity(),
            self.claimed_phd,
            format_rational(&self.claimed_correlation)
        );
        for (i, v) in self.phi.values().iter().enumerate() {
            if !v.is_zero() {
                let _ = writeln!(out, "{i} {}", format_rational(v));
            }
        }
        out
    }

    pub fn parse_file(text: &str, target: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut header = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing {key}")))?;
            line.strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("expected {key}=, found {line:?}")))
        };
        let n: usize = header("n")?.parse().map_err(|_| Error::Parse("bad n".into()))?;
        let d: i64 = header("d")?.parse().map_err(|_| Error::Parse("bad d".into()))?;
        let eps = parse_rational(&header("eps")?)?;
        if n > FULL_LP_MAX_ARITY * 2 {
            return Err(guard(format!("witness of arity {n}"), (FULL_LP_MAX_ARITY * 2) as u64));
        }
        let mut values = vec![BigRational::zero(); 1 << n];
        for line in lines {
            let (i, v) = line
                .split_once(' ')
                .ok_or_else(|| Error::Parse(format!("bad witness line {line:?}")))?;
            let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad index {i:?}")))?;
            let slot = values
                .get_mut(i)
                .ok_or_else(|| Error::Parse(format!("index {i} out of range")))?;
            *slot = parse_rational(v)?;
        }
        Ok(DualWitness {
            phi: CubeFn::new(n, values)?,
            claimed_phd: d,
            claimed_correlation: eps,
            target: target.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::Family;
    use crate::numeric::rat;
    use proptest::prelude::*;

    fn named(f: Family) -> BoolFn {
        BoolFn::named(f).unwrap()
    }

    /// Minimax error of `a + b·(x1 + x2)` against AND_2, scanning b on a fine
    /// grid and solving for a in closed form. Symmetrization makes this the
    /// whole degree-1 family.
    fn and2_minimax_grid() -> BigRational {
        let mut best: Option<BigRational> = None;
        for bn in -40..=40 {
            let b = rat(bn, 40);
            // values at weights 0, 1, 2 with targets 1, 1, -1
            let vals = [&b * int(2), BigRational::zero(), &b * int(-2)];
            let targets = [int(1), int(1), int(-1)];
            let diffs: Vec<BigRational> = targets.iter().zip(&vals).map(|(t, v)| t - v).collect();
            let hi = diffs.iter().max().unwrap();
            let lo = diffs.iter().min().unwrap();
            let err = (hi - lo) / int(2);
            if best.as_ref().is_none_or(|e| err < *e) {
                best = Some(err);
            }
        }
        best.unwrap()
    }

    #[test]
    fn and2_degree_one() {
        let and2 = named(Family::And { n: 2 });
        assert_eq!(best_eps(&and2, 1).unwrap(), rat(1, 2));
        assert_eq!(and2_minimax_grid(), rat(1, 2));
        assert_eq!(approx_degree(&and2, &rat(1, 3)).unwrap(), 2);
    }

    #[test]
    fn trivial_degrees() {
        let or1 = named(Family::Or { n: 1 });
        assert_eq!(best_eps(&or1, 0).unwrap(), int(1));
        for n in 1..5 {
            let p = named(Family::Parity { n });
            assert_eq!(best_eps(&p, n).unwrap(), int(0));
            assert_eq!(approx_degree(&p, &rat(99, 100)).unwrap(), n);
        }
    }

    #[test]
    fn or2_witness_at_degree_zero() {
        let or2 = named(Family::Or { n: 2 });
        let w = optimal_dual_witness(&or2, 0).unwrap();
        assert_eq!(w.claimed_correlation, int(1));
        assert!(pure_high_degree(&w.phi).unwrap() >= 0);
        assert_eq!(w.phi.l1_norm(), int(1));
        let and2 = named(Family::And { n: 2 });
        assert_eq!(optimal_dual_witness(&and2, 1).unwrap().claimed_correlation, rat(1, 2));
        assert!(optimal_dual_witness(&and2, 2).is_err());
    }

    #[test]
    fn verifier_catches_bad_witnesses() {
        let and2 = named(Family::And { n: 2 });
        let w = optimal_dual_witness(&and2, 1).unwrap();
        let eps = best_eps(&and2, 1).unwrap() - rat(1, 1000);
        assert!(verify_witness(&w, &and2, 1, &eps).unwrap().passed());

        let uniform = DualWitness {
            phi: RealCubeFn::from_boolfn(&and2).scale(&uniform_weight(2)),
            claimed_phd: 1,
            claimed_correlation: int(1),
            target: "AND_2".into(),
        };
        let r = verify_witness(&uniform, &and2, 1, &eps).unwrap();
        assert!(!r.phd_ok && r.l1_ok);

        let halved = DualWitness {
            phi: w.phi.scale(&rat(1, 2)),
            ..w.clone()
        };
        assert!(!verify_witness(&halved, &and2, 1, &rat(1, 5)).unwrap().l1_ok);
    }

    #[test]
    fn witness_file_roundtrip() {
        let f = named(Family::Maj { n: 3 });
        let w = optimal_dual_witness(&f, 1).unwrap();
        let back = DualWitness::parse_file(&w.to_file_string(), f.name()).unwrap();
        assert_eq!(back, w);
        assert!(DualWitness::parse_file("n=2\nd=0\neps=1\n9 1/2\n", "x").is_err());
    }

    #[test]
    fn reduced_lp_matches_full_lp() {
        for n in 1..=5 {
            for t in 1..=n {
                let p = SymmetricProfile::threshold(n, t).unwrap();
                let f = BoolFn::from_profile(&p).unwrap();
                for d in 0..=n {
                    assert_eq!(best_eps_symmetric(&p, d).unwrap(), best_eps_full(&f, d).unwrap(), "n={n} t={t} d={d}");
                }
            }
        }
    }

    #[test]
    fn large_symmetric_uses_reduced_program() {
        let or = named(Family::Or { n: 12 });
        let e = best_eps(&or, 2).unwrap();
        assert!(e > int(0) && e < int(1));
        let non_sym = BoolFn::from_fn(11, "x", |i| i % 3 == 0).unwrap();
        assert!(matches!(best_eps(&non_sym, 1), Err(Error::GuardExceeded { .. })));
    }

    fn random_fn(n: usize) -> impl Strategy<Value = BoolFn> {
        any::<u64>().prop_map(move |bits| BoolFn::from_fn(n, "rand", |i| bits >> i & 1 == 1).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn strong_duality(f in (1usize..5).prop_flat_map(random_fn)) {
            let mut prev: Option<BigRational> = None;
            for d in 0..f.arity() {
                let e = best_eps(&f, d).unwrap();
                let w = optimal_dual_witness(&f, d).unwrap();
                prop_assert_eq!(&w.claimed_correlation, &e);
                prop_assert_eq!(w.phi.l1_norm(), int(1));
                prop_assert!(pure_high_degree(&w.phi).unwrap() >= d as i64);
                if let Some(p) = prev {
                    prop_assert!(e <= p);
                }
                prev = Some(e);
            }
        }

        #[test]
        fn duality_characterizes_degree(f in (1usize..4).prop_flat_map(random_fn), num in 0i64..20) {
            let eps = rat(num, 20);
            let deg = approx_degree(&f, &eps).unwrap();
            for d in 0..f.arity() {
                let w = optimal_dual_witness(&f, d).unwrap();
                let ok = verify_witness(&w, &f, d, &eps).unwrap().passed();
                prop_assert_eq!(deg > d, ok);
            }
        }

        #[test]
        fn negated_inputs_same_error(f in (1usize..4).prop_flat_map(random_fn)) {
            let size = 1usize << f.arity();
            let g = BoolFn::from_fn(f.arity(), "neg", |i| f.eval(i ^ (size - 1)) == -1).unwrap();
            for d in 0..=f.arity() {
                prop_assert_eq!(best_eps(&f, d).unwrap(), best_eps(&g, d).unwrap());
            }
        }

        #[test]
        fn degree_monotone_in_eps(f in (1usize..5).prop_flat_map(random_fn)) {
            let mut prev = usize::MAX;
            for num in 0..10 {
                let deg = approx_degree(&f, &rat(num, 10)).unwrap();
                prop_assert!(deg <= prev);
                prev = deg;
            }
        }
    }
}
