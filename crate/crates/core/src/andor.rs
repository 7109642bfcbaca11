//! Block composition of dual witnesses: an outer witness for `F` on `M` bits
//! and an inner witness for `f` on `N` bits give a witness for `F(f, ..., f)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::boolfn::{BoolFn, Family};
use crate::dualcore::{best_eps, optimal_dual_witness, DualWitness, RealCubeFn};
use crate::error::{guard, precondition, Error, Result};
use crate::fourier::{pure_high_degree, CubeFn};
use crate::numeric::{int, rat, serde_rational, BigRational};

/// `M·N` above this is refused.
pub const COMPOSE_MAX_BITS: usize = 20;
/// Exact enumeration of the noise distribution refuses larger arities.
pub const FLIP_MAX_ARITY: usize = 10;

/// Component witnesses chosen for a composition, with their parameters.
#[derive(Debug, Clone)]
pub struct ComponentChoice {
    pub outer: DualWitness,
    pub inner: DualWitness,
    pub eps: BigRational,
    pub delta: BigRational,
    pub d: usize,
    pub d_prime: usize,
    /// Set when no positive inner degree met the `δ` requirement.
    pub inner_degree_fallback: bool,
}

/// Searches `d < M` for AND_M and `d' < N` for OR_N, keeping pairs with
/// `ε > 1/3` and `δ < (ε − 1/3)/4`, and maximizes `(d·d', d, d')`.
pub fn find_component_witnesses(m: usize, n: usize) -> Result<ComponentChoice> {
    if m == 0 || n == 0 {
        return precondition("block counts must be positive");
    }
    let and = BoolFn::named(Family::And { n: m })?;
    let or = BoolFn::named(Family::Or { n })?;
    let third = rat(1, 3);
    let outer_eps: Vec<BigRational> = (0..m).map(|d| best_eps(&and, d)).collect::<Result<_>>()?;
    let inner_delta: Vec<BigRational> = (0..n)
        .map(|d| best_eps(&or, d).map(|e| BigRational::one() - e))
        .collect::<Result<_>>()?;
    let mut best: Option<(usize, usize)> = None;
    for (d, eps) in outer_eps.iter().enumerate() {
        if *eps <= third {
            continue;
        }
        let limit = (eps - &third) / int(4);
        for (dp, delta) in inner_delta.iter().enumerate() {
            if *delta >= limit {
                continue;
            }
            let key = (d * dp, d, dp);
            if best.is_none_or(|(bd, bdp)| key > (bd * bdp, bd, bdp)) {
                best = Some((d, dp));
            }
        }
    }
    let (d, d_prime) = best.ok_or_else(|| Error::Precondition(format!("no admissible pair for AND_{m}, OR_{n}")))?;
    let outer = optimal_dual_witness(&and, d)?;
    let inner = optimal_dual_witness(&or, d_prime)?;
    Ok(ComponentChoice {
        eps: outer.claimed_correlation.clone(),
        delta: BigRational::one() - &inner.claimed_correlation,
        outer,
        inner,
        d,
        d_prime,
        inner_degree_fallback: d_prime == 0 && n > 1,
    })
}

#[derive(Debug, Clone)]
pub struct ComposedWitness {
    pub zeta: RealCubeFn,
    pub outer: DualWitness,
    pub inner: DualWitness,
    pub m: usize,
    pub n: usize,
}

/// `sgñ`: `-1` for negative values, `+1` otherwise (zero included).
fn sgn_is_negative(v: &BigRational) -> bool {
    v.is_negative()
}

/// `ζ(x_1..x_M) = 2^M Ψ(sgñ ψ(x_1), ..., sgñ ψ(x_M)) Π |ψ(x_i)|`, block `i`
/// occupying bits `i·N .. i·N + N − 1`.
pub fn compose(outer: &DualWitness, inner: &DualWitness) -> Result<ComposedWitness> {
    let (m, n) = (outer.phi.arity(), inner.phi.arity());
    if m * n > COMPOSE_MAX_BITS {
        return Err(guard(format!("composition on {} bits", m * n), COMPOSE_MAX_BITS as u64));
    }
    let inner_sum = inner.phi.values().iter().fold(BigRational::zero(), |a, v| a + v);
    if !inner_sum.is_zero() {
        return precondition("inner witness must be orthogonal to constants");
    }
    let mask = (1usize << n) - 1;
    let scale = BigRational::from_integer(BigInt::one() << m);
    let psi = inner.phi.values();
    let abs: Vec<BigRational> = psi.iter().map(|v| v.abs()).collect();
    let zeta = CubeFn::from_fn(m * n, |x| {
        let mut z = 0usize;
        let mut weight = scale.clone();
        for i in 0..m {
            let sub = x >> (i * n) & mask;
            if abs[sub].is_zero() {
                return BigRational::zero();
            }
            if sgn_is_negative(&psi[sub]) {
                z |= 1 << i;
            }
            weight *= &abs[sub];
        }
        weight * outer.phi.at(z)
    })?;
    if zeta.l1_norm() != BigRational::one() {
        return Err(Error::Internal("composed witness lost unit mass".into()));
    }
    Ok(ComposedWitness {
        zeta,
        outer: outer.clone(),
        inner: inner.clone(),
        m,
        n,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositionReport {
    #[serde(with = "serde_rational")]
    pub correlation: BigRational,
    #[serde(with = "serde_rational")]
    pub l1: BigRational,
    pub phd: i64,
    pub d: i64,
    pub d_prime: i64,
    #[serde(with = "serde_rational")]
    pub eps: BigRational,
    #[serde(with = "serde_rational")]
    pub delta: BigRational,
    pub outer_block_sensitivity: usize,
    /// `ε − 4δ·bs(F)`.
    #[serde(with = "serde_rational")]
    pub generic_bound: BigRational,
    /// Inner mass where `sgñ ψ` disagrees with `f`: `ψ ≥ 0, f = −1` and `ψ < 0, f = 1`.
    #[serde(with = "serde_rational")]
    pub mass_a_plus: BigRational,
    #[serde(with = "serde_rational")]
    pub mass_a_minus: BigRational,
    pub a_minus_empty: bool,
    /// `ε − 4δ > 1/3` for an AND outer and OR inner function.
    pub refined_promise: bool,
    pub l1_ok: bool,
    pub phd_ok: bool,
    pub generic_bound_ok: bool,
    pub disagreement_mass_ok: bool,
    /// `None` when the refined bound does not apply.
    pub refined_ok: Option<bool>,
}

impl CompositionReport {
    pub fn passed(&self) -> bool {
        self.l1_ok && self.phd_ok && self.generic_bound_ok && self.disagreement_mass_ok && self.refined_ok != Some(false)
    }
}

/// Exact correlation with `F(f, ..., f)`, mass, pure high degree and the
/// correlation lower bounds.
pub fn verify_composition(c: &ComposedWitness, outer_fn: &BoolFn, inner_fn: &BoolFn) -> Result<CompositionReport> {
    if outer_fn.arity() != c.m {
        return Err(Error::ArityMismatch {
            expected: c.m,
            found: outer_fn.arity(),
        });
    }
    if inner_fn.arity() != c.n {
        return Err(Error::ArityMismatch {
            expected: c.n,
            found: inner_fn.arity(),
        });
    }
    let target = BoolFn::compose(outer_fn, inner_fn)?;
    let correlation = c.zeta.correlation(&target)?;
    let l1 = c.zeta.l1_norm();
    let phd = pure_high_degree(&c.zeta)?;
    let eps = c.outer.phi.correlation(outer_fn)?;
    let delta = BigRational::one() - c.inner.phi.correlation(inner_fn)?;
    let bs = outer_fn.block_sensitivity()?;
    let generic_bound = &eps - &delta * int(4 * bs as i64);
    let (mut mass_a_plus, mut mass_a_minus) = (BigRational::zero(), BigRational::zero());
    let mut a_minus_empty = true;
    for (x, v) in c.inner.phi.values().iter().enumerate() {
        match (sgn_is_negative(v), inner_fn.eval(x)) {
            (false, -1) => mass_a_plus += v.abs(),
            (true, 1) => {
                mass_a_minus += v.abs();
                a_minus_empty = false;
            }
            _ => {}
        }
    }
    let is_and_or = outer_fn.table() == BoolFn::named(Family::And { n: c.m })?.table()
        && inner_fn.table() == BoolFn::named(Family::Or { n: c.n })?.table();
    let third = rat(1, 3);
    let refined_promise = is_and_or && &eps - &delta * int(4) > third;
    let refined_ok = refined_promise.then(|| correlation > third);
    let (d, d_prime) = (c.outer.claimed_phd, c.inner.claimed_phd);
    Ok(CompositionReport {
        l1_ok: l1 == BigRational::one(),
        phd_ok: phd >= d * d_prime,
        generic_bound_ok: correlation >= generic_bound,
        disagreement_mass_ok: &mass_a_plus + &mass_a_minus == &delta / int(2),
        refined_ok,
        refined_promise,
        correlation,
        l1,
        phd,
        d,
        d_prime,
        eps,
        delta,
        outer_block_sensitivity: bs,
        generic_bound,
        mass_a_plus,
        mass_a_minus,
        a_minus_empty,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactsReport {
    #[serde(with = "serde_rational")]
    pub inner_at_ones: BigRational,
    #[serde(with = "serde_rational")]
    pub inner_expected: BigRational,
    #[serde(with = "serde_rational")]
    pub outer_at_minus_ones: BigRational,
    #[serde(with = "serde_rational")]
    pub outer_expected: BigRational,
    pub inner_mean_zero: bool,
    pub outer_mean_zero: bool,
}

impl FactsReport {
    pub fn passed(&self) -> bool {
        self.inner_at_ones == self.inner_expected
            && self.outer_at_minus_ones == self.outer_expected
            && self.inner_mean_zero
            && self.outer_mean_zero
    }
}

/// For an AND_M witness `Ψ` and OR_N witness `ψ`, both orthogonal to constants:
/// `ψ(1_N) = (1 − δ)/2` and `Ψ(−1_M) = −ε/2`.
pub fn check_facts(outer: &DualWitness, inner: &DualWitness) -> Result<FactsReport> {
    let (m, n) = (outer.phi.arity(), inner.phi.arity());
    let and = BoolFn::named(Family::And { n: m })?;
    let or = BoolFn::named(Family::Or { n })?;
    let eps = outer.phi.correlation(&and)?;
    let one_minus_delta = inner.phi.correlation(&or)?;
    let mean_zero = |w: &DualWitness| -> Result<bool> { Ok(pure_high_degree(&w.phi)? >= 0) };
    Ok(FactsReport {
        inner_at_ones: inner.phi.at(0).clone(),
        inner_expected: one_minus_delta / int(2),
        outer_at_minus_ones: outer.phi.at((1 << m) - 1).clone(),
        outer_expected: -eps / int(2),
        inner_mean_zero: mean_zero(inner)?,
        outer_mean_zero: mean_zero(outer)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlipReport {
    #[serde(with = "serde_rational")]
    pub probability: BigRational,
    #[serde(with = "serde_rational")]
    pub bound: BigRational,
    pub block_sensitivity: usize,
    pub holds: bool,
}

/// `P[F(z) ≠ F(z ⊙ y)]` when each `y_i` is `−1` independently with
/// probability `α`, summed exactly over all noise patterns, against `2α·bs_z(F)`.
pub fn flip_probability_bound(f: &BoolFn, z: usize, alpha: &BigRational) -> Result<FlipReport> {
    let n = f.arity();
    if n > FLIP_MAX_ARITY {
        return Err(guard(format!("noise enumeration at arity {n}"), FLIP_MAX_ARITY as u64));
    }
    if alpha.is_negative() || *alpha > BigRational::one() {
        return precondition("flip probability must lie in [0, 1]");
    }
    if z >= 1 << n {
        return precondition(format!("point index {z} out of range"));
    }
    let stay = BigRational::one() - alpha;
    let pow = |b: &BigRational, k: usize| (0..k).fold(BigRational::one(), |acc, _| acc * b);
    let fz = f.eval(z);
    let probability = (0..1usize << n)
        .filter(|&y| f.eval(z ^ y) != fz)
        .map(|y| {
            let k = y.count_ones() as usize;
            pow(alpha, k) * pow(&stay, n - k)
        })
        .fold(BigRational::zero(), |a, p| a + p);
    let bs = f.block_sensitivity_at(z)?;
    let bound = alpha * int(2 * bs as i64);
    Ok(FlipReport {
        holds: probability <= bound,
        probability,
        bound,
        block_sensitivity: bs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::walsh_transform;
    use proptest::prelude::*;

    #[test]
    fn two_by_two() {
        let c = find_component_witnesses(2, 2).unwrap();
        assert_eq!(c.eps, rat(1, 2));
        assert_eq!(c.d, 1);
        assert_eq!(c.d_prime, 0);
        assert!(c.inner_degree_fallback);
        assert_eq!(c.inner.phi.l1_norm(), int(1));
        let z = compose(&c.outer, &c.inner).unwrap();
        assert_eq!(z.zeta.l1_norm(), int(1));
        let and = BoolFn::named(Family::And { n: 2 }).unwrap();
        let or = BoolFn::named(Family::Or { n: 2 }).unwrap();
        let r = verify_composition(&z, &and, &or).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.correlation > rat(1, 3));
        // δ = 0: the noise vanishes and the correlation is exactly ε
        assert_eq!(r.delta, int(0));
        assert_eq!(r.correlation, r.eps);
    }

    #[test]
    fn facts_for_small_witnesses() {
        let c = find_component_witnesses(2, 2).unwrap();
        let f = check_facts(&c.outer, &c.inner).unwrap();
        assert!(f.passed());
        assert_eq!(f.inner_at_ones, rat(1, 2));
        assert_eq!(f.outer_at_minus_ones, rat(-1, 4));
    }

    #[test]
    fn single_block_reproduces_inner() {
        let and1 = BoolFn::named(Family::And { n: 1 }).unwrap();
        let or = BoolFn::named(Family::Or { n: 3 }).unwrap();
        let outer = optimal_dual_witness(&and1, 0).unwrap();
        let inner = optimal_dual_witness(&or, 1).unwrap();
        let z = compose(&outer, &inner).unwrap();
        assert_eq!(z.zeta, inner.phi);
        let r = verify_composition(&z, &and1, &or).unwrap();
        assert_eq!(r.correlation, inner.claimed_correlation);
    }

    #[test]
    fn composition_guards() {
        let c = find_component_witnesses(2, 2).unwrap();
        let mut lopsided = c.inner.clone();
        lopsided.phi = CubeFn::new(2, vec![int(1), int(0), int(0), int(0)]).unwrap();
        assert!(matches!(compose(&c.outer, &lopsided), Err(Error::Precondition(_))));
    }

    #[test]
    fn or_witnesses_are_one_sided() {
        for n in 1..=4 {
            let or = BoolFn::named(Family::Or { n }).unwrap();
            for d in 0..n {
                let w = optimal_dual_witness(&or, d).unwrap();
                for (x, v) in w.phi.values().iter().enumerate() {
                    if v.is_negative() {
                        assert_eq!(or.eval(x), -1);
                    }
                }
            }
        }
    }

    #[test]
    fn spectrum_lives_above_product_degree() {
        let c = find_component_witnesses(2, 3).unwrap();
        let z = compose(&c.outer, &c.inner).unwrap();
        let lowest = walsh_transform(&z.zeta)
            .nonzero()
            .iter()
            .map(|(s, _)| s.count_ones() as usize)
            .min()
            .unwrap();
        assert!(lowest >= (c.d + 1) * (c.d_prime + 1));
    }

    #[test]
    fn flip_examples() {
        let and3 = BoolFn::named(Family::And { n: 3 }).unwrap();
        for z in 0..7 {
            let r = flip_probability_bound(&and3, z, &rat(1, 8)).unwrap();
            assert!(r.holds && r.bound == rat(1, 4));
            assert!(flip_probability_bound(&and3, z, &int(0)).unwrap().probability.is_zero());
        }
        assert!(flip_probability_bound(&and3, 0, &rat(3, 2)).is_err());
    }

    /// Monte-Carlo-free oracle: recursive expectation over one bit at a time.
    fn flip_recursive(f: &BoolFn, z: usize, alpha: &BigRational, i: usize, y: usize) -> BigRational {
        if i == f.arity() {
            return if f.eval(z) != f.eval(z ^ y) { int(1) } else { int(0) };
        }
        let stay = BigRational::one() - alpha;
        stay * flip_recursive(f, z, alpha, i + 1, y) + alpha * flip_recursive(f, z, alpha, i + 1, y | 1 << i)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn flip_bound_random(n in 1usize..6, bits in any::<u64>(), z in any::<usize>(), k in 0u32..4) {
            let f = BoolFn::from_fn(n, "r", |i| bits >> i & 1 == 1).unwrap();
            let z = z % (1 << n);
            let alpha = rat(1, 2i64 << k);
            let r = flip_probability_bound(&f, z, &alpha).unwrap();
            prop_assert!(r.holds);
            prop_assert_eq!(r.probability, flip_recursive(&f, z, &alpha, 0, 0));
        }
    }
}
