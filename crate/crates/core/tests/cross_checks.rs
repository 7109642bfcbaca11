//! Explicit witnesses checked against the LP optimum and against each other.

use dualdeg_core::andor::{compose, find_component_witnesses, verify_composition};
use dualdeg_core::boolfn::{BoolFn, Family, SymmetricProfile};
use dualdeg_core::dualcore::{best_eps, verify_witness, DualWitness};
use dualdeg_core::markov::{certificate_at_one, certificate_at_zero, higher_certificate};
use dualdeg_core::numeric::int;
use dualdeg_core::symdual::{general_sym_dual, maj_dual, spalek_or_dual, support_phd, UnivariateDual};
use dualdeg_core::{ApFloat, BigRational};

fn sym_witnesses(n: usize) -> Vec<UnivariateDual> {
    let mut out = vec![spalek_or_dual(n).unwrap().0];
    out.extend((1..n).map(|t| maj_dual(n, t).unwrap().0));
    out.extend((2..=n / 4).map(|t| general_sym_dual(n, t).unwrap().0));
    out
}

#[test]
fn explicit_symmetric_witnesses_never_beat_the_lp() {
    for n in 4..=6 {
        for w in sym_witnesses(n) {
            let t = w.provenance.t;
            let profile = SymmetricProfile::threshold(n, t).unwrap();
            let f = BoolFn::from_profile(&profile).unwrap();
            let ratio = w.correlation(&profile).unwrap() / w.l1();
            let lifted = w.lift().unwrap();
            // the cube correlation of the normalized lift is the weighted ratio
            assert_eq!(lifted.correlation(&f).unwrap(), ratio, "n={n} t={t}");
            let d = support_phd(&w);
            if d < 0 || d as usize >= n {
                continue;
            }
            let d = d as usize;
            let opt = best_eps(&f, d).unwrap();
            assert!(opt >= ratio, "n={n} t={t} d={d}: lp {opt} < witness {ratio}");
            let cube = DualWitness {
                phi: lifted,
                claimed_phd: d as i64,
                claimed_correlation: ratio.clone(),
                target: f.name().to_string(),
            };
            let r = verify_witness(&cube, &f, d, &(&ratio / int(2))).unwrap();
            assert!(r.passed(), "n={n} t={t}: {r:?}");
        }
    }
}

#[test]
fn composed_witness_is_dominated_by_the_composed_lp() {
    let choice = find_component_witnesses(2, 2).unwrap();
    let z = compose(&choice.outer, &choice.inner).unwrap();
    let and = BoolFn::named(Family::And { n: 2 }).unwrap();
    let or = BoolFn::named(Family::Or { n: 2 }).unwrap();
    let r = verify_composition(&z, &and, &or).unwrap();
    assert!(r.passed());
    let target = BoolFn::named(Family::AndOr { m: 2, n: 2 }).unwrap();
    let opt = best_eps(&target, r.phd as usize).unwrap();
    assert!(opt >= r.correlation);
}

#[test]
fn machine_and_multiprecision_certificates_agree() {
    for n in [3usize, 7, 15] {
        let hi = certificate_at_zero::<ApFloat>(n, 256).unwrap();
        let lo = certificate_at_zero::<f64>(n, ()).unwrap();
        assert!((hi.dual_value.to_f64() - lo.dual_value).abs() < 1e-12);
        for (a, b) in hi.y.iter().zip(&lo.y) {
            assert!((a.to_f64() - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
    let lo = certificate_at_one::<f32>(8, ()).unwrap();
    assert!((lo.dual_value - 64.0).abs() < 1e-3);
}

#[test]
fn consecutive_higher_duals_step_by_the_recurrence_factor() {
    // T_n^(k+1)(1) / T_n^(k)(1) = (n^2 - k^2) / (2k + 1)
    let n = 9i64;
    let mut prev: Option<BigRational> = None;
    for k in 1..=n {
        let c = higher_certificate::<ApFloat>(n as usize, k as usize, 384).unwrap();
        assert!(c.passed());
        if let Some(p) = prev {
            let j = k - 1;
            let step = BigRational::new((n * n - j * j).into(), (2 * j + 1).into());
            assert_eq!(&c.expected_dual / &p, step, "k={k}");
        }
        prev = Some(c.expected_dual);
    }
}
