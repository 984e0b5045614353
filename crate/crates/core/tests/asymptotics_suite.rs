//! Randomized behavior of the asymptotic layer: soundness chains, exponent
//! curve shape, phase transitions and power-universal verification.

mod common;

use rand::Rng;
use submaj_core::asymptotics::{
    asymptotic_geq, power_universal_exponent, rate_target_box, strict_certificate,
    strong_converse_exponent, GridOptions,
};
use submaj_core::boxes::ScalarBox;
use submaj_core::submaj::check_submajorization;

fn opts() -> GridOptions {
    GridOptions {
        points: 96,
        refine: true,
    }
}

#[test]
fn preorder_is_reflexive_and_transitive_on_scalar_boxes() {
    let mut rng = common::rng(60);
    for _ in 0..10 {
        let vals = |rng: &mut rand_chacha::ChaCha8Rng| {
            ScalarBox::new(vec![
                0.2 + rng.random::<f64>(),
                0.2 + rng.random::<f64>(),
                0.2 + rng.random::<f64>(),
            ])
            .unwrap()
            .to_box()
        };
        let a = vals(&mut rng);
        let b = vals(&mut rng);
        let c = vals(&mut rng);
        assert!(asymptotic_geq(&a, &a, 0.0, &opts()).unwrap().holds);
        let ab = asymptotic_geq(&a, &b, 0.0, &opts()).unwrap().holds;
        let bc = asymptotic_geq(&b, &c, 0.0, &opts()).unwrap().holds;
        if ab && bc {
            assert!(asymptotic_geq(&a, &c, 1e-12, &opts()).unwrap().holds);
        }
    }
}

#[test]
fn strictness_implies_nonstrict_decision() {
    let mut rng = common::rng(61);
    for _ in 0..8 {
        let a = common::random_box(&mut rng, 2, 2);
        let shrunk = submaj_core::StateBox::new(
            a.rhos().iter().map(|r| r.scale(0.5)).collect(),
            a.sigma().clone(),
        )
        .unwrap();
        let cert = strict_certificate(&a, &shrunk, 1e-9, &opts()).unwrap();
        assert!(cert.all_strict);
        assert!(asymptotic_geq(&a, &shrunk, 1e-9, &opts()).unwrap().holds);
    }
}

#[test]
fn exponent_curve_is_monotone_and_convex_in_r() {
    let mut rng = common::rng(62);
    let b = common::random_normalized_box(&mut rng, 2, 2);
    let rs: Vec<f64> = (0..9).map(|k| 0.25 * k as f64).collect();
    let values: Vec<f64> = rs
        .iter()
        .map(|&r| strong_converse_exponent(&b, r, &opts()).unwrap().value)
        .collect();
    for w in values.windows(2) {
        assert!(w[1] >= w[0] - 1e-9, "not monotone: {values:?}");
    }
    for w in values.windows(3) {
        // Midpoint convexity on the uniform r-grid.
        assert!(w[0] + w[2] >= 2.0 * w[1] - 1e-7, "not convex: {values:?}");
    }
}

#[test]
fn phase_transition_at_strong_converse_exponent() {
    let mut rng = common::rng(63);
    for _ in 0..3 {
        let b = common::random_normalized_box(&mut rng, 1, 2);
        let r = 0.75;
        let r_star = strong_converse_exponent(&b, r, &opts()).unwrap().value;
        // Bisection on R around the predicted transition.
        let decision = |big_r: f64| {
            asymptotic_geq(&b, &rate_target_box(1, big_r, r), 1e-9, &opts())
                .unwrap()
                .holds
        };
        let mut lo = 0.0;
        let mut hi = r_star + 0.5;
        assert!(decision(hi), "upper end must hold");
        if decision(lo) {
            // Transition at 0; r_star must be 0 too.
            assert!(r_star < 2e-3);
            continue;
        }
        for _ in 0..30 {
            let mid = 0.5 * (lo + hi);
            if decision(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!(
            (hi - r_star).abs() < 2e-3,
            "transition at {hi}, exponent {r_star}"
        );
    }
}

#[test]
fn power_universal_exponent_certified_by_sdp() {
    let mut rng = common::rng(64);
    for trial in 0..4 {
        let m = 1 + trial % 2;
        let a = common::random_box(&mut rng, m, 2);
        let exp = power_universal_exponent(&a).unwrap();
        let u_k = ScalarBox::power_universal(m).pow(exp.k).to_box();
        let res = check_submajorization(&u_k, &a, 1e-7).unwrap();
        assert!(
            res.feasible,
            "u^k does not dominate the box, slack {}",
            res.slack
        );
        let amplified = u_k.mul(&a).unwrap();
        let res = check_submajorization(&amplified, &submaj_core::StateBox::unit(m), 1e-7).unwrap();
        assert!(
            res.feasible,
            "u^k · box does not dominate 1, slack {}",
            res.slack
        );
    }
}
