//! Independent oracles for the linear algebra kernel: a second eigensolver
//! (shifted QR iteration coded from scratch), functional-calculus roundtrips
//! and brute-force checks of the pinching inequality.

mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use submaj_core::hermat::{psd_leq, HermitianMatrix, Keep};
use submaj_core::submaj::ChoiMatrix;

/// Eigenvalues of a Hermitian matrix via shifted QR iteration with
/// deflation — deliberately independent of the implementation path used by
/// the library (Householder tridiagonalization inside nalgebra).
fn qr_iteration_eigenvalues(mat: &DMatrix<Complex64>) -> Vec<f64> {
    let scale = mat.iter().map(|c| c.norm()).fold(1e-300, f64::max);
    let mut a = mat.clone();
    let mut eigs = Vec::new();
    while a.nrows() > 1 {
        let n = a.nrows();
        for _ in 0..2000 {
            let off: f64 = (0..n - 1).map(|j| a[(n - 1, j)].norm()).sum();
            if off < 1e-14 * scale {
                break;
            }
            // Wilkinson shift from the trailing 2×2 block.
            let t_a = a[(n - 2, n - 2)].re;
            let t_c = a[(n - 1, n - 1)].re;
            let t_b = a[(n - 1, n - 2)].norm();
            let delta = (t_a - t_c) / 2.0;
            let denom = delta.abs() + (delta * delta + t_b * t_b).sqrt();
            let shift = if denom == 0.0 {
                t_c
            } else {
                t_c - delta.signum() * t_b * t_b / denom
            };
            let shift_c = Complex64::new(shift, 0.0);
            let shifted = &a - DMatrix::identity(n, n) * shift_c;
            let qr = shifted.qr();
            a = qr.r() * qr.q() + DMatrix::identity(n, n) * shift_c;
        }
        eigs.push(a[(n - 1, n - 1)].re);
        a = a.view((0, 0), (n - 1, n - 1)).into_owned();
    }
    if a.nrows() == 1 {
        eigs.push(a[(0, 0)].re);
    }
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigs
}

#[test]
fn eigenvalues_match_independent_qr_solver() {
    let mut rng = common::rng(11);
    for dim in [2, 3, 4, 5] {
        for _ in 0..20 {
            let m = common::random_hermitian(&mut rng, dim);
            let ours = m.eigenvalues();
            let oracle = qr_iteration_eigenvalues(m.as_matrix());
            let scale = m.op_norm().max(1.0);
            for (a, b) in ours.iter().zip(&oracle) {
                assert!(
                    (a - b).abs() < 1e-9 * scale,
                    "dim {dim}: {ours:?} vs {oracle:?}"
                );
            }
        }
    }
}

#[test]
fn spectral_reconstruction_residual() {
    let mut rng = common::rng(12);
    for _ in 0..20 {
        let m = common::random_hermitian(&mut rng, 4);
        let spec = m.eig_decompose(m.default_multiplicity_tol());
        let residual = spec.reconstruct().sub(&m).unwrap().max_abs();
        assert!(
            residual < 1e-9 * m.op_norm().max(1.0),
            "residual {residual}"
        );
    }
}

#[test]
fn projectors_resolve_identity_and_are_orthogonal() {
    let mut rng = common::rng(13);
    for _ in 0..10 {
        let m = common::random_hermitian(&mut rng, 5);
        let spec = m.eig_decompose(m.default_multiplicity_tol());
        let mut sum = HermitianMatrix::zeros(5);
        for p in &spec.projectors {
            // Idempotent within 1e-10.
            let p2 = HermitianMatrix::from_complex(p.as_matrix() * p.as_matrix(), 1e-8).unwrap();
            assert!(p2.sub(p).unwrap().max_abs() < 1e-10);
            sum = sum.add(p).unwrap();
        }
        assert!(sum.sub(&HermitianMatrix::identity(5)).unwrap().max_abs() < 1e-10);
        for (k, p) in spec.projectors.iter().enumerate() {
            for q in &spec.projectors[k + 1..] {
                let prod = p.as_matrix() * q.as_matrix();
                assert!(prod.iter().map(|c| c.norm()).fold(0.0, f64::max) < 1e-10);
            }
        }
    }
}

#[test]
fn mat_power_cube_root_roundtrip() {
    let mut rng = common::rng(14);
    for _ in 0..20 {
        let m = common::random_psd(&mut rng, 4);
        let back = m.mat_power(1.0 / 3.0).unwrap();
        let cubed = HermitianMatrix::from_complex(
            back.as_matrix() * back.as_matrix() * back.as_matrix(),
            1e-8,
        )
        .unwrap();
        assert!(cubed.sub(&m).unwrap().max_abs() < 1e-9 * m.op_norm().max(1.0));
    }
}

#[test]
fn mat_power_composition_law() {
    let mut rng = common::rng(15);
    for _ in 0..10 {
        let m = common::random_psd(&mut rng, 4);
        for (p, q) in [(0.5, 3.0), (2.0, -0.5), (1.0 / 3.0, 1.5)] {
            let lhs = m.mat_power(p).unwrap().mat_power(q).unwrap();
            let rhs = m.mat_power(p * q).unwrap();
            assert!(
                lhs.sub(&rhs).unwrap().max_abs() < 1e-8 * rhs.op_norm().max(1.0),
                "p {p} q {q}"
            );
        }
    }
}

#[test]
fn tensor_trace_identity() {
    let mut rng = common::rng(16);
    for _ in 0..10 {
        let a = common::random_hermitian(&mut rng, 3);
        let b = common::random_hermitian(&mut rng, 2);
        let prod = a.tensor(&b);
        assert!((prod.trace() - a.trace() * b.trace()).abs() < 1e-10);
        let sum = a.direct_sum(&b);
        assert!((sum.trace() - a.trace() - b.trace()).abs() < 1e-12);
    }
}

#[test]
fn partial_trace_preserves_trace() {
    let mut rng = common::rng(17);
    for _ in 0..10 {
        let m = common::random_hermitian(&mut rng, 6);
        for keep in [Keep::First, Keep::Second] {
            let pt = m.partial_trace((2, 3), keep).unwrap();
            assert!((pt.trace() - m.trace()).abs() < 1e-10);
        }
    }
}

#[test]
fn pinching_inequality_brute_force() {
    let mut rng = common::rng(18);
    for _ in 0..20 {
        let a = common::random_hermitian(&mut rng, 2);
        let x = common::random_psd(&mut rng, 2);
        let pinched = a.pinching(&x).unwrap();
        let spec_size = a.eig_decompose(a.default_multiplicity_tol()).len() as f64;
        // |spectrum(A)|·P_A(X) ⪰ X, checked by eigenvalues of the difference.
        assert!(psd_leq(&x, &pinched.scale(spec_size), 1e-8).unwrap());
        // Output commutes with A and preserves trace.
        assert!(a.commutator_max_norm(&pinched).unwrap() < 1e-9);
        assert!((pinched.trace() - x.trace()).abs() < 1e-10);
    }
}

#[test]
fn pinching_is_a_channel() {
    let mut rng = common::rng(19);
    let a = common::random_hermitian(&mut rng, 3);
    let choi = ChoiMatrix::from_hermitian_action(3, 3, |x| a.pinching(x)).unwrap();
    // Complete positivity: the Choi matrix is PSD (within 1e-8).
    assert!(choi.matrix().min_eigenvalue() > -1e-8);
    // Trace preservation: Tr_out J = I within 1e-10.
    let tr = choi.output_trace_operator();
    assert!(tr.sub(&HermitianMatrix::identity(3)).unwrap().max_abs() < 1e-10);
}

#[test]
fn op_norm_and_trace_spectral_oracle() {
    let mut rng = common::rng(20);
    for _ in 0..10 {
        let m = common::random_hermitian(&mut rng, 4);
        let eigs = qr_iteration_eigenvalues(m.as_matrix());
        let sum: f64 = eigs.iter().sum();
        let max_abs = eigs.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
        assert!((m.trace() - sum).abs() < 1e-10 * m.op_norm().max(1.0));
        assert!((m.op_norm() - max_abs).abs() < 1e-10 * max_abs.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// psd_leq is reflexive and transitive at tol = 0 on exactly
    /// representable diagonal matrices.
    #[test]
    fn psd_order_reflexive_transitive(
        a in proptest::collection::vec(-8i32..8, 3),
        inc1 in proptest::collection::vec(0i32..4, 3),
        inc2 in proptest::collection::vec(0i32..4, 3),
    ) {
        let to_mat = |v: &[i32]| HermitianMatrix::diagonal(&v.iter().map(|&x| x as f64).collect::<Vec<_>>());
        let ma = to_mat(&a);
        let b: Vec<i32> = a.iter().zip(&inc1).map(|(x, d)| x + d).collect();
        let c: Vec<i32> = b.iter().zip(&inc2).map(|(x, d)| x + d).collect();
        let mb = to_mat(&b);
        let mc = to_mat(&c);
        prop_assert!(psd_leq(&ma, &ma, 0.0).unwrap());
        prop_assert!(psd_leq(&ma, &mb, 0.0).unwrap());
        prop_assert!(psd_leq(&mb, &mc, 0.0).unwrap());
        prop_assert!(psd_leq(&ma, &mc, 0.0).unwrap());
    }

    /// Serialization of matrices roundtrips bit-exactly through JSON.
    #[test]
    fn matrix_json_roundtrip(seed in 0u64..1000) {
        let mut rng = common::rng(seed);
        let m = common::random_hermitian(&mut rng, 3);
        let text = serde_json::to_string(&m).unwrap();
        let back: HermitianMatrix = serde_json::from_str(&text).unwrap();
        prop_assert!(back.sub(&m).unwrap().max_abs() < 1e-12);
    }
}
