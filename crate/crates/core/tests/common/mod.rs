//! Seeded random generators shared by the integration suites.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use submaj_core::boxes::StateBox;
use submaj_core::hermat::HermitianMatrix;
use submaj_core::hypotest::Test;
use submaj_core::submaj::ChoiMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ginibre(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> HermitianMatrix {
    let g = ginibre(rng, dim);
    HermitianMatrix::from_complex((&g + g.adjoint()) * Complex64::new(0.5, 0.0), 1e-9).unwrap()
}

/// PSD with operator norm of order one.
pub fn random_psd(rng: &mut ChaCha8Rng, dim: usize) -> HermitianMatrix {
    let g = ginibre(rng, dim);
    HermitianMatrix::from_complex(
        &g * g.adjoint() * Complex64::new(1.0 / dim as f64, 0.0),
        1e-9,
    )
    .unwrap()
}

/// Unit-trace PSD (a density matrix), full rank almost surely.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> HermitianMatrix {
    let p = random_psd(rng, dim);
    p.scale(1.0 / p.trace())
}

/// Strictly positive definite unit-trace matrix with a spectral floor.
pub fn random_sigma(rng: &mut ChaCha8Rng, dim: usize) -> HermitianMatrix {
    let base = random_density(rng, dim)
        .add(&HermitianMatrix::identity(dim).scale(0.05))
        .unwrap();
    base.scale(1.0 / base.trace())
}

/// General (unnormalized) box with component traces in [0.3, 2].
pub fn random_box(rng: &mut ChaCha8Rng, m: usize, dim: usize) -> StateBox {
    let rhos = (0..m)
        .map(|_| {
            let trace = 0.3 + 1.7 * rng.random::<f64>();
            let p = random_psd(rng, dim);
            p.scale(trace / p.trace())
        })
        .collect();
    let sigma_trace = 0.3 + 1.7 * rng.random::<f64>();
    let sigma = random_sigma(rng, dim).scale(sigma_trace);
    StateBox::new(rhos, sigma).unwrap()
}

/// Normalized box (every component unit trace).
pub fn random_normalized_box(rng: &mut ChaCha8Rng, m: usize, dim: usize) -> StateBox {
    let rhos = (0..m).map(|_| random_density(rng, dim)).collect();
    StateBox::new(rhos, random_sigma(rng, dim)).unwrap()
}

/// Diagonal (classical) box with entries bounded away from zero on σ.
pub fn random_classical_box(rng: &mut ChaCha8Rng, m: usize, dim: usize) -> StateBox {
    let rhos = (0..m)
        .map(|_| {
            let d: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
            HermitianMatrix::diagonal(&d)
        })
        .collect();
    let q: Vec<f64> = (0..dim)
        .map(|_| 0.05 + 0.95 * rng.random::<f64>())
        .collect();
    StateBox::new(rhos, HermitianMatrix::diagonal(&q)).unwrap()
}

/// Choi matrix of a random channel (CPTP), Ginibre-induced.
pub fn random_cptp(rng: &mut ChaCha8Rng, dim_in: usize, dim_out: usize) -> ChoiMatrix {
    let d = dim_in * dim_out;
    let g = ginibre(rng, d);
    let j0 = HermitianMatrix::from_complex(&g * g.adjoint(), 1e-9).unwrap();
    let s = j0
        .partial_trace((dim_in, dim_out), submaj_core::Keep::First)
        .unwrap();
    let correction = s
        .mat_power(-0.5)
        .unwrap()
        .tensor(&HermitianMatrix::identity(dim_out));
    let j = HermitianMatrix::from_complex(
        correction.as_matrix() * j0.as_matrix() * correction.as_matrix(),
        1e-7,
    )
    .unwrap();
    ChoiMatrix::new(dim_in, dim_out, j).unwrap()
}

/// Choi matrix of a strictly trace-decreasing CP map.
pub fn random_cptni(rng: &mut ChaCha8Rng, dim_in: usize, dim_out: usize) -> ChoiMatrix {
    let gamma = 0.3 + 0.6 * rng.random::<f64>();
    let j = random_cptp(rng, dim_in, dim_out);
    ChoiMatrix::new(dim_in, dim_out, j.matrix().scale(gamma)).unwrap()
}

/// Random test operator with spectrum in [0, 1].
pub fn random_test(rng: &mut ChaCha8Rng, dim: usize) -> Test {
    let h = random_hermitian(rng, dim);
    let (_, vectors) = h.eigh();
    let mut data = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..dim {
        let col = vectors.column(k);
        data += (col * col.adjoint()) * Complex64::new(rng.random::<f64>(), 0.0);
    }
    Test::new(HermitianMatrix::from_complex(data, 1e-9).unwrap()).unwrap()
}
