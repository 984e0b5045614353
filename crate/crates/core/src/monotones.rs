//! The complete family of monotone homomorphisms on boxes.
//!
//! For each component index `i` and order `α ∈ [1, ∞)` the real-valued
//! monotone is `f_{α,i} = Tr (σ^{(1-α)/2α} ρ_i σ^{(1-α)/2α})^α`; at `α = ∞`
//! the tropical monotone is the operator norm `‖σ^{-1/2} ρ_i σ^{-1/2}‖`.
//! On classical (commuting) boxes these reduce to `Σ_x p_x^α q_x^{1-α}` and
//! `max_x p_x / q_x`.
//!
//! Values grow like `2^{(α-1)·D}` and overflow `f64` quickly, so every
//! computation here happens on `log₂ f` (log-sum-exp over eigenvalues) and
//! the plain value is materialized only on request.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::boxes::StateBox;
use crate::error::{Error, Result};
use crate::hermat::{HermitianMatrix, SUPPORT_CUTOFF_REL};

/// Rényi order: a finite `α ≥ 1` or the tropical endpoint `α = ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Finite(f64),
    Infinity,
}

impl Alpha {
    pub fn finite(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "alpha must be finite and >= 1, got {alpha}"
            )));
        }
        Ok(Alpha::Finite(alpha))
    }

    /// Maps `s = (α-1)/α ∈ [0, 1)` back to `α`; `s = 1` is the tropical endpoint.
    pub fn from_s(s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidArgument(format!(
                "s must be in [0, 1], got {s}"
            )));
        }
        if s >= 1.0 {
            return Ok(Alpha::Infinity);
        }
        Ok(Alpha::Finite(1.0 / (1.0 - s)))
    }

    pub fn to_s(self) -> f64 {
        match self {
            Alpha::Finite(a) => (a - 1.0) / a,
            Alpha::Infinity => 1.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Alpha::Infinity)
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Alpha::Finite(a) => a,
            Alpha::Infinity => f64::INFINITY,
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Alpha::Finite(a) => serializer.serialize_f64(*a),
            Alpha::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(a) => Alpha::finite(a).map_err(|e| D::Error::custom(e.to_string())),
            Raw::Text(t) if t == "inf" => Ok(Alpha::Infinity),
            Raw::Text(t) => Err(D::Error::custom(format!("invalid alpha: {t:?}"))),
        }
    }
}

/// Which monotone: component index `i` (1-based) and order `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotoneIndex {
    pub i: usize,
    pub alpha: Alpha,
}

impl MonotoneIndex {
    pub fn new(i: usize, alpha: Alpha) -> Self {
        Self { i, alpha }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotoneKind {
    Real,
    Tropical,
}

/// A monotone evaluation; `value = 2^log2_value` and may round to `inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotoneValue {
    pub value: f64,
    pub log2_value: f64,
    pub kind: MonotoneKind,
}

fn kind_of(alpha: Alpha) -> MonotoneKind {
    if alpha.is_infinite() {
        MonotoneKind::Tropical
    } else {
        MonotoneKind::Real
    }
}

/// `log₂ Σ_k 2^{terms_k}` without overflow; empty input gives `-inf`.
fn log2_sum_exp2(terms: &[f64]) -> f64 {
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = terms.iter().map(|t| (t - max).exp2()).sum();
    max + sum.log2()
}

/// `log₂ f_{α,i}` on classical data given as vectors of diagonal weights.
pub fn log2_classical_f(ps: &[Vec<f64>], q: &[f64], idx: MonotoneIndex) -> Result<f64> {
    if idx.i == 0 || idx.i > ps.len() {
        return Err(Error::InvalidArgument(format!(
            "index i = {} out of range 1..={}",
            idx.i,
            ps.len()
        )));
    }
    let p = &ps[idx.i - 1];
    if p.len() != q.len() {
        return Err(Error::DimMismatch(format!("{} vs {}", p.len(), q.len())));
    }
    if q.iter().any(|&x| x <= 0.0) {
        return Err(Error::InvalidArgument(
            "q must be strictly positive entrywise".into(),
        ));
    }
    if p.iter().any(|&x| x < 0.0) {
        return Err(Error::InvalidArgument("p must be nonnegative".into()));
    }
    match idx.alpha {
        Alpha::Infinity => Ok(p
            .iter()
            .zip(q)
            .map(|(&px, &qx)| {
                if px > 0.0 {
                    px.log2() - qx.log2()
                } else {
                    f64::NEG_INFINITY
                }
            })
            .fold(f64::NEG_INFINITY, f64::max)),
        Alpha::Finite(alpha) => {
            let terms: Vec<f64> = p
                .iter()
                .zip(q)
                .filter(|(&px, _)| px > 0.0)
                .map(|(&px, &qx)| alpha * px.log2() + (1.0 - alpha) * qx.log2())
                .collect();
            Ok(log2_sum_exp2(&terms))
        }
    }
}

/// Classical monotone `Σ_x p_x^α q_x^{1-α}` (or the max ratio at `α = ∞`).
pub fn classical_f(ps: &[Vec<f64>], q: &[f64], idx: MonotoneIndex) -> Result<f64> {
    Ok(log2_classical_f(ps, q, idx)?.exp2())
}

/// `log₂ f̃_{α,i}` of a box. The zero box maps to 0 (`-inf` here).
pub fn log2_sandwiched_f(b: &StateBox, idx: MonotoneIndex) -> Result<f64> {
    if b.is_zero() {
        // Homomorphisms send the semiring zero to zero.
        return Ok(f64::NEG_INFINITY);
    }
    let rho = b.rho(idx.i)?;
    let sigma = b.sigma();
    match idx.alpha {
        Alpha::Infinity => {
            let sigma_inv_sqrt = sigma.mat_power(-0.5)?;
            let conj = sigma_inv_sqrt.as_matrix() * rho.as_matrix() * sigma_inv_sqrt.as_matrix();
            Ok(HermitianMatrix::symmetrized(conj).op_norm().log2())
        }
        Alpha::Finite(alpha) => {
            if alpha == 1.0 {
                // The sandwich is trivial at α = 1; f is just the trace.
                return Ok(rho.trace().log2());
            }
            let exponent = (1.0 - alpha) / (2.0 * alpha);
            let s = sigma.mat_power(exponent)?;
            let sandwiched =
                HermitianMatrix::symmetrized(s.as_matrix() * rho.as_matrix() * s.as_matrix());
            let eigs = sandwiched.eigenvalues();
            let scale = eigs.first().copied().unwrap_or(0.0).max(0.0);
            let cutoff = SUPPORT_CUTOFF_REL * scale;
            let terms: Vec<f64> = eigs
                .iter()
                .filter(|&&l| l > cutoff)
                .map(|&l| alpha * l.log2())
                .collect();
            Ok(log2_sum_exp2(&terms))
        }
    }
}

/// Sandwiched monotone `f̃_{α,i}`; agrees with [`classical_f`] on commuting boxes.
pub fn sandwiched_f(b: &StateBox, idx: MonotoneIndex) -> Result<MonotoneValue> {
    let log2_value = log2_sandwiched_f(b, idx)?;
    Ok(MonotoneValue {
        value: log2_value.exp2(),
        log2_value,
        kind: kind_of(idx.alpha),
    })
}

/// Sandwiched Rényi divergence `D̃_α(ρ_i ‖ σ)` in bits.
///
/// `α = 1` is the Umegaki relative entropy limit, computed spectrally;
/// `α = ∞` is the max-divergence. A zero ρ component reports the `+∞`
/// sentinel.
pub fn sandwiched_divergence(b: &StateBox, idx: MonotoneIndex) -> Result<f64> {
    if b.is_zero() {
        return Ok(f64::INFINITY);
    }
    let rho = b.rho(idx.i)?;
    if rho.max_abs() == 0.0 {
        return Ok(f64::INFINITY);
    }
    match idx.alpha {
        Alpha::Infinity => Ok(log2_sandwiched_f(b, idx)?),
        Alpha::Finite(alpha) => {
            if alpha == 1.0 {
                relative_entropy(rho, b.sigma())
            } else {
                Ok(log2_sandwiched_f(b, idx)? / (alpha - 1.0))
            }
        }
    }
}

/// Umegaki relative entropy `Tr ρ (log₂ ρ − log₂ σ)` on the support of ρ.
fn relative_entropy(rho: &HermitianMatrix, sigma: &HermitianMatrix) -> Result<f64> {
    let (rho_eigs, rho_vecs) = rho.eigh();
    let (sig_eigs, sig_vecs) = sigma.eigh();
    let scale = rho_eigs.first().copied().unwrap_or(0.0).max(0.0);
    let cutoff = SUPPORT_CUTOFF_REL * scale;
    let overlaps = rho_vecs.adjoint() * sig_vecs;
    let mut acc = 0.0;
    for (k, &p) in rho_eigs.iter().enumerate() {
        if p <= cutoff {
            continue;
        }
        acc += p * p.log2();
        for (l, &s) in sig_eigs.iter().enumerate() {
            let w = overlaps[(k, l)].norm_sqr();
            acc -= p * s.log2() * w;
        }
    }
    Ok(acc)
}

/// Finite-n pinched bracket around `f̃_{α,i}`.
///
/// Returns `(lower, upper)` with
/// `lower = (Tr P_{σ^{⊗n}}(ρ_i^{⊗n})^α (σ^{⊗n})^{1-α})^{1/n}` and
/// `upper = lower · |spectrum(σ^{⊗n})|^{α/n}`; the sandwiched value is
/// always inside the bracket, which tightens as n grows.
pub fn pinched_bounds(b: &StateBox, i: usize, alpha: f64, n: usize) -> Result<(f64, f64)> {
    if alpha < 1.0 || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "pinched bounds need finite alpha >= 1, got {alpha}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let total_dim = match b.dim().checked_pow(n as u32) {
        Some(d) if d <= 4096 => d,
        _ => {
            return Err(Error::DimGuard(format!(
                "dim^n = {}^{} exceeds 4096",
                b.dim(),
                n
            )))
        }
    };
    let rho_n = b.rho(i)?.tensor_pow(n);
    let sigma_n = b.sigma().tensor_pow(n);
    debug_assert_eq!(rho_n.dim(), total_dim);
    let spectrum = sigma_n.eig_decompose(sigma_n.default_multiplicity_tol());
    let spectrum_size = spectrum.len() as f64;

    // Tr P(ρⁿ)^α (σⁿ)^{1-α} splits over the spectral blocks of σⁿ: the
    // pinched operator is block diagonal, so each block contributes
    // λ^{1-α} · Σ μ^α with μ the eigenvalues of P_λ ρⁿ P_λ.
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    let mut mu_max = 0.0f64;
    for (lambda, proj) in spectrum.eigenvalues.iter().zip(&spectrum.projectors) {
        let block =
            HermitianMatrix::symmetrized(proj.as_matrix() * rho_n.as_matrix() * proj.as_matrix());
        for mu in block.eigenvalues() {
            if mu > 0.0 {
                mu_max = mu_max.max(mu);
                pairs.push((mu, *lambda));
            }
        }
    }
    let cutoff = SUPPORT_CUTOFF_REL * mu_max;
    let terms: Vec<f64> = pairs
        .iter()
        .filter(|(mu, _)| *mu > cutoff)
        .map(|(mu, lambda)| alpha * mu.log2() + (1.0 - alpha) * lambda.log2())
        .collect();
    let log2_pinched = log2_sum_exp2(&terms);
    let log2_lower = log2_pinched / n as f64;
    let log2_upper = log2_lower + alpha * spectrum_size.log2() / n as f64;
    Ok((log2_lower.exp2(), log2_upper.exp2()))
}

/// Uniform grid in `s = (α-1)/α`: `points` finite orders at `s = k/points`
/// plus the tropical endpoint.
pub fn s_grid(points: usize) -> Vec<Alpha> {
    let mut grid: Vec<Alpha> = (0..points)
        .map(|k| Alpha::from_s(k as f64 / points as f64).expect("s in [0,1)"))
        .collect();
    grid.push(Alpha::Infinity);
    grid
}
