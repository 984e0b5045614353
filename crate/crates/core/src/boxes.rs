//! The box semiring: tuples `(ρ₁, …, ρ_m, σ)` of PSD operators with σ
//! positive definite, added by direct sum and multiplied by tensor product.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hermat::{psd_tolerance, HermitianMatrix};

/// Relative floor under which σ counts as singular and the box is rejected.
pub const SIGMA_PD_REL: f64 = 1e-12;

/// An `(m+1)`-tuple of positive operators on one space.
///
/// Invariants enforced at construction: all components share the dimension,
/// every ρ is PSD within tolerance, and σ is strictly positive definite. The
/// zero-dimensional box is the semiring zero and carries no components.
#[derive(Debug, Clone, PartialEq)]
pub struct StateBox {
    m: usize,
    dim: usize,
    rhos: Vec<HermitianMatrix>,
    sigma: HermitianMatrix,
}

impl StateBox {
    pub fn new(rhos: Vec<HermitianMatrix>, sigma: HermitianMatrix) -> Result<Self> {
        if rhos.is_empty() {
            return Err(Error::InvalidArgument(
                "a box needs at least one rho".into(),
            ));
        }
        let dim = sigma.dim();
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "use StateBox::zero for the zero-dimensional box".into(),
            ));
        }
        for rho in &rhos {
            if rho.dim() != dim {
                return Err(Error::DimMismatch(format!(
                    "rho dim {} vs sigma dim {}",
                    rho.dim(),
                    dim
                )));
            }
            let min_eig = rho.min_eigenvalue();
            let tol = psd_tolerance(rho.op_norm());
            if min_eig < -tol {
                return Err(Error::NotPsd { min_eig, tol });
            }
        }
        let sigma_min = sigma.min_eigenvalue();
        if sigma_min <= SIGMA_PD_REL * sigma.op_norm().max(1.0) {
            return Err(Error::SigmaNotPd { min_eig: sigma_min });
        }
        Ok(Self {
            m: rhos.len(),
            dim,
            rhos,
            sigma,
        })
    }

    /// The semiring zero: the unique box on the zero-dimensional space.
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            dim: 0,
            rhos: vec![HermitianMatrix::zero_dim(); m],
            sigma: HermitianMatrix::zero_dim(),
        }
    }

    /// The semiring unit `(1, …, 1)` on the one-dimensional space.
    pub fn unit(m: usize) -> Self {
        ScalarBox::new(vec![1.0; m + 1])
            .expect("unit box is valid")
            .to_box()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn rhos(&self) -> &[HermitianMatrix] {
        &self.rhos
    }

    /// The `i`th null component, 1-based to match the monotone index convention.
    pub fn rho(&self, i: usize) -> Result<&HermitianMatrix> {
        if i == 0 || i > self.m {
            return Err(Error::InvalidArgument(format!(
                "index i = {} out of range 1..={}",
                i, self.m
            )));
        }
        Ok(&self.rhos[i - 1])
    }

    pub fn sigma(&self) -> &HermitianMatrix {
        &self.sigma
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ArityMismatch(self.m, other.m));
        }
        Ok(())
    }

    /// Componentwise direct sum; dimensions add.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let rhos = self
            .rhos
            .iter()
            .zip(&other.rhos)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::new(rhos, self.sigma.direct_sum(&other.sigma))
    }

    /// Componentwise tensor product; dimensions multiply.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.m));
        }
        let rhos = self
            .rhos
            .iter()
            .zip(&other.rhos)
            .map(|(a, b)| a.tensor(b))
            .collect();
        Self::new(rhos, self.sigma.tensor(&other.sigma))
    }

    /// `n`-fold tensor power; `n = 0` gives the unit box.
    pub fn pow(&self, n: usize) -> Result<Self> {
        let mut out = Self::unit(self.m);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `true` iff all pairs of components commute within `tol` (max entry
    /// norm of the commutators).
    pub fn is_classical(&self, tol: f64) -> bool {
        if self.is_zero() {
            return true;
        }
        let mut all: Vec<&HermitianMatrix> = self.rhos.iter().collect();
        all.push(&self.sigma);
        for (k, a) in all.iter().enumerate() {
            for b in &all[k + 1..] {
                if a.commutator_max_norm(b).expect("equal dims") > tol {
                    return false;
                }
            }
        }
        true
    }

    /// `true` iff every component has unit trace within `tol`.
    pub fn normalize_check(&self, tol: f64) -> bool {
        if self.is_zero() {
            return false;
        }
        self.rhos
            .iter()
            .chain(std::iter::once(&self.sigma))
            .all(|c| (c.trace() - 1.0).abs() <= tol)
    }

    /// Diagonal vectors `(p₁, …, p_m, q)` of a classical box.
    ///
    /// Callers are expected to have checked [`is_classical`](Self::is_classical);
    /// off-diagonal entries are dropped.
    pub fn diagonals(&self) -> (Vec<Vec<f64>>, Vec<f64>) {
        let diag = |mat: &HermitianMatrix| -> Vec<f64> {
            (0..mat.dim()).map(|k| mat.entry(k, k).re).collect()
        };
        (self.rhos.iter().map(diag).collect(), diag(&self.sigma))
    }
}

/// A box on the one-dimensional space: `m + 1` nonnegative numbers with the
/// σ entry strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarBox {
    values: Vec<f64>,
}

impl ScalarBox {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument(
                "a scalar box needs m >= 1 rho values plus sigma".into(),
            ));
        }
        if values[..values.len() - 1].iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidArgument(
                "rho values must be nonnegative".into(),
            ));
        }
        let sigma = *values.last().expect("nonempty");
        if sigma <= 0.0 {
            return Err(Error::SigmaNotPd { min_eig: sigma });
        }
        Ok(Self { values })
    }

    /// The power universal element `u = (2, 2, …, 2, 1)`.
    pub fn power_universal(m: usize) -> Self {
        let mut values = vec![2.0; m];
        values.push(1.0);
        Self { values }
    }

    /// Uniform target `(2^{-rate}, …, 2^{-rate}, 2^{-sigma_rate})` used for
    /// exponent thresholds.
    pub fn rate_target(m: usize, rate: f64, sigma_rate: f64) -> Self {
        let mut values = vec![(-rate).exp2(); m];
        values.push((-sigma_rate).exp2());
        Self { values }
    }

    pub fn m(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `k`-fold multiplicative power.
    pub fn pow(&self, k: u32) -> Self {
        Self {
            values: self.values.iter().map(|v| v.powi(k as i32)).collect(),
        }
    }

    pub fn to_box(&self) -> StateBox {
        let rhos = self.values[..self.values.len() - 1]
            .iter()
            .map(|&v| HermitianMatrix::scalar(v))
            .collect();
        let sigma = HermitianMatrix::scalar(*self.values.last().expect("nonempty"));
        StateBox::new(rhos, sigma).expect("scalar box entries already validated")
    }
}

#[derive(Serialize, Deserialize)]
struct BoxJson {
    m: usize,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhos: Option<Vec<HermitianMatrix>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<HermitianMatrix>,
}

impl Serialize for StateBox {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = if self.is_zero() {
            BoxJson {
                m: self.m,
                dim: 0,
                rhos: None,
                sigma: None,
            }
        } else {
            BoxJson {
                m: self.m,
                dim: self.dim,
                rhos: Some(self.rhos.clone()),
                sigma: Some(self.sigma.clone()),
            }
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateBox {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BoxJson::deserialize(deserializer)?;
        if raw.dim == 0 {
            if raw.m == 0 {
                return Err(D::Error::custom("zero box needs m >= 1"));
            }
            return Ok(StateBox::zero(raw.m));
        }
        let rhos = raw
            .rhos
            .ok_or_else(|| D::Error::custom("box with dim > 0 needs field `rhos`"))?;
        let sigma = raw
            .sigma
            .ok_or_else(|| D::Error::custom("box with dim > 0 needs field `sigma`"))?;
        if rhos.len() != raw.m {
            return Err(D::Error::custom(format!(
                "box declares m = {} but has {} rhos",
                raw.m,
                rhos.len()
            )));
        }
        let boxed = StateBox::new(rhos, sigma).map_err(|e| D::Error::custom(e.to_string()))?;
        if boxed.dim() != raw.dim {
            return Err(D::Error::custom(format!(
                "box declares dim = {} but matrices have dim {}",
                raw.dim,
                boxed.dim()
            )));
        }
        Ok(boxed)
    }
}
