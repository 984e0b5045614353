//! Dense Hermitian/PSD linear algebra kernel.
//!
//! Everything downstream (boxes, monotones, the SDP solver) works with
//! [`HermitianMatrix`]: a dense complex matrix that is symmetrized on
//! construction and stays exactly Hermitian from then on. Dimensions are
//! desk-scale (a few hundred at most after tensoring), so all operations are
//! dense and eigendecomposition-based.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default tolerance for conjugate-symmetry deviation at construction.
pub const DEFAULT_HERM_TOL: f64 = 1e-9;
/// Hermiticity tolerance applied when deserializing user-supplied JSON.
pub const JSON_HERM_TOL: f64 = 1e-8;
/// Relative PSD tolerance: eigenvalues above `-PSD_TOL_REL * max(1, ‖M‖)` count as nonnegative.
pub const PSD_TOL_REL: f64 = 1e-10;
/// Relative support cutoff for pseudo-inverse powers (`λ ≤ cutoff` is treated as 0).
pub const SUPPORT_CUTOFF_REL: f64 = 1e-12;
/// Relative gap below which eigenvalues are merged into one spectral projector.
pub const MULTIPLICITY_TOL_REL: f64 = 1e-10;

/// PSD tolerance scaled to the magnitude of a matrix.
pub fn psd_tolerance(op_norm: f64) -> f64 {
    PSD_TOL_REL * op_norm.max(1.0)
}

/// Which tensor factor `partial_trace` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// A dense complex Hermitian matrix.
///
/// The stored entries are exactly Hermitian: constructors symmetrize after
/// checking that the input deviates from conjugate symmetry by at most
/// `herm_tol`. The zero-dimensional matrix is allowed and behaves as the
/// neutral element for the direct sum.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    dim: usize,
    herm_tol: f64,
    data: DMatrix<Complex64>,
}

impl PartialEq for HermitianMatrix {
    /// Entrywise equality; `herm_tol` is construction metadata and ignored.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.data == other.data
    }
}

impl HermitianMatrix {
    /// The unique matrix on the zero-dimensional space.
    pub fn zero_dim() -> Self {
        Self {
            dim: 0,
            herm_tol: DEFAULT_HERM_TOL,
            data: DMatrix::zeros(0, 0),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            herm_tol: DEFAULT_HERM_TOL,
            data: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            herm_tol: DEFAULT_HERM_TOL,
            data: DMatrix::identity(dim, dim),
        }
    }

    /// 1×1 matrix holding a single real value.
    pub fn scalar(value: f64) -> Self {
        Self::diagonal(&[value])
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let dim = entries.len();
        let mut data = DMatrix::zeros(dim, dim);
        for (k, &v) in entries.iter().enumerate() {
            data[(k, k)] = Complex64::new(v, 0.0);
        }
        Self {
            dim,
            herm_tol: DEFAULT_HERM_TOL,
            data,
        }
    }

    /// Rank-one projector `|ψ⟩⟨ψ|` scaled by the squared norm of `amplitudes`.
    pub fn outer(amplitudes: &[Complex64]) -> Self {
        let dim = amplitudes.len();
        let v = DVector::from_column_slice(amplitudes);
        let data = &v * v.adjoint();
        Self {
            dim,
            herm_tol: DEFAULT_HERM_TOL,
            data: symmetrize(data),
        }
    }

    /// Validates Hermiticity within `herm_tol`, then stores the symmetrized matrix.
    pub fn from_complex(mat: DMatrix<Complex64>, herm_tol: f64) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimMismatch(format!(
                "matrix must be square, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let deviation = max_modulus(&(&mat - mat.adjoint()));
        if deviation > herm_tol {
            return Err(Error::NotHermitian {
                deviation,
                tol: herm_tol,
            });
        }
        Ok(Self {
            dim: mat.nrows(),
            herm_tol,
            data: symmetrize(mat),
        })
    }

    /// Builds from row-major real and imaginary parts (the JSON layout).
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>], herm_tol: f64) -> Result<Self> {
        let dim = re.len();
        if im.len() != dim
            || re.iter().any(|row| row.len() != dim)
            || im.iter().any(|row| row.len() != dim)
        {
            return Err(Error::DimMismatch(
                "re/im parts must both be dim x dim".into(),
            ));
        }
        let data = DMatrix::from_fn(dim, dim, |r, c| Complex64::new(re[r][c], im[r][c]));
        Self::from_complex(data, herm_tol)
    }

    /// Wraps a matrix that is Hermitian up to roundoff, symmetrizing without a check.
    pub(crate) fn symmetrized(mat: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        Self {
            dim: mat.nrows(),
            herm_tol: DEFAULT_HERM_TOL,
            data: symmetrize(mat),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn herm_tol(&self) -> f64 {
        self.herm_tol
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn is_zero_dim(&self) -> bool {
        self.dim == 0
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            herm_tol: self.herm_tol,
            data: &self.data * Complex64::new(factor, 0.0),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            herm_tol: self.herm_tol.max(other.herm_tol),
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            herm_tol: self.herm_tol.max(other.herm_tol),
            data: &self.data - &other.data,
        })
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(format!("{} vs {}", self.dim, other.dim)));
        }
        Ok(())
    }

    /// Sum of diagonal entries; exactly real by Hermiticity.
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|k| self.data[(k, k)].re).sum()
    }

    /// Largest eigenvalue magnitude (spectral norm for Hermitian matrices).
    pub fn op_norm(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l.abs()))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        max_modulus(&self.data)
    }

    /// `Re Tr(self · other)`; real for Hermitian pairs.
    pub fn trace_product(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        let mut acc = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc += (self.data[(r, c)] * other.data[(c, r)]).re;
            }
        }
        Ok(acc)
    }

    /// Max entry modulus of the commutator `[self, other]`.
    pub fn commutator_max_norm(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        let comm = &self.data * &other.data - &other.data * &self.data;
        Ok(max_modulus(&comm))
    }

    /// Eigenvalues in descending order (with multiplicity, unmerged).
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigh().0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().last().copied().unwrap_or(0.0)
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// Full eigendecomposition: descending eigenvalues and matching
    /// eigenvector columns with a deterministic phase (first component of
    /// significant modulus made real positive).
    pub fn eigh(&self) -> (Vec<f64>, DMatrix<Complex64>) {
        if self.dim == 0 {
            return (Vec::new(), DMatrix::zeros(0, 0));
        }
        let eig = nalgebra::SymmetricEigen::new(self.data.clone());
        let mut order: Vec<usize> = (0..self.dim).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .expect("eigenvalues are finite")
        });
        let mut values = Vec::with_capacity(self.dim);
        let mut vectors = DMatrix::zeros(self.dim, self.dim);
        for (dst, &src) in order.iter().enumerate() {
            values.push(eig.eigenvalues[src]);
            let mut col = eig.eigenvectors.column(src).clone_owned();
            fix_phase(&mut col);
            vectors.set_column(dst, &col);
        }
        (values, vectors)
    }

    /// Spectral decomposition with near-degenerate eigenvalues merged.
    pub fn eig_decompose(&self, multiplicity_tol: f64) -> Spectrum {
        let (values, vectors) = self.eigh();
        let mut eigenvalues = Vec::new();
        let mut projectors: Vec<HermitianMatrix> = Vec::new();
        let mut start = 0usize;
        while start < values.len() {
            let mut end = start + 1;
            while end < values.len() && (values[end - 1] - values[end]).abs() <= multiplicity_tol {
                end += 1;
            }
            let cluster = &values[start..end];
            eigenvalues.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
            let mut proj = DMatrix::<Complex64>::zeros(self.dim, self.dim);
            for k in start..end {
                let v = vectors.column(k);
                proj += v * v.adjoint();
            }
            projectors.push(HermitianMatrix::symmetrized(proj));
            start = end;
        }
        Spectrum {
            eigenvalues,
            projectors,
            multiplicity_tol,
        }
    }

    /// Default merge threshold, scaled to the matrix magnitude.
    pub fn default_multiplicity_tol(&self) -> f64 {
        MULTIPLICITY_TOL_REL * self.max_abs().max(1.0)
    }

    /// Functional calculus `λ ↦ λ^p` on the support (Moore–Penrose for p < 0).
    ///
    /// Eigenvalues at or below the support cutoff (`1e-12 · ‖M‖`) map to zero;
    /// eigenvalues below the PSD tolerance are a domain error.
    pub fn mat_power(&self, p: f64) -> Result<Self> {
        if self.dim == 0 {
            return Ok(self.clone());
        }
        let (values, vectors) = self.eigh();
        let op_norm = values.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
        let tol = psd_tolerance(op_norm);
        if let Some(&min) = values.last() {
            if min < -tol {
                return Err(Error::NotPsd { min_eig: min, tol });
            }
        }
        let cutoff = SUPPORT_CUTOFF_REL * op_norm;
        let powered: Vec<f64> = values
            .iter()
            .map(|&l| if l > cutoff { l.powf(p) } else { 0.0 })
            .collect();
        Ok(Self::symmetrized(reconstruct(&powered, &vectors)))
    }

    /// Kronecker product (`self` is the first factor).
    pub fn tensor(&self, other: &Self) -> Self {
        let d1 = self.dim;
        let d2 = other.dim;
        let mut data = DMatrix::zeros(d1 * d2, d1 * d2);
        for i in 0..d1 {
            for j in 0..d1 {
                let a = self.data[(i, j)];
                for k in 0..d2 {
                    for l in 0..d2 {
                        data[(i * d2 + k, j * d2 + l)] = a * other.data[(k, l)];
                    }
                }
            }
        }
        Self {
            dim: d1 * d2,
            herm_tol: self.herm_tol.max(other.herm_tol),
            data,
        }
    }

    /// `n`-fold Kronecker power; `n = 0` gives the 1×1 identity.
    pub fn tensor_pow(&self, n: usize) -> Self {
        let mut out = Self::identity(1);
        for _ in 0..n {
            out = out.tensor(self);
        }
        out
    }

    /// Block-diagonal embedding `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let d1 = self.dim;
        let d2 = other.dim;
        let mut data = DMatrix::zeros(d1 + d2, d1 + d2);
        data.view_mut((0, 0), (d1, d1)).copy_from(&self.data);
        data.view_mut((d1, d1), (d2, d2)).copy_from(&other.data);
        Self {
            dim: d1 + d2,
            herm_tol: self.herm_tol.max(other.herm_tol),
            data,
        }
    }

    /// Partial trace over one factor of a `d1·d2`-dimensional product space.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Keep) -> Result<Self> {
        let (d1, d2) = dims;
        if d1 * d2 != self.dim {
            return Err(Error::DimMismatch(format!(
                "cannot factor dim {} as {}x{}",
                self.dim, d1, d2
            )));
        }
        let data = match keep {
            Keep::First => DMatrix::from_fn(d1, d1, |k, l| {
                (0..d2).map(|a| self.data[(k * d2 + a, l * d2 + a)]).sum()
            }),
            Keep::Second => DMatrix::from_fn(d2, d2, |a, b| {
                (0..d1).map(|k| self.data[(k * d2 + a, k * d2 + b)]).sum()
            }),
        };
        Ok(Self::symmetrized(data))
    }

    /// Pinching of `x` by the spectral projectors of `self`:
    /// `Σ_λ P_λ x P_λ`. The output commutes with `self` and preserves trace
    /// and positivity.
    pub fn pinching(&self, x: &Self) -> Result<Self> {
        self.check_same_dim(x)?;
        let spectrum = self.eig_decompose(self.default_multiplicity_tol());
        let mut out = DMatrix::<Complex64>::zeros(self.dim, self.dim);
        for proj in &spectrum.projectors {
            out += proj.as_matrix() * x.as_matrix() * proj.as_matrix();
        }
        Ok(Self::symmetrized(out))
    }
}

/// `true` iff `a ≤ b` in the semidefinite order within `tol`
/// (min eigenvalue of `b − a` at least `−tol`).
pub fn psd_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(format!("{} vs {}", a.dim(), b.dim())));
    }
    Ok(b.sub(a)?.min_eigenvalue() >= -tol)
}

/// Merged spectral decomposition `M = Σ_λ λ P_λ`.
///
/// The number of entries is `|spectrum(M)|` as it enters the pinching bound,
/// so near-degenerate eigenvalues are merged by `multiplicity_tol`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Distinct eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Orthogonal projectors onto the merged eigenspaces; they resolve the identity.
    pub projectors: Vec<HermitianMatrix>,
    pub multiplicity_tol: f64,
}

impl Spectrum {
    /// Number of distinct eigenvalues.
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Rebuilds `Σ λ P_λ`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let dim = self.projectors.first().map_or(0, |p| p.dim());
        let mut out = DMatrix::<Complex64>::zeros(dim, dim);
        for (l, p) in self.eigenvalues.iter().zip(&self.projectors) {
            out += p.as_matrix() * Complex64::new(*l, 0.0);
        }
        HermitianMatrix::symmetrized(out)
    }
}

fn max_modulus(mat: &DMatrix<Complex64>) -> f64 {
    mat.iter().fold(0.0f64, |acc, c| acc.max(c.norm()))
}

fn symmetrize(mat: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let adj = mat.adjoint();
    (mat + adj) * Complex64::new(0.5, 0.0)
}

fn reconstruct(values: &[f64], vectors: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let mut scaled = vectors.clone();
    for (k, &l) in values.iter().enumerate() {
        let mut col = scaled.column_mut(k);
        col *= Complex64::new(l, 0.0);
    }
    scaled * vectors.adjoint()
}

fn fix_phase(col: &mut DVector<Complex64>) {
    let lead = col.iter().find(|c| c.norm() > 1e-8);
    if let Some(&c) = lead {
        let phase = c.conj() / c.norm();
        *col *= phase;
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let re = (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.data[(r, c)].re).collect())
            .collect();
        let im = (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.data[(r, c)].im).collect())
            .collect();
        MatrixJson {
            dim: self.dim,
            re,
            im,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.re.len() != raw.dim {
            return Err(D::Error::custom(format!(
                "matrix declares dim {} but has {} rows",
                raw.dim,
                raw.re.len()
            )));
        }
        HermitianMatrix::from_parts(&raw.re, &raw.im, JSON_HERM_TOL)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_single_spectral_block() {
        let id = HermitianMatrix::identity(2);
        let spec = id.eig_decompose(1e-10);
        assert_eq!(spec.len(), 1);
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!(spec.projectors[0].sub(&id).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn diagonal_spectrum_merges_multiplicity() {
        let m = HermitianMatrix::diagonal(&[3.0, 1.0, 1.0]);
        let spec = m.eig_decompose(1e-8);
        assert_eq!(spec.len(), 2);
        assert!((spec.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((spec.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert!((spec.projectors[1].trace() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_input_rejected() {
        let mat =
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            HermitianMatrix::from_complex(mat, 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn mat_power_identity_and_diagonal() {
        let id = HermitianMatrix::identity(3);
        assert!(id.mat_power(0.37).unwrap().sub(&id).unwrap().max_abs() < 1e-12);
        let m = HermitianMatrix::diagonal(&[4.0, 9.0]);
        let root = m.mat_power(0.5).unwrap();
        assert!(
            root.sub(&HermitianMatrix::diagonal(&[2.0, 3.0]))
                .unwrap()
                .max_abs()
                < 1e-10
        );
    }

    #[test]
    fn mat_power_rejects_negative_matrix() {
        let m = HermitianMatrix::diagonal(&[1.0, -0.5]);
        assert!(matches!(m.mat_power(0.5), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn psd_leq_basics() {
        let a = HermitianMatrix::diagonal(&[1.0, 0.0]);
        let b = HermitianMatrix::diagonal(&[2.0, 1.0]);
        assert!(psd_leq(&a, &a, 0.0).unwrap());
        assert!(psd_leq(&a, &b, 0.0).unwrap());
        let c_mat = HermitianMatrix::diagonal(&[2.0, 0.0]);
        let d = HermitianMatrix::diagonal(&[1.0, 1.0]);
        assert!(!psd_leq(&c_mat, &d, 1e-9).unwrap());
        assert!(psd_leq(&a, &HermitianMatrix::identity(3), 0.0).is_err());
    }

    #[test]
    fn tensor_and_direct_sum() {
        let i2 = HermitianMatrix::identity(2);
        let i3 = HermitianMatrix::identity(3);
        let i6 = i2.tensor(&i3);
        assert!(i6.sub(&HermitianMatrix::identity(6)).unwrap().max_abs() < 1e-15);
        let d = HermitianMatrix::diagonal(&[1.0]).direct_sum(&HermitianMatrix::diagonal(&[2.0]));
        assert!(
            d.sub(&HermitianMatrix::diagonal(&[1.0, 2.0]))
                .unwrap()
                .max_abs()
                < 1e-15
        );
    }

    #[test]
    fn partial_trace_product_and_identity() {
        let a = HermitianMatrix::diagonal(&[0.25, 0.75]);
        let b = HermitianMatrix::diagonal(&[0.5, 0.3, 0.2]);
        let ab = a.tensor(&b);
        let back = ab.partial_trace((2, 3), Keep::First).unwrap();
        assert!(back.sub(&a.scale(b.trace())).unwrap().max_abs() < 1e-12);
        let i4 = HermitianMatrix::identity(4);
        let half = i4.partial_trace((2, 2), Keep::Second).unwrap();
        assert!(
            half.sub(&HermitianMatrix::identity(2).scale(2.0))
                .unwrap()
                .max_abs()
                < 1e-12
        );
        assert!(i4.partial_trace((3, 2), Keep::First).is_err());
    }

    #[test]
    fn pinching_identity_reference_is_noop() {
        let x = HermitianMatrix::from_parts(
            &[vec![0.6, 0.2], vec![0.2, 0.4]],
            &[vec![0.0, 0.1], vec![-0.1, 0.0]],
            1e-9,
        )
        .unwrap();
        let pinched = HermitianMatrix::identity(2).pinching(&x).unwrap();
        assert!(pinched.sub(&x).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn pinching_distinct_diagonal_zeroes_offdiagonals() {
        let a = HermitianMatrix::diagonal(&[2.0, 5.0]);
        let x = HermitianMatrix::from_parts(
            &[vec![0.6, 0.2], vec![0.2, 0.4]],
            &[vec![0.0, 0.1], vec![-0.1, 0.0]],
            1e-9,
        )
        .unwrap();
        let pinched = a.pinching(&x).unwrap();
        assert!(
            pinched
                .sub(&HermitianMatrix::diagonal(&[0.6, 0.4]))
                .unwrap()
                .max_abs()
                < 1e-12
        );
        assert!((pinched.trace() - x.trace()).abs() < 1e-12);
    }

    #[test]
    fn norms_and_trace() {
        assert!((HermitianMatrix::identity(4).op_norm() - 1.0).abs() < 1e-12);
        assert!((HermitianMatrix::diagonal(&[2.0, 3.0]).op_norm() - 3.0).abs() < 1e-12);
        assert!((HermitianMatrix::diagonal(&[2.0, 3.0]).trace() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn json_roundtrip() {
        let x = HermitianMatrix::from_parts(
            &[vec![0.6, 0.2], vec![0.2, 0.4]],
            &[vec![0.0, 0.1], vec![-0.1, 0.0]],
            1e-9,
        )
        .unwrap();
        let text = serde_json::to_string(&x).unwrap();
        let back: HermitianMatrix = serde_json::from_str(&text).unwrap();
        assert!(back.sub(&x).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn zero_dim_matrix_is_supported() {
        let z = HermitianMatrix::zero_dim();
        assert_eq!(z.dim(), 0);
        assert_eq!(z.trace(), 0.0);
        let a = HermitianMatrix::diagonal(&[1.0, 2.0]);
        assert_eq!(z.direct_sum(&a).dim(), 2);
        assert_eq!(z.tensor(&a).dim(), 0);
    }
}
