//! Single-shot relative submajorization as conic feasibility.
//!
//! `A ⪰ B` holds when some completely positive trace-nonincreasing map `T`
//! satisfies `T(ρ_i) ≥ ρ'_i` for every component and `T(σ) ≤ σ'`. The
//! decision is made by maximizing a uniform slack λ over the Choi matrix of
//! `T`:
//!
//! ```text
//!   maximize λ
//!   s.t.  J ⪰ 0,  Tr_out J ⪯ I,
//!         apply(J, ρ_i) − ρ'_i ⪰ λI,   σ' − apply(J, σ) ⪰ λI,
//! ```
//!
//! feasible iff the optimal λ is ≥ −tol. The slack is bounded (take the
//! trace of the σ row) and the problem is strictly feasible (J = εI, λ
//! very negative), so the interior-point method is on safe ground.
//!
//! Choi convention, fixed once: `J = Σ_kl E_kl ⊗ T(E_kl)` on `H_in ⊗ H_out`
//! with composite index `k·d_out + a`, so that
//! `T(X)_{ab} = Σ_kl X_{kl} J[(k,a),(l,b)]` (the transpose of X is folded
//! into the contraction) and `T` is trace-nonincreasing iff the partial
//! trace of J over the output factor is ⪯ I.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boxes::StateBox;
use crate::error::{Error, Result};
use crate::hermat::{HermitianMatrix, Keep};
use crate::lp::{solve_lp, LpProblem, LpRow, Sense};
use crate::sdp::{
    hermitian_basis, matrix_from_coords, solve, ConstraintMatrix, SdpOptions, SdpProblem,
    SolverStats, Triplets,
};

/// Default decision tolerance: feasible iff the optimal slack is ≥ −tol.
pub const DEFAULT_DECISION_TOL: f64 = 1e-7;
/// PSD / trace-nonincreasing tolerance accepted by the [`ChoiMatrix`] constructor.
pub const CHOI_TOL: f64 = 1e-6;
/// Commutator tolerance used to accept boxes as classical for the LP route.
pub const CLASSICAL_TOL: f64 = 1e-9;

/// Choi representation of a completely positive trace-nonincreasing map.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    dim_in: usize,
    dim_out: usize,
    j: HermitianMatrix,
}

impl ChoiMatrix {
    /// Validates PSD-ness (complete positivity) and the trace-nonincreasing
    /// property, both within [`CHOI_TOL`] scaled to the matrix.
    pub fn new(dim_in: usize, dim_out: usize, j: HermitianMatrix) -> Result<Self> {
        if j.dim() != dim_in * dim_out {
            return Err(Error::DimMismatch(format!(
                "Choi dim {} vs {}x{}",
                j.dim(),
                dim_in,
                dim_out
            )));
        }
        let scale = j.op_norm().max(1.0);
        let min_eig = j.min_eigenvalue();
        if min_eig < -CHOI_TOL * scale {
            return Err(Error::NotPsd {
                min_eig,
                tol: CHOI_TOL * scale,
            });
        }
        let choi = Self { dim_in, dim_out, j };
        let excess = choi
            .output_trace_operator()
            .sub(&HermitianMatrix::identity(dim_in))?
            .eigenvalues()
            .first()
            .copied()
            .unwrap_or(0.0);
        if excess > CHOI_TOL * scale.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "map increases trace: Tr_out J exceeds I by {excess:e}"
            )));
        }
        Ok(choi)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.j
    }

    /// Choi matrix of the identity map (the unnormalized maximally entangled projector).
    pub fn identity_map(dim: usize) -> Self {
        let mut data = DMatrix::<Complex64>::zeros(dim * dim, dim * dim);
        for k in 0..dim {
            for l in 0..dim {
                data[(k * dim + k, l * dim + l)] = Complex64::new(1.0, 0.0);
            }
        }
        Self {
            dim_in: dim,
            dim_out: dim,
            j: HermitianMatrix::symmetrized(data),
        }
    }

    /// Choi matrix of `X ↦ Tr(X)·1` on the one-dimensional output space.
    pub fn trace_map(dim_in: usize) -> Self {
        Self {
            dim_in,
            dim_out: 1,
            j: HermitianMatrix::identity(dim_in),
        }
    }

    /// Builds the Choi matrix of a linear map given only its action on
    /// Hermitian inputs, extended by complex linearity.
    pub fn from_hermitian_action<F>(dim_in: usize, dim_out: usize, mut action: F) -> Result<Self>
    where
        F: FnMut(&HermitianMatrix) -> Result<HermitianMatrix>,
    {
        let mut data = DMatrix::<Complex64>::zeros(dim_in * dim_out, dim_in * dim_out);
        let mut place = |k: usize, l: usize, block: DMatrix<Complex64>| {
            for a in 0..dim_out {
                for b in 0..dim_out {
                    data[(k * dim_out + a, l * dim_out + b)] = block[(a, b)];
                }
            }
        };
        for k in 0..dim_in {
            let mut unit = DMatrix::<Complex64>::zeros(dim_in, dim_in);
            unit[(k, k)] = Complex64::new(1.0, 0.0);
            let img = action(&HermitianMatrix::from_complex(unit, 1e-12)?)?;
            place(k, k, img.as_matrix().clone());
        }
        let i = Complex64::new(0.0, 1.0);
        let half = Complex64::new(0.5, 0.0);
        for k in 0..dim_in {
            for l in (k + 1)..dim_in {
                // E_kl = (S − iK)/2 with S = E_kl + E_lk and K = i(E_kl − E_lk).
                let mut s = DMatrix::<Complex64>::zeros(dim_in, dim_in);
                s[(k, l)] = Complex64::new(1.0, 0.0);
                s[(l, k)] = Complex64::new(1.0, 0.0);
                let mut kk = DMatrix::<Complex64>::zeros(dim_in, dim_in);
                kk[(k, l)] = i;
                kk[(l, k)] = -i;
                let ts = action(&HermitianMatrix::from_complex(s, 1e-12)?)?;
                let tk = action(&HermitianMatrix::from_complex(kk, 1e-12)?)?;
                let img_kl = (ts.as_matrix() - tk.as_matrix() * i) * half;
                let img_lk = (ts.as_matrix() + tk.as_matrix() * i) * half;
                place(k, l, img_kl);
                place(l, k, img_lk);
            }
        }
        Self::new(dim_in, dim_out, HermitianMatrix::from_complex(data, 1e-8)?)
    }

    /// Applies the map: `T(X)_{ab} = Σ_kl X_{kl} J[(k,a),(l,b)]`.
    pub fn apply(&self, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        if x.dim() != self.dim_in {
            return Err(Error::DimMismatch(format!(
                "input dim {} vs map input dim {}",
                x.dim(),
                self.dim_in
            )));
        }
        let d_out = self.dim_out;
        let mut out = DMatrix::<Complex64>::zeros(d_out, d_out);
        for k in 0..self.dim_in {
            for l in 0..self.dim_in {
                let w = x.entry(k, l);
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for a in 0..d_out {
                    for b in 0..d_out {
                        out[(a, b)] += w * self.j.entry(k * d_out + a, l * d_out + b);
                    }
                }
            }
        }
        Ok(HermitianMatrix::symmetrized(out))
    }

    /// Applies the map to every component of a box.
    pub fn apply_box(&self, b: &StateBox) -> Result<StateBox> {
        let rhos = b
            .rhos()
            .iter()
            .map(|r| self.apply(r))
            .collect::<Result<Vec<_>>>()?;
        StateBox::new(rhos, self.apply(b.sigma())?)
    }

    /// `Tr_out J`, the operator whose domination by I makes the map
    /// trace-nonincreasing.
    pub fn output_trace_operator(&self) -> HermitianMatrix {
        self.j
            .partial_trace((self.dim_in, self.dim_out), Keep::First)
            .expect("Choi dimension is dim_in * dim_out")
    }

    /// Choi matrix of the tensor product of two maps.
    pub fn tensor(&self, other: &Self) -> Self {
        let (d1, e1) = (self.dim_in, self.dim_out);
        let (d2, e2) = (other.dim_in, other.dim_out);
        let (din, dout) = (d1 * d2, e1 * e2);
        let mut data = DMatrix::<Complex64>::zeros(din * dout, din * dout);
        let idx =
            |k1: usize, k2: usize, a1: usize, a2: usize| (k1 * d2 + k2) * dout + (a1 * e2 + a2);
        for k1 in 0..d1 {
            for l1 in 0..d1 {
                for a1 in 0..e1 {
                    for b1 in 0..e1 {
                        let v1 = self.j.entry(k1 * e1 + a1, l1 * e1 + b1);
                        if v1 == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for k2 in 0..d2 {
                            for l2 in 0..d2 {
                                for a2 in 0..e2 {
                                    for b2 in 0..e2 {
                                        let v2 = other.j.entry(k2 * e2 + a2, l2 * e2 + b2);
                                        data[(idx(k1, k2, a1, a2), idx(l1, l2, b1, b2))] += v1 * v2;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Self {
            dim_in: din,
            dim_out: dout,
            j: HermitianMatrix::symmetrized(data),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ChoiJson {
    dim_in: usize,
    dim_out: usize,
    #[serde(rename = "J")]
    j: HermitianMatrix,
}

impl Serialize for ChoiMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChoiJson {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            j: self.j.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChoiMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ChoiJson::deserialize(d)?;
        ChoiMatrix::new(raw.dim_in, raw.dim_out, raw.j)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

/// Dual multipliers certifying that no feasible map exists.
///
/// Weak duality: for any CP trace-nonincreasing `J` meeting the constraints
/// with slack λ, `λ ≤ bound`, where
/// `bound = Tr W + ⟨σ', U⟩ − Σ_i ⟨ρ'_i, V_i⟩`, provided the multipliers are
/// PSD, `Σ_i Tr V_i + Tr U = 1`, and `W ⊗ I + σᵀ ⊗ U − Σ_i ρ_iᵀ ⊗ V_i ⪰ 0`.
/// A negative bound therefore separates the instance from feasibility.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfeasibilityCertificate {
    /// Multiplier `W` for the trace-nonincreasing constraint (input space).
    pub trace_multiplier: HermitianMatrix,
    /// Multipliers `V_i` for the null-component inequalities (output space).
    pub rho_multipliers: Vec<HermitianMatrix>,
    /// Multiplier `U` for the σ inequality (output space).
    pub sigma_multiplier: HermitianMatrix,
    /// Certified upper bound on the achievable slack.
    pub bound: f64,
}

/// Result of a conic feasibility query.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// Maximal uniform slack achieved.
    pub slack: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ChoiMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<InfeasibilityCertificate>,
    pub solver_stats: SolverStats,
}

fn transpose(h: &HermitianMatrix) -> HermitianMatrix {
    HermitianMatrix::symmetrized(h.as_matrix().transpose())
}

/// Numbers and offsets of the slack-SDP blocks for a given instance.
struct Layout {
    d_in: usize,
    d_out: usize,
    m: usize,
}

impl Layout {
    fn choi_dim(&self) -> usize {
        self.d_in * self.d_out
    }

    fn block_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.choi_dim(), self.d_in];
        dims.extend(std::iter::repeat_n(self.d_out, self.m + 1));
        dims
    }
}

/// Builds the slack-maximization SDP for `a ⪰ b`.
fn build_submaj_sdp(a: &StateBox, b: &StateBox) -> SdpProblem {
    let layout = Layout {
        d_in: a.dim(),
        d_out: b.dim(),
        m: a.m(),
    };
    let (d_in, d_out, m) = (layout.d_in, layout.d_out, layout.m);
    let choi_dim = layout.choi_dim();
    let basis = hermitian_basis(choi_dim);
    let num_blocks = m + 3;

    // C blocks: [0, I_in, −ρ'_1, …, −ρ'_m, σ'].
    let mut c: Vec<DMatrix<Complex64>> = Vec::with_capacity(num_blocks);
    c.push(DMatrix::zeros(choi_dim, choi_dim));
    c.push(DMatrix::identity(d_in, d_in));
    for rho_p in b.rhos() {
        c.push(-rho_p.as_matrix().clone());
    }
    c.push(b.sigma().as_matrix().clone());

    // apply(B_j, ρ) for a sparse basis element: Φ_{ab} += ρ_{kl}·v for each
    // triplet ((k,a),(l,b),v) of B_j.
    let apply_basis = |elem: &Triplets, op: &HermitianMatrix| -> DMatrix<Complex64> {
        let mut out = DMatrix::<Complex64>::zeros(d_out, d_out);
        for &(r, cidx, v) in elem {
            let (k, aa) = (r / d_out, r % d_out);
            let (l, bb) = (cidx / d_out, cidx % d_out);
            out[(aa, bb)] += op.entry(k, l) * v;
        }
        out
    };
    let dense_to_triplets = |mat: &DMatrix<Complex64>| -> Triplets {
        let mut t = Vec::new();
        for r in 0..mat.nrows() {
            for cidx in 0..mat.ncols() {
                let v = mat[(r, cidx)];
                if v != Complex64::new(0.0, 0.0) {
                    t.push((r, cidx, v));
                }
            }
        }
        t
    };

    let mut constraints = Vec::with_capacity(basis.len() + 1);
    for elem in &basis {
        let mut blocks: Vec<Triplets> = Vec::with_capacity(num_blocks);
        // J ⪰ 0 block: A_j = −B_j.
        blocks.push(elem.iter().map(|&(r, cidx, v)| (r, cidx, -v)).collect());
        // Trace-nonincreasing block: A_j = +Tr_out B_j.
        let mut tr_out: Triplets = Vec::new();
        for &(r, cidx, v) in elem {
            let (k, aa) = (r / d_out, r % d_out);
            let (l, bb) = (cidx / d_out, cidx % d_out);
            if aa == bb {
                tr_out.push((k, l, v));
            }
        }
        blocks.push(tr_out);
        // ρ rows: A_j = −apply(B_j, ρ_i); σ row: A_j = +apply(B_j, σ).
        for rho in a.rhos() {
            let phi = apply_basis(elem, rho);
            blocks.push(dense_to_triplets(&(-phi)));
        }
        let phi_sigma = apply_basis(elem, a.sigma());
        blocks.push(dense_to_triplets(&phi_sigma));
        constraints.push(ConstraintMatrix { blocks });
    }
    // Slack variable: identity on each of the m+1 target rows.
    let mut slack_blocks: Vec<Triplets> = vec![Vec::new(), Vec::new()];
    for _ in 0..=m {
        slack_blocks.push(
            (0..d_out)
                .map(|k| (k, k, Complex64::new(1.0, 0.0)))
                .collect(),
        );
    }
    constraints.push(ConstraintMatrix {
        blocks: slack_blocks,
    });

    let mut b_vec = vec![0.0; basis.len()];
    b_vec.push(1.0);

    SdpProblem {
        block_dims: layout.block_dims(),
        c,
        constraints,
        b: b_vec,
    }
}

fn witness_margin(j: &ChoiMatrix, a: &StateBox, b: &StateBox) -> Result<f64> {
    let mut margin = f64::INFINITY;
    for (rho, rho_p) in a.rhos().iter().zip(b.rhos()) {
        margin = margin.min(j.apply(rho)?.sub(rho_p)?.min_eigenvalue());
    }
    margin = margin.min(b.sigma().sub(&j.apply(a.sigma())?)?.min_eigenvalue());
    Ok(margin)
}

/// Decides `a ⪰ b` by slack maximization over Choi matrices.
///
/// `tol` is the decision tolerance: feasible iff the optimal slack is at
/// least `−tol`, and `|slack| < tol` is flagged as marginal in the stats.
/// Solver non-convergence is an error, never a decision.
pub fn check_submajorization(a: &StateBox, b: &StateBox, tol: f64) -> Result<FeasibilityResult> {
    check_submajorization_with(a, b, tol, &SdpOptions::default())
}

/// [`check_submajorization`] with explicit solver options.
pub fn check_submajorization_with(
    a: &StateBox,
    b: &StateBox,
    tol: f64,
    opts: &SdpOptions,
) -> Result<FeasibilityResult> {
    if a.m() != b.m() {
        return Err(Error::ArityMismatch(a.m(), b.m()));
    }
    if a.dim() == 0 || b.dim() == 0 {
        return Err(Error::InvalidArgument(
            "both boxes must have dimension >= 1".into(),
        ));
    }
    let prob = build_submaj_sdp(a, b);
    let outcome = solve(&prob, opts)?;
    if !outcome.stats.converged {
        return Err(Error::SolverStalled {
            iterations: outcome.stats.iterations,
            gap: outcome.stats.duality_gap,
            primal: outcome.stats.primal_residual,
            dual: outcome.stats.dual_residual,
        });
    }

    let choi_dim = a.dim() * b.dim();
    let slack = outcome.y[choi_dim * choi_dim];
    let feasible = slack >= -tol;
    let mut stats = outcome.stats.clone();
    stats.marginal = Some(slack.abs() < tol);

    let mut witness = None;
    let mut certificate = None;
    if feasible {
        let j_mat = HermitianMatrix::symmetrized(matrix_from_coords(
            choi_dim,
            &outcome.y[..choi_dim * choi_dim],
        ));
        let j = ChoiMatrix::new(a.dim(), b.dim(), j_mat)?;
        stats.witness_margin = Some(witness_margin(&j, a, b)?);
        witness = Some(j);
    } else {
        // Primal blocks: [X₁, W, V_1.., U]; the bound is the primal objective.
        let blocks = &outcome.x;
        let w = HermitianMatrix::from_complex(blocks[1].clone(), 1e-6)?;
        let vs: Vec<HermitianMatrix> = (0..a.m())
            .map(|i| HermitianMatrix::from_complex(blocks[2 + i].clone(), 1e-6))
            .collect::<Result<_>>()?;
        let u = HermitianMatrix::from_complex(blocks[2 + a.m()].clone(), 1e-6)?;
        let mut bound = w.trace() + u.trace_product(b.sigma())?;
        for (v, rho_p) in vs.iter().zip(b.rhos()) {
            bound -= v.trace_product(rho_p)?;
        }
        certificate = Some(InfeasibilityCertificate {
            trace_multiplier: w,
            rho_multipliers: vs,
            sigma_multiplier: u,
            bound,
        });
    }

    Ok(FeasibilityResult {
        feasible,
        slack,
        witness,
        certificate,
        solver_stats: stats,
    })
}

/// Outcome of re-verifying an [`InfeasibilityCertificate`] against the instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateCheck {
    /// Recomputed slack bound; must be negative to separate.
    pub bound: f64,
    /// Min eigenvalue over all multiplier blocks and the derived J multiplier.
    pub min_eigenvalue: f64,
    /// Deviation of the multiplier normalization from 1.
    pub normalization_error: f64,
}

/// Re-derives the weak-duality inequality from a certificate.
pub fn verify_certificate(
    a: &StateBox,
    b: &StateBox,
    cert: &InfeasibilityCertificate,
) -> Result<CertificateCheck> {
    let mut min_eig = cert.trace_multiplier.min_eigenvalue();
    for v in cert
        .rho_multipliers
        .iter()
        .chain(std::iter::once(&cert.sigma_multiplier))
    {
        min_eig = min_eig.min(v.min_eigenvalue());
    }
    // Derived multiplier for the J ⪰ 0 cone:
    // G = W ⊗ I + σᵀ ⊗ U − Σ_i ρ_iᵀ ⊗ V_i must be PSD.
    let mut g = cert
        .trace_multiplier
        .tensor(&HermitianMatrix::identity(b.dim()));
    g = g.add(&transpose(a.sigma()).tensor(&cert.sigma_multiplier))?;
    for (rho, v) in a.rhos().iter().zip(&cert.rho_multipliers) {
        g = g.sub(&transpose(rho).tensor(v))?;
    }
    min_eig = min_eig.min(g.min_eigenvalue());

    let norm: f64 =
        cert.rho_multipliers.iter().map(|v| v.trace()).sum::<f64>() + cert.sigma_multiplier.trace();
    let mut bound =
        cert.trace_multiplier.trace() + cert.sigma_multiplier.trace_product(b.sigma())?;
    for (v, rho_p) in cert.rho_multipliers.iter().zip(b.rhos()) {
        bound -= v.trace_product(rho_p)?;
    }
    Ok(CertificateCheck {
        bound,
        min_eigenvalue: min_eig,
        normalization_error: (norm - 1.0).abs(),
    })
}

/// LP route for classical (commuting) boxes: decides the existence of an
/// entrywise-nonnegative column-substochastic matrix `T` with
/// `T p_i ≥ p'_i` and `T q ≤ q'`, again by uniform slack maximization.
pub fn classical_submaj_lp(a: &StateBox, b: &StateBox, tol: f64) -> Result<FeasibilityResult> {
    if a.m() != b.m() {
        return Err(Error::ArityMismatch(a.m(), b.m()));
    }
    if a.dim() == 0 || b.dim() == 0 {
        return Err(Error::InvalidArgument(
            "both boxes must have dimension >= 1".into(),
        ));
    }
    if !a.is_classical(CLASSICAL_TOL) || !b.is_classical(CLASSICAL_TOL) {
        return Err(Error::InvalidArgument(
            "classical_submaj_lp requires commuting boxes".into(),
        ));
    }
    let (ps, q) = a.diagonals();
    let (ps_p, q_p) = b.diagonals();
    let n = a.dim();
    let n_out = b.dim();
    let m = a.m();

    // Variables: T (n_out × n, row-major) then λ⁺, λ⁻.
    let t_idx = |r: usize, c: usize| r * n + c;
    let lp_vars = n_out * n + 2;
    let lam_pos = n_out * n;
    let lam_neg = lam_pos + 1;

    let mut rows = Vec::new();
    // Column substochasticity.
    for c in 0..n {
        let mut coeffs = vec![0.0; lp_vars];
        for r in 0..n_out {
            coeffs[t_idx(r, c)] = 1.0;
        }
        rows.push(LpRow {
            coeffs,
            sense: Sense::Le,
            rhs: 1.0,
        });
    }
    // (T p_i)_r − λ ≥ (p'_i)_r.
    for i in 0..m {
        for r in 0..n_out {
            let mut coeffs = vec![0.0; lp_vars];
            for c in 0..n {
                coeffs[t_idx(r, c)] = ps[i][c];
            }
            coeffs[lam_pos] = -1.0;
            coeffs[lam_neg] = 1.0;
            rows.push(LpRow {
                coeffs,
                sense: Sense::Ge,
                rhs: ps_p[i][r],
            });
        }
    }
    // (T q)_r + λ ≤ q'_r.
    for r in 0..n_out {
        let mut coeffs = vec![0.0; lp_vars];
        for c in 0..n {
            coeffs[t_idx(r, c)] = q[c];
        }
        coeffs[lam_pos] = 1.0;
        coeffs[lam_neg] = -1.0;
        rows.push(LpRow {
            coeffs,
            sense: Sense::Le,
            rhs: q_p[r],
        });
    }

    let mut objective = vec![0.0; lp_vars];
    objective[lam_pos] = 1.0;
    objective[lam_neg] = -1.0;

    let sol = solve_lp(&LpProblem {
        num_vars: lp_vars,
        objective,
        rows,
    })?;
    let slack = sol.objective;
    let feasible = slack >= -tol;

    let stats = SolverStats {
        iterations: 0,
        duality_gap: 0.0,
        primal_residual: 0.0,
        dual_residual: 0.0,
        converged: true,
        marginal: Some(slack.abs() < tol),
        witness_margin: None,
    };

    let mut witness = None;
    let mut certificate = None;
    if feasible {
        // Diagonal Choi of the classical map: J = Σ_c E_cc ⊗ (Σ_r T_rc E_rr).
        let mut diag = vec![0.0; n * n_out];
        for c in 0..n {
            for r in 0..n_out {
                diag[c * n_out + r] = sol.x[t_idx(r, c)].max(0.0);
            }
        }
        witness = Some(ChoiMatrix::new(n, n_out, HermitianMatrix::diagonal(&diag))?);
    } else {
        // LP duals in row order: columns (n), then ρ rows (m·n_out), then σ
        // rows. The simplex reports ≥-row duals as nonpositive; the conic
        // multipliers are their negatives.
        let w: Vec<f64> = sol.duals[..n].to_vec();
        let mut vs = Vec::with_capacity(m);
        for i in 0..m {
            let start = n + i * n_out;
            let flipped: Vec<f64> = sol.duals[start..start + n_out].iter().map(|y| -y).collect();
            vs.push(HermitianMatrix::diagonal(&flipped));
        }
        let u = HermitianMatrix::diagonal(&sol.duals[n + m * n_out..n + (m + 1) * n_out]);
        let w_mat = HermitianMatrix::diagonal(&w);
        let mut bound = w_mat.trace() + u.trace_product(b.sigma())?;
        for (v, rho_p) in vs.iter().zip(b.rhos()) {
            bound -= v.trace_product(rho_p)?;
        }
        certificate = Some(InfeasibilityCertificate {
            trace_multiplier: w_mat,
            rho_multipliers: vs,
            sigma_multiplier: u,
            bound,
        });
    }

    Ok(FeasibilityResult {
        feasible,
        slack,
        witness,
        certificate,
        solver_stats: stats,
    })
}

/// Upgrades a feasible map so the σ inequality becomes an equality:
/// `T̃(X) = T(X) + [Tr X − Tr T(X)]·τ` with
/// `τ = (σ' − T(σ)) / (Tr σ − Tr T(σ))`.
///
/// Requires `Tr σ ≥ Tr σ'`. When the traces are equal the result is trace
/// preserving. When `T(σ) = σ'` already holds any τ works; the normalized
/// σ' is used so the trace-preserving conclusion still holds.
pub fn upgrade_map(j: &ChoiMatrix, a: &StateBox, b: &StateBox) -> Result<ChoiMatrix> {
    if j.dim_in() != a.dim() || j.dim_out() != b.dim() {
        return Err(Error::DimMismatch(format!(
            "map is {}→{} but boxes are {}→{}",
            j.dim_in(),
            j.dim_out(),
            a.dim(),
            b.dim()
        )));
    }
    if a.m() != b.m() {
        return Err(Error::ArityMismatch(a.m(), b.m()));
    }
    let tr_sigma = a.sigma().trace();
    let tr_sigma_p = b.sigma().trace();
    if tr_sigma < tr_sigma_p - 1e-12 * tr_sigma.abs().max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "upgrade needs Tr σ ≥ Tr σ', got {tr_sigma} < {tr_sigma_p}"
        )));
    }
    // The input map must already satisfy the constraint system.
    let feas_tol = 1e-8 * a.sigma().op_norm().max(1.0);
    for (rho, rho_p) in a.rhos().iter().zip(b.rhos()) {
        if !crate::hermat::psd_leq(rho_p, &j.apply(rho)?, feas_tol)? {
            return Err(Error::InvalidArgument(
                "map does not satisfy the rho inequalities".into(),
            ));
        }
    }
    let t_sigma = j.apply(a.sigma())?;
    if !crate::hermat::psd_leq(&t_sigma, b.sigma(), feas_tol)? {
        return Err(Error::InvalidArgument(
            "map does not satisfy the sigma inequality".into(),
        ));
    }

    let deficit = tr_sigma - t_sigma.trace();
    let tau = if deficit <= 1e-10 * tr_sigma.max(1.0) {
        // T(σ) = σ' already (forced by the trace relations); keep the
        // trace-preserving conclusion with a normalized τ.
        b.sigma().scale(1.0 / tr_sigma_p)
    } else {
        b.sigma().sub(&t_sigma)?.scale(1.0 / deficit)
    };
    let correction = HermitianMatrix::identity(j.dim_in())
        .sub(&j.output_trace_operator())?
        .tensor(&tau);
    ChoiMatrix::new(j.dim_in(), j.dim_out(), j.matrix().add(&correction)?)
}
