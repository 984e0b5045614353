//! Self-contained primal-dual interior-point solver for small dense SDPs
//! over complex Hermitian blocks.
//!
//! Problems are given in inequality (dual standard) form:
//!
//! ```text
//!   maximize   b · y
//!   subject to Z(y) = C − Σ_j y_j A_j  ⪰ 0,
//! ```
//!
//! where `C` and the `A_j` are block-diagonal Hermitian matrices. The primal
//! partner `min ⟨C, X⟩ s.t. ⟨A_j, X⟩ = b_j, X ⪰ 0` is solved alongside; its
//! optimal blocks are the constraint multipliers handed back as certificates.
//!
//! The iteration is the HKM direction with a Mehrotra predictor-corrector and
//! an infeasible start. Per iteration one Schur complement matrix
//! `M_{jk} = Re⟨A_j, Z⁻¹ A_k X⟩` is assembled (exploiting sparsity of the
//! `A_j`) and factored once. Everything is deterministic; block sizes beyond
//! a few hundred are out of scope.

use nalgebra::{Cholesky, DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

/// Sparse Hermitian matrix as explicit triplets `(row, col, value)`.
///
/// All nonzero entries are listed (not only one triangle); the represented
/// matrix must be Hermitian.
pub type Triplets = Vec<(usize, usize, Complex64)>;

/// One constraint matrix `A_j`, split over the cone blocks.
#[derive(Debug, Clone)]
pub struct ConstraintMatrix {
    pub blocks: Vec<Triplets>,
}

impl ConstraintMatrix {
    pub fn empty(num_blocks: usize) -> Self {
        Self {
            blocks: vec![Vec::new(); num_blocks],
        }
    }
}

/// SDP data in inequality form; see the module docs.
#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub block_dims: Vec<usize>,
    /// Constant term `C`, one dense Hermitian matrix per block.
    pub c: Vec<CMat>,
    /// Constraint matrices `A_j`, one per free variable.
    pub constraints: Vec<ConstraintMatrix>,
    /// Objective vector (maximized against `y`).
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SdpOptions {
    pub max_iter: usize,
    /// Relative duality-gap target.
    pub tol_gap: f64,
    /// Relative primal/dual residual target.
    pub tol_feas: f64,
    /// Fraction of the maximal cone step taken per iteration.
    pub step_frac: f64,
    /// Log per-iteration progress to stderr.
    pub verbose: bool,
}

impl Default for SdpOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            tol_gap: 1e-8,
            tol_feas: 1e-7,
            step_frac: 0.98,
            verbose: false,
        }
    }
}

/// Convergence report shared by the SDP and LP paths.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverStats {
    pub iterations: usize,
    pub duality_gap: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub converged: bool,
    /// Set by feasibility wrappers when the slack falls in the ambiguous band.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginal: Option<bool>,
    /// Worst post-hoc constraint margin of a returned witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_margin: Option<f64>,
}

/// Solution of an [`SdpProblem`].
#[derive(Debug, Clone)]
pub struct SdpOutcome {
    pub y: Vec<f64>,
    /// `b · y` at the final iterate.
    pub dual_objective: f64,
    /// `⟨C, X⟩` at the final iterate (upper bound on the optimum by weak duality).
    pub primal_objective: f64,
    /// Primal blocks (constraint multipliers).
    pub x: Vec<CMat>,
    /// Dual slack blocks `Z(y)`.
    pub z: Vec<CMat>,
    pub stats: SolverStats,
}

/// Hermitian coordinate basis of a `dim × dim` space as triplets.
///
/// Ordering: the `dim` diagonal units `E_kk`, then for each pair `r < c` the
/// symmetric element `(E_rc + E_cr)/√2` and the antisymmetric element
/// `i(E_rc − E_cr)/√2`. The basis is orthonormal under `Re Tr(A†B)`, so a
/// Hermitian `J` has coordinates `y_j = ⟨B_j, J⟩` and `J = Σ_j y_j B_j`.
pub fn hermitian_basis(dim: usize) -> Vec<Triplets> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(dim * dim);
    for k in 0..dim {
        basis.push(vec![(k, k, Complex64::new(1.0, 0.0))]);
    }
    for r in 0..dim {
        for c in (r + 1)..dim {
            basis.push(vec![
                (r, c, Complex64::new(inv_sqrt2, 0.0)),
                (c, r, Complex64::new(inv_sqrt2, 0.0)),
            ]);
            basis.push(vec![
                (r, c, Complex64::new(0.0, inv_sqrt2)),
                (c, r, Complex64::new(0.0, -inv_sqrt2)),
            ]);
        }
    }
    basis
}

/// Reconstructs `Σ_j y_j B_j` for the [`hermitian_basis`] ordering.
pub fn matrix_from_coords(dim: usize, y: &[f64]) -> CMat {
    let basis = hermitian_basis(dim);
    let mut out = CMat::zeros(dim, dim);
    for (coeff, elem) in y.iter().zip(&basis) {
        for &(r, c, v) in elem {
            out[(r, c)] += v * Complex64::new(*coeff, 0.0);
        }
    }
    out
}

fn hermitize(m: &mut CMat) {
    let adj = m.adjoint();
    *m += adj;
    *m *= Complex64::new(0.5, 0.0);
}

/// `Re Tr(A B)` for a sparse Hermitian `A` and dense `B`.
fn sparse_inner(a: &Triplets, b: &CMat) -> f64 {
    a.iter().map(|&(r, c, v)| (v * b[(c, r)]).re).sum()
}

/// `Re Σ_b Tr(X_b Z_b)` for Hermitian block lists.
fn inner_blocks(x: &[CMat], z: &[CMat]) -> f64 {
    x.iter()
        .zip(z)
        .map(|(xb, zb)| {
            let mut acc = 0.0;
            for r in 0..xb.nrows() {
                for c in 0..xb.ncols() {
                    acc += (xb[(r, c)] * zb[(c, r)]).re;
                }
            }
            acc
        })
        .sum()
}

fn frob_norm(blocks: &[CMat]) -> f64 {
    blocks
        .iter()
        .map(|b| b.iter().map(|v| v.norm_sqr()).sum::<f64>())
        .sum::<f64>()
        .sqrt()
}

/// Largest `α` with `S + α ΔS ⪰ 0`, given PD `S` (capped at 1.0 by callers).
fn max_step(s: &CMat, ds: &CMat) -> f64 {
    let chol = match Cholesky::new(s.clone()) {
        Some(c) => c,
        None => return 0.0,
    };
    let l = chol.l();
    // W = L⁻¹ ΔS L⁻†, same inertia as the pencil.
    let t = l.solve_lower_triangular(ds).expect("L invertible");
    let w_adj = l
        .solve_lower_triangular(&t.adjoint())
        .expect("L invertible");
    let mut w = w_adj.adjoint();
    hermitize(&mut w);
    let min_eig = nalgebra::SymmetricEigen::new(w)
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if min_eig >= -1e-300 {
        f64::INFINITY
    } else {
        -1.0 / min_eig
    }
}

impl SdpProblem {
    fn validate(&self) -> Result<()> {
        if self.c.len() != self.block_dims.len() {
            return Err(Error::DimMismatch("C blocks vs block_dims".into()));
        }
        for (dim, cb) in self.block_dims.iter().zip(&self.c) {
            if cb.nrows() != *dim || cb.ncols() != *dim {
                return Err(Error::DimMismatch("C block shape".into()));
            }
        }
        if self.constraints.len() != self.b.len() {
            return Err(Error::DimMismatch("constraints vs objective length".into()));
        }
        for a in &self.constraints {
            if a.blocks.len() != self.block_dims.len() {
                return Err(Error::DimMismatch("constraint block count".into()));
            }
            for (dim, blk) in self.block_dims.iter().zip(&a.blocks) {
                if blk.iter().any(|&(r, c, _)| r >= *dim || c >= *dim) {
                    return Err(Error::DimMismatch("constraint entry out of block".into()));
                }
            }
        }
        Ok(())
    }

    /// `Σ_j y_j A_j` as dense blocks.
    fn a_star(&self, y: &[f64]) -> Vec<CMat> {
        let mut out: Vec<CMat> = self.block_dims.iter().map(|&d| CMat::zeros(d, d)).collect();
        for (j, a) in self.constraints.iter().enumerate() {
            let w = Complex64::new(y[j], 0.0);
            if y[j] == 0.0 {
                continue;
            }
            for (blk, dst) in a.blocks.iter().zip(&mut out) {
                for &(r, c, v) in blk {
                    dst[(r, c)] += v * w;
                }
            }
        }
        out
    }

    /// `⟨A_j, X⟩` for all j.
    fn a_apply(&self, x: &[CMat]) -> Vec<f64> {
        self.constraints
            .iter()
            .map(|a| {
                a.blocks
                    .iter()
                    .zip(x)
                    .map(|(blk, xb)| sparse_inner(blk, xb))
                    .sum()
            })
            .collect()
    }

    /// Dual slack `Z(y) = C − Σ_j y_j A_j`.
    pub fn dual_slack(&self, y: &[f64]) -> Vec<CMat> {
        let astar = self.a_star(y);
        self.c.iter().zip(astar).map(|(cb, ab)| cb - ab).collect()
    }
}

/// Solves the SDP. Returns the final iterate even when the iteration limit
/// is hit; callers must consult `stats.converged`.
pub fn solve(prob: &SdpProblem, opts: &SdpOptions) -> Result<SdpOutcome> {
    prob.validate()?;
    let dims = &prob.block_dims;
    let p = prob.b.len();
    let n_total: usize = dims.iter().sum();
    if n_total == 0 || p == 0 {
        return Err(Error::InvalidArgument("empty SDP".into()));
    }

    // Infeasible start scaled to the data magnitude.
    let data_scale = prob
        .c
        .iter()
        .map(|cb| cb.iter().map(|v| v.norm()).fold(0.0, f64::max))
        .chain(prob.constraints.iter().map(|a| {
            a.blocks
                .iter()
                .flatten()
                .map(|&(_, _, v)| v.norm())
                .fold(0.0, f64::max)
        }))
        .chain(prob.b.iter().map(|v| v.abs()))
        .fold(1.0f64, f64::max);
    let eta = 10.0 * data_scale;
    let mut x: Vec<CMat> = dims
        .iter()
        .map(|&d| CMat::identity(d, d) * Complex64::new(eta, 0.0))
        .collect();
    let mut z: Vec<CMat> = x.clone();
    let mut y = vec![0.0f64; p];

    let b_norm = prob.b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let c_norm = frob_norm(&prob.c);

    let mut stats = SolverStats {
        iterations: 0,
        duality_gap: f64::INFINITY,
        primal_residual: f64::INFINITY,
        dual_residual: f64::INFINITY,
        converged: false,
        marginal: None,
        witness_margin: None,
    };

    for iter in 0..opts.max_iter {
        stats.iterations = iter + 1;

        // Residuals.
        let astar_y = prob.a_star(&y);
        let rd: Vec<CMat> = prob
            .c
            .iter()
            .zip(&z)
            .zip(&astar_y)
            .map(|((cb, zb), ab)| cb - zb - ab)
            .collect();
        let ax = prob.a_apply(&x);
        let rp: Vec<f64> = prob.b.iter().zip(&ax).map(|(bj, axj)| bj - axj).collect();

        let gap = inner_blocks(&x, &z).max(0.0);
        let mu = gap / n_total as f64;
        let pobj = inner_blocks(&prob.c, &x);
        let dobj: f64 = prob.b.iter().zip(&y).map(|(bj, yj)| bj * yj).sum();

        stats.duality_gap = gap / (1.0 + pobj.abs() + dobj.abs());
        stats.primal_residual = rp.iter().map(|v| v * v).sum::<f64>().sqrt() / (1.0 + b_norm);
        stats.dual_residual = frob_norm(&rd) / (1.0 + c_norm);

        if stats.duality_gap <= opts.tol_gap
            && stats.primal_residual <= opts.tol_feas
            && stats.dual_residual <= opts.tol_feas
        {
            stats.converged = true;
            return Ok(SdpOutcome {
                dual_objective: dobj,
                primal_objective: pobj,
                y,
                x,
                z,
                stats,
            });
        }

        // Z⁻¹ per block.
        let mut z_inv = Vec::with_capacity(dims.len());
        for zb in &z {
            match Cholesky::new(zb.clone()) {
                Some(c) => z_inv.push(c.inverse()),
                None => {
                    return Err(Error::SolverStalled {
                        iterations: stats.iterations,
                        gap: stats.duality_gap,
                        primal: stats.primal_residual,
                        dual: stats.dual_residual,
                    })
                }
            }
        }

        // Schur complement M_jk = Re⟨A_j, Z⁻¹ A_k X⟩ (symmetric PD).
        let mut m = DMatrix::<f64>::zeros(p, p);
        for k in 0..p {
            // G = Z⁻¹ A_k X assembled from the sparse triplets of A_k.
            let g: Vec<CMat> = prob.constraints[k]
                .blocks
                .iter()
                .zip(&z_inv)
                .zip(&x)
                .map(|((blk, zib), xb)| {
                    let d = xb.nrows();
                    let mut gb = CMat::zeros(d, d);
                    for &(r, c, v) in blk {
                        // gb += v · Zinv[:, r] · (X[c, :]) = v · Zinv[:, r] · (X[:, c])ᴴ
                        gb.gerc(v, &zib.column(r), &xb.column(c), Complex64::new(1.0, 0.0));
                    }
                    gb
                })
                .collect();
            for j in 0..=k {
                let val: f64 = prob.constraints[j]
                    .blocks
                    .iter()
                    .zip(&g)
                    .map(|(blk, gb)| sparse_inner(blk, gb))
                    .sum();
                m[(j, k)] = val;
                m[(k, j)] = val;
            }
        }

        // Factor M with escalating ridge if needed.
        let mut ridge = 0.0;
        let m_scale = (0..p).map(|j| m[(j, j)].abs()).fold(0.0, f64::max).max(1.0);
        let m_chol = loop {
            let mut shifted = m.clone();
            for j in 0..p {
                shifted[(j, j)] += ridge;
            }
            if let Some(c) = Cholesky::new(shifted) {
                break c;
            }
            ridge = if ridge == 0.0 {
                1e-14 * m_scale
            } else {
                ridge * 100.0
            };
            if ridge > 1e-4 * m_scale {
                return Err(Error::SolverStalled {
                    iterations: stats.iterations,
                    gap: stats.duality_gap,
                    primal: stats.primal_residual,
                    dual: stats.dual_residual,
                });
            }
        };

        // H = Z⁻¹ R_d X enters both right-hand sides.
        let h: Vec<CMat> = z_inv
            .iter()
            .zip(&rd)
            .zip(&x)
            .map(|((zib, rdb), xb)| zib * rdb * xb)
            .collect();

        // Predictor (affine direction, Rc = −ZX).
        let rhs_aff = DVector::from_iterator(
            p,
            prob.constraints.iter().zip(&prob.b).map(|(a, bj)| {
                bj + a
                    .blocks
                    .iter()
                    .zip(&h)
                    .map(|(blk, hb)| sparse_inner(blk, hb))
                    .sum::<f64>()
            }),
        );
        let dy_aff = m_chol.solve(&rhs_aff);
        let dz_aff = step_dz(prob, &rd, &dy_aff);
        let dx_aff = step_dx_affine(&z_inv, &dz_aff, &x);

        let ap_aff = blocks_max_step(&x, &dx_aff).min(1.0);
        let ad_aff = blocks_max_step(&z, &dz_aff).min(1.0);
        let mu_aff = {
            let xn: Vec<CMat> = x
                .iter()
                .zip(&dx_aff)
                .map(|(xb, d)| xb + d * Complex64::new(ap_aff, 0.0))
                .collect();
            let zn: Vec<CMat> = z
                .iter()
                .zip(&dz_aff)
                .map(|(zb, d)| zb + d * Complex64::new(ad_aff, 0.0))
                .collect();
            (inner_blocks(&xn, &zn) / n_total as f64).max(0.0)
        };
        let mut sigma = if mu > 0.0 {
            ((mu_aff / mu).powi(3)).clamp(1e-10, 1.0)
        } else {
            0.0
        };
        // Keep the barrier from collapsing ahead of feasibility: with the gap
        // far below the residuals the Schur system loses the digits needed to
        // keep contracting them.
        if stats.primal_residual.max(stats.dual_residual) > 10.0 * stats.duality_gap {
            sigma = sigma.max(0.5);
        }
        // Once the gap is at the target, hold it there with pure centering
        // until the residuals catch up; over-closing it only amplifies
        // roundoff in the Newton system.
        if stats.duality_gap < 0.5 * opts.tol_gap
            && (stats.primal_residual > opts.tol_feas || stats.dual_residual > opts.tol_feas)
        {
            sigma = 1.0;
        }

        // Corrector: Rc = σμI − ZX − ΔZ_aff ΔX_aff.
        let rc: Vec<CMat> = dims
            .iter()
            .enumerate()
            .map(|(bi, &d)| {
                let mut m = CMat::identity(d, d) * Complex64::new(sigma * mu, 0.0);
                m -= &z[bi] * &x[bi];
                m -= &dz_aff[bi] * &dx_aff[bi];
                m
            })
            .collect();
        // K = Z⁻¹ (Rc − R_d X) = Z⁻¹ Rc − H.
        let k_blocks: Vec<CMat> = z_inv
            .iter()
            .zip(&rc)
            .zip(&h)
            .map(|((zib, rcb), hb)| zib * rcb - hb)
            .collect();
        let rhs = DVector::from_iterator(
            p,
            prob.constraints.iter().zip(&rp).map(|(a, rpj)| {
                rpj - a
                    .blocks
                    .iter()
                    .zip(&k_blocks)
                    .map(|(blk, kb)| sparse_inner(blk, kb))
                    .sum::<f64>()
            }),
        );
        let dy = m_chol.solve(&rhs);
        let dz = step_dz(prob, &rd, &dy);
        // ΔX = Z⁻¹(Rc − ΔZ X), hermitized.
        let dx: Vec<CMat> = z_inv
            .iter()
            .zip(&rc)
            .zip(&dz)
            .zip(&x)
            .map(|(((zib, rcb), dzb), xb)| {
                let mut d = zib * (rcb - dzb * xb);
                hermitize(&mut d);
                d
            })
            .collect();

        let ap = (opts.step_frac * blocks_max_step(&x, &dx)).min(1.0);
        let ad = (opts.step_frac * blocks_max_step(&z, &dz)).min(1.0);
        if ap < 1e-10 && ad < 1e-10 {
            break; // no progress possible
        }

        for (xb, dxb) in x.iter_mut().zip(&dx) {
            *xb += dxb * Complex64::new(ap, 0.0);
            hermitize(xb);
        }
        for (zb, dzb) in z.iter_mut().zip(&dz) {
            *zb += dzb * Complex64::new(ad, 0.0);
            hermitize(zb);
        }
        for (yj, dyj) in y.iter_mut().zip(dy.iter()) {
            *yj += ad * dyj;
        }

        if opts.verbose {
            eprintln!(
                "iter {:3}: gap {:9.2e} rp {:9.2e} rd {:9.2e} sigma {:8.2e} ap {:6.4} ad {:6.4}",
                stats.iterations,
                stats.duality_gap,
                stats.primal_residual,
                stats.dual_residual,
                sigma,
                ap,
                ad
            );
        }
    }

    let pobj = inner_blocks(&prob.c, &x);
    let dobj: f64 = prob.b.iter().zip(&y).map(|(bj, yj)| bj * yj).sum();
    Ok(SdpOutcome {
        dual_objective: dobj,
        primal_objective: pobj,
        y,
        x,
        z,
        stats,
    })
}

fn step_dz(prob: &SdpProblem, rd: &[CMat], dy: &DVector<f64>) -> Vec<CMat> {
    let astar = prob.a_star(dy.as_slice());
    rd.iter().zip(astar).map(|(rdb, ab)| rdb - ab).collect()
}

fn step_dx_affine(z_inv: &[CMat], dz: &[CMat], x: &[CMat]) -> Vec<CMat> {
    // ΔX = −X − Z⁻¹ ΔZ X, hermitized.
    z_inv
        .iter()
        .zip(dz)
        .zip(x)
        .map(|((zib, dzb), xb)| {
            let mut d = -xb - zib * dzb * xb;
            hermitize(&mut d);
            d
        })
        .collect()
}

fn blocks_max_step(s: &[CMat], ds: &[CMat]) -> f64 {
    s.iter()
        .zip(ds)
        .map(|(sb, dsb)| max_step(sb, dsb))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// max y s.t. y ≤ 3 encoded as the 1×1 LMI 3 − y ⪰ 0.
    #[test]
    fn scalar_bound() {
        let prob = SdpProblem {
            block_dims: vec![1],
            c: vec![CMat::from_element(1, 1, c(3.0))],
            constraints: vec![ConstraintMatrix {
                blocks: vec![vec![(0, 0, c(1.0))]],
            }],
            b: vec![1.0],
        };
        let out = solve(&prob, &SdpOptions::default()).unwrap();
        assert!(out.stats.converged);
        assert!((out.dual_objective - 3.0).abs() < 1e-6);
    }

    /// max y₁ + y₂ s.t. diag(y₁, y₂) ⪯ diag(3, 4), y ⪰ 0, as a 2×2 LMI.
    #[test]
    fn diagonal_lmi() {
        let prob = SdpProblem {
            block_dims: vec![2, 2],
            c: vec![
                CMat::from_diagonal(&DVector::from_vec(vec![c(3.0), c(4.0)])),
                CMat::zeros(2, 2),
            ],
            constraints: vec![
                ConstraintMatrix {
                    blocks: vec![vec![(0, 0, c(1.0))], vec![(0, 0, c(-1.0))]],
                },
                ConstraintMatrix {
                    blocks: vec![vec![(1, 1, c(1.0))], vec![(1, 1, c(-1.0))]],
                },
            ],
            b: vec![1.0, 1.0],
        };
        let out = solve(&prob, &SdpOptions::default()).unwrap();
        assert!(out.stats.converged);
        assert!((out.dual_objective - 7.0).abs() < 1e-6);
        assert!((out.y[0] - 3.0).abs() < 1e-5);
        assert!((out.y[1] - 4.0).abs() < 1e-5);
    }

    /// Smallest t with t·I ⪰ A: the operator norm of a PSD A, with an
    /// off-diagonal complex entry to exercise Hermitian handling.
    #[test]
    fn operator_norm_via_lmi() {
        // A = [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = CMat::from_row_slice(
            2,
            2,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        );
        // max (−t) s.t. tI − A ⪰ 0  ⇒ optimum −3.
        let prob = SdpProblem {
            block_dims: vec![2],
            c: vec![-a],
            constraints: vec![ConstraintMatrix {
                blocks: vec![vec![(0, 0, c(-1.0)), (1, 1, c(-1.0))]],
            }],
            b: vec![-1.0],
        };
        let out = solve(&prob, &SdpOptions::default()).unwrap();
        assert!(out.stats.converged);
        assert!(
            (out.dual_objective + 3.0).abs() < 1e-6,
            "{}",
            out.dual_objective
        );
    }

    #[test]
    fn hermitian_basis_reconstructs() {
        let dim = 3;
        let basis = hermitian_basis(dim);
        assert_eq!(basis.len(), dim * dim);
        let y: Vec<f64> = (0..dim * dim).map(|k| 0.3 * k as f64 - 1.0).collect();
        let m = matrix_from_coords(dim, &y);
        // Coordinates recover by orthonormality.
        for (j, elem) in basis.iter().enumerate() {
            let coord = sparse_inner(elem, &m);
            assert!((coord - y[j]).abs() < 1e-12);
        }
        assert!((&m - m.adjoint()).iter().all(|v| v.norm() < 1e-12));
    }
}
