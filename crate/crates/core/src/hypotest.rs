//! Hypothesis-testing layer for normalized boxes.
//!
//! The states `ρ_1, …, ρ_m` form a composite null hypothesis tested against
//! the simple alternative σ. A two-outcome test is an operator `0 ⪯ Π ⪯ I`
//! with per-component type-I errors `α_i(Π) = 1 − Tr ρ_i Π`, significance
//! `α(Π) = max_i α_i(Π)` and type-II error `β(Π) = Tr σ Π`. The test ↔ map
//! dictionary (`T(X) = Tr(XΠ)`, `Π = T*(1)`) connects these quantities to
//! relative submajorization against scalar target boxes; multi-hypothesis
//! discrimination works the same way against the standard basis box.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boxes::StateBox;
use crate::error::{Error, Result};
use crate::hermat::HermitianMatrix;
use crate::sdp::{
    hermitian_basis, matrix_from_coords, solve, ConstraintMatrix, SdpOptions, SdpProblem,
    SolverStats, Triplets,
};
use crate::submaj::{ChoiMatrix, FeasibilityResult};

/// Semidefinite slack allowed on the `0 ⪯ Π ⪯ I` bounds of a [`Test`].
pub const TEST_TOL: f64 = 1e-9;

/// A two-outcome POVM element `Π` with `0 ⪯ Π ⪯ I`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Test {
    pi: HermitianMatrix,
}

impl<'de> serde::Deserialize<'de> for Test {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            pi: HermitianMatrix,
        }
        let raw = Raw::deserialize(d)?;
        Test::new(raw.pi).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

impl Test {
    pub fn new(pi: HermitianMatrix) -> Result<Self> {
        let min_eig = pi.min_eigenvalue();
        if min_eig < -TEST_TOL {
            return Err(Error::NotPsd {
                min_eig,
                tol: TEST_TOL,
            });
        }
        let max_eig = pi.eigenvalues().first().copied().unwrap_or(0.0);
        if max_eig > 1.0 + TEST_TOL {
            return Err(Error::InvalidArgument(format!(
                "test exceeds identity: max eigenvalue {max_eig}"
            )));
        }
        Ok(Self { pi })
    }

    pub fn operator(&self) -> &HermitianMatrix {
        &self.pi
    }

    pub fn dim(&self) -> usize {
        self.pi.dim()
    }
}

/// Per-component type-I errors `α_i(Π) = 1 − Tr ρ_i Π` and the significance
/// level `max_i α_i`.
pub fn type1_errors(b: &StateBox, t: &Test) -> Result<(Vec<f64>, f64)> {
    if b.dim() != t.dim() {
        return Err(Error::DimMismatch(format!("{} vs {}", b.dim(), t.dim())));
    }
    let alphas: Vec<f64> = b
        .rhos()
        .iter()
        .map(|rho| rho.trace_product(t.operator()).map(|p| 1.0 - p))
        .collect::<Result<_>>()?;
    let significance = alphas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok((alphas, significance))
}

/// Type-II error `β(Π) = Tr σ Π`.
pub fn type2_error(b: &StateBox, t: &Test) -> Result<f64> {
    if b.dim() != t.dim() {
        return Err(Error::DimMismatch(format!("{} vs {}", b.dim(), t.dim())));
    }
    b.sigma().trace_product(t.operator())
}

/// Optimal type-II error under a uniform type-I budget.
#[derive(Debug, Clone)]
pub struct OptimalTest {
    pub beta: f64,
    pub test: Test,
    pub stats: SolverStats,
}

/// Minimizes `Tr σ Π` subject to `Tr ρ_i Π ≥ 1 − alpha_budget` and
/// `0 ⪯ Π ⪯ I`. The returned β is recomputed from the (spectrally clamped)
/// optimizer so the pair is always consistent.
pub fn optimal_type2(b: &StateBox, alpha_budget: f64) -> Result<OptimalTest> {
    optimal_type2_with(b, alpha_budget, &SdpOptions::default())
}

pub fn optimal_type2_with(
    b: &StateBox,
    alpha_budget: f64,
    opts: &SdpOptions,
) -> Result<OptimalTest> {
    if !(0.0..=1.0).contains(&alpha_budget) {
        return Err(Error::InvalidArgument(format!(
            "alpha budget must be in [0, 1], got {alpha_budget}"
        )));
    }
    if b.dim() == 0 {
        return Err(Error::InvalidArgument("zero box has no tests".into()));
    }
    let d = b.dim();
    let m = b.m();
    let basis = hermitian_basis(d);

    // Blocks: Π ⪰ 0 (d), I − Π ⪰ 0 (d), then one 1×1 block per ρ constraint.
    let mut block_dims = vec![d, d];
    block_dims.extend(std::iter::repeat_n(1, m));
    let mut c: Vec<DMatrix<Complex64>> = vec![DMatrix::zeros(d, d), DMatrix::identity(d, d)];
    for _ in 0..m {
        c.push(DMatrix::from_element(
            1,
            1,
            Complex64::new(-(1.0 - alpha_budget), 0.0),
        ));
    }

    let sparse_trace = |elem: &Triplets, op: &HermitianMatrix| -> f64 {
        elem.iter()
            .map(|&(r, cc, v)| (v * op.entry(cc, r)).re)
            .sum()
    };

    let mut constraints = Vec::with_capacity(basis.len());
    let mut b_vec = Vec::with_capacity(basis.len());
    for elem in &basis {
        let mut blocks: Vec<Triplets> = Vec::with_capacity(2 + m);
        blocks.push(elem.iter().map(|&(r, cc, v)| (r, cc, -v)).collect());
        blocks.push(elem.clone());
        for rho in b.rhos() {
            let t = sparse_trace(elem, rho);
            blocks.push(vec![(0, 0, Complex64::new(-t, 0.0))]);
        }
        constraints.push(ConstraintMatrix { blocks });
        b_vec.push(-sparse_trace(elem, b.sigma()));
    }

    let prob = SdpProblem {
        block_dims,
        c,
        constraints,
        b: b_vec,
    };
    let outcome = solve(&prob, opts)?;
    if !outcome.stats.converged {
        return Err(Error::SolverStalled {
            iterations: outcome.stats.iterations,
            gap: outcome.stats.duality_gap,
            primal: outcome.stats.primal_residual,
            dual: outcome.stats.dual_residual,
        });
    }

    // Clamp the optimizer spectrally into [0, 1] so it is a valid test.
    let pi_raw = HermitianMatrix::symmetrized(matrix_from_coords(d, &outcome.y));
    let (values, vectors) = pi_raw.eigh();
    let clamped: Vec<f64> = values.iter().map(|l| l.clamp(0.0, 1.0)).collect();
    let mut data = DMatrix::<Complex64>::zeros(d, d);
    for (k, &l) in clamped.iter().enumerate() {
        let col = vectors.column(k);
        data += (col * col.adjoint()) * Complex64::new(l, 0.0);
    }
    let test = Test::new(HermitianMatrix::symmetrized(data))?;
    let beta = type2_error(b, &test)?;
    Ok(OptimalTest {
        beta,
        test,
        stats: outcome.stats,
    })
}

/// The map `T(X) = Tr(XΠ)` of a test; its Choi matrix is `Πᵀ` on the
/// one-dimensional output space.
pub fn test_to_map(t: &Test) -> ChoiMatrix {
    let transposed = HermitianMatrix::symmetrized(t.operator().as_matrix().transpose());
    ChoiMatrix::new(t.dim(), 1, transposed).expect("a valid test is a valid subnormalized map")
}

/// Recovers the test `Π = T*(1)` from a map into the one-dimensional space.
pub fn map_to_test(j: &ChoiMatrix) -> Result<Test> {
    if j.dim_out() != 1 {
        return Err(Error::DimMismatch(format!(
            "map_to_test needs dim_out = 1, got {}",
            j.dim_out()
        )));
    }
    Test::new(HermitianMatrix::symmetrized(
        j.matrix().as_matrix().transpose(),
    ))
}

/// Target success/error probabilities for multi-hypothesis discrimination.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscriminationSpec {
    /// Required detection probabilities `Tr ρ_i Π_i ≥ a_i`.
    pub a: Vec<f64>,
    /// Allowed false alarms `Tr σ Π_i ≤ b_i`.
    pub b: Vec<f64>,
}

impl DiscriminationSpec {
    pub fn validate(&self, m: usize) -> Result<()> {
        if self.a.len() != m || self.b.len() != m {
            return Err(Error::DimMismatch(format!(
                "spec needs {m} entries, got {} and {}",
                self.a.len(),
                self.b.len()
            )));
        }
        if self
            .a
            .iter()
            .chain(&self.b)
            .any(|&v| !(0.0..=1.0).contains(&v))
        {
            return Err(Error::InvalidArgument(
                "spec entries must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }
}

/// Result of a POVM feasibility query: the conic outcome plus the POVM
/// elements themselves when feasible.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscriminationOutcome {
    pub feasibility: FeasibilityResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub povm: Option<Vec<HermitianMatrix>>,
}

/// Decides whether a POVM `(Π_1, …, Π_m, I − ΣΠ_i)` exists with
/// `Tr ρ_i Π_i ≥ a_i` and `Tr σ Π_i ≤ b_i`, by uniform slack maximization
/// directly in the Π variables.
pub fn discrimination_feasible(
    bx: &StateBox,
    spec: &DiscriminationSpec,
    tol: f64,
) -> Result<DiscriminationOutcome> {
    discrimination_feasible_with(bx, spec, tol, &SdpOptions::default())
}

pub fn discrimination_feasible_with(
    bx: &StateBox,
    spec: &DiscriminationSpec,
    tol: f64,
    opts: &SdpOptions,
) -> Result<DiscriminationOutcome> {
    spec.validate(bx.m())?;
    let d = bx.dim();
    let m = bx.m();
    if d == 0 {
        return Err(Error::InvalidArgument("zero box has no POVMs".into()));
    }
    let basis = hermitian_basis(d);
    let coords = basis.len();
    let num_vars = m * coords + 1;
    let lam = num_vars - 1;

    // Blocks: Π_i ⪰ 0 for each i (d), I − ΣΠ_i (d), then 2m scalar rows:
    // Tr ρ_i Π_i − a_i − λ ≥ 0 and b_i − Tr σ Π_i − λ ≥ 0.
    let mut block_dims = vec![d; m + 1];
    block_dims.extend(std::iter::repeat_n(1, 2 * m));
    let mut c: Vec<DMatrix<Complex64>> = vec![DMatrix::zeros(d, d); m];
    c.push(DMatrix::identity(d, d));
    for i in 0..m {
        c.push(DMatrix::from_element(1, 1, Complex64::new(-spec.a[i], 0.0)));
        c.push(DMatrix::from_element(1, 1, Complex64::new(spec.b[i], 0.0)));
    }

    let sparse_trace = |elem: &Triplets, op: &HermitianMatrix| -> f64 {
        elem.iter()
            .map(|&(r, cc, v)| (v * op.entry(cc, r)).re)
            .sum()
    };

    let num_blocks = 3 * m + 1;
    let mut constraints = Vec::with_capacity(num_vars);
    for i in 0..m {
        for elem in &basis {
            let mut cm = ConstraintMatrix::empty(num_blocks);
            cm.blocks[i] = elem.iter().map(|&(r, cc, v)| (r, cc, -v)).collect();
            cm.blocks[m] = elem.clone();
            let t_rho = sparse_trace(elem, bx.rho(i + 1)?);
            let t_sigma = sparse_trace(elem, bx.sigma());
            cm.blocks[m + 1 + 2 * i] = vec![(0, 0, Complex64::new(-t_rho, 0.0))];
            cm.blocks[m + 1 + 2 * i + 1] = vec![(0, 0, Complex64::new(t_sigma, 0.0))];
            constraints.push(cm);
        }
    }
    let mut slack = ConstraintMatrix::empty(num_blocks);
    for blk in &mut slack.blocks[m + 1..] {
        blk.push((0, 0, Complex64::new(1.0, 0.0)));
    }
    constraints.push(slack);

    let mut b_vec = vec![0.0; num_vars];
    b_vec[lam] = 1.0;

    let prob = SdpProblem {
        block_dims,
        c,
        constraints,
        b: b_vec,
    };
    let outcome = solve(&prob, opts)?;
    if !outcome.stats.converged {
        return Err(Error::SolverStalled {
            iterations: outcome.stats.iterations,
            gap: outcome.stats.duality_gap,
            primal: outcome.stats.primal_residual,
            dual: outcome.stats.dual_residual,
        });
    }
    let slack_value = outcome.y[lam];
    let feasible = slack_value >= -tol;
    let mut stats = outcome.stats.clone();
    stats.marginal = Some(slack_value.abs() < tol);

    let (witness, povm) = if feasible {
        let povm: Vec<HermitianMatrix> = (0..m)
            .map(|i| {
                HermitianMatrix::symmetrized(matrix_from_coords(
                    d,
                    &outcome.y[i * coords..(i + 1) * coords],
                ))
            })
            .collect();
        // Channel of the POVM: T(X) = Σ_i Tr(XΠ_i)·E_ii, J = Σ_i Π_iᵀ ⊗ E_ii.
        let mut j = DMatrix::<Complex64>::zeros(d * m, d * m);
        for (i, pi) in povm.iter().enumerate() {
            for k in 0..d {
                for l in 0..d {
                    j[(k * m + i, l * m + i)] = pi.entry(l, k);
                }
            }
        }
        let choi = ChoiMatrix::new(d, m, HermitianMatrix::symmetrized(j))?;
        let mut min_margin = f64::INFINITY;
        for (i, pi) in povm.iter().enumerate() {
            min_margin = min_margin.min(bx.rho(i + 1)?.trace_product(pi)? - spec.a[i]);
            min_margin = min_margin.min(spec.b[i] - bx.sigma().trace_product(pi)?);
        }
        stats.witness_margin = Some(min_margin);
        (Some(choi), Some(povm))
    } else {
        (None, None)
    };

    Ok(DiscriminationOutcome {
        feasibility: FeasibilityResult {
            feasible,
            slack: slack_value,
            witness,
            certificate: None,
            solver_stats: stats,
        },
        povm,
    })
}

/// The standard basis box `(a_1 E_11, …, a_m E_mm, Σ_i b_i E_ii)` encoding a
/// discrimination spec as a box on `C^m`.
pub fn std_box(spec: &DiscriminationSpec) -> Result<StateBox> {
    let m = spec.m();
    spec.validate(m)?;
    let rhos: Vec<HermitianMatrix> = (0..m)
        .map(|i| {
            let mut diag = vec![0.0; m];
            diag[i] = spec.a[i];
            HermitianMatrix::diagonal(&diag)
        })
        .collect();
    let sigma = HermitianMatrix::diagonal(&spec.b);
    StateBox::new(rhos, sigma)
}

/// Entrywise power of the standard box: `(a_1^n E_11, …, a_m^n E_mm, Bⁿ)`.
///
/// By the power identities this box is dominated by and dominates the n-th
/// tensor power of the standard box, which is what makes exponent statements
/// single-letter.
pub fn std_box_power(spec: &DiscriminationSpec, n: usize) -> Result<StateBox> {
    if n == 0 {
        return Err(Error::InvalidArgument("power must be n >= 1".into()));
    }
    let m = spec.m();
    spec.validate(m)?;
    if spec.b.iter().any(|&v| v <= 0.0) {
        return Err(Error::SigmaNotPd {
            min_eig: spec.b.iter().cloned().fold(f64::INFINITY, f64::min),
        });
    }
    let powered = DiscriminationSpec {
        a: spec.a.iter().map(|v| v.powi(n as i32)).collect(),
        b: spec.b.iter().map(|v| v.powi(n as i32)).collect(),
    };
    std_box(&powered)
}

/// Sweeps [`optimal_type2`] over a list of budgets; with ascending budgets
/// the β values are nonincreasing (the feasible sets nest).
pub fn tradeoff_curve(b: &StateBox, budgets: &[f64]) -> Result<Vec<(f64, f64)>> {
    budgets
        .iter()
        .map(|&alpha| optimal_type2(b, alpha).map(|o| (alpha, o.beta)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normalized_qubit_box() -> StateBox {
        StateBox::new(
            vec![HermitianMatrix::diagonal(&[1.0, 0.0])],
            HermitianMatrix::diagonal(&[0.5, 0.5]),
        )
        .unwrap()
    }

    #[test]
    fn error_formulas_at_extreme_tests() {
        let b = normalized_qubit_box();
        let full = Test::new(HermitianMatrix::identity(2)).unwrap();
        let (alphas, sig) = type1_errors(&b, &full).unwrap();
        assert!(alphas[0].abs() < 1e-12 && sig.abs() < 1e-12);
        assert!((type2_error(&b, &full).unwrap() - 1.0).abs() < 1e-12);

        let nothing = Test::new(HermitianMatrix::zeros(2)).unwrap();
        let (alphas, sig) = type1_errors(&b, &nothing).unwrap();
        assert!((alphas[0] - 1.0).abs() < 1e-12 && (sig - 1.0).abs() < 1e-12);
        assert!(type2_error(&b, &nothing).unwrap().abs() < 1e-12);
    }

    #[test]
    fn test_map_dictionary_roundtrip() {
        let pi = HermitianMatrix::from_parts(
            &[vec![0.7, 0.1], vec![0.1, 0.4]],
            &[vec![0.0, 0.2], vec![-0.2, 0.0]],
            1e-9,
        )
        .unwrap();
        let t = Test::new(pi).unwrap();
        let j = test_to_map(&t);
        let back = map_to_test(&j).unwrap();
        assert!(back.operator().sub(t.operator()).unwrap().max_abs() < 1e-12);
        // Probabilities agree through either representation.
        let b = normalized_qubit_box();
        let via_map = j.apply(b.rho(1).unwrap()).unwrap().entry(0, 0).re;
        let direct = b.rho(1).unwrap().trace_product(t.operator()).unwrap();
        assert!((via_map - direct).abs() < 1e-12);
    }

    #[test]
    fn map_to_test_needs_scalar_output() {
        let j = ChoiMatrix::identity_map(2);
        assert!(map_to_test(&j).is_err());
    }

    #[test]
    fn optimal_type2_full_budget_gives_zero() {
        let b = normalized_qubit_box();
        let opt = optimal_type2(&b, 1.0).unwrap();
        assert!(opt.beta < 1e-6, "beta = {}", opt.beta);
    }

    #[test]
    fn optimal_type2_identical_states() {
        // ρ = σ forces β* = 1 − alpha_budget.
        let sigma = HermitianMatrix::diagonal(&[0.5, 0.5]);
        let b = StateBox::new(vec![sigma.clone()], sigma).unwrap();
        for budget in [0.25, 0.5, 0.9] {
            let opt = optimal_type2(&b, budget).unwrap();
            assert!(
                (opt.beta - (1.0 - budget)).abs() < 1e-5,
                "budget {budget}: beta = {}",
                opt.beta
            );
        }
    }

    #[test]
    fn optimal_type2_nearly_orthogonal_states() {
        // σ = diag(ε, 1−ε) against ρ = |0><0| has β* = ε(1 − budget).
        let eps = 1e-3;
        let b = StateBox::new(
            vec![HermitianMatrix::diagonal(&[1.0, 0.0])],
            HermitianMatrix::diagonal(&[eps, 1.0 - eps]),
        )
        .unwrap();
        let opt = optimal_type2(&b, 0.2).unwrap();
        assert!((opt.beta - eps * 0.8).abs() < 1e-6, "beta = {}", opt.beta);
    }

    #[test]
    fn discrimination_trivial_spec_is_feasible() {
        let b = StateBox::new(
            vec![
                HermitianMatrix::diagonal(&[1.0, 0.0]),
                HermitianMatrix::diagonal(&[0.0, 1.0]),
            ],
            HermitianMatrix::diagonal(&[0.3, 0.7]),
        )
        .unwrap();
        let spec = DiscriminationSpec {
            a: vec![0.0, 0.0],
            b: vec![0.5, 0.5],
        };
        let out = discrimination_feasible(&b, &spec, 1e-7).unwrap();
        assert!(out.feasibility.feasible);
        assert!(out.povm.is_some());
    }

    #[test]
    fn discrimination_projective_on_orthogonal_states() {
        let b = StateBox::new(
            vec![
                HermitianMatrix::diagonal(&[1.0, 0.0]),
                HermitianMatrix::diagonal(&[0.0, 1.0]),
            ],
            HermitianMatrix::diagonal(&[0.3, 0.7]),
        )
        .unwrap();
        let spec = DiscriminationSpec {
            a: vec![1.0, 1.0],
            b: vec![0.3, 0.7],
        };
        let out = discrimination_feasible(&b, &spec, 1e-6).unwrap();
        assert!(
            out.feasibility.feasible,
            "slack = {}",
            out.feasibility.slack
        );
        let povm = out.povm.unwrap();
        // POVM validity within tolerance.
        let sum = povm[0].add(&povm[1]).unwrap();
        assert!(sum.eigenvalues()[0] <= 1.0 + 1e-6);
        assert!(povm.iter().all(|p| p.min_eigenvalue() > -1e-7));
    }

    #[test]
    fn discrimination_m1_matches_composite_test() {
        // m = 1: POVM feasibility is the test condition α ≤ 1−a, β ≤ b.
        let b = normalized_qubit_box();
        let spec = DiscriminationSpec {
            a: vec![0.9],
            b: vec![0.5],
        };
        let out = discrimination_feasible(&b, &spec, 1e-7).unwrap();
        // Π = 0.9·|0><0| gives Tr ρΠ = 0.9, Tr σΠ = 0.45 ≤ 0.5.
        assert!(out.feasibility.feasible);
        let infeasible_spec = DiscriminationSpec {
            a: vec![0.9],
            b: vec![0.2],
        };
        let out = discrimination_feasible(&b, &infeasible_spec, 1e-7).unwrap();
        // Any Π with Tr ρΠ ≥ 0.9 has Π₀₀ ≥ 0.9, so Tr σΠ ≥ 0.45 > 0.2.
        assert!(!out.feasibility.feasible);
    }

    #[test]
    fn std_box_power_values() {
        let spec = DiscriminationSpec {
            a: vec![0.5, 0.25],
            b: vec![0.4, 0.6],
        };
        let one = std_box_power(&spec, 1).unwrap();
        assert_eq!(one, std_box(&spec).unwrap());
        let idem = DiscriminationSpec {
            a: vec![1.0, 1.0],
            b: vec![1.0, 1.0],
        };
        assert_eq!(std_box_power(&idem, 3).unwrap(), std_box(&idem).unwrap());
        let two = std_box_power(&spec, 2).unwrap();
        assert!((two.rho(1).unwrap().entry(0, 0).re - 0.25).abs() < 1e-12);
        assert!((two.rho(2).unwrap().entry(1, 1).re - 0.0625).abs() < 1e-12);
    }

    #[test]
    fn tradeoff_curve_is_monotone() {
        let b = normalized_qubit_box();
        let budgets = [0.1, 0.3, 0.5, 0.8, 1.0];
        let curve = tradeoff_curve(&b, &budgets).unwrap();
        assert_eq!(curve.len(), budgets.len());
        for w in curve.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-6, "curve not monotone: {curve:?}");
        }
        let last = curve.last().unwrap();
        assert!(last.1 < 1e-6);
    }
}
