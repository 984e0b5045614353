//! Decision procedures on top of the monotone family.
//!
//! The asymptotic preorder between boxes is equivalent to the full family of
//! monotone inequalities `f̃_{α,i}(A) ≥ f̃_{α,i}(B)` over `α ∈ [1, ∞)`; the
//! quantified condition is decided on a finite grid in `s = (α-1)/α` plus the
//! `α = ∞` endpoint, with golden-section refinement around the worst margin.
//! Margins are relative (the values span many orders of magnitude across α)
//! and all comparisons run on `log₂ f`.

use serde::{Deserialize, Serialize};

use crate::boxes::{ScalarBox, StateBox};
use crate::error::{Error, Result};
use crate::monotones::{log2_sandwiched_f, s_grid, sandwiched_divergence, Alpha, MonotoneIndex};

/// Default number of finite grid points in `s`.
pub const DEFAULT_GRID_POINTS: usize = 128;
/// Default decision tolerance on relative margins.
pub const DEFAULT_DECISION_TOL: f64 = 1e-9;
/// Default strictness threshold for certificates.
pub const DEFAULT_STRICT_TOL: f64 = 1e-9;

const GOLDEN_ITERS: usize = 80;

/// Grid resolution and refinement controls.
#[derive(Debug, Clone, Copy)]
pub struct GridOptions {
    pub points: usize,
    pub refine: bool,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            points: DEFAULT_GRID_POINTS,
            refine: true,
        }
    }
}

/// One evaluated grid point of a comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridPoint {
    pub i: usize,
    pub alpha: Alpha,
    pub f_a: f64,
    pub f_b: f64,
    pub log2_f_a: f64,
    pub log2_f_b: f64,
    /// Relative margin `(f_a − f_b) / max(f_a, f_b)` in `[-1, 1]`.
    pub margin: f64,
}

/// Outcome of an asymptotic-preorder query, with the full grid for audit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AsymptoticDecision {
    pub holds: bool,
    pub worst_margin: f64,
    pub worst_index: MonotoneIndex,
    pub grid: Vec<GridPoint>,
    /// Grid resolution and refinement depth actually used.
    pub grid_points: usize,
    pub refined: bool,
}

/// Certificate that all monotone inequalities are strict, which is the
/// hypothesis for the many-copy and catalytic conclusions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrictCertificate {
    pub all_strict: bool,
    /// Smallest relative gap over the finite-α part (after refinement).
    pub min_gap_finite: f64,
    /// Relative gap of the tropical (`α = ∞`) inequality.
    pub gap_at_infinity: f64,
}

/// Relative margin between two log₂ values, stable across magnitudes.
fn rel_margin(log2_a: f64, log2_b: f64) -> f64 {
    let a_zero = log2_a == f64::NEG_INFINITY;
    let b_zero = log2_b == f64::NEG_INFINITY;
    match (a_zero, b_zero) {
        (true, true) => 0.0,
        (true, false) => -1.0,
        (false, true) => 1.0,
        (false, false) => {
            if log2_a >= log2_b {
                1.0 - (log2_b - log2_a).exp2()
            } else {
                (log2_a - log2_b).exp2() - 1.0
            }
        }
    }
}

/// Golden-section search minimizing `f` on `[lo, hi]`.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_ITERS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn log2_f(bx: &StateBox, i: usize, alpha: Alpha) -> f64 {
    log2_sandwiched_f(bx, MonotoneIndex::new(i, alpha))
        .expect("box components were validated at construction")
}

/// Decides `A ≳ B` (asymptotic relative submajorization) by checking the
/// monotone inequalities on the s-grid including the `α = ∞` endpoint.
pub fn asymptotic_geq(
    a: &StateBox,
    b: &StateBox,
    decision_tol: f64,
    opts: &GridOptions,
) -> Result<AsymptoticDecision> {
    if a.m() != b.m() {
        return Err(Error::ArityMismatch(a.m(), b.m()));
    }
    let alphas = s_grid(opts.points);
    let mut grid = Vec::with_capacity(a.m() * alphas.len());
    let mut worst_margin = f64::INFINITY;
    let mut worst_index = MonotoneIndex::new(1, Alpha::Finite(1.0));

    for i in 1..=a.m() {
        let mut worst_finite_s: Option<(f64, f64)> = None;
        for &alpha in &alphas {
            let la = log2_f(a, i, alpha);
            let lb = log2_f(b, i, alpha);
            let margin = rel_margin(la, lb);
            grid.push(GridPoint {
                i,
                alpha,
                f_a: la.exp2(),
                f_b: lb.exp2(),
                log2_f_a: la,
                log2_f_b: lb,
                margin,
            });
            if margin < worst_margin {
                worst_margin = margin;
                worst_index = MonotoneIndex::new(i, alpha);
            }
            if !alpha.is_infinite() {
                let s = alpha.to_s();
                if worst_finite_s.is_none_or(|(_, m)| margin < m) {
                    worst_finite_s = Some((s, margin));
                }
            }
        }
        if opts.refine {
            if let Some((s_w, _)) = worst_finite_s {
                let step = 1.0 / opts.points as f64;
                let lo = (s_w - step).max(0.0);
                let hi = (s_w + step).min(1.0 - step / 2.0);
                let margin_at = |s: f64| {
                    let alpha = Alpha::from_s(s).expect("s clamped to [0,1)");
                    rel_margin(log2_f(a, i, alpha), log2_f(b, i, alpha))
                };
                let (s_ref, m_ref) = golden_min(margin_at, lo, hi);
                if m_ref < worst_margin {
                    worst_margin = m_ref;
                    worst_index =
                        MonotoneIndex::new(i, Alpha::from_s(s_ref).expect("refined s in range"));
                }
            }
        }
    }

    Ok(AsymptoticDecision {
        holds: worst_margin >= -decision_tol,
        worst_margin,
        worst_index,
        grid,
        grid_points: opts.points,
        refined: opts.refine,
    })
}

/// Checks the strict-inequality hypotheses (finite α and the tropical
/// endpoint) that guarantee many-copy and catalytic transformability.
pub fn strict_certificate(
    a: &StateBox,
    b: &StateBox,
    strict_tol: f64,
    opts: &GridOptions,
) -> Result<StrictCertificate> {
    let decision = asymptotic_geq(a, b, DEFAULT_DECISION_TOL, opts)?;
    let mut min_gap_finite = f64::INFINITY;
    let mut gap_at_infinity = f64::INFINITY;
    for point in &decision.grid {
        if point.alpha.is_infinite() {
            gap_at_infinity = gap_at_infinity.min(point.margin);
        } else {
            min_gap_finite = min_gap_finite.min(point.margin);
        }
    }
    // The refined worst margin tightens whichever part it belongs to.
    if decision.worst_index.alpha.is_infinite() {
        gap_at_infinity = gap_at_infinity.min(decision.worst_margin);
    } else {
        min_gap_finite = min_gap_finite.min(decision.worst_margin);
    }
    Ok(StrictCertificate {
        all_strict: min_gap_finite > strict_tol && gap_at_infinity > strict_tol,
        min_gap_finite,
        gap_at_infinity,
    })
}

/// Exponents from the power-universal construction: `k = max(k₁, k₂)` with
/// `u^{k} ⪰ A` and `u^{k}·A ⪰ 1`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PowerUniversalExponent {
    pub k: u32,
    pub k1: u32,
    pub k2: u32,
}

/// Computes the construction exponents (not minimal ones): `k₁` makes
/// `x ↦ 2^{-k₁/2} x σ` trace-nonincreasing with `2^{k₁/2} σ ⪰ ρ_i`, and
/// `k₂` does the same for `x ↦ 2^{-k₂/2} Tr x / Tr σ`.
pub fn power_universal_exponent(a: &StateBox) -> Result<PowerUniversalExponent> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("zero box has no exponent".into()));
    }
    if a.rhos().iter().any(|r| r.max_abs() == 0.0) {
        return Err(Error::InvalidArgument(
            "power universal exponent needs all rho components nonzero".into(),
        ));
    }
    let tr_sigma = a.sigma().trace();
    let ceil_nat = |x: f64| -> u32 {
        if x <= 0.0 {
            0
        } else {
            (x - 1e-9).ceil().max(0.0) as u32
        }
    };
    let mut k1_bound = 2.0 * tr_sigma.log2();
    let mut k2_bound = -2.0 * tr_sigma.log2();
    for i in 1..=a.m() {
        let log2_f_inf = log2_f(a, i, Alpha::Infinity);
        k1_bound = k1_bound.max(2.0 * log2_f_inf);
        k2_bound = k2_bound.max(2.0 * (tr_sigma / a.rho(i)?.trace()).log2());
    }
    let k1 = ceil_nat(k1_bound);
    let k2 = ceil_nat(k2_bound);
    Ok(PowerUniversalExponent {
        k: k1.max(k2),
        k1,
        k2,
    })
}

/// Per-component exponent with its optimizing order.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IndexExponent {
    pub i: usize,
    pub value: f64,
    pub argmax_alpha: Alpha,
}

/// Strong-converse exponent result: `value = max_i per_index[i].value`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExponentResult {
    pub value: f64,
    pub argmax_alpha: Alpha,
    pub per_index: Vec<IndexExponent>,
}

fn index_exponent(a: &StateBox, i: usize, r: f64, opts: &GridOptions) -> Result<IndexExponent> {
    let divergence_at = |alpha: Alpha| -> f64 {
        sandwiched_divergence(a, MonotoneIndex::new(i, alpha))
            .expect("box components were validated at construction")
    };
    // g(s) = s·(r − D̃_{1/(1-s)}); the s → 0 limit is 0 and the s = 1
    // endpoint uses the max-divergence.
    let g = |s: f64| -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        let alpha = Alpha::from_s(s.min(1.0)).expect("s in range");
        s * (r - divergence_at(alpha))
    };
    let points = opts.points.max(8);
    let mut best_s = 0.0;
    let mut best = 0.0f64;
    for k in 1..points {
        let s = k as f64 / points as f64;
        let v = g(s);
        if v > best {
            best = v;
            best_s = s;
        }
    }
    let endpoint = r - divergence_at(Alpha::Infinity);
    if opts.refine && best_s > 0.0 {
        let step = 1.0 / points as f64;
        let lo = (best_s - step).max(0.0);
        let hi = (best_s + step).min(1.0);
        let (s_ref, neg) = golden_min(|s| -g(s), lo, hi);
        if -neg > best {
            best = -neg;
            best_s = s_ref;
        }
    }
    let (value, argmax_alpha) = if endpoint >= best && endpoint > 0.0 {
        (endpoint, Alpha::Infinity)
    } else if best > 0.0 {
        (best, Alpha::from_s(best_s.min(1.0))?)
    } else {
        // Supremum approached at α → 1 with value 0.
        (0.0, Alpha::Finite(1.0))
    };
    Ok(IndexExponent {
        i,
        value,
        argmax_alpha,
    })
}

/// Strong-converse exponent
/// `R*(r) = max_i sup_{α>1} (α-1)/α · [r − D̃_α(ρ_i ‖ σ)]` for a normalized box.
pub fn strong_converse_exponent(
    a: &StateBox,
    r: f64,
    opts: &GridOptions,
) -> Result<ExponentResult> {
    if r < 0.0 {
        return Err(Error::InvalidArgument(format!("r must be >= 0, got {r}")));
    }
    if !a.normalize_check(1e-6) {
        return Err(Error::InvalidArgument(
            "strong converse exponent needs a normalized box".into(),
        ));
    }
    let per_index: Vec<IndexExponent> = (1..=a.m())
        .map(|i| index_exponent(a, i, r, opts))
        .collect::<Result<_>>()?;
    let best = per_index
        .iter()
        .max_by(|x, y| x.value.partial_cmp(&y.value).expect("finite exponents"))
        .expect("m >= 1");
    Ok(ExponentResult {
        value: best.value,
        argmax_alpha: best.argmax_alpha,
        per_index,
    })
}

/// Feasibility of an exponent pair vector: each `R_i` must clear its
/// per-index supremum computed with rate `r_i`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionCheck {
    pub ok: bool,
    /// `R_i − sup_i` per index; nonnegative margins mean achievable.
    pub margins: Vec<f64>,
    pub per_index: Vec<IndexExponent>,
}

pub fn exponent_region_check(
    a: &StateBox,
    big_r: &[f64],
    r: &[f64],
    opts: &GridOptions,
) -> Result<RegionCheck> {
    if big_r.len() != a.m() || r.len() != a.m() {
        return Err(Error::DimMismatch(format!(
            "need {} rate pairs, got {} and {}",
            a.m(),
            big_r.len(),
            r.len()
        )));
    }
    if big_r.iter().chain(r).any(|&v| v < 0.0) {
        return Err(Error::InvalidArgument("rates must be nonnegative".into()));
    }
    if !a.normalize_check(1e-6) {
        return Err(Error::InvalidArgument(
            "exponent region check needs a normalized box".into(),
        ));
    }
    let mut per_index = Vec::with_capacity(a.m());
    let mut margins = Vec::with_capacity(a.m());
    for i in 1..=a.m() {
        let idx = index_exponent(a, i, r[i - 1], opts)?;
        margins.push(big_r[i - 1] - idx.value);
        per_index.push(idx);
    }
    Ok(RegionCheck {
        ok: margins.iter().all(|&m| m >= -1e-9),
        margins,
        per_index,
    })
}

/// The scalar target `(2^{-R}, …, 2^{-R}, 2^{-r})` whose domination encodes
/// achievability of the error exponents (R, r).
pub fn rate_target_box(m: usize, big_r: f64, r: f64) -> StateBox {
    ScalarBox::rate_target(m, big_r, r).to_box()
}
