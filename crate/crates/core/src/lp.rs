//! Dense two-phase primal simplex with Bland's rule.
//!
//! Small, deterministic, and independent of the SDP machinery on purpose: it
//! backs the classical (commuting-box) route so the two solvers can be used
//! as cross-oracles for each other. Problem sizes here are tens of variables.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LpRow {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

/// `maximize objective · x` over `x ≥ 0` subject to the rows.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub rows: Vec<LpRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    /// One multiplier per input row (zero for rows detected as redundant),
    /// in the convention where the dual objective is `Σ_i duals_i · rhs_i`;
    /// at an optimum `≤` rows carry nonnegative duals and `≥` rows
    /// nonpositive ones.
    pub duals: Vec<f64>,
}

struct Tableau {
    rows: usize,
    cols: usize, // total columns excluding rhs
    a: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    /// reduced costs c_j − z_j for the current objective
    red: Vec<f64>,
    obj: f64,
    active: Vec<bool>, // deleted redundant rows are deactivated
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.a[row][col];
        for j in 0..self.cols {
            self.a[row][j] /= piv;
        }
        self.rhs[row] /= piv;
        for i in 0..self.rows {
            if i == row || !self.active[i] {
                continue;
            }
            let factor = self.a[i][col];
            if factor == 0.0 {
                continue;
            }
            for j in 0..self.cols {
                self.a[i][j] -= factor * self.a[row][j];
            }
            self.rhs[i] -= factor * self.rhs[row];
        }
        let factor = self.red[col];
        if factor != 0.0 {
            for j in 0..self.cols {
                self.red[j] -= factor * self.a[row][j];
            }
            self.obj += factor * self.rhs[row];
        }
        self.basis[row] = col;
    }

    fn set_objective(&mut self, costs: &[f64]) {
        self.red = costs.to_vec();
        self.obj = 0.0;
        // Price out the basic columns.
        for i in 0..self.rows {
            if !self.active[i] {
                continue;
            }
            let cb = costs[self.basis[i]];
            if cb == 0.0 {
                continue;
            }
            for j in 0..self.cols {
                self.red[j] -= cb * self.a[i][j];
            }
            self.obj += cb * self.rhs[i];
        }
    }

    /// Bland's rule iteration until optimal or unbounded.
    fn run(&mut self, allowed: &[bool]) -> LpStatus {
        loop {
            // Entering: lowest-index allowed column with positive reduced cost.
            let entering = (0..self.cols).find(|&j| allowed[j] && self.red[j] > COST_TOL);
            let Some(col) = entering else {
                return LpStatus::Optimal;
            };
            // Ratio test, Bland ties by basis variable index.
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                if !self.active[i] || self.a[i][col] <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs[i] / self.a[i][col];
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        if ratio < best_ratio - PIVOT_TOL
                            || ((ratio - best_ratio).abs() <= PIVOT_TOL
                                && self.basis[i] < self.basis[best])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
            let Some((row, _)) = leave else {
                return LpStatus::Unbounded;
            };
            self.pivot(row, col);
        }
    }
}

pub fn solve_lp(prob: &LpProblem) -> Result<LpSolution> {
    let n = prob.num_vars;
    if prob.objective.len() != n {
        return Err(Error::DimMismatch("objective length".into()));
    }
    for row in &prob.rows {
        if row.coeffs.len() != n {
            return Err(Error::DimMismatch("row length".into()));
        }
    }
    let m = prob.rows.len();

    // Normalize to nonnegative right-hand sides.
    let mut senses = Vec::with_capacity(m);
    let mut flipped = vec![false; m];
    let mut data: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut rhs: Vec<f64> = Vec::with_capacity(m);
    for (i, row) in prob.rows.iter().enumerate() {
        let mut coeffs = row.coeffs.clone();
        let mut b = row.rhs;
        let mut sense = row.sense;
        if b < 0.0 {
            for v in &mut coeffs {
                *v = -*v;
            }
            b = -b;
            sense = match sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
            flipped[i] = true;
        }
        senses.push(sense);
        data.push(coeffs);
        rhs.push(b);
    }

    // Column layout: structural | slack/surplus | artificial.
    let mut adjust_col = vec![usize::MAX; m];
    let mut art_col = vec![usize::MAX; m];
    let mut cols = n;
    for (i, sense) in senses.iter().enumerate() {
        if matches!(sense, Sense::Le | Sense::Ge) {
            adjust_col[i] = cols;
            cols += 1;
        }
    }
    let art_start = cols;
    for (i, sense) in senses.iter().enumerate() {
        if matches!(sense, Sense::Ge | Sense::Eq) {
            art_col[i] = cols;
            cols += 1;
        }
    }

    let mut a = vec![vec![0.0; cols]; m];
    let mut basis = vec![0usize; m];
    for i in 0..m {
        a[i][..n].copy_from_slice(&data[i]);
        match senses[i] {
            Sense::Le => {
                a[i][adjust_col[i]] = 1.0;
                basis[i] = adjust_col[i];
            }
            Sense::Ge => {
                a[i][adjust_col[i]] = -1.0;
                a[i][art_col[i]] = 1.0;
                basis[i] = art_col[i];
            }
            Sense::Eq => {
                a[i][art_col[i]] = 1.0;
                basis[i] = art_col[i];
            }
        }
    }

    let mut tab = Tableau {
        rows: m,
        cols,
        a,
        rhs,
        basis,
        red: vec![0.0; cols],
        obj: 0.0,
        active: vec![true; m],
    };

    // Phase 1: maximize −Σ artificials.
    let needs_phase1 = (0..m).any(|i| art_col[i] != usize::MAX);
    if needs_phase1 {
        let mut costs = vec![0.0; cols];
        for c in &mut costs[art_start..] {
            *c = -1.0;
        }
        tab.set_objective(&costs);
        let allowed = vec![true; cols];
        tab.run(&allowed);
        if tab.obj < -1e-7 {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: vec![0.0; n],
                objective: f64::NEG_INFINITY,
                duals: vec![0.0; m],
            });
        }
        // Drive artificials out of the basis; fully zero rows are redundant.
        for i in 0..m {
            if !tab.active[i] || tab.basis[i] < art_start {
                continue;
            }
            let col = (0..art_start).find(|&j| tab.a[i][j].abs() > PIVOT_TOL);
            match col {
                Some(j) => tab.pivot(i, j),
                None => tab.active[i] = false,
            }
        }
    }

    // Phase 2 with the real objective; artificials may not re-enter.
    let mut costs = vec![0.0; cols];
    costs[..n].copy_from_slice(&prob.objective);
    tab.set_objective(&costs);
    let mut allowed = vec![true; cols];
    for a in &mut allowed[art_start..] {
        *a = false;
    }
    let status = tab.run(&allowed);
    if status == LpStatus::Unbounded {
        return Err(Error::LpUnbounded);
    }

    let mut x = vec![0.0; n];
    for i in 0..m {
        if tab.active[i] && tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs[i];
        }
    }

    // Duals from the reduced costs of each row's own column.
    let mut duals = vec![0.0; m];
    for i in 0..m {
        if !tab.active[i] {
            continue;
        }
        let y = match senses[i] {
            Sense::Le => -tab.red[adjust_col[i]],
            Sense::Ge => tab.red[adjust_col[i]],
            Sense::Eq => -tab.red[art_col[i]],
        };
        duals[i] = if flipped[i] { -y } else { y };
    }

    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective: tab.obj,
        duals,
    })
}
