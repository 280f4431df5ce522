//! Dense bounded-variable two-phase simplex.
//!
//! The tableau `T = B^-1 * A` is kept explicitly and updated by Gaussian
//! pivots. Every row gets a slack column (turning it into an equality) and an
//! artificial column; artificial columns double as a readable copy of `B^-1`,
//! which is where the row duals come from at the end. Rows whose slack can
//! absorb the initial residual start with the slack basic, so problems that
//! are feasible at the variable bounds (such as the flow programs built in
//! this crate, feasible at zero flow) skip phase 1 entirely.

use std::time::Instant;

use super::{LinearProgram, LpSolution, Rel, Sense, SolveStatus, SolverLimits};
use crate::error::{Error, Result};

/// Reduced-cost threshold: smaller magnitudes count as optimal.
const DUAL_TOL: f64 = 1e-9;
/// Pivot elements and ratio-test denominators below this count as zero.
const PIVOT_TOL: f64 = 1e-9;
/// Step lengths below this count as degenerate.
const DEGEN_TOL: f64 = 1e-10;
/// Residual infeasibility allowed at the end of phase 1.
const PHASE1_TOL: f64 = 1e-7;
/// Consecutive degenerate pivots before switching to Bland's rule.
const DEGEN_SWITCH: usize = 60;

pub(crate) fn solve(
    lp: &LinearProgram,
    limits: &SolverLimits,
    bounds_override: Option<&[(f64, f64)]>,
) -> Result<LpSolution> {
    solve_with_deadline(lp, limits, bounds_override, limits.deadline())
}

pub(crate) fn solve_with_deadline(
    lp: &LinearProgram,
    limits: &SolverLimits,
    bounds_override: Option<&[(f64, f64)]>,
    deadline: Option<Instant>,
) -> Result<LpSolution> {
    let mut tab = match Tableau::build(lp, bounds_override)? {
        Built::Ready(tab) => tab,
        Built::EmptyBounds => return Ok(outcome(lp, SolveStatus::Infeasible, None, 0)),
    };
    let iteration_limit = limits
        .iteration_limit
        .unwrap_or_else(|| 10_000.max(200 * (tab.m + tab.ncols)));

    let mut iterations = 0usize;
    if tab.needs_phase1 {
        tab.set_phase1_costs();
        match tab.run(iteration_limit, &mut iterations, deadline)? {
            LoopExit::Converged => {}
            LoopExit::Unbounded => {
                return Err(Error::Solver("phase 1 reported unbounded".into()));
            }
            LoopExit::Limit => return Ok(outcome(lp, SolveStatus::Limit, None, iterations)),
        }
        if tab.artificial_total() > PHASE1_TOL {
            return Ok(outcome(lp, SolveStatus::Infeasible, None, iterations));
        }
        tab.drive_out_artificials();
    }
    tab.fix_artificials_at_zero();
    tab.set_phase2_costs(lp);
    let status = match tab.run(iteration_limit, &mut iterations, deadline)? {
        LoopExit::Converged => SolveStatus::Optimal,
        LoopExit::Unbounded => return Ok(outcome(lp, SolveStatus::Unbounded, None, iterations)),
        LoopExit::Limit => return Ok(outcome(lp, SolveStatus::Limit, None, iterations)),
    };
    Ok(outcome(lp, status, Some(&tab), iterations))
}

fn outcome(
    lp: &LinearProgram,
    status: SolveStatus,
    tab: Option<&Tableau>,
    iterations: usize,
) -> LpSolution {
    let mult = match lp.sense {
        Sense::Maximize => -1.0,
        Sense::Minimize => 1.0,
    };
    match (status, tab) {
        (SolveStatus::Optimal, Some(tab)) => {
            let values = tab.structural_values();
            let objective: f64 = lp
                .vars
                .iter()
                .zip(&values)
                .map(|(v, &x)| v.objective * x)
                .sum();
            LpSolution {
                status,
                objective,
                duals: tab.duals(mult),
                values,
                iterations,
                nodes: 0,
            }
        }
        _ => LpSolution {
            status,
            objective: 0.0,
            values: Vec::new(),
            duals: Vec::new(),
            iterations,
            nodes: 0,
        },
    }
}

enum Built {
    Ready(Tableau),
    /// Some variable has an empty bound range (possible under branching).
    EmptyBounds,
}

enum LoopExit {
    Converged,
    Unbounded,
    Limit,
}

struct Tableau {
    m: usize,
    nstruct: usize,
    ncols: usize,
    /// `t[i]` is row `i` of `B^-1 * A_full`, length `ncols`.
    t: Vec<Vec<f64>>,
    /// Column basic in each row.
    basis: Vec<usize>,
    /// Row a column is basic in, if any.
    basic_row: Vec<Option<usize>>,
    /// Current value of each basic variable, per row.
    xb: Vec<f64>,
    /// Resting value of each nonbasic column (basic entries are stale).
    vals: Vec<f64>,
    lo: Vec<f64>,
    up: Vec<f64>,
    cost: Vec<f64>,
    /// Sign the artificial column of each row was created with.
    sigma: Vec<f64>,
    needs_phase1: bool,
    /// Consecutive degenerate pivots; at `DEGEN_SWITCH` pricing falls back
    /// to Bland's rule until a real step is taken.
    degen_run: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram, bounds_override: Option<&[(f64, f64)]>) -> Result<Built> {
        let m = lp.rows.len();
        let nstruct = lp.vars.len();
        let ncols = nstruct + 2 * m;
        let slack = |i: usize| nstruct + i;
        let art = |i: usize| nstruct + m + i;

        let mut lo = vec![0.0; ncols];
        let mut up = vec![0.0; ncols];
        let mut vals = vec![0.0; ncols];
        for (j, var) in lp.vars.iter().enumerate() {
            let (l, u) = match bounds_override {
                Some(b) => b[j],
                None => (var.lower, var.upper),
            };
            if l > u {
                return Ok(Built::EmptyBounds);
            }
            lo[j] = l;
            up[j] = u;
            vals[j] = if l.is_finite() {
                l
            } else if u.is_finite() {
                u
            } else {
                0.0
            };
        }
        for (i, row) in lp.rows.iter().enumerate() {
            let (l, u) = match row.rel {
                Rel::Le => (0.0, f64::INFINITY),
                Rel::Ge => (f64::NEG_INFINITY, 0.0),
                Rel::Eq => (0.0, 0.0),
            };
            lo[slack(i)] = l;
            up[slack(i)] = u;
        }

        // Residual of each row with every structural variable at its resting
        // bound; the slack absorbs it when its bounds allow, otherwise the
        // row starts with a basic artificial and phase 1 clears it.
        let mut basis = vec![0usize; m];
        let mut xb = vec![0.0; m];
        let mut sigma = vec![1.0; m];
        let mut needs_phase1 = false;
        let mut scale = vec![1.0; m];
        for (i, row) in lp.rows.iter().enumerate() {
            let r: f64 = row.rhs
                - row
                    .terms
                    .iter()
                    .map(|&(c, a)| a * vals[c])
                    .sum::<f64>();
            let s = slack(i);
            if r >= lo[s] - PHASE1_TOL && r <= up[s] + PHASE1_TOL {
                basis[i] = s;
                xb[i] = r;
                lo[art(i)] = 0.0;
                up[art(i)] = 0.0;
            } else {
                sigma[i] = if r >= 0.0 { 1.0 } else { -1.0 };
                basis[i] = art(i);
                xb[i] = r.abs();
                lo[art(i)] = 0.0;
                up[art(i)] = f64::INFINITY;
                scale[i] = sigma[i];
                needs_phase1 = true;
            }
        }

        let mut t = vec![vec![0.0; ncols]; m];
        for (i, row) in lp.rows.iter().enumerate() {
            for &(c, a) in &row.terms {
                t[i][c] = a * scale[i];
            }
            t[i][slack(i)] = scale[i];
            t[i][art(i)] = scale[i] * sigma[i];
        }

        let mut basic_row = vec![None; ncols];
        for (i, &b) in basis.iter().enumerate() {
            basic_row[b] = Some(i);
        }
        Ok(Built::Ready(Tableau {
            m,
            nstruct,
            ncols,
            t,
            basis,
            basic_row,
            xb,
            vals,
            lo,
            up,
            cost: vec![0.0; ncols],
            sigma,
            needs_phase1,
            degen_run: 0,
        }))
    }

    fn art_col(&self, i: usize) -> usize {
        self.nstruct + self.m + i
    }

    fn set_phase1_costs(&mut self) {
        self.cost.iter_mut().for_each(|c| *c = 0.0);
        for i in 0..self.m {
            let a = self.art_col(i);
            if self.up[a].is_infinite() {
                self.cost[a] = 1.0;
            }
        }
    }

    fn set_phase2_costs(&mut self, lp: &LinearProgram) {
        let mult = match lp.sense {
            Sense::Maximize => -1.0,
            Sense::Minimize => 1.0,
        };
        self.cost.iter_mut().for_each(|c| *c = 0.0);
        for (j, var) in lp.vars.iter().enumerate() {
            self.cost[j] = mult * var.objective;
        }
        self.degen_run = 0;
    }

    fn artificial_total(&self) -> f64 {
        (0..self.m)
            .map(|i| {
                let a = self.art_col(i);
                match self.basic_row[a] {
                    Some(r) => self.xb[r],
                    None => self.vals[a],
                }
            })
            .sum()
    }

    /// Pivot basic artificials out on any usable column so phase 2 starts
    /// from a basis of real variables; rows where no column has a usable
    /// coefficient are redundant, and their artificial stays pinned at zero.
    fn drive_out_artificials(&mut self) {
        for i in 0..self.m {
            let a = self.art_col(i);
            let Some(r) = self.basic_row[a] else { continue };
            let entering = (0..self.nstruct + self.m).find(|&j| {
                self.basic_row[j].is_none()
                    && self.up[j] - self.lo[j] > PIVOT_TOL
                    && self.t[r][j].abs() > PIVOT_TOL
            });
            if let Some(j) = entering {
                // Zero-length pivot: values are unchanged, the artificial
                // just swaps out of the basis at its current (zero) value.
                let new_val = self.vals[j];
                self.vals[a] = 0.0;
                self.replace_basis(r, j, new_val);
            }
        }
    }

    fn fix_artificials_at_zero(&mut self) {
        for i in 0..self.m {
            let a = self.art_col(i);
            self.lo[a] = 0.0;
            self.up[a] = 0.0;
            if self.basic_row[a].is_none() {
                self.vals[a] = 0.0;
            }
        }
    }

    /// Run simplex iterations with the current cost vector until no
    /// improving column remains.
    fn run(
        &mut self,
        iteration_limit: usize,
        iterations: &mut usize,
        deadline: Option<Instant>,
    ) -> Result<LoopExit> {
        loop {
            if *iterations >= iteration_limit {
                return Ok(LoopExit::Limit);
            }
            if let Some(d) = deadline {
                if *iterations % 64 == 0 && Instant::now() >= d {
                    return Ok(LoopExit::Limit);
                }
            }
            let Some((col, dir)) = self.price() else {
                return Ok(LoopExit::Converged);
            };
            *iterations += 1;
            match self.step(col, dir) {
                StepResult::Moved(theta) => {
                    if theta <= DEGEN_TOL {
                        self.degen_run += 1;
                    } else {
                        self.degen_run = 0;
                    }
                }
                StepResult::Unbounded => return Ok(LoopExit::Unbounded),
            }
        }
    }

    /// Choose an entering column and direction, or `None` at optimality.
    /// Dantzig pricing normally; Bland's rule during long degenerate runs.
    fn price(&self) -> Option<(usize, f64)> {
        let cb: Vec<(usize, f64)> = (0..self.m)
            .filter_map(|i| {
                let c = self.cost[self.basis[i]];
                (c != 0.0).then_some((i, c))
            })
            .collect();
        let bland = self.degen_run >= DEGEN_SWITCH;
        let mut best: Option<(usize, f64, f64)> = None; // col, dir, |d|
        for j in 0..self.ncols {
            if self.basic_row[j].is_some() || self.up[j] - self.lo[j] <= 1e-12 {
                continue;
            }
            let d: f64 =
                self.cost[j] - cb.iter().map(|&(i, c)| c * self.t[i][j]).sum::<f64>();
            let can_inc = self.vals[j] + 1e-12 < self.up[j];
            let can_dec = self.vals[j] - 1e-12 > self.lo[j];
            let dir = if d < -DUAL_TOL && can_inc {
                1.0
            } else if d > DUAL_TOL && can_dec {
                -1.0
            } else {
                continue;
            };
            if bland {
                return Some((j, dir));
            }
            if best.map_or(true, |(_, _, mag)| d.abs() > mag) {
                best = Some((j, dir, d.abs()));
            }
        }
        best.map(|(j, dir, _)| (j, dir))
    }

    /// Move the entering column in its improving direction until a bound
    /// blocks: either its own opposite bound (a bound flip) or a basic
    /// variable reaching one of its bounds (a pivot).
    fn step(&mut self, col: usize, dir: f64) -> StepResult {
        let range = self.up[col] - self.lo[col];
        let mut theta = if range.is_finite() { range } else { f64::INFINITY };
        let mut leave: Option<(usize, f64)> = None; // row, |pivot|
        for i in 0..self.m {
            let alpha = self.t[i][col];
            if alpha.abs() <= PIVOT_TOL {
                continue;
            }
            let eff = dir * alpha;
            let b = self.basis[i];
            let limit = if eff > 0.0 {
                if self.lo[b].is_infinite() {
                    continue;
                }
                (self.xb[i] - self.lo[b]).max(0.0) / eff
            } else {
                if self.up[b].is_infinite() {
                    continue;
                }
                (self.up[b] - self.xb[i]).max(0.0) / (-eff)
            };
            if limit < theta - 1e-12 {
                theta = limit;
                leave = Some((i, alpha.abs()));
            } else if limit < theta + 1e-12 {
                // Tie: prefer the largest pivot element for stability.
                if let Some((_, mag)) = leave {
                    if alpha.abs() > mag {
                        leave = Some((i, alpha.abs()));
                    }
                } else if limit < theta {
                    theta = limit;
                    leave = Some((i, alpha.abs()));
                }
            }
        }
        if theta.is_infinite() {
            return StepResult::Unbounded;
        }
        match leave {
            None => {
                // Bound flip: the entering column runs all the way to its
                // other bound without anything leaving the basis.
                for i in 0..self.m {
                    let alpha = self.t[i][col];
                    if alpha != 0.0 {
                        self.xb[i] -= dir * theta * alpha;
                    }
                }
                self.vals[col] = if dir > 0.0 { self.up[col] } else { self.lo[col] };
                StepResult::Moved(theta)
            }
            Some((r, _)) => {
                let new_val = self.vals[col] + dir * theta;
                for i in 0..self.m {
                    if i == r {
                        continue;
                    }
                    let alpha = self.t[i][col];
                    if alpha != 0.0 {
                        self.xb[i] -= dir * theta * alpha;
                    }
                }
                let leaving = self.basis[r];
                // The leaving variable rests at the bound it ran into.
                self.vals[leaving] = if dir * self.t[r][col] > 0.0 {
                    self.lo[leaving]
                } else {
                    self.up[leaving]
                };
                self.replace_basis(r, col, new_val);
                StepResult::Moved(theta)
            }
        }
    }

    /// Make `col` basic in row `r` with value `new_val` and re-eliminate.
    fn replace_basis(&mut self, r: usize, col: usize, new_val: f64) {
        let old = self.basis[r];
        self.basic_row[old] = None;
        self.basis[r] = col;
        self.basic_row[col] = Some(r);
        self.xb[r] = new_val;

        let piv = self.t[r][col];
        let inv = 1.0 / piv;
        for x in self.t[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = std::mem::take(&mut self.t[r]);
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[col];
            if factor != 0.0 {
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x -= factor * p;
                }
                row[col] = 0.0; // exact, instead of accumulated round-off
            }
        }
        self.t[r] = pivot_row;
    }

    fn structural_values(&self) -> Vec<f64> {
        (0..self.nstruct)
            .map(|j| match self.basic_row[j] {
                Some(r) => self.xb[r],
                None => self.vals[j],
            })
            .collect()
    }

    /// Row duals, read through the artificial columns: column `i` of `B^-1`
    /// is `sigma_i` times the artificial column of row `i` in the tableau.
    fn duals(&self, mult: f64) -> Vec<f64> {
        let cb: Vec<(usize, f64)> = (0..self.m)
            .filter_map(|i| {
                let c = self.cost[self.basis[i]];
                (c != 0.0).then_some((i, c))
            })
            .collect();
        (0..self.m)
            .map(|i| {
                let a = self.art_col(i);
                let y: f64 = cb.iter().map(|&(k, c)| c * self.t[k][a]).sum();
                mult * self.sigma[i] * y
            })
            .collect()
    }
}

enum StepResult {
    Moved(f64),
    Unbounded,
}
