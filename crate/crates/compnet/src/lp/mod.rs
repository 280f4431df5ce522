//! A small linear/mixed-integer programming layer.
//!
//! The solvers in this crate need three things from an LP engine that rule
//! out the lightweight off-the-shelf options: row duals (shadow prices drive
//! the greedy interdiction heuristics), bounded variables (branch and bound
//! tightens bounds rather than adding rows), and deterministic pivoting
//! (fixture tests freeze exact optimal bases). This module provides exactly
//! that: a dense bounded-variable two-phase simplex plus a depth-first branch
//! and bound on top of it. Problem sizes here are modest (tens to a few
//! hundred rows), where a dense tableau is simple and fast enough.

mod milp;
mod simplex;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Handle to a variable of a [`LinearProgram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VarId(pub(crate) usize);

impl VarId {
    /// Position of the variable in solution vectors.
    pub fn index(self) -> usize {
        self.0
    }
}

/// Handle to a row (linear constraint) of a [`LinearProgram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RowId(pub(crate) usize);

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Row relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// Outcome classification of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Proven optimal (for MILPs: within the integrality tolerance).
    Optimal,
    Infeasible,
    Unbounded,
    /// Iteration, node, or time limit hit. The solution carries the best
    /// incumbent found so far, if any.
    Limit,
}

/// Result of a solve. `values` is indexed by variable, `duals` by row.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: SolveStatus,
    /// Objective in the user's sense (only meaningful for `Optimal`, or for
    /// `Limit` when `values` is non-empty).
    pub objective: f64,
    pub values: Vec<f64>,
    /// Row duals as sensitivities: `duals[i]` is the rate of change of the
    /// optimal objective (user sense) per unit increase of row `i`'s
    /// right-hand side. For a maximization with `<=` rows these are the usual
    /// non-negative shadow prices. Empty for MILP solves.
    pub duals: Vec<f64>,
    pub iterations: usize,
    /// Branch-and-bound nodes explored (0 for pure LP solves).
    pub nodes: usize,
}

impl LpSolution {
    /// The value of `var`, or 0 if no solution vector is available.
    pub fn value(&self, var: VarId) -> f64 {
        self.values.get(var.0).copied().unwrap_or(0.0)
    }

    pub fn dual(&self, row: RowId) -> f64 {
        self.duals.get(row.0).copied().unwrap_or(0.0)
    }

    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Resource limits shared by LP and MILP solves.
#[derive(Debug, Clone, Default)]
pub struct SolverLimits {
    pub time_limit: Option<Duration>,
    /// Simplex iteration cap per LP solve. Defaults to a generous bound
    /// proportional to the problem size when unset.
    pub iteration_limit: Option<usize>,
    /// Branch-and-bound node cap. Defaults to 1,000,000 when unset.
    pub node_limit: Option<usize>,
}

impl SolverLimits {
    pub fn with_time_limit(limit: Duration) -> Self {
        SolverLimits {
            time_limit: Some(limit),
            ..Default::default()
        }
    }

    pub(crate) fn deadline(&self) -> Option<Instant> {
        self.time_limit.map(|d| Instant::now() + d)
    }
}

/// Options specific to branch and bound.
#[derive(Debug, Clone)]
pub struct MilpOptions {
    /// A full variable assignment believed feasible; if it verifies, it seeds
    /// the incumbent so the search starts with a pruning bound.
    pub incumbent_hint: Option<Vec<f64>>,
    /// How close to an integer a value must be to count as integral.
    pub int_tol: f64,
}

impl Default for MilpOptions {
    fn default() -> Self {
        MilpOptions {
            incumbent_hint: None,
            int_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct VarDef {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub objective: f64,
    pub integer: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct RowDef {
    pub name: String,
    pub rel: Rel,
    pub rhs: f64,
    /// Column-coefficient pairs, merged and sorted by column.
    pub terms: Vec<(usize, f64)>,
}

/// A linear program with bounded continuous variables, optionally marked
/// integer, built row by row.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub(crate) sense: Sense,
    pub(crate) vars: Vec<VarDef>,
    pub(crate) rows: Vec<RowDef>,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            sense,
            vars: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Add a continuous variable with inclusive bounds and an objective
    /// coefficient. Use `f64::INFINITY` / `f64::NEG_INFINITY` for free ends.
    pub fn add_var(
        &mut self,
        name: impl Into<String>,
        (lower, upper): (f64, f64),
        objective: f64,
    ) -> Result<VarId> {
        let name = name.into();
        if lower.is_nan() || upper.is_nan() || !objective.is_finite() {
            return Err(Error::Solver(format!("variable '{name}' has NaN bound")));
        }
        if lower > upper {
            return Err(Error::Solver(format!(
                "variable '{name}' has empty bound range [{lower}, {upper}]"
            )));
        }
        self.vars.push(VarDef {
            name,
            lower,
            upper,
            objective,
            integer: false,
        });
        Ok(VarId(self.vars.len() - 1))
    }

    /// Add a variable constrained to integer values by [`solve_milp`].
    ///
    /// [`solve_milp`]: LinearProgram::solve_milp
    pub fn add_integer_var(
        &mut self,
        name: impl Into<String>,
        bounds: (f64, f64),
        objective: f64,
    ) -> Result<VarId> {
        let id = self.add_var(name, bounds, objective)?;
        self.vars[id.0].integer = true;
        Ok(id)
    }

    /// Add a row `sum(coef * var) rel rhs`. Repeated variables are merged.
    pub fn add_row(
        &mut self,
        name: impl Into<String>,
        rel: Rel,
        rhs: f64,
        terms: &[(VarId, f64)],
    ) -> Result<RowId> {
        let name = name.into();
        if !rhs.is_finite() {
            return Err(Error::Solver(format!("row '{name}' has non-finite rhs")));
        }
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(terms.len());
        for &(var, coef) in terms {
            if var.0 >= self.vars.len() {
                return Err(Error::Solver(format!(
                    "row '{name}' references unknown variable"
                )));
            }
            if !coef.is_finite() {
                return Err(Error::Solver(format!(
                    "row '{name}' has non-finite coefficient"
                )));
            }
            merged.push((var.0, coef));
        }
        merged.sort_by_key(|&(c, _)| c);
        merged.dedup_by(|later, earlier| {
            if later.0 == earlier.0 {
                earlier.1 += later.1;
                true
            } else {
                false
            }
        });
        merged.retain(|&(_, c)| c != 0.0);
        self.rows.push(RowDef {
            name,
            rel,
            rhs,
            terms: merged,
        });
        Ok(RowId(self.rows.len() - 1))
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn has_integers(&self) -> bool {
        self.vars.iter().any(|v| v.integer)
    }

    /// Solve the continuous relaxation (integer markers are ignored).
    pub fn solve_lp(&self, limits: &SolverLimits) -> Result<LpSolution> {
        simplex::solve(self, limits, None)
    }

    /// Solve with integrality enforced on the integer-marked variables.
    pub fn solve_milp(&self, limits: &SolverLimits, options: &MilpOptions) -> Result<LpSolution> {
        milp::solve(self, limits, options)
    }

    /// Evaluate a candidate point: returns its objective value if it
    /// satisfies all bounds, rows, and integrality markers within `tol`.
    pub fn verify_point(&self, values: &[f64], tol: f64) -> Option<f64> {
        if values.len() != self.vars.len() {
            return None;
        }
        for (var, &x) in self.vars.iter().zip(values) {
            if x < var.lower - tol || x > var.upper + tol {
                return None;
            }
            if var.integer && (x - x.round()).abs() > tol {
                return None;
            }
        }
        for row in &self.rows {
            let lhs: f64 = row.terms.iter().map(|&(c, a)| a * values[c]).sum();
            let ok = match row.rel {
                Rel::Le => lhs <= row.rhs + tol,
                Rel::Ge => lhs >= row.rhs - tol,
                Rel::Eq => (lhs - row.rhs).abs() <= tol,
            };
            if !ok {
                return None;
            }
        }
        Some(
            self.vars
                .iter()
                .zip(values)
                .map(|(v, &x)| v.objective * x)
                .sum(),
        )
    }

    /// Render the program in LP text format (as consumed by most LP tools).
    pub fn to_lp_text(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.sense {
            Sense::Maximize => "Maximize\n",
            Sense::Minimize => "Minimize\n",
        });
        out.push_str(" obj:");
        let mut first = true;
        for var in self.vars.iter().filter(|v| v.objective != 0.0) {
            push_term(&mut out, &mut first, var.objective, &var.name);
        }
        if first {
            out.push_str(" 0 ");
            out.push_str(&self.vars.first().map(|v| v.name.clone()).unwrap_or_default());
        }
        out.push_str("\nSubject To\n");
        for row in &self.rows {
            let _ = write!(out, " {}:", row.name);
            let mut first = true;
            for &(col, coef) in &row.terms {
                push_term(&mut out, &mut first, coef, &self.vars[col].name);
            }
            if first {
                out.push_str(" 0");
            }
            let rel = match row.rel {
                Rel::Le => "<=",
                Rel::Ge => ">=",
                Rel::Eq => "=",
            };
            let _ = writeln!(out, " {} {}", rel, trim_num(row.rhs));
        }
        out.push_str("Bounds\n");
        for var in &self.vars {
            match (var.lower, var.upper) {
                (lo, hi) if lo == f64::NEG_INFINITY && hi == f64::INFINITY => {
                    let _ = writeln!(out, " {} free", var.name);
                }
                (lo, hi) if hi == f64::INFINITY => {
                    let _ = writeln!(out, " {} >= {}", var.name, trim_num(lo));
                }
                (lo, hi) if lo == f64::NEG_INFINITY => {
                    let _ = writeln!(out, " {} <= {}", var.name, trim_num(hi));
                }
                (lo, hi) => {
                    let _ = writeln!(out, " {} <= {} <= {}", trim_num(lo), var.name, trim_num(hi));
                }
            }
        }
        let binaries: Vec<&VarDef> = self
            .vars
            .iter()
            .filter(|v| v.integer && v.lower >= 0.0 && v.upper <= 1.0)
            .collect();
        let generals: Vec<&VarDef> = self
            .vars
            .iter()
            .filter(|v| v.integer && !(v.lower >= 0.0 && v.upper <= 1.0))
            .collect();
        if !binaries.is_empty() {
            out.push_str("Binary\n");
            for var in binaries {
                let _ = writeln!(out, " {}", var.name);
            }
        }
        if !generals.is_empty() {
            out.push_str("General\n");
            for var in generals {
                let _ = writeln!(out, " {}", var.name);
            }
        }
        out.push_str("End\n");
        out
    }
}

/// Join name parts into an identifier safe for LP text output.
pub(crate) fn lp_ident(parts: &[&str]) -> String {
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        if i > 0 {
            out.push('_');
        }
        for ch in part.chars() {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                out.push(ch);
            } else {
                out.push('.');
            }
        }
    }
    out
}

fn push_term(out: &mut String, first: &mut bool, coef: f64, name: &str) {
    if *first {
        if coef < 0.0 {
            let _ = write!(out, " - {} {}", trim_num(-coef), name);
        } else {
            let _ = write!(out, " {} {}", trim_num(coef), name);
        }
        *first = false;
    } else if coef < 0.0 {
        let _ = write!(out, " - {} {}", trim_num(-coef), name);
    } else {
        let _ = write!(out, " + {} {}", trim_num(coef), name);
    }
}

fn trim_num(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}
