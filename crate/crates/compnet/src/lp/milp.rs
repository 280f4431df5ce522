//! Depth-first branch and bound over the simplex relaxation.
//!
//! Branches on the most fractional integer variable, diving into the nearer
//! side first so a full integral assignment (and with it a pruning bound) is
//! reached quickly. A caller-supplied incumbent hint that verifies feasible
//! seeds the bound before any node is solved.

use std::time::Instant;

use super::{simplex, LinearProgram, LpSolution, MilpOptions, Sense, SolveStatus, SolverLimits};
use crate::error::Result;

pub(crate) fn solve(
    lp: &LinearProgram,
    limits: &SolverLimits,
    options: &MilpOptions,
) -> Result<LpSolution> {
    let mult = match lp.sense {
        Sense::Maximize => -1.0,
        Sense::Minimize => 1.0,
    };
    let mut search = Search {
        lp,
        limits,
        deadline: limits.deadline(),
        node_limit: limits.node_limit.unwrap_or(1_000_000),
        int_tol: options.int_tol,
        mult,
        best: None,
        nodes: 0,
        iterations: 0,
        limit_hit: false,
        unbounded: false,
    };
    if let Some(hint) = &options.incumbent_hint {
        if let Some(obj) = lp.verify_point(hint, 1e-6) {
            search.best = Some((mult * obj, hint.clone()));
        }
    }
    let mut bounds: Vec<(f64, f64)> = lp.vars.iter().map(|v| (v.lower, v.upper)).collect();
    search.explore(&mut bounds)?;

    let status = if search.unbounded {
        SolveStatus::Unbounded
    } else if search.limit_hit {
        SolveStatus::Limit
    } else if search.best.is_some() {
        SolveStatus::Optimal
    } else {
        SolveStatus::Infeasible
    };
    Ok(match search.best {
        Some((internal_obj, mut values)) if !search.unbounded => {
            // Snap integer variables onto the integers they converged to.
            for (j, var) in lp.vars.iter().enumerate() {
                if var.integer {
                    values[j] = values[j].round();
                }
            }
            LpSolution {
                status,
                objective: mult * internal_obj,
                values,
                duals: Vec::new(),
                iterations: search.iterations,
                nodes: search.nodes,
            }
        }
        _ => LpSolution {
            status,
            objective: 0.0,
            values: Vec::new(),
            duals: Vec::new(),
            iterations: search.iterations,
            nodes: search.nodes,
        },
    })
}

struct Search<'a> {
    lp: &'a LinearProgram,
    limits: &'a SolverLimits,
    deadline: Option<Instant>,
    node_limit: usize,
    int_tol: f64,
    mult: f64,
    /// Best integral solution so far: (objective in minimize form, values).
    best: Option<(f64, Vec<f64>)>,
    nodes: usize,
    iterations: usize,
    limit_hit: bool,
    unbounded: bool,
}

impl Search<'_> {
    fn explore(&mut self, bounds: &mut Vec<(f64, f64)>) -> Result<()> {
        if self.limit_hit || self.unbounded {
            return Ok(());
        }
        if self.nodes >= self.node_limit
            || self.deadline.is_some_and(|d| Instant::now() >= d)
        {
            self.limit_hit = true;
            return Ok(());
        }
        self.nodes += 1;

        let sol = simplex::solve_with_deadline(self.lp, self.limits, Some(bounds), self.deadline)?;
        self.iterations += sol.iterations;
        match sol.status {
            SolveStatus::Infeasible => return Ok(()),
            SolveStatus::Unbounded => {
                self.unbounded = true;
                return Ok(());
            }
            SolveStatus::Limit => {
                self.limit_hit = true;
                return Ok(());
            }
            SolveStatus::Optimal => {}
        }
        let node_obj = self.mult * sol.objective;
        if let Some((best_obj, _)) = &self.best {
            // The relaxation bounds every descendant, so an equal-or-worse
            // node cannot contain an improvement.
            if node_obj >= best_obj - 1e-9 {
                return Ok(());
            }
        }

        let branch = self.most_fractional(&sol.values);
        let Some(var) = branch else {
            let improves = self
                .best
                .as_ref()
                .map_or(true, |(best_obj, _)| node_obj < best_obj - 1e-12);
            if improves {
                self.best = Some((node_obj, sol.values));
            }
            return Ok(());
        };

        let x = sol.values[var];
        let (saved_lo, saved_up) = bounds[var];
        let floor = x.floor();
        // Nearer side first: integral assignments show up sooner.
        let down_first = x - floor <= 0.5;
        for side in 0..2 {
            let down = (side == 0) == down_first;
            if down {
                bounds[var] = (saved_lo, floor);
            } else {
                bounds[var] = (floor + 1.0, saved_up);
            }
            self.explore(bounds)?;
            bounds[var] = (saved_lo, saved_up);
        }
        Ok(())
    }

    /// Integer variable farthest from an integral value, if any.
    fn most_fractional(&self, values: &[f64]) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (j, var) in self.lp.vars.iter().enumerate() {
            if !var.integer {
                continue;
            }
            let dist = (values[j] - values[j].round()).abs();
            if dist > self.int_tol && best.map_or(true, |(_, d)| dist > d) {
                best = Some((j, dist));
            }
        }
        best.map(|(j, _)| j)
    }
}
