//! Thin wrapper over `minilp` for the few linear programs the geometry needs.

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{GeomError, Result};

pub(crate) enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Unbounded,
    Infeasible,
}

/// Maximizes `⟨c, x⟩` subject to `⟨aᵢ, x⟩ ≤ bᵢ` and per-variable bounds.
pub(crate) fn maximize(
    objective: &[f64],
    bounds: &[(f64, f64)],
    rows: &[(Vec<f64>, f64)],
) -> Result<LpOutcome> {
    debug_assert_eq!(objective.len(), bounds.len());
    // minilp reports free variables that occur in no row as unbounded even
    // with a zero objective coefficient, so such variables are pinned here.
    let mut bounds = bounds.to_vec();
    for (k, (lo, hi)) in bounds.iter_mut().enumerate() {
        if rows.iter().any(|(row, _)| row[k] != 0.0) {
            continue;
        }
        let c = objective[k];
        let pinned = if c > 0.0 {
            *hi
        } else if c < 0.0 {
            *lo
        } else {
            0.0f64.clamp(*lo, *hi)
        };
        if !pinned.is_finite() {
            return Ok(LpOutcome::Unbounded);
        }
        (*lo, *hi) = (pinned, pinned);
    }
    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = objective
        .iter()
        .zip(&bounds)
        .map(|(&c, &b)| problem.add_var(c, b))
        .collect();
    for (row, rhs) in rows {
        let expr: Vec<_> = vars
            .iter()
            .zip(row)
            .filter(|(_, &a)| a != 0.0)
            .map(|(&v, &a)| (v, a))
            .collect();
        if expr.is_empty() {
            if *rhs < 0.0 {
                return Ok(LpOutcome::Infeasible);
            }
            continue;
        }
        problem.add_constraint(expr.as_slice(), ComparisonOp::Le, *rhs);
    }
    match problem.solve() {
        Ok(sol) => Ok(LpOutcome::Optimal {
            value: sol.objective(),
            x: vars.iter().map(|&v| *sol.var_value(v)).collect(),
        }),
        Err(minilp::Error::Unbounded) => Ok(LpOutcome::Unbounded),
        Err(minilp::Error::Infeasible) => Ok(LpOutcome::Infeasible),
    }
}

/// Free variables.
pub(crate) fn free(n: usize) -> Vec<(f64, f64)> {
    vec![(f64::NEG_INFINITY, f64::INFINITY); n]
}

pub(crate) fn lp_error(msg: &str) -> GeomError {
    GeomError::Lp(msg.to_string())
}
