//! Adaptive composite Gauss–Legendre quadrature.
//!
//! Each panel is integrated with a 15-point rule and compared with the sum of
//! its two halves; panels whose difference exceeds their share of the error
//! budget are bisected.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use serde::Serialize;

const RULE_POINTS: usize = 15;
const MAX_DEPTH: u32 = 48;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(RULE_POINTS).unwrap()))
}

/// Absolute plus relative error target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn uniform(tol: f64) -> Self {
        Self { abs: tol, rel: tol }
    }

    pub fn is_valid(&self) -> bool {
        self.abs > 0.0 && self.rel >= 0.0 && self.abs.is_finite() && self.rel.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Integrates `f` over `[a, b]`, splitting first at `breakpoints` (sorted,
/// strictly inside the interval).
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: Tolerance,
) -> Integral {
    let mut knots = Vec::with_capacity(breakpoints.len() + 2);
    knots.push(a);
    knots.extend(breakpoints.iter().copied().filter(|&t| t > a && t < b));
    knots.push(b);
    let width = b - a;
    let mut total = Integral {
        value: 0.0,
        error_estimate: 0.0,
        panels: 0,
    };
    if width <= 0.0 {
        return total;
    }
    let g = rule();
    let mut stack: Vec<(f64, f64, f64, u32)> = knots
        .windows(2)
        .rev()
        .map(|w| (w[0], w[1], g.integrate(w[0], w[1], &f), 0))
        .collect();
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = g.integrate(lo, mid, &f);
        let right = g.integrate(mid, hi, &f);
        let refined = left + right;
        let err = (refined - whole).abs();
        let budget = (tol.abs * (hi - lo) / width).max(tol.rel * refined.abs());
        if err <= budget || depth >= MAX_DEPTH || !err.is_finite() {
            total.value += refined;
            total.error_estimate += err;
            total.panels += 1;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    total
}
