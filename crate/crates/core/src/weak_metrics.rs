//! Funk and Hilbert distances, symmetrizations, and the Minkowski weak metric.
//!
//! All distances are in natural-log units. Metric operations require interior
//! basepoints; points inside the boundary band are rejected.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convex_body::ConvexBody;
use crate::error::{GeomError, Result};
use crate::extended::ExtendedNonNegative;
use crate::point::{Direction, Point};

/// Which distance to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    /// `F(x, y)`.
    Funk,
    /// `H(x, y) = (F(x, y) + F(y, x)) / 2`.
    Hilbert,
    /// `F(y, x)`.
    ReverseFunk,
    /// Max symmetrization `max(F(x, y), F(y, x))`.
    SymFunk,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::Funk,
        MetricKind::Hilbert,
        MetricKind::ReverseFunk,
        MetricKind::SymFunk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Funk => "funk",
            MetricKind::Hilbert => "hilbert",
            MetricKind::ReverseFunk => "reverse-funk",
            MetricKind::SymFunk => "sym-funk",
        }
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, MetricKind::Hilbert | MetricKind::SymFunk)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.replace('_', "-");
        MetricKind::ALL
            .into_iter()
            .find(|k| k.name() == normalized)
            .ok_or_else(|| GeomError::InvalidArgument(format!("unknown metric kind {s:?}")))
    }
}

/// `log(|x − a⁺| / |y − a⁺|)` written in terms of the exit parameter `r`
/// of the ray `x + t(y − x)`: the ratio is `r / (r − 1)`.
fn funk_from_exit(r: f64) -> ExtendedNonNegative {
    ExtendedNonNegative::clamped(-(-1.0 / r).ln_1p())
}

fn funk_unchecked(body: &ConvexBody, x: &Point, y: &Point) -> ExtendedNonNegative {
    if x == y {
        return ExtendedNonNegative::ZERO;
    }
    body.exit_parameter(x, y)
        .map_or(ExtendedNonNegative::ZERO, funk_from_exit)
}

fn hilbert_unchecked(body: &ConvexBody, x: &Point, y: &Point) -> ExtendedNonNegative {
    if x == y {
        return ExtendedNonNegative::ZERO;
    }
    let forward = body.exit_parameter(x, y);
    let backward = body.exit_parameter(y, x);
    match (forward, backward) {
        // Both rays leave Ω: half the log of the cross-ratio.
        (Some(rf), Some(rb)) => arithmetic_symmetrization(funk_from_exit(rf), funk_from_exit(rb)),
        // Only R(x, y) leaves Ω.
        (Some(rf), None) => {
            arithmetic_symmetrization(funk_from_exit(rf), ExtendedNonNegative::ZERO)
        }
        // Only R(y, x) leaves Ω.
        (None, Some(rb)) => {
            arithmetic_symmetrization(ExtendedNonNegative::ZERO, funk_from_exit(rb))
        }
        // The whole line lies in Ω.
        (None, None) => ExtendedNonNegative::ZERO,
    }
}

fn check_pair(body: &ConvexBody, x: &Point, y: &Point) -> Result<()> {
    body.require_interior(x)?;
    body.require_interior(y)
}

/// Funk weak metric `F(x, y)`.
pub fn funk(body: &ConvexBody, x: &Point, y: &Point) -> Result<ExtendedNonNegative> {
    check_pair(body, x, y)?;
    Ok(funk_unchecked(body, x, y))
}

/// Reverse Funk weak metric `F(y, x)`.
pub fn reverse_funk(body: &ConvexBody, x: &Point, y: &Point) -> Result<ExtendedNonNegative> {
    funk(body, y, x)
}

/// Hilbert metric, dispatched on which of the rays `R(x, y)`, `R(y, x)`
/// leave the body. Agrees bit-for-bit with the arithmetic symmetrization
/// of [`funk`].
pub fn hilbert(body: &ConvexBody, x: &Point, y: &Point) -> Result<ExtendedNonNegative> {
    check_pair(body, x, y)?;
    Ok(hilbert_unchecked(body, x, y))
}

pub fn distance(
    body: &ConvexBody,
    kind: MetricKind,
    x: &Point,
    y: &Point,
) -> Result<ExtendedNonNegative> {
    check_pair(body, x, y)?;
    Ok(distance_unchecked(body, kind, x, y))
}

fn distance_unchecked(
    body: &ConvexBody,
    kind: MetricKind,
    x: &Point,
    y: &Point,
) -> ExtendedNonNegative {
    match kind {
        MetricKind::Funk => funk_unchecked(body, x, y),
        MetricKind::ReverseFunk => funk_unchecked(body, y, x),
        MetricKind::Hilbert => hilbert_unchecked(body, x, y),
        MetricKind::SymFunk => {
            max_symmetrization(funk_unchecked(body, x, y), funk_unchecked(body, y, x))
        }
    }
}

/// `(δ(x, y) + δ(y, x)) / 2`.
pub fn arithmetic_symmetrization(
    forward: ExtendedNonNegative,
    backward: ExtendedNonNegative,
) -> ExtendedNonNegative {
    forward.mean(backward)
}

/// `max(δ(x, y), δ(y, x))`.
pub fn max_symmetrization(
    forward: ExtendedNonNegative,
    backward: ExtendedNonNegative,
) -> ExtendedNonNegative {
    forward.max(backward)
}

/// Translation-invariant weak metric `δ(x, y) = p(y − x)` where `p` is the
/// gauge of `body` at the origin. The origin must lie in the closure.
pub fn minkowski_weak_metric(
    body: &ConvexBody,
    x: &Point,
    y: &Point,
) -> Result<ExtendedNonNegative> {
    let origin = Point::origin(body.dim());
    x.ensure_dim(body.dim())?;
    body.gauge(&origin, &x.to(y))
}

/// Both directions of a weak metric at a pair of points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakMetricSample {
    pub x: Point,
    pub y: Point,
    pub forward: ExtendedNonNegative,
    pub backward: ExtendedNonNegative,
}

impl WeakMetricSample {
    pub fn measure(body: &ConvexBody, kind: MetricKind, x: &Point, y: &Point) -> Result<Self> {
        check_pair(body, x, y)?;
        Ok(Self {
            x: x.clone(),
            y: y.clone(),
            forward: distance_unchecked(body, kind, x, y),
            backward: distance_unchecked(body, kind, y, x),
        })
    }

    pub fn arithmetic(&self) -> ExtendedNonNegative {
        arithmetic_symmetrization(self.forward, self.backward)
    }

    pub fn max(&self) -> ExtendedNonNegative {
        max_symmetrization(self.forward, self.backward)
    }
}

/// Pairwise distances, row `i` holding `d(pᵢ, ·)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    pub kind: MetricKind,
    pub rows: Vec<Vec<ExtendedNonNegative>>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> ExtendedNonNegative {
        self.rows[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }

    /// One row per line, comma separated, `inf` for `+∞`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn distance_matrix(
    body: &ConvexBody,
    points: &[Point],
    kind: MetricKind,
) -> Result<DistanceMatrix> {
    for (index, p) in points.iter().enumerate() {
        p.ensure_dim(body.dim())?;
        if !body.is_interior(p) {
            return Err(GeomError::NotInteriorAt { index });
        }
    }
    let rows = points
        .par_iter()
        .map(|x| {
            points
                .iter()
                .map(|y| distance_unchecked(body, kind, x, y))
                .collect()
        })
        .collect();
    Ok(DistanceMatrix { kind, rows })
}

/// Metric used for ball boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    Funk,
    Hilbert,
}

/// Points `center + t·u` at distance `radius` from `center`, one per direction.
pub fn metric_ball_boundary(
    body: &ConvexBody,
    center: &Point,
    radius: f64,
    kind: BallKind,
    directions: &[Direction],
) -> Result<Vec<Result<Point>>> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(GeomError::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    body.require_interior(center)?;
    Ok(directions
        .iter()
        .map(|u| {
            u.ensure_dim(body.dim())?;
            if u.is_zero() {
                return Err(GeomError::ZeroDirection);
            }
            let t = match kind {
                BallKind::Funk => funk_ball_parameter(body, center, u, radius)?,
                BallKind::Hilbert => hilbert_ball_parameter(body, center, u, radius)?,
            };
            Ok(center.offset(u, t))
        })
        .collect())
}

/// Inverting `log(r / (r − t)) = ρ` gives `t = r (1 − e^{−ρ})`.
fn funk_ball_parameter(body: &ConvexBody, x: &Point, u: &Direction, radius: f64) -> Result<f64> {
    let r = body.raw_radial(x, u);
    if !r.is_finite() {
        return Err(GeomError::NoSolution);
    }
    Ok(-r * (-radius).exp_m1())
}

fn hilbert_ball_parameter(body: &ConvexBody, x: &Point, u: &Direction, radius: f64) -> Result<f64> {
    let forward = body.raw_radial(x, u);
    let backward = body.raw_radial(x, &-u);
    if !forward.is_finite() && !backward.is_finite() {
        return Err(GeomError::NoSolution);
    }
    let h = |t: f64| hilbert_unchecked(body, x, &x.offset(u, t)).value();
    let mut lo = 0.0;
    let mut hi = if forward.is_finite() {
        forward
    } else {
        let mut hi = backward.max(1.0);
        while h(hi) < radius {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(GeomError::NoSolution);
            }
        }
        hi
    };
    // H(x, x + tu) is increasing in t; bisect to full precision.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < radius {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
