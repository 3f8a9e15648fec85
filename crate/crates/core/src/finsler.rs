//! Tautological and reversible Lagrangians and the lengths they assign to paths.
//!
//! The tautological structure on Ω has the Minkowski gauge `p(x, ξ)` of Ω at `x`
//! as its Lagrangian; its length metric is the Funk metric. The reversible
//! structure uses `q(x, ξ) = (p(x, ξ) + p(x, −ξ)) / 2`; its length metric is the
//! Hilbert metric. Lengths are computed by adaptive Gauss–Legendre quadrature
//! of `∫ L(γ(t), γ'(t)) dt`.

use std::cell::Cell;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convex_body::ConvexBody;
use crate::error::{GeomError, Result};
use crate::extended::ExtendedNonNegative;
use crate::harmonic::symmetrized_gauge;
use crate::point::{Direction, Point};
use crate::quadrature::{self, Tolerance};
use crate::rng::Stream;
use crate::tolerance::geo_eps;
use crate::weak_metrics::{funk, hilbert};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LagrangianKind {
    Tautological,
    Reversible,
}

/// `p_{Ω,x}(ξ)`.
pub fn tautological_lagrangian(
    body: &ConvexBody,
    x: &Point,
    xi: &Direction,
) -> Result<ExtendedNonNegative> {
    body.require_interior(x)?;
    body.gauge(x, xi)
}

/// `q_{Ω,x}(ξ) = (p(ξ) + p(−ξ)) / 2`.
pub fn reversible_lagrangian(
    body: &ConvexBody,
    x: &Point,
    xi: &Direction,
) -> Result<ExtendedNonNegative> {
    symmetrized_gauge(body, x, xi)
}

pub fn lagrangian(
    body: &ConvexBody,
    kind: LagrangianKind,
    x: &Point,
    xi: &Direction,
) -> Result<ExtendedNonNegative> {
    match kind {
        LagrangianKind::Tautological => tautological_lagrangian(body, x, xi),
        LagrangianKind::Reversible => reversible_lagrangian(body, x, xi),
    }
}

/// Lagrangian without validation; the caller guarantees `z` is interior.
fn raw_lagrangian(body: &ConvexBody, kind: LagrangianKind, z: &Point, v: &Direction) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let forward = 1.0 / body.raw_radial(z, v);
    match kind {
        LagrangianKind::Tautological => forward,
        LagrangianKind::Reversible => 0.5 * (forward + 1.0 / body.raw_radial(z, &-v)),
    }
}

/// Label of the constraints that realize the Lagrangian; the integrand is
/// smooth wherever the label is constant.
fn active_label(
    body: &ConvexBody,
    kind: LagrangianKind,
    z: &Point,
    v: &Direction,
) -> (Option<usize>, Option<usize>) {
    if v.is_zero() {
        return (None, None);
    }
    let forward = body.radial_indexed(z, v).1;
    match kind {
        LagrangianKind::Tautological => (forward, None),
        LagrangianKind::Reversible => (forward, body.radial_indexed(z, &-v).1),
    }
}

/// Piecewise-linear path through at least two vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(GeomError::InvalidArgument(
                "a polyline needs at least two vertices".into(),
            ));
        }
        let dim = vertices[0].dim();
        for (i, pair) in vertices.windows(2).enumerate() {
            pair[1].ensure_dim(dim)?;
            if pair[0] == pair[1] {
                return Err(GeomError::InvalidArgument(format!(
                    "vertices {i} and {} coincide",
                    i + 1
                )));
            }
        }
        Ok(Self { vertices })
    }

    pub fn segment(x: &Point, y: &Point) -> Result<Self> {
        Self::new(vec![x.clone(), y.clone()])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().expect("nonempty")
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> Polyline {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    /// `self` followed by `other`; requires `self.end() == other.start()`.
    pub fn concat(&self, other: &Polyline) -> Result<Polyline> {
        if self.end() != other.start() {
            return Err(GeomError::InvalidArgument(
                "paths do not share an endpoint".into(),
            ));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Polyline::new(vertices)
    }
}

/// A C¹ curve given by positions and velocities on a strictly increasing
/// grid, interpolated by cubic Hermite pieces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledCurve {
    times: Vec<f64>,
    positions: Vec<Point>,
    velocities: Vec<Direction>,
}

impl SampledCurve {
    pub fn new(times: Vec<f64>, positions: Vec<Point>, velocities: Vec<Direction>) -> Result<Self> {
        if times.len() < 2 || positions.len() != times.len() || velocities.len() != times.len() {
            return Err(GeomError::InvalidArgument(
                "need at least two samples with matching times, positions and velocities".into(),
            ));
        }
        let dim = positions[0].dim();
        for (i, (p, v)) in positions.iter().zip(&velocities).enumerate() {
            p.ensure_dim(dim)?;
            v.ensure_dim(dim)?;
            if !times[i].is_finite() {
                return Err(GeomError::NonFinite);
            }
            if i > 0 && !(times[i] > times[i - 1]) {
                return Err(GeomError::NonMonotoneGrid { index: i });
            }
        }
        Ok(Self {
            times,
            positions,
            velocities,
        })
    }

    /// Samples `position` and `velocity` on `samples` equally spaced times in `[a, b]`.
    pub fn from_fn<P, V>(a: f64, b: f64, samples: usize, position: P, velocity: V) -> Result<Self>
    where
        P: Fn(f64) -> Point,
        V: Fn(f64) -> Direction,
    {
        let n = samples.max(2);
        let times: Vec<f64> = (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect();
        let positions = times.iter().map(|&t| position(t)).collect();
        let velocities = times.iter().map(|&t| velocity(t)).collect();
        Self::new(times, positions, velocities)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    /// `t ↦ γ(a + b − t)`.
    pub fn reversed(&self) -> SampledCurve {
        let (a, b) = (self.times[0], *self.times.last().expect("nonempty"));
        Self {
            times: self.times.iter().rev().map(|t| a + b - t).collect(),
            positions: self.positions.iter().rev().cloned().collect(),
            velocities: self.velocities.iter().rev().map(|v| -v).collect(),
        }
    }

    fn piece(&self, i: usize) -> HermitePiece<'_> {
        HermitePiece {
            t0: self.times[i],
            h: self.times[i + 1] - self.times[i],
            p0: &self.positions[i],
            p1: &self.positions[i + 1],
            m0: &self.velocities[i],
            m1: &self.velocities[i + 1],
        }
    }
}

struct HermitePiece<'a> {
    t0: f64,
    h: f64,
    p0: &'a Point,
    p1: &'a Point,
    m0: &'a Direction,
    m1: &'a Direction,
}

impl HermitePiece<'_> {
    fn eval(&self, t: f64) -> (Point, Direction) {
        let u = (t - self.t0) / self.h;
        let (u2, u3) = (u * u, u * u * u);
        let (h00, h10, h01, h11) = (
            2.0 * u3 - 3.0 * u2 + 1.0,
            u3 - 2.0 * u2 + u,
            -2.0 * u3 + 3.0 * u2,
            u3 - u2,
        );
        let (d00, d10, d01, d11) = (
            6.0 * u2 - 6.0 * u,
            3.0 * u2 - 4.0 * u + 1.0,
            -6.0 * u2 + 6.0 * u,
            3.0 * u2 - 2.0 * u,
        );
        let pos = self.p0.coords() * h00
            + self.m0.coords() * (h10 * self.h)
            + self.p1.coords() * h01
            + self.m1.coords() * (h11 * self.h);
        let vel = (self.p0.coords() * d00 + self.p1.coords() * d01) / self.h
            + self.m0.coords() * d10
            + self.m1.coords() * d11;
        (Point::from_vector(pos), Direction::from_vector(vel))
    }
}

/// A path whose length can be measured.
#[derive(Debug, Clone, PartialEq)]
pub enum Path {
    Polyline(Polyline),
    Sampled(SampledCurve),
}

impl From<Polyline> for Path {
    fn from(p: Polyline) -> Self {
        Path::Polyline(p)
    }
}

impl From<SampledCurve> for Path {
    fn from(c: SampledCurve) -> Self {
        Path::Sampled(c)
    }
}

/// `∫ L(γ(t), γ'(t)) dt` for the chosen Lagrangian.
pub fn path_length(
    body: &ConvexBody,
    path: &Path,
    kind: LagrangianKind,
    tol: Tolerance,
) -> Result<ExtendedNonNegative> {
    if !tol.is_valid() {
        return Err(GeomError::InvalidArgument(
            "quadrature tolerance must be positive".into(),
        ));
    }
    match path {
        Path::Polyline(p) => polyline_length(body, p, kind, tol),
        Path::Sampled(c) => sampled_length(body, c, kind, tol),
    }
}

fn polyline_length(
    body: &ConvexBody,
    path: &Polyline,
    kind: LagrangianKind,
    tol: Tolerance,
) -> Result<ExtendedNonNegative> {
    for (index, v) in path.vertices.iter().enumerate() {
        v.ensure_dim(body.dim())?;
        if !body.is_interior(v) {
            return Err(GeomError::PathNotInterior { index });
        }
    }
    // Along an edge the exit points of both rays are fixed, so the integrand
    // is analytic on each edge and needs no interior breakpoints.
    let mut total = 0.0;
    for edge in path.vertices.windows(2) {
        let (a, b) = (&edge[0], &edge[1]);
        let d = a.to(b);
        let integral = quadrature::integrate(
            |t| raw_lagrangian(body, kind, &a.offset(&d, t), &d),
            0.0,
            1.0,
            &[],
            tol,
        );
        total += integral.value;
    }
    Ok(ExtendedNonNegative::clamped(total))
}

const KINK_PROBES: usize = 16;

fn sampled_length(
    body: &ConvexBody,
    curve: &SampledCurve,
    kind: LagrangianKind,
    tol: Tolerance,
) -> Result<ExtendedNonNegative> {
    for (index, p) in curve.positions.iter().enumerate() {
        p.ensure_dim(body.dim())?;
        if !body.is_interior(p) {
            return Err(GeomError::PathNotInterior { index });
        }
    }
    let band = geo_eps() * body.scale();
    let mut total = 0.0;
    for i in 0..curve.times.len() - 1 {
        let piece = curve.piece(i);
        let (t0, t1) = (curve.times[i], curve.times[i + 1]);
        let label = |t: f64| {
            let (z, v) = piece.eval(t);
            active_label(body, kind, &z, &v)
        };

        // Locate changes of the active constraint and split there.
        let mut breakpoints = Vec::new();
        let mut prev_t = t0;
        let mut prev_label = label(t0);
        for k in 1..=KINK_PROBES {
            let t = t0 + (t1 - t0) * k as f64 / KINK_PROBES as f64;
            let l = label(t);
            if l != prev_label {
                let (mut lo, mut hi) = (prev_t, t);
                for _ in 0..64 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if label(mid) == prev_label {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                breakpoints.push(0.5 * (lo + hi));
            }
            prev_t = t;
            prev_label = l;
        }

        let escaped = Cell::new(false);
        let integrand = |t: f64| {
            let (z, v) = piece.eval(t);
            if body.boundary_distance(&z) <= band {
                escaped.set(true);
                return 0.0;
            }
            raw_lagrangian(body, kind, &z, &v)
        };
        let integral = quadrature::integrate(integrand, t0, t1, &breakpoints, tol);
        if escaped.get() {
            return Err(GeomError::PathNotInterior { index: i });
        }
        total += integral.value;
    }
    Ok(ExtendedNonNegative::clamped(total))
}

/// Length of the affine segment from `x` to `y` for the tautological
/// structure, in closed form: the Funk distance `F(x, y)`.
pub fn segment_funk_length_closed_form(
    body: &ConvexBody,
    x: &Point,
    y: &Point,
) -> Result<ExtendedNonNegative> {
    funk(body, x, y)
}

/// Distance induced by the chosen structure: Funk for tautological, Hilbert
/// for reversible.
pub fn induced_distance(
    body: &ConvexBody,
    kind: LagrangianKind,
    x: &Point,
    y: &Point,
) -> Result<ExtendedNonNegative> {
    match kind {
        LagrangianKind::Tautological => funk(body, x, y),
        LagrangianKind::Reversible => hilbert(body, x, y),
    }
}

const RICHARDSON_LEVELS: usize = 8;

/// Richardson-extrapolated `lim_{t→0} d(x, x + tξ) / t`, with `d` the Funk
/// (tautological) or Hilbert (reversible) distance.
pub fn busemann_mayer_check(
    body: &ConvexBody,
    x: &Point,
    xi: &Direction,
    kind: LagrangianKind,
) -> Result<f64> {
    xi.ensure_dim(body.dim())?;
    if xi.is_zero() {
        return Err(GeomError::ZeroDirection);
    }
    body.require_interior(x)?;
    let reach = body.raw_radial(x, xi).min(body.raw_radial(x, &-xi));
    let h0 = if reach.is_finite() { 0.25 * reach } else { 1.0 };
    let smallest = h0 / f64::powi(2.0, RICHARDSON_LEVELS as i32 - 1);
    if smallest * xi.norm() < 1e-7 * body.scale() {
        return Err(GeomError::StepUnderflow);
    }

    let quotient = |h: f64| -> Result<f64> {
        Ok(induced_distance(body, kind, x, &x.offset(xi, h))?.value() / h)
    };
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(RICHARDSON_LEVELS);
    for i in 0..RICHARDSON_LEVELS {
        let h = h0 / f64::powi(2.0, i as i32);
        let mut row = vec![quotient(h)?];
        for k in 1..=i {
            let factor = f64::powi(2.0, k as i32) - 1.0;
            let prev = row[k - 1];
            row.push(prev + (prev - table[i - 1][k - 1]) / factor);
        }
        table.push(row);
    }
    Ok(*table.last().and_then(|r| r.last()).expect("nonempty table"))
}

/// Settings for [`minimality_experiment`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbationConfig {
    /// Standard deviation of vertex offsets, as a fraction of `|y − x|`.
    pub offset_scale: f64,
    /// Each perturbed path has between 1 and this many interior vertices.
    pub max_interior_vertices: usize,
    /// Rejection-sampling attempts per perturbation before giving up.
    pub max_attempts: usize,
    /// A gap below `−failure_tol` counts as a failure.
    pub failure_tol: f64,
    pub quadrature: Tolerance,
}

impl Default for PerturbationConfig {
    fn default() -> Self {
        Self {
            offset_scale: 0.1,
            max_interior_vertices: 3,
            max_attempts: 1000,
            failure_tol: 1e-8,
            quadrature: Tolerance::default(),
        }
    }
}

/// Summary of perturbed-path lengths minus the closed-form distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalityReport {
    pub kind: LagrangianKind,
    pub seed: u64,
    pub perturbations: usize,
    pub distance: ExtendedNonNegative,
    pub min_gap: f64,
    pub max_gap: f64,
    pub mean_gap: f64,
    pub failures: usize,
    /// Candidate vertices rejected for leaving the interior.
    pub resampled: usize,
    /// Perturbations dropped after `max_attempts` rejections.
    pub abandoned: usize,
}

impl MinimalityReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Compares the segment from `x` to `y` with randomly perturbed polylines
/// sharing its endpoints. Deterministic for a given seed regardless of
/// thread scheduling: perturbation `i` draws from stream `i`.
pub fn minimality_experiment(
    body: &ConvexBody,
    x: &Point,
    y: &Point,
    kind: LagrangianKind,
    perturbations: usize,
    seed: u64,
    config: &PerturbationConfig,
) -> Result<MinimalityReport> {
    let distance = induced_distance(body, kind, x, y)?;
    if x == y {
        return Err(GeomError::CoincidentPoints);
    }
    let spread = config.offset_scale * x.distance(y);
    let outcomes: Vec<Result<(Option<f64>, usize)>> = (0..perturbations)
        .into_par_iter()
        .map(|i| {
            let mut rng = Stream::new(seed, i as u64);
            let k = 1 + rng.below(config.max_interior_vertices.max(1));
            let mut vertices = vec![x.clone()];
            let mut resampled = 0;
            for j in 1..=k {
                let base = x.lerp(y, j as f64 / (k + 1) as f64);
                let mut attempts = 0;
                let vertex = loop {
                    let offset: Vec<f64> = (0..body.dim()).map(|_| spread * rng.normal()).collect();
                    let candidate = base.offset(&Direction::new(offset)?, 1.0);
                    if body.is_interior(&candidate) {
                        break Some(candidate);
                    }
                    resampled += 1;
                    attempts += 1;
                    if attempts >= config.max_attempts {
                        break None;
                    }
                };
                match vertex {
                    Some(v) if vertices.last() != Some(&v) => vertices.push(v),
                    Some(_) => {}
                    None => return Ok((None, resampled)),
                }
            }
            if vertices.last() != Some(y) {
                vertices.push(y.clone());
            }
            let path = Polyline::new(vertices)?;
            let length = path_length(body, &path.into(), kind, config.quadrature)?;
            Ok((Some(length.value() - distance.value()), resampled))
        })
        .collect();

    let mut gaps = Vec::with_capacity(perturbations);
    let (mut resampled, mut abandoned) = (0, 0);
    for outcome in outcomes {
        let (gap, r) = outcome?;
        resampled += r;
        match gap {
            Some(g) => gaps.push(g),
            None => abandoned += 1,
        }
    }
    let failures = gaps.iter().filter(|&&g| g < -config.failure_tol).count();
    let (min_gap, max_gap, mean_gap) = if gaps.is_empty() {
        (0.0, 0.0, 0.0)
    } else {
        (
            gaps.iter().copied().fold(f64::INFINITY, f64::min),
            gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            gaps.iter().sum::<f64>() / gaps.len() as f64,
        )
    };
    Ok(MinimalityReport {
        kind,
        seed,
        perturbations,
        distance,
        min_gap,
        max_gap,
        mean_gap,
        failures,
        resampled,
        abandoned,
    })
}
