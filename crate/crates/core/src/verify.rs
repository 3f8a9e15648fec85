//! Randomized property suites with per-property pass counts.
//!
//! Trial `i` of a property draws from `Stream::new(seed ^ h, i)`, with `h` a
//! hash of the property name, so reports do not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::convex_body::{AffineMap, ConvexBody, HPolytope};
use crate::discrete::{
    circle_fixture, find_biminimal_path, induced_weak_metric, induced_weak_metric_exact,
    symmetrize_lengths, verify_symmetrization_inequality, BiminimalSearch, WeightedDigraph,
    DEFAULT_SEARCH_BUDGET,
};
use crate::error::{GeomError, Result};
use crate::finsler::{
    busemann_mayer_check, lagrangian, minimality_experiment, path_length, LagrangianKind,
    PerturbationConfig, Polyline,
};
use crate::harmonic::{
    fit_conic, symmetrize_body_sampled, symmetrize_polytope_body, symmetrized_gauge,
};
use crate::point::Point;
use crate::quadrature::Tolerance;
use crate::rng::Stream;
use crate::sampling::{
    random_affine_map, random_ball, random_bounded_body, random_digraph, random_direction,
    random_interior_point, random_polytope,
};
use crate::weak_metrics::{arithmetic_symmetrization, funk, hilbert};
use crate::{ball_gauge_closed_form, halfspace_gauge_closed_form, harmonic::circle_directions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gauges,
    Metrics,
    Symmetrization,
    Finsler,
    Discrete,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Gauges,
        Suite::Metrics,
        Suite::Symmetrization,
        Suite::Finsler,
        Suite::Discrete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gauges => "gauges",
            Suite::Metrics => "metrics",
            Suite::Symmetrization => "symmetrization",
            Suite::Finsler => "finsler",
            Suite::Discrete => "discrete",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|k| k.name() == s)
            .ok_or_else(|| GeomError::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    /// Replaces every property's default tolerance.
    pub check_tol: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 200,
            check_tol: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub suite: Suite,
    pub name: &'static str,
    pub tolerance: f64,
    pub trials: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

type Check = fn(&mut Stream, f64) -> std::result::Result<(), String>;

struct Property {
    name: &'static str,
    tolerance: f64,
    check: Check,
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<VerifyReport> {
    if let Some(t) = config.check_tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(GeomError::InvalidArgument(format!(
                "check tolerance must be finite and nonnegative, got {t}"
            )));
        }
    }
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut properties = Vec::new();
    for s in suites {
        for p in properties_of(s) {
            properties.push(run_property(s, &p, config));
        }
    }
    Ok(VerifyReport {
        seed: config.seed,
        trials: config.trials,
        passed: properties.iter().all(PropertyResult::ok),
        properties,
    })
}

fn run_property(suite: Suite, p: &Property, config: &VerifyConfig) -> PropertyResult {
    let tolerance = config.check_tol.unwrap_or(p.tolerance);
    let stream_seed = config.seed ^ fnv1a(p.name);
    let outcomes: Vec<std::result::Result<(), String>> = (0..config.trials)
        .into_par_iter()
        .map(|i| (p.check)(&mut Stream::new(stream_seed, i as u64), tolerance))
        .collect();
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let first_failure = outcomes
        .iter()
        .enumerate()
        .find_map(|(i, o)| o.as_ref().err().map(|m| format!("trial {i}: {m}")));
    PropertyResult {
        suite,
        name: p.name,
        tolerance,
        trials: config.trials,
        passed,
        first_failure,
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

fn properties_of(suite: Suite) -> Vec<Property> {
    macro_rules! props {
        ($($name:literal, $tol:expr, $check:expr;)*) => {
            vec![$(Property { name: $name, tolerance: $tol, check: $check }),*]
        };
    }
    match suite {
        Suite::Gauges => props![
            "ball-closed-form", 1e-10, ball_closed_form;
            "halfspace-closed-form", 1e-10, halfspace_closed_form;
            "gauge-homogeneity", 1e-12, gauge_homogeneity;
            "radial-gauge-reciprocity", 1e-12, radial_reciprocity;
        ],
        Suite::Metrics => props![
            "hilbert-is-mean-of-funk", 0.0, hilbert_is_mean_of_funk;
            "funk-triangle", 1e-9, funk_triangle;
            "hilbert-triangle", 1e-9, hilbert_triangle;
            "nesting-monotonicity", 1e-9, nesting_monotonicity;
            "klein-cross-ratio", 1e-10, klein_cross_ratio;
        ],
        Suite::Symmetrization => props![
            "gauge-symmetry", 1e-12, gauge_symmetry;
            "fixed-point-on-symmetric-bodies", 1e-10, fixed_point;
            "idempotence", 1e-10, idempotence;
            "polytope-construction", 1e-10, polytope_construction;
            "affine-equivariance", 1e-10, affine_equivariance;
            "disk-conic-fit", 1e-8, disk_conic_fit;
        ],
        Suite::Finsler => props![
            "segment-funk-length", 1e-8, segment_funk_length;
            "segment-hilbert-length", 1e-8, segment_hilbert_length;
            "reversible-is-mean-of-tautological", 2e-9, reversible_average;
            "busemann-mayer", 1e-5, busemann_mayer;
            "perturbed-paths-not-shorter", 1e-8, perturbed_paths;
        ],
        Suite::Discrete => props![
            "circle-fixture", 0.0, circle;
            "symmetrization-inequality", 0.0, symmetrization_inequality;
            "shortest-matches-enumeration", 0.0, shortest_matches_enumeration;
            "biminimal-gives-equality", 0.0, biminimal_equality;
            "induced-triangle", 0.0, induced_triangle;
        ],
        Suite::All => Suite::EACH.into_iter().flat_map(properties_of).collect(),
    }
}

type Outcome = std::result::Result<(), String>;

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn close(what: &str, got: f64, want: f64, abs: f64) -> Outcome {
    if got == want || (got - want).abs() <= abs {
        Ok(())
    } else {
        Err(format!("{what}: got {got:e}, expected {want:e}"))
    }
}

fn close_rel(what: &str, got: f64, want: f64, rel: f64) -> Outcome {
    close(what, got, want, rel * want.abs().max(1e-300))
}

fn pt(c: &[f64]) -> Point {
    Point::from_slice(c).expect("finite")
}

// gauges

fn ball_closed_form(rng: &mut Stream, tol: f64) -> Outcome {
    let dim = 2 + rng.below(2);
    let radius = rng.uniform_in(0.5, 2.0);
    let body = ConvexBody::ball(Point::origin(dim), radius).map_err(err)?;
    let x = random_interior_point(rng, &body, 0.01);
    let xi = random_direction(rng, dim);
    let got = body.gauge(&x, &xi).map_err(err)?.value();
    close_rel(
        "ball gauge",
        got,
        ball_gauge_closed_form(radius, &x, &xi).map_err(err)?,
        tol,
    )
}

fn halfspace_closed_form(rng: &mut Stream, tol: f64) -> Outcome {
    let dim = 2 + rng.below(2);
    let normal = random_direction(rng, dim);
    let offset = rng.uniform_in(-1.0, 1.0);
    let body = ConvexBody::half_space(normal.clone(), offset).map_err(err)?;
    let x = random_interior_point(rng, &body, 0.01);
    let xi = random_direction(rng, dim);
    let got = body.gauge(&x, &xi).map_err(err)?.value();
    close_rel(
        "half-space gauge",
        got,
        halfspace_gauge_closed_form(&normal, offset, &x, &xi).map_err(err)?,
        tol,
    )
}

fn gauge_homogeneity(rng: &mut Stream, tol: f64) -> Outcome {
    let body = random_bounded_body(rng);
    let x = random_interior_point(rng, &body, 0.05);
    let xi = random_direction(rng, body.dim());
    let lambda = rng.uniform_in(0.1, 10.0);
    let a = body.gauge(&x, &xi.scaled(lambda)).map_err(err)?.value();
    let b = body.gauge(&x, &xi).map_err(err)?.value();
    close_rel("p(λξ) vs λp(ξ)", a, lambda * b, tol)
}

fn radial_reciprocity(rng: &mut Stream, tol: f64) -> Outcome {
    let body = random_bounded_body(rng);
    let x = random_interior_point(rng, &body, 0.05);
    let xi = random_direction(rng, body.dim());
    let r = body.radial_function(&x, &xi).map_err(err)?.value();
    let p = body.gauge(&x, &xi).map_err(err)?.value();
    close("r·p", r * p, 1.0, tol)
}

// metrics

fn hilbert_is_mean_of_funk(rng: &mut Stream, _tol: f64) -> Outcome {
    let body = random_bounded_body(rng);
    let x = random_interior_point(rng, &body, 0.0);
    let y = random_interior_point(rng, &body, 0.0);
    let h = hilbert(&body, &x, &y).map_err(err)?;
    let s = arithmetic_symmetrization(
        funk(&body, &x, &y).map_err(err)?,
        funk(&body, &y, &x).map_err(err)?,
    );
    if h.value().to_bits() == s.value().to_bits() {
        Ok(())
    } else {
        Err(format!("H = {h}, mean of F = {s}"))
    }
}

fn triangle(
    rng: &mut Stream,
    tol: f64,
    d: fn(&ConvexBody, &Point, &Point) -> Result<crate::ExtendedNonNegative>,
) -> Outcome {
    let body = random_bounded_body(rng);
    let [x, y, z] = [0; 3].map(|_| random_interior_point(rng, &body, 0.0));
    let xz = d(&body, &x, &z).map_err(err)?.value();
    let via = d(&body, &x, &y).map_err(err)?.value() + d(&body, &y, &z).map_err(err)?.value();
    if xz <= via + tol {
        Ok(())
    } else {
        Err(format!("d(x,z) = {xz:e} > d(x,y) + d(y,z) = {via:e}"))
    }
}

fn funk_triangle(rng: &mut Stream, tol: f64) -> Outcome {
    triangle(rng, tol, funk)
}

fn hilbert_triangle(rng: &mut Stream, tol: f64) -> Outcome {
    triangle(rng, tol, hilbert)
}

/// Homothety about the witness by `factor`.
pub(crate) fn homothety(body: &ConvexBody, factor: f64) -> Result<ConvexBody> {
    let n = body.dim();
    let w = body.witness().coords();
    let map = AffineMap::new(
        nalgebra::DMatrix::identity(n, n) * factor,
        w * (1.0 - factor),
    )?;
    body.affine_image(&map)
}

fn nesting_monotonicity(rng: &mut Stream, tol: f64) -> Outcome {
    let inner = random_bounded_body(rng);
    let outer = homothety(&inner, rng.uniform_in(1.0, 3.0)).map_err(err)?;
    let x = random_interior_point(rng, &inner, 0.0);
    let y = random_interior_point(rng, &inner, 0.0);
    for (name, d) in [
        ("funk", funk as fn(&ConvexBody, &Point, &Point) -> _),
        ("hilbert", hilbert),
    ] {
        let small = d(&outer, &x, &y).map_err(err)?.value();
        let large = d(&inner, &x, &y).map_err(err)?.value();
        if small > large + tol {
            return Err(format!("{name}: larger body gives {small:e} > {large:e}"));
        }
    }
    Ok(())
}

/// Hilbert distance on the unit disk from the cross-ratio of the chord.
fn disk_cross_ratio_distance(x: &[f64], y: &[f64]) -> f64 {
    let d = [y[0] - x[0], y[1] - x[1]];
    let a = d[0] * d[0] + d[1] * d[1];
    let b = 2.0 * (x[0] * d[0] + x[1] * d[1]);
    let c = x[0] * x[0] + x[1] * x[1] - 1.0;
    let q = -0.5 * (b + b.signum() * (b * b - 4.0 * a * c).sqrt());
    let (r1, r2) = (q / a, c / q);
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    // x at parameter 0, y at 1, chord endpoints at lo < 0 and hi > 1.
    let cr = (hi * (1.0 - lo)) / ((hi - 1.0) * (-lo));
    ((cr - 1.0) / (cr + 1.0)).atanh()
}

fn klein_cross_ratio(rng: &mut Stream, tol: f64) -> Outcome {
    let disk = ConvexBody::unit_ball(2);
    let x = random_interior_point(rng, &disk, 0.01);
    let y = random_interior_point(rng, &disk, 0.01);
    if x == y {
        return Ok(());
    }
    let h = hilbert(&disk, &x, &y).map_err(err)?.value();
    close(
        "hilbert vs cross-ratio",
        h,
        disk_cross_ratio_distance(x.as_slice(), y.as_slice()),
        tol,
    )
}

// symmetrization

fn gauge_symmetry(rng: &mut Stream, tol: f64) -> Outcome {
    let body = random_bounded_body(rng);
    let x = random_interior_point(rng, &body, 0.05);
    let xi = random_direction(rng, body.dim());
    let a = symmetrized_gauge(&body, &x, &xi).map_err(err)?.value();
    let b = symmetrized_gauge(&body, &x, &-&xi).map_err(err)?.value();
    close("q(ξ) vs q(−ξ)", a, b, tol * a.max(1.0))
}

fn fixed_point(rng: &mut Stream, tol: f64) -> Outcome {
    let dim = 2 + rng.below(2);
    let (body, center) = if rng.below(2) == 0 {
        let ball = random_ball(rng, dim);
        let center = ball.witness().clone();
        (ball, center)
    } else {
        let lo: Vec<f64> = (0..dim).map(|_| rng.uniform_in(-2.0, -0.5)).collect();
        let hi: Vec<f64> = lo.iter().map(|l| l + rng.uniform_in(1.0, 3.0)).collect();
        let mid: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
        (
            ConvexBody::polytope(HPolytope::aabb(&lo, &hi).map_err(err)?),
            pt(&mid),
        )
    };
    let xi = random_direction(rng, dim);
    let q = symmetrized_gauge(&body, &center, &xi).map_err(err)?.value();
    let p = body.gauge(&center, &xi).map_err(err)?.value();
    close_rel("q vs p at centre", q, p, tol)
}

fn random_polytope_point(rng: &mut Stream) -> (ConvexBody, Point) {
    let dim = 2 + rng.below(2);
    let body = random_polytope(rng, dim);
    let x = random_interior_point(rng, &body, 0.1);
    (body, x)
}

fn idempotence(rng: &mut Stream, tol: f64) -> Outcome {
    let (body, x) = random_polytope_point(rng);
    let once = symmetrize_polytope_body(&body, &x).map_err(err)?;
    let twice = symmetrize_polytope_body(&once, &x).map_err(err)?;
    let xi = random_direction(rng, body.dim());
    let a = twice.gauge(&x, &xi).map_err(err)?.value();
    let b = once.gauge(&x, &xi).map_err(err)?.value();
    close_rel("gauge after two passes", a, b, tol)
}

fn polytope_construction(rng: &mut Stream, tol: f64) -> Outcome {
    let (body, x) = random_polytope_point(rng);
    let sym = symmetrize_polytope_body(&body, &x).map_err(err)?;
    let xi = random_direction(rng, body.dim());
    let got = sym.gauge(&x, &xi).map_err(err)?.value();
    let want = symmetrized_gauge(&body, &x, &xi).map_err(err)?.value();
    close_rel("polytope gauge vs q", got, want, tol)
}

fn affine_equivariance(rng: &mut Stream, tol: f64) -> Outcome {
    let (body, x) = random_polytope_point(rng);
    let map = random_affine_map(rng, body.dim());
    let image = body.affine_image(&map).map_err(err)?;
    let ax = map.apply(&x);
    let sym_of_image = symmetrize_polytope_body(&image, &ax).map_err(err)?;
    let sym = symmetrize_polytope_body(&body, &x).map_err(err)?;
    let xi = random_direction(rng, body.dim());
    let got = sym_of_image
        .gauge(&ax, &map.apply_direction(&xi))
        .map_err(err)?
        .value();
    let want = sym.gauge(&x, &xi).map_err(err)?.value();
    close_rel("gauge of symmetrized image", got, want, tol)
}

fn disk_conic_fit(rng: &mut Stream, tol: f64) -> Outcome {
    let disk = ConvexBody::unit_ball(2);
    let x = random_interior_point(rng, &disk, 0.1);
    let samples = symmetrize_body_sampled(&disk, &x, &circle_directions(64)).map_err(err)?;
    let points: Vec<Point> = samples.iter().filter_map(|s| s.point().cloned()).collect();
    let fit = fit_conic(&points).map_err(err)?;
    if fit.residual > tol {
        return Err(format!("conic residual {:e}", fit.residual));
    }
    if !fit.is_ellipse() {
        return Err(format!(
            "discriminant {:e} is not negative",
            fit.discriminant()
        ));
    }
    Ok(())
}

// finsler

fn segment_length(rng: &mut Stream, tol: f64, kind: LagrangianKind) -> Outcome {
    let body = random_bounded_body(rng);
    let x = random_interior_point(rng, &body, 0.0);
    let y = random_interior_point(rng, &body, 0.0);
    if x == y {
        return Ok(());
    }
    let seg = Polyline::segment(&x, &y).map_err(err)?;
    let len = path_length(&body, &seg.into(), kind, Tolerance::default())
        .map_err(err)?
        .value();
    let want = crate::finsler::induced_distance(&body, kind, &x, &y)
        .map_err(err)?
        .value();
    close("segment length", len, want, tol * want.max(1.0))
}

fn segment_funk_length(rng: &mut Stream, tol: f64) -> Outcome {
    segment_length(rng, tol, LagrangianKind::Tautological)
}

fn segment_hilbert_length(rng: &mut Stream, tol: f64) -> Outcome {
    segment_length(rng, tol, LagrangianKind::Reversible)
}

fn reversible_average(rng: &mut Stream, tol: f64) -> Outcome {
    let body = random_bounded_body(rng);
    let count = 2 + rng.below(5);
    let mut vertices: Vec<Point> = Vec::with_capacity(count);
    while vertices.len() < count {
        let v = random_interior_point(rng, &body, 0.0);
        if vertices.last() != Some(&v) {
            vertices.push(v);
        }
    }
    let path = Polyline::new(vertices).map_err(err)?;
    let q = Tolerance::default();
    let rev = path_length(&body, &path.clone().into(), LagrangianKind::Reversible, q)
        .map_err(err)?
        .value();
    let fwd = path_length(&body, &path.clone().into(), LagrangianKind::Tautological, q)
        .map_err(err)?
        .value();
    let bwd = path_length(
        &body,
        &path.reversed().into(),
        LagrangianKind::Tautological,
        q,
    )
    .map_err(err)?
    .value();
    close(
        "reversible vs mean",
        rev,
        0.5 * (fwd + bwd),
        tol * rev.max(1.0),
    )
}

fn busemann_mayer(rng: &mut Stream, tol: f64) -> Outcome {
    let body = random_bounded_body(rng);
    let x = random_interior_point(rng, &body, 0.3);
    let xi = random_direction(rng, body.dim());
    for kind in [LagrangianKind::Tautological, LagrangianKind::Reversible] {
        let est = busemann_mayer_check(&body, &x, &xi, kind).map_err(err)?;
        let want = lagrangian(&body, kind, &x, &xi).map_err(err)?.value();
        close_rel("difference quotient limit", est, want, tol)?;
    }
    Ok(())
}

fn perturbed_paths(rng: &mut Stream, tol: f64) -> Outcome {
    let body = random_bounded_body(rng);
    let x = random_interior_point(rng, &body, 0.05);
    let y = random_interior_point(rng, &body, 0.05);
    if x == y {
        return Ok(());
    }
    let config = PerturbationConfig {
        failure_tol: tol,
        ..Default::default()
    };
    let seed = rng.next_u64();
    for kind in [LagrangianKind::Tautological, LagrangianKind::Reversible] {
        let report = minimality_experiment(&body, &x, &y, kind, 4, seed, &config).map_err(err)?;
        if !report.holds() {
            return Err(format!(
                "{kind:?}: perturbed path undershoots by {:e}",
                -report.min_gap
            ));
        }
    }
    Ok(())
}

// discrete

fn circle(_rng: &mut Stream, _tol: f64) -> Outcome {
    let g = circle_fixture();
    let d = |u, v| {
        induced_weak_metric(&g, u, v)
            .map(|e| e.value())
            .map_err(err)
    };
    let s = symmetrize_lengths(&g).map_err(err)?;
    let ds = induced_weak_metric(&s, 0, 1).map_err(err)?.value();
    if (d(0, 1)?, d(1, 0)?, ds) != (1.0, 1.0, 5.0) {
        return Err("circle fixture values differ from 1, 1, 5".into());
    }
    match find_biminimal_path(&g, 0, 1, DEFAULT_SEARCH_BUDGET).map_err(err)? {
        BiminimalSearch::NoneExists => Ok(()),
        other => Err(format!("bi-minimal search returned {other:?}")),
    }
}

fn for_all_pairs(g: &WeightedDigraph, mut f: impl FnMut(usize, usize) -> Outcome) -> Outcome {
    for u in 0..g.vertex_count() {
        for v in 0..g.vertex_count() {
            f(u, v)?;
        }
    }
    Ok(())
}

fn symmetrization_inequality(rng: &mut Stream, _tol: f64) -> Outcome {
    let g = random_digraph(rng, 8);
    for_all_pairs(&g, |u, v| {
        let c = verify_symmetrization_inequality(&g, u, v).map_err(err)?;
        if c.holds {
            Ok(())
        } else {
            Err(format!("({u},{v}): {} < {}", c.lhs, c.rhs))
        }
    })
}

/// Minimum exact length over simple paths from `u` to `v`.
fn enumerate_simple_paths(g: &WeightedDigraph, u: usize, v: usize) -> Option<BigRational> {
    fn go(
        g: &WeightedDigraph,
        at: usize,
        v: usize,
        seen: &mut Vec<bool>,
        acc: BigRational,
        best: &mut Option<BigRational>,
    ) {
        if at == v {
            if best.as_ref().is_none_or(|b| acc < *b) {
                *best = Some(acc);
            }
            return;
        }
        for e in g.edges() {
            if e.u != at || seen[e.v] {
                continue;
            }
            seen[e.v] = true;
            go(
                g,
                e.v,
                v,
                seen,
                &acc + BigRational::from_float(e.len).expect("finite"),
                best,
            );
            seen[e.v] = false;
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[u] = true;
    let mut best = None;
    go(g, u, v, &mut seen, BigRational::zero(), &mut best);
    best
}

fn shortest_matches_enumeration(rng: &mut Stream, _tol: f64) -> Outcome {
    let g = random_digraph(rng, 6);
    for_all_pairs(&g, |u, v| {
        let exact = induced_weak_metric_exact(&g, u, v).map_err(err)?;
        if exact == enumerate_simple_paths(&g, u, v) {
            Ok(())
        } else {
            Err(format!(
                "({u},{v}): shortest path disagrees with enumeration"
            ))
        }
    })
}

fn biminimal_equality(rng: &mut Stream, _tol: f64) -> Outcome {
    let g = random_digraph(rng, 8);
    for_all_pairs(&g, |u, v| {
        if let BiminimalSearch::Found(_) =
            find_biminimal_path(&g, u, v, DEFAULT_SEARCH_BUDGET).map_err(err)?
        {
            if !verify_symmetrization_inequality(&g, u, v)
                .map_err(err)?
                .equal
            {
                return Err(format!("({u},{v}): bi-minimal path but strict inequality"));
            }
        }
        Ok(())
    })
}

fn induced_triangle(rng: &mut Stream, _tol: f64) -> Outcome {
    let g = random_digraph(rng, 8);
    let n = g.vertex_count();
    let d: Vec<Vec<Option<BigRational>>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| induced_weak_metric_exact(&g, u, v).expect("valid"))
                .collect()
        })
        .collect();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if let (Some(a), Some(b)) = (&d[u][v], &d[v][w]) {
                    if d[u][w].as_ref().is_none_or(|c| *c > a + b) {
                        return Err(format!("triangle inequality fails at ({u},{v},{w})"));
                    }
                }
            }
        }
    }
    Ok(())
}
