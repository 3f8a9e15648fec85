//! Harmonic symmetrization of pointed intervals and convex bodies.
//!
//! Each chord of Ω through the basepoint `x` is replaced by the chord centered
//! at `x` whose half-length is the harmonic mean of the two arm lengths. The
//! gauge of the result is `q(ξ) = (p(ξ) + p(−ξ)) / 2`, and for polytopes the
//! result is again a polytope with an explicit H-representation.

use nalgebra::{DMatrix, DVector};
use serde::{Serialize, Serializer};

use crate::convex_body::{BodyKind, ConvexBody, HPolytope, HalfSpace, Openness};
use crate::error::{GeomError, Result};
use crate::extended::ExtendedNonNegative;
use crate::point::{Direction, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closedness {
    Open,
    Closed,
    HalfOpen,
}

impl From<Openness> for Closedness {
    fn from(o: Openness) -> Self {
        match o {
            Openness::Open => Closedness::Open,
            Openness::Closed => Closedness::Closed,
        }
    }
}

/// A subset `{origin + t·direction : lower ≤ t ≤ upper}` of a line with a
/// marked parameter. Endpoints may be infinite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointedInterval {
    pub origin: Point,
    pub direction: Direction,
    pub lower: f64,
    pub upper: f64,
    pub basepoint: f64,
    pub closedness: Closedness,
}

impl PointedInterval {
    pub fn new(
        origin: Point,
        direction: Direction,
        lower: f64,
        upper: f64,
        basepoint: f64,
        closedness: Closedness,
    ) -> Result<Self> {
        direction.ensure_dim(origin.dim())?;
        if direction.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        if lower.is_nan() || upper.is_nan() || !basepoint.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if !(lower <= basepoint && basepoint <= upper && lower < upper) {
            return Err(GeomError::InvalidArgument(format!(
                "need lower ≤ basepoint ≤ upper and lower < upper, got [{lower}, {upper}] at {basepoint}"
            )));
        }
        Ok(Self {
            origin,
            direction,
            lower,
            upper,
            basepoint,
            closedness,
        })
    }

    /// An interval on the real line `ℝ¹`.
    pub fn on_real_line(
        lower: f64,
        upper: f64,
        basepoint: f64,
        closedness: Closedness,
    ) -> Result<Self> {
        Self::new(
            Point::origin(1),
            Direction::axis(1, 0),
            lower,
            upper,
            basepoint,
            closedness,
        )
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.origin.offset(&self.direction, t)
    }

    pub fn is_whole_line(&self) -> bool {
        self.lower == f64::NEG_INFINITY && self.upper == f64::INFINITY
    }
}

/// Harmonic symmetrization of a pointed interval about its basepoint.
pub fn symmetrize_interval(interval: &PointedInterval) -> Result<PointedInterval> {
    if interval.closedness == Closedness::HalfOpen {
        return Err(GeomError::HalfOpenInterval);
    }
    let arm_low = interval.basepoint - interval.lower;
    let arm_high = interval.upper - interval.basepoint;
    if arm_low == 0.0 || arm_high == 0.0 {
        return Err(GeomError::DegenerateInterval);
    }
    // 1/h = (1/d₁ + 1/d₂)/2, extended by continuity to infinite arms.
    let half = match (arm_low.is_finite(), arm_high.is_finite()) {
        (true, true) => 2.0 * arm_low * arm_high / (arm_low + arm_high),
        (true, false) => 2.0 * arm_low,
        (false, true) => 2.0 * arm_high,
        (false, false) => f64::INFINITY,
    };
    Ok(PointedInterval {
        lower: interval.basepoint - half,
        upper: interval.basepoint + half,
        ..interval.clone()
    })
}

/// The chord `(x + ℝξ) ∩ Ω`, parametrized so that `x` sits at `0`.
pub fn section(body: &ConvexBody, x: &Point, xi: &Direction) -> Result<PointedInterval> {
    xi.ensure_dim(body.dim())?;
    if xi.is_zero() {
        return Err(GeomError::ZeroDirection);
    }
    body.require_interior(x)?;
    let upper = body.radial_function(x, xi)?.value();
    let lower = -body.radial_function(x, &-xi)?.value();
    PointedInterval::new(
        x.clone(),
        xi.clone(),
        lower,
        upper,
        0.0,
        body.openness().into(),
    )
}

/// `q(ξ) = (p(ξ) + p(−ξ)) / 2`, the gauge of `H(Ω, x)` at `x`.
pub fn symmetrized_gauge(
    body: &ConvexBody,
    x: &Point,
    xi: &Direction,
) -> Result<ExtendedNonNegative> {
    body.require_interior(x)?;
    Ok(body.gauge(x, xi)?.mean(body.gauge(x, &-xi)?))
}

/// Exact H-representation of `H(P, x)`.
///
/// With `Lᵢ(ξ) = ⟨νᵢ, ξ⟩ / (sᵢ − ⟨νᵢ, x⟩)` the gauge of `P` at `x` is
/// `(maxᵢ Lᵢ)₊`, so `q(ξ) ≤ 1` expands into the facets
/// `(Lᵢ − Lⱼ)/2 ≤ 1` for `i ≠ j` and `Lᵢ/2 ≤ 1`, plus `−Lⱼ/2 ≤ 1` when `P`
/// is unbounded. The result is not pruned; see [`HPolytope::prune_redundant`].
pub fn symmetrize_hpolytope(poly: &HPolytope, x: &Point) -> Result<HPolytope> {
    x.ensure_dim(poly.dim())?;
    let body = ConvexBody::polytope(poly.clone());
    body.require_interior(x)?;
    let scaled: Vec<Direction> = poly
        .facets()
        .iter()
        .map(|f| f.normal().scaled(1.0 / f.slack(x)))
        .collect();

    let mut facets = Vec::new();
    let mut push = |normal: Direction| -> Result<()> {
        if !normal.is_zero() {
            let offset = 1.0 + normal.dot_point(x);
            facets.push(HalfSpace::new(normal, offset)?);
        }
        Ok(())
    };
    for (i, li) in scaled.iter().enumerate() {
        for (j, lj) in scaled.iter().enumerate() {
            if i != j {
                push(li.sub(lj).scaled(0.5))?;
            }
        }
    }
    for li in &scaled {
        push(li.scaled(0.5))?;
    }
    if !poly.is_bounded()? {
        for lj in &scaled {
            push(lj.scaled(-0.5))?;
        }
    }
    HPolytope::new(facets, x.clone())
}

/// [`symmetrize_hpolytope`] for a polytope body, keeping its openness.
pub fn symmetrize_polytope_body(body: &ConvexBody, x: &Point) -> Result<ConvexBody> {
    match body.kind() {
        BodyKind::Polytope(p) => {
            Ok(ConvexBody::polytope(symmetrize_hpolytope(p, x)?).with_openness(body.openness()))
        }
        _ => Err(GeomError::Unsupported(
            "exact symmetrization of non-polytope bodies",
        )),
    }
}

/// A boundary sample of a possibly unbounded body along a direction.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySample {
    Point(Point),
    /// The body contains the whole ray in this direction.
    Unbounded,
}

impl BoundarySample {
    pub fn point(&self) -> Option<&Point> {
        match self {
            BoundarySample::Point(p) => Some(p),
            BoundarySample::Unbounded => None,
        }
    }
}

/// Serialized as a coordinate array, or `null` when unbounded.
impl Serialize for BoundarySample {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundarySample::Point(p) => p.serialize(s),
            BoundarySample::Unbounded => s.serialize_none(),
        }
    }
}

/// Boundary points `x + u / q(u)` of `H(Ω, x)`.
pub fn symmetrize_body_sampled(
    body: &ConvexBody,
    x: &Point,
    directions: &[Direction],
) -> Result<Vec<BoundarySample>> {
    body.require_interior(x)?;
    directions
        .iter()
        .map(|u| {
            u.ensure_dim(body.dim())?;
            if u.is_zero() {
                return Err(GeomError::ZeroDirection);
            }
            let q = symmetrized_gauge(body, x, u)?;
            Ok(if q.is_zero() {
                BoundarySample::Unbounded
            } else {
                BoundarySample::Point(x.offset(u, q.recip().value()))
            })
        })
        .collect()
}

/// `a x² + b xy + c y² + d x + e y + f = 0` fitted to planar points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConicFit {
    /// `[a, b, c, d, e, f]`, unit Euclidean norm, in normalized coordinates.
    pub coefficients: [f64; 6],
    /// Largest `|Q(p)|` over the normalized sample points.
    pub residual: f64,
}

impl ConicFit {
    /// `b² − 4ac`; negative for an ellipse.
    pub fn discriminant(&self) -> f64 {
        let [a, b, c, ..] = self.coefficients;
        b * b - 4.0 * a * c
    }

    pub fn is_ellipse(&self) -> bool {
        self.discriminant() < 0.0
    }
}

/// Algebraic least-squares conic through at least six planar points.
///
/// Points are centered and scaled to unit RMS radius before fitting.
pub fn fit_conic(points: &[Point]) -> Result<ConicFit> {
    if points.len() < 6 {
        return Err(GeomError::InvalidArgument(
            "conic fit needs at least 6 points".into(),
        ));
    }
    for p in points {
        p.ensure_dim(2)?;
    }
    let n = points.len() as f64;
    let (mx, my) = points.iter().fold((0.0, 0.0), |(sx, sy), p| {
        (sx + p.as_slice()[0] / n, sy + p.as_slice()[1] / n)
    });
    let rms = (points
        .iter()
        .map(|p| (p.as_slice()[0] - mx).powi(2) + (p.as_slice()[1] - my).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    if !(rms > 0.0) {
        return Err(GeomError::InvalidArgument("points are coincident".into()));
    }
    let normalized: Vec<(f64, f64)> = points
        .iter()
        .map(|p| ((p.as_slice()[0] - mx) / rms, (p.as_slice()[1] - my) / rms))
        .collect();
    let design = DMatrix::from_fn(points.len(), 6, |i, k| {
        let (x, y) = normalized[i];
        [x * x, x * y, y * y, x, y, 1.0][k]
    });
    let svd = design.clone().svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| GeomError::InvalidArgument("SVD failed".into()))?;
    let smallest = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("six singular values");
    let coeffs: DVector<f64> = v_t.row(smallest).transpose();
    let residual = (&design * &coeffs).amax();
    let mut coefficients = [0.0; 6];
    coefficients.copy_from_slice(coeffs.as_slice());
    Ok(ConicFit {
        coefficients,
        residual,
    })
}

/// Unit directions `(cos θ, sin θ)` at `count` equally spaced angles.
pub fn circle_directions(count: usize) -> Vec<Direction> {
    (0..count)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / count as f64;
            Direction::from_vector(DVector::from_vec(vec![a.cos(), a.sin()]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point {
        Point::from_slice(c).unwrap()
    }

    fn d(c: &[f64]) -> Direction {
        Direction::from_slice(c).unwrap()
    }

    fn real(lower: f64, upper: f64, base: f64) -> PointedInterval {
        PointedInterval::on_real_line(lower, upper, base, Closedness::Closed).unwrap()
    }

    #[test]
    fn interval_examples() {
        let s = symmetrize_interval(&real(-1.0, 3.0, 0.0)).unwrap();
        assert_eq!((s.lower, s.upper), (-1.5, 1.5));
        let s = symmetrize_interval(&real(0.0, f64::INFINITY, 1.0)).unwrap();
        assert_eq!((s.lower, s.upper), (-1.0, 3.0));
        let s = symmetrize_interval(&real(f64::NEG_INFINITY, f64::INFINITY, 0.0)).unwrap();
        assert!(s.is_whole_line());
        let s = symmetrize_interval(&real(-2.5, 2.5, 0.0)).unwrap();
        assert_eq!((s.lower, s.upper), (-2.5, 2.5));
    }

    #[test]
    fn interval_closedness() {
        let open = PointedInterval::on_real_line(-1.0, 3.0, 0.0, Closedness::Open).unwrap();
        assert_eq!(
            symmetrize_interval(&open).unwrap().closedness,
            Closedness::Open
        );
        let half = PointedInterval::on_real_line(-1.0, 3.0, 0.0, Closedness::HalfOpen).unwrap();
        assert_eq!(symmetrize_interval(&half), Err(GeomError::HalfOpenInterval));
    }

    #[test]
    fn interval_errors() {
        assert_eq!(
            symmetrize_interval(&real(0.0, 3.0, 0.0)),
            Err(GeomError::DegenerateInterval)
        );
        assert!(PointedInterval::on_real_line(1.0, 1.0, 1.0, Closedness::Closed).is_err());
        assert!(PointedInterval::on_real_line(0.0, 1.0, 2.0, Closedness::Closed).is_err());
    }

    #[test]
    fn section_examples() {
        let disk = ConvexBody::unit_ball(2);
        let s = section(&disk, &p(&[0.0, 0.0]), &d(&[1.0, 0.0])).unwrap();
        assert_eq!((s.lower, s.upper, s.basepoint), (-1.0, 1.0, 0.0));
        let s = section(&disk, &p(&[0.5, 0.0]), &d(&[1.0, 0.0])).unwrap();
        assert!((s.lower + 1.5).abs() < 1e-15 && (s.upper - 0.5).abs() < 1e-15);
        let hp = ConvexBody::half_space(d(&[1.0, 0.0]), 1.0).unwrap();
        assert!(section(&hp, &p(&[0.0, 0.0]), &d(&[0.0, 1.0]))
            .unwrap()
            .is_whole_line());
        assert_eq!(
            section(&disk, &p(&[0.0, 0.0]), &d(&[0.0, 0.0])),
            Err(GeomError::ZeroDirection)
        );
    }

    #[test]
    fn symmetrized_gauge_examples() {
        let disk = ConvexBody::unit_ball(2);
        let q = symmetrized_gauge(&disk, &p(&[0.0, 0.0]), &d(&[3.0, 4.0]))
            .unwrap()
            .value();
        assert!((q - 5.0).abs() < 1e-14);
        let b2 = ConvexBody::ball(p(&[0.0, 0.0]), 2.0).unwrap();
        let q = symmetrized_gauge(&b2, &p(&[1.0, 0.0]), &d(&[1.0, 0.0]))
            .unwrap()
            .value();
        assert!((q - 2.0 / 3.0).abs() < 1e-15);
        let hp = ConvexBody::half_space(d(&[1.0, 0.0]), 1.0).unwrap();
        assert_eq!(
            symmetrized_gauge(&hp, &p(&[0.0, 0.0]), &d(&[1.0, 0.0]))
                .unwrap()
                .value(),
            0.5
        );
    }

    #[test]
    fn square_is_a_fixed_point() {
        let sq = HPolytope::aabb(&[-1.0, -1.0], &[1.0, 1.0]).unwrap();
        let sym = symmetrize_hpolytope(&sq, &p(&[0.0, 0.0])).unwrap();
        let pruned = sym.prune_redundant().unwrap();
        assert_eq!(pruned.facets().len(), 4);
        let body = ConvexBody::polytope(sym);
        for u in circle_directions(32) {
            let a = body.gauge(&p(&[0.0, 0.0]), &u).unwrap().value();
            let b = ConvexBody::polytope(sq.clone())
                .gauge(&p(&[0.0, 0.0]), &u)
                .unwrap()
                .value();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_becomes_hexagon() {
        let tri =
            ConvexBody::from_vertices(&[p(&[-1.0, 0.0]), p(&[1.0, 0.0]), p(&[0.0, 1.0])]).unwrap();
        let centroid = p(&[0.0, 1.0 / 3.0]);
        let sym = symmetrize_hpolytope(tri.as_polytope().unwrap(), &centroid).unwrap();
        assert!(sym.facets().len() <= 9);
        assert_eq!(sym.prune_redundant().unwrap().facets().len(), 6);
        assert_eq!(sym.vertices_2d().unwrap().len(), 6);
        let body = ConvexBody::polytope(sym);
        for u in circle_directions(100) {
            let a = body.gauge(&centroid, &u).unwrap().value();
            let b = symmetrized_gauge(&tri, &centroid, &u).unwrap().value();
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn unbounded_polytope_symmetrization() {
        let hp = HPolytope::new(
            vec![HalfSpace::new(d(&[1.0, 0.0]), 1.0).unwrap()],
            p(&[0.0, 0.0]),
        )
        .unwrap();
        let sym = ConvexBody::polytope(symmetrize_hpolytope(&hp, &p(&[0.0, 0.0])).unwrap());
        // H is the strip |x₁| ≤ 2.
        assert_eq!(
            sym.gauge(&p(&[0.0, 0.0]), &d(&[-1.0, 0.0]))
                .unwrap()
                .value(),
            0.5
        );
        assert_eq!(
            sym.gauge(&p(&[0.0, 0.0]), &d(&[1.0, 0.0])).unwrap().value(),
            0.5
        );
        assert!(sym
            .gauge(&p(&[0.0, 0.0]), &d(&[0.0, 1.0]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn non_polytope_rejected() {
        let disk = ConvexBody::unit_ball(2);
        assert!(matches!(
            symmetrize_polytope_body(&disk, &p(&[0.0, 0.0])),
            Err(GeomError::Unsupported(_))
        ));
        let sq = HPolytope::aabb(&[-1.0, -1.0], &[1.0, 1.0]).unwrap();
        assert_eq!(
            symmetrize_hpolytope(&sq, &p(&[1.0, 0.0])),
            Err(GeomError::NotInterior)
        );
    }

    #[test]
    fn openness_is_copied() {
        let sq = ConvexBody::polytope(HPolytope::aabb(&[-1.0, -1.0], &[1.0, 1.0]).unwrap())
            .with_openness(Openness::Open);
        let sym = symmetrize_polytope_body(&sq, &p(&[0.3, 0.0])).unwrap();
        assert_eq!(sym.openness(), Openness::Open);
    }

    #[test]
    fn sampled_boundary_examples() {
        let disk = ConvexBody::unit_ball(2);
        for s in symmetrize_body_sampled(&disk, &p(&[0.0, 0.0]), &circle_directions(12)).unwrap() {
            assert!((s.point().unwrap().distance(&p(&[0.0, 0.0])) - 1.0).abs() < 1e-14);
        }
        let b2 = ConvexBody::ball(p(&[0.0, 0.0]), 2.0).unwrap();
        let s = symmetrize_body_sampled(&b2, &p(&[1.0, 0.0]), &[d(&[1.0, 0.0])]).unwrap();
        assert!(s[0].point().unwrap().distance(&p(&[2.5, 0.0])) < 1e-14);

        let hp = ConvexBody::half_space(d(&[1.0, 0.0]), 1.0).unwrap();
        let s = symmetrize_body_sampled(&hp, &p(&[0.0, 0.0]), &[d(&[1.0, 1.0]), d(&[0.0, 1.0])])
            .unwrap();
        assert!(s[0].point().is_some());
        assert_eq!(s[1], BoundarySample::Unbounded);
        assert_eq!(serde_json::to_string(&s[1]).unwrap(), "null");
    }

    #[test]
    fn conic_fit_of_known_ellipse() {
        let pts: Vec<Point> = (0..40)
            .map(|k| {
                let a = k as f64 * 0.3;
                p(&[3.0 + 2.0 * a.cos(), -1.0 + 0.5 * a.sin()])
            })
            .collect();
        let fit = fit_conic(&pts).unwrap();
        assert!(fit.residual < 1e-12);
        assert!(fit.is_ellipse());
        let hyperbola: Vec<Point> = (1..20)
            .flat_map(|k| {
                let t = k as f64 * 0.2;
                [p(&[t, 1.0 / t]), p(&[-t, -1.0 / t])]
            })
            .collect();
        assert!(!fit_conic(&hyperbola).unwrap().is_ellipse());
    }
}
