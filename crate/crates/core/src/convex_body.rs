//! Convex bodies and the primitives every metric is built from: the radial
//! function, the Minkowski gauge, ray exits and separation flags.
//!
//! A body is a half-space, a Euclidean ball, an H-polytope or a finite
//! intersection of those. Every body stores a point certified to lie in its
//! interior; constructors that cannot produce one fail.
//!
//! Conventions for a basepoint `x` in the closure and a direction `ξ`:
//!
//! - radial function `r(ξ) = sup{t : x + tξ ∈ Ω}`, `+∞` when the ray stays inside;
//! - gauge `p(ξ) = 1/r(ξ)` with `1/∞ = 0`, `1/0 = ∞`, and `p(0) = 0`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::extended::ExtendedNonNegative;
use crate::lp::{self, LpOutcome};
use crate::point::{Direction, Point};
use crate::tolerance::geo_eps;

/// The set `{z : ⟨ν, z⟩ ≤ s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    normal: Direction,
    offset: f64,
}

impl HalfSpace {
    pub fn new(normal: Direction, offset: f64) -> Result<Self> {
        if normal.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        if !offset.is_finite() {
            return Err(GeomError::NonFinite);
        }
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &Direction {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `s − ⟨ν, p⟩`; positive strictly inside.
    pub fn slack(&self, p: &Point) -> f64 {
        self.offset - self.normal.dot_point(p)
    }

    /// Signed Euclidean distance from `p` to the bounding hyperplane.
    pub fn signed_distance(&self, p: &Point) -> f64 {
        self.slack(p) / self.normal.norm()
    }

    fn radial(&self, x: &Point, xi: &Direction) -> f64 {
        let rate = self.normal.dot(xi);
        if rate <= 0.0 {
            f64::INFINITY
        } else {
            self.slack(x).max(0.0) / rate
        }
    }

    fn witness(&self) -> Point {
        let n = self.normal.norm();
        let foot = Point::origin(self.dim()).offset(&self.normal, self.offset / (n * n));
        foot.offset(&self.normal, -1.0 / n)
    }
}

/// Closed or open Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    center: Point,
    radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeomError::InvalidBody(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn radial(&self, x: &Point, xi: &Direction) -> f64 {
        // |x − c + tξ|² = R², positive root; the product of the roots is cc/a.
        let rel = self.center.to(x);
        let a = xi.dot(xi);
        let b = xi.dot(&rel);
        let cc = (rel.dot(&rel) - self.radius * self.radius).min(0.0);
        let disc = (b * b - a * cc).sqrt();
        if b > 0.0 {
            -cc / (b + disc)
        } else {
            (disc - b) / a
        }
    }
}

/// Polyhedron `{z : ⟨νᵢ, z⟩ ≤ sᵢ ∀i}` with a stored interior witness.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope {
    facets: Vec<HalfSpace>,
    witness: Point,
}

impl HPolytope {
    /// Validates that `witness` satisfies every facet strictly.
    pub fn new(facets: Vec<HalfSpace>, witness: Point) -> Result<Self> {
        let dim = check_facets(&facets)?;
        witness.ensure_dim(dim)?;
        if let Some(i) = facets.iter().position(|f| f.slack(&witness) <= 0.0) {
            return Err(GeomError::InvalidBody(format!(
                "witness does not strictly satisfy facet {i}"
            )));
        }
        Ok(Self { facets, witness })
    }

    /// Computes a witness as the (capped) Chebyshev center of the facets.
    pub fn with_computed_witness(facets: Vec<HalfSpace>) -> Result<Self> {
        let dim = check_facets(&facets)?;
        let witness = chebyshev_center(&facets, dim)?;
        Self::new(facets, witness)
    }

    /// The box `∏ [lo_k, hi_k]`.
    pub fn aabb(lo: &[f64], hi: &[f64]) -> Result<Self> {
        if lo.len() != hi.len() || lo.iter().zip(hi).any(|(l, h)| !(l < h)) {
            return Err(GeomError::InvalidBody(
                "box bounds must satisfy lo < hi".into(),
            ));
        }
        let dim = lo.len();
        let mut facets = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            facets.push(HalfSpace::new(Direction::axis(dim, k), hi[k])?);
            facets.push(HalfSpace::new(-Direction::axis(dim, k), -lo[k])?);
        }
        let center: Vec<f64> = lo.iter().zip(hi).map(|(l, h)| 0.5 * (l + h)).collect();
        Self::new(facets, Point::new(center)?)
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn witness(&self) -> &Point {
        &self.witness
    }

    pub fn dim(&self) -> usize {
        self.witness.dim()
    }

    fn radial_indexed(&self, x: &Point, xi: &Direction) -> (f64, Option<usize>) {
        let mut best = (f64::INFINITY, None);
        for (i, f) in self.facets.iter().enumerate() {
            let t = f.radial(x, xi);
            if t < best.0 {
                best = (t, Some(i));
            }
        }
        best
    }

    /// True when the recession cone `{ξ : ⟨νᵢ, ξ⟩ ≤ 0 ∀i}` is `{0}`.
    pub fn is_bounded(&self) -> Result<bool> {
        let dim = self.dim();
        let rows: Vec<(Vec<f64>, f64)> = self
            .facets
            .iter()
            .map(|f| (f.normal.as_slice().to_vec(), 0.0))
            .collect();
        let bounds = vec![(-1.0, 1.0); dim];
        for k in 0..dim {
            for sign in [1.0, -1.0] {
                let mut c = vec![0.0; dim];
                c[k] = sign;
                match lp::maximize(&c, &bounds, &rows)? {
                    LpOutcome::Optimal { value, .. } if value > 1e-12 => return Ok(false),
                    LpOutcome::Optimal { .. } => {}
                    _ => return Err(lp::lp_error("recession cone LP failed")),
                }
            }
        }
        Ok(true)
    }

    /// `sup_{z ∈ P} ⟨c, z⟩`, `+∞` when unbounded above.
    pub fn support(&self, c: &Direction) -> Result<f64> {
        let rows: Vec<(Vec<f64>, f64)> = self
            .facets
            .iter()
            .map(|f| (f.normal.as_slice().to_vec(), f.offset))
            .collect();
        match lp::maximize(c.as_slice(), &lp::free(self.dim()), &rows)? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Unbounded => Ok(f64::INFINITY),
            LpOutcome::Infeasible => Err(GeomError::EmptyInterior),
        }
    }

    /// Drops facets implied by the others (one LP per facet).
    pub fn prune_redundant(&self) -> Result<HPolytope> {
        let mut kept: Vec<HalfSpace> = self.facets.clone();
        let mut i = 0;
        while i < kept.len() {
            let candidate = kept[i].clone();
            let others: Vec<(Vec<f64>, f64)> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, f)| (f.normal.as_slice().to_vec(), f.offset))
                .collect();
            // Keep a relaxed copy of the candidate so the LP stays bounded.
            let mut rows = others;
            rows.push((candidate.normal.as_slice().to_vec(), candidate.offset + 1.0));
            let redundant =
                match lp::maximize(candidate.normal.as_slice(), &lp::free(self.dim()), &rows)? {
                    LpOutcome::Optimal { value, .. } => {
                        let tol = 1e-9 * (1.0 + candidate.offset.abs());
                        value <= candidate.offset + tol
                    }
                    _ => false,
                };
            if redundant && kept.len() > 1 {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        HPolytope::new(kept, self.witness.clone())
    }

    /// Vertices of a bounded 2D polytope in counter-clockwise order.
    pub fn vertices_2d(&self) -> Result<Vec<Point>> {
        if self.dim() != 2 {
            return Err(GeomError::Unsupported("vertex enumeration outside 2D"));
        }
        let w = &self.witness;
        let mut verts: Vec<(f64, Point)> = Vec::new();
        for (i, fi) in self.facets.iter().enumerate() {
            for fj in &self.facets[i + 1..] {
                let (a, b) = (fi.normal.as_slice(), fj.normal.as_slice());
                let det = a[0] * b[1] - a[1] * b[0];
                if det.abs() < 1e-14 * fi.normal.norm() * fj.normal.norm() {
                    continue;
                }
                let x = (fi.offset * b[1] - fj.offset * a[1]) / det;
                let y = (a[0] * fj.offset - b[0] * fi.offset) / det;
                let p = Point::new(vec![x, y])?;
                let tol = 1e-9 * (1.0 + x.abs() + y.abs());
                if self
                    .facets
                    .iter()
                    .all(|f| f.slack(&p) >= -tol * f.normal.norm())
                {
                    let angle = (y - w.as_slice()[1]).atan2(x - w.as_slice()[0]);
                    verts.push((angle, p));
                }
            }
        }
        verts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<Point> = Vec::new();
        for (_, p) in verts {
            if out.last().map_or(true, |q: &Point| q.distance(&p) > 1e-10)
                && out.first().map_or(true, |q: &Point| q.distance(&p) > 1e-10)
            {
                out.push(p);
            }
        }
        Ok(out)
    }
}

fn check_facets(facets: &[HalfSpace]) -> Result<usize> {
    let first = facets
        .first()
        .ok_or_else(|| GeomError::InvalidBody("polytope needs at least one facet".into()))?;
    let dim = first.dim();
    for f in facets {
        if f.dim() != dim {
            return Err(GeomError::DimensionMismatch {
                expected: dim,
                found: f.dim(),
            });
        }
    }
    Ok(dim)
}

fn chebyshev_center(facets: &[HalfSpace], dim: usize) -> Result<Point> {
    let rows: Vec<(Vec<f64>, f64)> = facets
        .iter()
        .map(|f| {
            let mut row = f.normal.as_slice().to_vec();
            row.push(f.normal.norm());
            (row, f.offset)
        })
        .collect();
    let mut objective = vec![0.0; dim];
    objective.push(1.0);
    let mut bounds = lp::free(dim);
    bounds.push((0.0, f64::INFINITY));
    let mut outcome = lp::maximize(&objective, &bounds, &rows)?;
    if matches!(outcome, LpOutcome::Unbounded) {
        let cap = 1.0
            + facets
                .iter()
                .map(|f| f.offset.abs() / f.normal.norm())
                .fold(0.0, f64::max);
        bounds[dim] = (0.0, cap);
        outcome = lp::maximize(&objective, &bounds, &rows)?;
    }
    match outcome {
        LpOutcome::Optimal { x, .. } => {
            let radius = x[dim];
            let size = 1.0 + x[..dim].iter().map(|c| c.abs()).fold(0.0, f64::max);
            if radius <= 1e-12 * size {
                Err(GeomError::EmptyInterior)
            } else {
                Point::new(x[..dim].to_vec())
            }
        }
        LpOutcome::Infeasible => Err(GeomError::EmptyInterior),
        LpOutcome::Unbounded => Err(lp::lp_error("Chebyshev center LP unbounded")),
    }
}

/// Whether the body is realized as an open or a closed set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Openness {
    Open,
    #[default]
    Closed,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BodyKind {
    HalfSpace(HalfSpace),
    Ball(Ball),
    Polytope(HPolytope),
    Intersection(Vec<ConvexBody>),
}

/// A convex body with nonempty interior.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    kind: BodyKind,
    openness: Openness,
    witness: Point,
    scale: f64,
}

/// Location of a point relative to a body, up to the boundary band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// The four properties of the Minkowski weak metric `δ(x, y) = p(y − x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeparationFlags {
    pub finite: bool,
    pub symmetric: bool,
    pub strongly_separating: bool,
    pub weakly_separating: bool,
}

impl ConvexBody {
    pub fn half_space(normal: Direction, offset: f64) -> Result<Self> {
        Ok(Self::from_half_space(HalfSpace::new(normal, offset)?))
    }

    pub fn from_half_space(h: HalfSpace) -> Self {
        let witness = h.witness();
        let scale = 1.0 + (h.offset / h.normal.norm()).abs();
        Self {
            kind: BodyKind::HalfSpace(h),
            openness: Openness::Closed,
            witness,
            scale,
        }
    }

    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        Ok(Self::from_ball(Ball::new(center, radius)?))
    }

    pub fn unit_ball(dim: usize) -> Self {
        Self::from_ball(Ball {
            center: Point::origin(dim),
            radius: 1.0,
        })
    }

    pub fn from_ball(b: Ball) -> Self {
        let witness = b.center.clone();
        let scale = 2.0 * b.radius;
        Self {
            kind: BodyKind::Ball(b),
            openness: Openness::Closed,
            witness,
            scale,
        }
    }

    pub fn polytope(p: HPolytope) -> Self {
        let witness = p.witness.clone();
        let scale = 2.0
            * p.facets
                .iter()
                .map(|f| f.signed_distance(&witness))
                .fold(0.0, f64::max);
        Self {
            kind: BodyKind::Polytope(p),
            openness: Openness::Closed,
            witness,
            scale,
        }
    }

    /// Intersection of bodies of equal dimension. Without an explicit witness,
    /// tries the components' witnesses and their centroid, then a Chebyshev LP
    /// when every component is polyhedral.
    pub fn intersection(parts: Vec<ConvexBody>, witness: Option<Point>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| GeomError::InvalidBody("empty intersection".into()))?;
        let dim = first.dim();
        for p in &parts {
            if p.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        let scale = parts.iter().map(|p| p.scale).fold(f64::INFINITY, f64::min);
        let strictly_inside = |w: &Point| {
            parts
                .iter()
                .all(|p| p.boundary_distance(w) > geo_eps() * scale)
        };
        let witness = match witness {
            Some(w) => {
                w.ensure_dim(dim)?;
                if !strictly_inside(&w) {
                    return Err(GeomError::InvalidBody(
                        "intersection witness is not interior".into(),
                    ));
                }
                w
            }
            None => {
                let mut candidates: Vec<Point> = parts.iter().map(|p| p.witness.clone()).collect();
                let mut centroid = DVector::zeros(dim);
                for c in &candidates {
                    centroid += c.coords();
                }
                centroid /= candidates.len() as f64;
                candidates.push(Point::from_vector(centroid));
                match candidates.into_iter().find(|w| strictly_inside(w)) {
                    Some(w) => w,
                    None => {
                        let facets = parts
                            .iter()
                            .map(|p| p.polyhedral_facets())
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| {
                                GeomError::InvalidBody(
                                    "cannot certify an interior point; supply a witness".into(),
                                )
                            })?
                            .concat();
                        let w = chebyshev_center(&facets, dim)?;
                        if !strictly_inside(&w) {
                            return Err(GeomError::EmptyInterior);
                        }
                        w
                    }
                }
            }
        };
        Ok(Self {
            kind: BodyKind::Intersection(parts),
            openness: Openness::Closed,
            witness,
            scale,
        })
    }

    /// Convex hull of a point cloud (2D or 3D), converted to H-representation.
    pub fn from_vertices(vertices: &[Point]) -> Result<Self> {
        Ok(Self::polytope(crate::hull::hull_to_hpolytope(vertices)?))
    }

    pub fn with_openness(mut self, openness: Openness) -> Self {
        self.openness = openness;
        self
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    pub fn openness(&self) -> Openness {
        self.openness
    }

    pub fn witness(&self) -> &Point {
        &self.witness
    }

    /// Diameter estimate used to scale the boundary band.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.witness.dim()
    }

    pub fn as_polytope(&self) -> Option<&HPolytope> {
        match &self.kind {
            BodyKind::Polytope(p) => Some(p),
            _ => None,
        }
    }

    fn polyhedral_facets(&self) -> Option<Vec<HalfSpace>> {
        match &self.kind {
            BodyKind::HalfSpace(h) => Some(vec![h.clone()]),
            BodyKind::Polytope(p) => Some(p.facets.clone()),
            BodyKind::Ball(_) => None,
            BodyKind::Intersection(parts) => parts
                .iter()
                .map(|p| p.polyhedral_facets())
                .collect::<Option<Vec<_>>>()
                .map(|v| v.concat()),
        }
    }

    /// Number of defining constraints (facets, spheres).
    pub fn constraint_count(&self) -> usize {
        match &self.kind {
            BodyKind::HalfSpace(_) | BodyKind::Ball(_) => 1,
            BodyKind::Polytope(p) => p.facets.len(),
            BodyKind::Intersection(parts) => parts.iter().map(|p| p.constraint_count()).sum(),
        }
    }

    /// Signed Euclidean distance to the nearest constraint boundary; positive
    /// inside. Exact for balls and half-spaces, a lower bound for the true
    /// boundary distance of polytopes and intersections.
    pub fn boundary_distance(&self, p: &Point) -> f64 {
        match &self.kind {
            BodyKind::HalfSpace(h) => h.signed_distance(p),
            BodyKind::Ball(b) => b.radius - b.center.distance(p),
            BodyKind::Polytope(poly) => poly
                .facets
                .iter()
                .map(|f| f.signed_distance(p))
                .fold(f64::INFINITY, f64::min),
            BodyKind::Intersection(parts) => parts
                .iter()
                .map(|b| b.boundary_distance(p))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Classifies `p` with a boundary band of half-width `tol · scale`.
    pub fn contains(&self, p: &Point, tol: f64) -> Result<Location> {
        if !(tol > 0.0) {
            return Err(GeomError::InvalidArgument(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        p.ensure_dim(self.dim())?;
        let band = tol * self.scale;
        let d = self.boundary_distance(p);
        Ok(if d > band {
            Location::Interior
        } else if d < -band {
            Location::Exterior
        } else {
            Location::Boundary
        })
    }

    /// [`contains`](Self::contains) with the global tolerance `ε_geo`.
    pub fn locate(&self, p: &Point) -> Result<Location> {
        self.contains(p, geo_eps())
    }

    pub fn is_interior(&self, p: &Point) -> bool {
        matches!(self.locate(p), Ok(Location::Interior))
    }

    pub(crate) fn require_interior(&self, p: &Point) -> Result<()> {
        match self.locate(p)? {
            Location::Interior => Ok(()),
            _ => Err(GeomError::NotInterior),
        }
    }

    fn require_closure(&self, p: &Point) -> Result<()> {
        match self.locate(p)? {
            Location::Exterior => Err(GeomError::OutsideClosure),
            _ => Ok(()),
        }
    }

    /// Raw radial parameter together with the flat index of the constraint
    /// that is hit first. No validation.
    pub(crate) fn radial_indexed(&self, x: &Point, xi: &Direction) -> (f64, Option<usize>) {
        match &self.kind {
            BodyKind::HalfSpace(h) => {
                let t = h.radial(x, xi);
                (t, t.is_finite().then_some(0))
            }
            BodyKind::Ball(b) => (b.radial(x, xi), Some(0)),
            BodyKind::Polytope(p) => p.radial_indexed(x, xi),
            BodyKind::Intersection(parts) => {
                let mut best = (f64::INFINITY, None);
                let mut base = 0;
                for part in parts {
                    let (t, idx) = part.radial_indexed(x, xi);
                    if t < best.0 {
                        best = (t, idx.map(|i| i + base));
                    }
                    base += part.constraint_count();
                }
                best
            }
        }
    }

    pub(crate) fn raw_radial(&self, x: &Point, xi: &Direction) -> f64 {
        self.radial_indexed(x, xi).0
    }

    /// `r(ξ) = sup{t : x + tξ ∈ Ω}`.
    pub fn radial_function(&self, x: &Point, xi: &Direction) -> Result<ExtendedNonNegative> {
        xi.ensure_dim(self.dim())?;
        if xi.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        self.require_closure(x)?;
        Ok(ExtendedNonNegative::clamped(self.raw_radial(x, xi)))
    }

    /// Minkowski gauge `p_{Ω,x}(ξ) = 1 / r_{Ω,x}(ξ)`; zero for `ξ = 0`.
    pub fn gauge(&self, x: &Point, xi: &Direction) -> Result<ExtendedNonNegative> {
        xi.ensure_dim(self.dim())?;
        self.require_closure(x)?;
        if xi.is_zero() {
            return Ok(ExtendedNonNegative::ZERO);
        }
        Ok(ExtendedNonNegative::clamped(self.raw_radial(x, xi)).recip())
    }

    /// Parameter `r` with `x + r(y − x) ∈ ∂Ω`, or `None` when the ray stays in Ω.
    pub(crate) fn exit_parameter(&self, x: &Point, y: &Point) -> Option<f64> {
        let r = self.raw_radial(x, &x.to(y));
        r.is_finite().then_some(r)
    }

    /// `a⁺ = R(x, y) ∩ ∂Ω`, or `None` when the ray from `x` through `y` lies in Ω.
    pub fn ray_boundary_point(&self, x: &Point, y: &Point) -> Result<Option<Point>> {
        y.ensure_dim(self.dim())?;
        if x == y {
            return Err(GeomError::CoincidentPoints);
        }
        self.require_interior(x)?;
        Ok(self.exit_parameter(x, y).map(|r| x.offset(&x.to(y), r)))
    }

    /// Separation properties of the Minkowski weak metric of `self` with
    /// respect to `origin`.
    pub fn classify_separation(&self, origin: &Point) -> Result<SeparationFlags> {
        origin.ensure_dim(self.dim())?;
        if matches!(self.kind, BodyKind::Intersection(_)) {
            return Err(GeomError::Unsupported(
                "separation classification of intersections",
            ));
        }
        self.require_closure(origin)?;
        let finite = self.locate(origin)? == Location::Interior;
        let dim = self.dim();
        let band = geo_eps() * self.scale;
        Ok(match &self.kind {
            BodyKind::Ball(b) => SeparationFlags {
                finite,
                symmetric: b.center.distance(origin) <= band,
                strongly_separating: true,
                weakly_separating: true,
            },
            BodyKind::HalfSpace(_) => SeparationFlags {
                finite,
                symmetric: false,
                strongly_separating: false,
                weakly_separating: dim == 1,
            },
            BodyKind::Polytope(p) => {
                let mut symmetric = true;
                for f in &p.facets {
                    // The reflection z ↦ 2o − z maps facet (ν, s) to (−ν, s − 2⟨ν, o⟩).
                    let bound = f.offset - 2.0 * f.normal.dot_point(origin);
                    let sup = p.support(&-&f.normal)?;
                    if sup > bound + band * f.normal.norm() {
                        symmetric = false;
                        break;
                    }
                }
                let normals = DMatrix::from_fn(p.facets.len(), dim, |i, k| {
                    p.facets[i].normal.as_slice()[k] / p.facets[i].normal.norm()
                });
                let rank = normals.rank(1e-10);
                SeparationFlags {
                    finite,
                    symmetric,
                    strongly_separating: p.is_bounded()?,
                    weakly_separating: rank == dim,
                }
            }
            BodyKind::Intersection(_) => unreachable!(),
        })
    }

    /// Whether the body contains no Euclidean ray.
    pub fn is_bounded(&self) -> Result<bool> {
        match &self.kind {
            BodyKind::Ball(_) => Ok(true),
            BodyKind::HalfSpace(_) => Ok(false),
            BodyKind::Polytope(p) => p.is_bounded(),
            BodyKind::Intersection(parts) => {
                if parts.iter().any(|p| matches!(p.kind, BodyKind::Ball(_))) {
                    return Ok(true);
                }
                let facets = self.polyhedral_facets().expect("polyhedral");
                HPolytope::new(facets, self.witness.clone())?.is_bounded()
            }
        }
    }

    /// Image under an invertible affine map. Balls map only under similarities.
    pub fn affine_image(&self, map: &AffineMap) -> Result<ConvexBody> {
        let image = match &self.kind {
            BodyKind::HalfSpace(h) => ConvexBody::from_half_space(map.image_half_space(h)?),
            BodyKind::Polytope(p) => {
                let facets = p
                    .facets
                    .iter()
                    .map(|f| map.image_half_space(f))
                    .collect::<Result<Vec<_>>>()?;
                ConvexBody::polytope(HPolytope::new(facets, map.apply(&p.witness))?)
            }
            BodyKind::Ball(b) => {
                let m = &map.linear;
                let gram = m.transpose() * m;
                let c2 = gram[(0, 0)];
                let identity = DMatrix::<f64>::identity(m.nrows(), m.ncols()) * c2;
                if (gram - identity).amax() > 1e-12 * c2 {
                    return Err(GeomError::Unsupported("non-similarity image of a ball"));
                }
                ConvexBody::ball(map.apply(&b.center), b.radius * c2.sqrt())?
            }
            BodyKind::Intersection(parts) => {
                let parts = parts
                    .iter()
                    .map(|p| p.affine_image(map))
                    .collect::<Result<Vec<_>>>()?;
                ConvexBody::intersection(parts, Some(map.apply(&self.witness)))?
            }
        };
        Ok(image.with_openness(self.openness))
    }
}

/// `z ↦ M z + b` with `M` invertible.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    linear: DMatrix<f64>,
    translation: DVector<f64>,
    inverse_transpose: DMatrix<f64>,
}

impl AffineMap {
    pub fn new(linear: DMatrix<f64>, translation: DVector<f64>) -> Result<Self> {
        if !linear.is_square() || linear.nrows() != translation.len() {
            return Err(GeomError::InvalidArgument(
                "affine map shape mismatch".into(),
            ));
        }
        let inverse = linear
            .clone()
            .try_inverse()
            .ok_or_else(|| GeomError::InvalidArgument("linear part is singular".into()))?;
        Ok(Self {
            linear,
            translation,
            inverse_transpose: inverse.transpose(),
        })
    }

    pub fn linear(&self) -> &DMatrix<f64> {
        &self.linear
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::from_vector(&self.linear * p.coords() + &self.translation)
    }

    pub fn apply_direction(&self, d: &Direction) -> Direction {
        Direction::from_vector(&self.linear * d.coords())
    }

    fn image_half_space(&self, h: &HalfSpace) -> Result<HalfSpace> {
        let normal = Direction::from_vector(&self.inverse_transpose * h.normal.coords());
        let offset = h.offset + normal.coords().dot(&self.translation);
        HalfSpace::new(normal, offset)
    }
}

/// Closed form for the gauge of the ball `B(0, R)` at an interior point `x`.
pub fn ball_gauge_closed_form(radius: f64, x: &Point, xi: &Direction) -> Result<f64> {
    xi.ensure_dim(x.dim())?;
    if xi.is_zero() {
        return Err(GeomError::ZeroDirection);
    }
    let x_sq = x.coords().norm_squared();
    let denom = radius * radius - x_sq;
    if !(denom > 0.0) {
        return Err(GeomError::InvalidArgument(
            "basepoint must satisfy |x| < R".into(),
        ));
    }
    let proj = xi.dot_point(x);
    let xi_sq = xi.dot(xi);
    let root = (proj * proj + denom * xi_sq).sqrt();
    // Rationalized form when ⟨x, ξ⟩ < 0 avoids cancelling `root + proj`.
    Ok(if proj >= 0.0 {
        (root + proj) / denom
    } else {
        xi_sq / (root - proj)
    })
}

/// Closed form for the gauge of `{⟨ν, z⟩ ≤ s}` at a point strictly inside.
pub fn halfspace_gauge_closed_form(
    normal: &Direction,
    offset: f64,
    x: &Point,
    xi: &Direction,
) -> Result<f64> {
    normal.ensure_dim(x.dim())?;
    xi.ensure_dim(x.dim())?;
    let slack = offset - normal.dot_point(x);
    if !(slack > 0.0) {
        return Err(GeomError::InvalidArgument(
            "basepoint must lie strictly inside the half-space".into(),
        ));
    }
    Ok((normal.dot(xi) / slack).max(0.0))
}
