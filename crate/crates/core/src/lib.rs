pub mod convex_body;
pub mod discrete;
pub mod error;
pub mod extended;
pub mod finsler;
pub mod harmonic;
mod hull;
pub mod io;
mod lp;
pub mod point;
pub mod quadrature;
pub mod rng;
pub mod sampling;
pub mod svg;
pub mod tolerance;
pub mod verify;
pub mod weak_metrics;

pub use convex_body::{
    ball_gauge_closed_form, halfspace_gauge_closed_form, AffineMap, Ball, BodyKind, ConvexBody,
    HPolytope, HalfSpace, Location, Openness, SeparationFlags,
};
pub use error::{GeomError, Result};
pub use extended::ExtendedNonNegative;
pub use harmonic::{
    fit_conic, section, symmetrize_body_sampled, symmetrize_hpolytope, symmetrize_interval,
    symmetrize_polytope_body, symmetrized_gauge, BoundarySample, Closedness, ConicFit,
    PointedInterval,
};
pub use point::{Direction, Point};
pub use weak_metrics::{
    arithmetic_symmetrization, distance, distance_matrix, funk, hilbert, max_symmetrization,
    metric_ball_boundary, minkowski_weak_metric, reverse_funk, BallKind, DistanceMatrix,
    MetricKind, WeakMetricSample,
};
