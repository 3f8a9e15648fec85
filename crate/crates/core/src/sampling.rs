//! Random bodies, points and graphs for property checks and experiments.

use nalgebra::{DMatrix, DVector};

use crate::convex_body::{AffineMap, ConvexBody};
use crate::discrete::WeightedDigraph;
use crate::point::{Direction, Point};
use crate::rng::Stream;

fn unit(rng: &mut Stream, dim: usize) -> Direction {
    Direction::new(rng.unit_vector(dim)).expect("finite")
}

/// Hull of 4 to 11 (2D) or 5 to 12 (3D) random points around a random centre.
pub fn random_polytope(rng: &mut Stream, dim: usize) -> ConvexBody {
    loop {
        let center = unit(rng, dim).scaled(rng.uniform_in(0.0, 1.0));
        let count = dim + 2 + rng.below(8);
        let vertices: Vec<Point> = (0..count)
            .map(|_| {
                Point::origin(dim)
                    .offset(&center, 1.0)
                    .offset(&unit(rng, dim), rng.uniform_in(0.5, 1.5))
            })
            .collect();
        if let Ok(body) = ConvexBody::from_vertices(&vertices) {
            return body;
        }
    }
}

pub fn random_ball(rng: &mut Stream, dim: usize) -> ConvexBody {
    let center: Vec<f64> = (0..dim).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
    ConvexBody::ball(
        Point::new(center).expect("finite"),
        rng.uniform_in(0.5, 2.0),
    )
    .expect("positive radius")
}

/// A polytope or a ball, in dimension 2 or 3, with equal odds.
pub fn random_bounded_body(rng: &mut Stream) -> ConvexBody {
    let dim = 2 + rng.below(2);
    if rng.below(2) == 0 {
        random_polytope(rng, dim)
    } else {
        random_ball(rng, dim)
    }
}

/// Point of the open segment from the witness to a random boundary point,
/// at a fraction of the way drawn from `[0, 1 − margin)`. Unbounded
/// directions are cut off at the body scale.
pub fn random_interior_point(rng: &mut Stream, body: &ConvexBody, margin: f64) -> Point {
    let w = body.witness();
    let d = unit(rng, body.dim());
    let reach = body.raw_radial(w, &d).min(body.scale());
    w.offset(&d, rng.uniform_in(0.0, 1.0 - margin) * reach)
}

/// Random invertible affine map: rotation-shear matrix with singular values
/// in `[0.5, 2]` and a translation in `[-1, 1]^n`.
pub fn random_affine_map(rng: &mut Stream, dim: usize) -> AffineMap {
    loop {
        let m = DMatrix::from_fn(dim, dim, |_, _| rng.uniform_in(-1.0, 1.0));
        let svd = m.clone().svd(true, true);
        let (Some(u), Some(vt)) = (svd.u, svd.v_t) else {
            continue;
        };
        let s = DMatrix::from_diagonal(&DVector::from_fn(dim, |_, _| rng.uniform_in(0.5, 2.0)));
        let t = DVector::from_fn(dim, |_, _| rng.uniform_in(-1.0, 1.0));
        if let Ok(map) = AffineMap::new(u * s * vt, t) {
            return map;
        }
    }
}

pub fn random_direction(rng: &mut Stream, dim: usize) -> Direction {
    unit(rng, dim).scaled(rng.uniform_in(0.1, 3.0))
}

/// Digraph on 2 to `max_vertices` vertices where each unordered pair is
/// joined, with probability 1/2, by a pair of reverse arcs. Half of the
/// graphs use quarter-integer lengths in `[0, 10]`, so that ties between
/// routes are common; the rest use uniform lengths in `[0, 10)`. Extra
/// parallel pairs appear with probability 1/4.
pub fn random_digraph(rng: &mut Stream, max_vertices: usize) -> WeightedDigraph {
    let n = 2 + rng.below(max_vertices.max(2) - 1);
    let mut pairs = Vec::new();
    let quarters = rng.below(2) == 0;
    let length = |rng: &mut Stream| {
        if quarters {
            rng.below(41) as f64 / 4.0
        } else {
            rng.uniform_in(0.0, 10.0)
        }
    };
    for u in 0..n {
        for v in u + 1..n {
            if rng.below(2) == 0 {
                pairs.push((u, v, length(rng), length(rng)));
                if rng.below(4) == 0 {
                    pairs.push((u, v, length(rng), length(rng)));
                }
            }
        }
    }
    WeightedDigraph::from_pairs(n, &pairs).expect("valid lengths")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_interior() {
        let mut rng = Stream::new(3, 0);
        for _ in 0..50 {
            let body = random_bounded_body(&mut rng);
            for _ in 0..10 {
                let p = random_interior_point(&mut rng, &body, 0.05);
                assert!(body.is_interior(&p));
            }
        }
    }

    #[test]
    fn random_graphs_are_valid() {
        let mut rng = Stream::new(1, 0);
        for _ in 0..50 {
            let g = random_digraph(&mut rng, 8);
            assert!(g.vertex_count() <= 8 && g.vertex_count() >= 2);
        }
    }
}
