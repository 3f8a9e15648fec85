//! V-representation ingestion: convex hull facets of small 2D/3D point clouds.
//!
//! Facets are found by brute force over vertex pairs (2D) or triples (3D):
//! a candidate hyperplane is kept when every point lies on one side of it.
//! Intended for the modest vertex counts of hand-written body files.

use nalgebra::Vector3;

use crate::convex_body::{HPolytope, HalfSpace};
use crate::error::{GeomError, Result};
use crate::point::{Direction, Point};

pub(crate) fn hull_to_hpolytope(vertices: &[Point]) -> Result<HPolytope> {
    let first = vertices
        .first()
        .ok_or_else(|| GeomError::InvalidBody("no vertices".into()))?;
    let dim = first.dim();
    for v in vertices {
        v.ensure_dim(dim)?;
    }
    let extent = vertices
        .iter()
        .flat_map(|v| v.as_slice().iter().map(|c| c.abs()))
        .fold(1.0, f64::max);
    let tol = 1e-10 * extent;

    let mut candidates: Vec<(Vec<f64>, f64)> = Vec::new();
    let n = vertices.len();
    match dim {
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = (vertices[i].as_slice(), vertices[j].as_slice());
                    let normal = [b[1] - a[1], a[0] - b[0]];
                    candidates.push((normal.to_vec(), normal[0] * a[0] + normal[1] * a[1]));
                }
            }
        }
        3 => {
            let v3 = |p: &Point| Vector3::from_column_slice(p.as_slice());
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let (a, b, c) = (v3(&vertices[i]), v3(&vertices[j]), v3(&vertices[k]));
                        let normal = (b - a).cross(&(c - a));
                        candidates.push((normal.as_slice().to_vec(), normal.dot(&a)));
                    }
                }
            }
        }
        _ => return Err(GeomError::Unsupported("vertex input outside 2D/3D")),
    }

    let mut facets: Vec<(Vec<f64>, f64)> = Vec::new();
    for (normal, offset) in candidates {
        let norm = normal.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm <= tol {
            continue;
        }
        let unit: Vec<f64> = normal.iter().map(|c| c / norm).collect();
        let off = offset / norm;
        let side = |p: &Point| {
            unit.iter()
                .zip(p.as_slice())
                .map(|(u, c)| u * c)
                .sum::<f64>()
                - off
        };
        let (mut below, mut above) = (false, false);
        for v in vertices {
            let s = side(v);
            below |= s < -tol;
            above |= s > tol;
        }
        let oriented = match (below, above) {
            (true, false) => (unit, off),
            (false, true) => (unit.iter().map(|c| -c).collect(), -off),
            _ => continue,
        };
        let duplicate = facets.iter().any(|(u, o)| {
            (o - oriented.1).abs() <= tol
                && u.iter()
                    .zip(&oriented.0)
                    .all(|(a, b)| (a - b).abs() <= 1e-9)
        });
        if !duplicate {
            facets.push(oriented);
        }
    }
    if facets.len() <= dim {
        return Err(GeomError::EmptyInterior);
    }

    let mut centroid = vec![0.0; dim];
    for v in vertices {
        for (c, x) in centroid.iter_mut().zip(v.as_slice()) {
            *c += x / n as f64;
        }
    }
    let half_spaces = facets
        .into_iter()
        .map(|(u, o)| HalfSpace::new(Direction::new(u)?, o))
        .collect::<Result<Vec<_>>>()?;
    let witness = Point::new(centroid)?;
    if half_spaces.iter().any(|h| h.slack(&witness) <= tol) {
        return Err(GeomError::EmptyInterior);
    }
    HPolytope::new(half_spaces, witness)
}
