//! JSON formats for bodies and point lists.
//!
//! A body is an object tagged by `"type"`:
//!
//! ```json
//! {"type": "hpolytope", "facets": [{"normal": [1, 0], "offset": 1}, ...], "witness": [0, 0]}
//! {"type": "vpolytope", "vertices": [[0, 0], [1, 0], [0, 1]]}
//! {"type": "ball", "center": [0, 0], "radius": 1}
//! {"type": "halfspace", "normal": [1, 0], "offset": 1}
//! {"type": "intersection", "parts": [...], "witness": [0, 0]}
//! ```
//!
//! Every variant accepts `"openness": "open" | "closed"` (default closed).
//! Witnesses are optional. A point list is an array of coordinate arrays or
//! an object `{"points": [...]}`.

use serde::{Deserialize, Serialize};

use crate::convex_body::{BodyKind, ConvexBody, HPolytope, HalfSpace, Openness};
use crate::error::{GeomError, Result};
use crate::point::{Direction, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetSpec {
    pub normal: Direction,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodySpec {
    #[serde(rename = "hpolytope")]
    HPolytope {
        facets: Vec<FacetSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Point>,
        #[serde(default)]
        openness: Openness,
    },
    #[serde(rename = "vpolytope")]
    VPolytope {
        vertices: Vec<Point>,
        #[serde(default)]
        openness: Openness,
    },
    Ball {
        center: Point,
        radius: f64,
        #[serde(default)]
        openness: Openness,
    },
    #[serde(rename = "halfspace")]
    HalfSpace {
        normal: Direction,
        offset: f64,
        #[serde(default)]
        openness: Openness,
    },
    Intersection {
        parts: Vec<BodySpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Point>,
        #[serde(default)]
        openness: Openness,
    },
}

impl BodySpec {
    pub fn build(&self) -> Result<ConvexBody> {
        let body = match self {
            BodySpec::HPolytope {
                facets,
                witness,
                openness,
            } => {
                let facets = facets
                    .iter()
                    .map(|f| HalfSpace::new(f.normal.clone(), f.offset))
                    .collect::<Result<Vec<_>>>()?;
                let poly = match witness {
                    Some(w) => HPolytope::new(facets, w.clone())?,
                    None => HPolytope::with_computed_witness(facets)?,
                };
                ConvexBody::polytope(poly).with_openness(*openness)
            }
            BodySpec::VPolytope { vertices, openness } => {
                ConvexBody::from_vertices(vertices)?.with_openness(*openness)
            }
            BodySpec::Ball {
                center,
                radius,
                openness,
            } => ConvexBody::ball(center.clone(), *radius)?.with_openness(*openness),
            BodySpec::HalfSpace {
                normal,
                offset,
                openness,
            } => ConvexBody::half_space(normal.clone(), *offset)?.with_openness(*openness),
            BodySpec::Intersection {
                parts,
                witness,
                openness,
            } => {
                let parts = parts
                    .iter()
                    .map(BodySpec::build)
                    .collect::<Result<Vec<_>>>()?;
                ConvexBody::intersection(parts, witness.clone())?.with_openness(*openness)
            }
        };
        Ok(body)
    }

    /// Description of `body`, with its witness written out.
    pub fn from_body(body: &ConvexBody) -> BodySpec {
        let openness = body.openness();
        match body.kind() {
            BodyKind::HalfSpace(h) => BodySpec::HalfSpace {
                normal: h.normal().clone(),
                offset: h.offset(),
                openness,
            },
            BodyKind::Ball(b) => BodySpec::Ball {
                center: b.center().clone(),
                radius: b.radius(),
                openness,
            },
            BodyKind::Polytope(p) => BodySpec::HPolytope {
                facets: p
                    .facets()
                    .iter()
                    .map(|f| FacetSpec {
                        normal: f.normal().clone(),
                        offset: f.offset(),
                    })
                    .collect(),
                witness: Some(p.witness().clone()),
                openness,
            },
            BodyKind::Intersection(parts) => BodySpec::Intersection {
                parts: parts.iter().map(BodySpec::from_body).collect(),
                witness: Some(body.witness().clone()),
                openness,
            },
        }
    }
}

/// Parses and validates a body; every failure is reported as `InvalidBody`.
pub fn parse_body(text: &str) -> Result<ConvexBody> {
    let spec: BodySpec =
        serde_json::from_str(text).map_err(|e| GeomError::InvalidBody(e.to_string()))?;
    spec.build().map_err(|e| match e {
        GeomError::InvalidBody(_) => e,
        other => GeomError::InvalidBody(other.to_string()),
    })
}

pub fn body_to_json(body: &ConvexBody) -> String {
    serde_json::to_string_pretty(&BodySpec::from_body(body)).expect("bodies serialize")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointsFile {
    Bare(Vec<Point>),
    Wrapped { points: Vec<Point> },
}

pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let parsed: PointsFile = serde_json::from_str(text)
        .map_err(|e| GeomError::InvalidArgument(format!("points JSON: {e}")))?;
    Ok(match parsed {
        PointsFile::Bare(p) | PointsFile::Wrapped { points: p } => p,
    })
}

/// Parses `"x1,x2,..."` as a point.
pub fn parse_point_arg(text: &str) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| GeomError::InvalidArgument(format!("bad coordinate list {text:?}: {e}")))?;
    Point::new(coords)
}

/// At most 15 significant digits with trailing zeros removed; `inf` for +∞.
pub fn format_significant(value: f64) -> String {
    if value.is_infinite() {
        return if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if value == 0.0 {
        return "0".into();
    }
    let magnitude = value.abs().log10().floor() as i32;
    if !(-5..15).contains(&magnitude) {
        let s = format!("{value:.14e}");
        let (mantissa, exponent) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exponent}");
    }
    let decimals = (14 - magnitude).max(0) as usize;
    let s = format!("{value:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
