//! SVG rendering of planar bodies with labelled overlays.

use std::fmt::Write as _;

use crate::convex_body::{BodyKind, ConvexBody};
use crate::error::{GeomError, Result};
use crate::harmonic::circle_directions;
use crate::point::Point;

const OUTLINE_SAMPLES: usize = 360;
const SIZE_PX: f64 = 600.0;

#[derive(Debug, Clone, PartialEq)]
pub enum OverlayShape {
    /// Closed polygon through the points in order.
    Polygon(Vec<Point>),
    /// Open polyline.
    Path(Vec<Point>),
    /// Individual markers.
    Points(Vec<Point>),
}

impl OverlayShape {
    fn points(&self) -> &[Point] {
        match self {
            OverlayShape::Polygon(p) | OverlayShape::Path(p) | OverlayShape::Points(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Overlay {
    pub label: String,
    pub shape: OverlayShape,
    pub color: String,
}

impl Overlay {
    pub fn new(label: impl Into<String>, shape: OverlayShape, color: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            shape,
            color: color.into(),
        }
    }
}

/// A planar body together with overlays drawn on top of it.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    body: ConvexBody,
    overlays: Vec<Overlay>,
}

impl Scene {
    pub fn new(body: ConvexBody) -> Result<Self> {
        if body.dim() != 2 {
            return Err(GeomError::DimensionMismatch {
                expected: 2,
                found: body.dim(),
            });
        }
        Ok(Self {
            body,
            overlays: Vec::new(),
        })
    }

    pub fn add(&mut self, overlay: Overlay) -> Result<&mut Self> {
        for p in overlay.shape.points() {
            p.ensure_dim(2)?;
        }
        self.overlays.push(overlay);
        Ok(self)
    }

    pub fn overlays(&self) -> &[Overlay] {
        &self.overlays
    }

    /// Outline of the body as a closed polygon. Unbounded directions are
    /// cut off at `reach` from the witness.
    fn outline(&self, reach: f64) -> Vec<Point> {
        if let BodyKind::Polytope(p) = self.body.kind() {
            if let Ok(vs) = p.vertices_2d() {
                if p.is_bounded().unwrap_or(false) && vs.len() >= 3 {
                    return vs;
                }
            }
        }
        let w = self.body.witness();
        circle_directions(OUTLINE_SAMPLES)
            .iter()
            .map(|d| w.offset(d, self.body.raw_radial(w, d).min(reach)))
            .collect()
    }

    /// Viewport `(min_x, min_y, max_x, max_y)` containing every overlay
    /// point and the body outline, with a margin.
    fn viewport(&self, outline: &[Point]) -> (f64, f64, f64, f64) {
        let mut bounds = (
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        );
        for p in outline
            .iter()
            .chain(self.overlays.iter().flat_map(|o| o.shape.points()))
        {
            let c = p.as_slice();
            bounds = (
                bounds.0.min(c[0]),
                bounds.1.min(c[1]),
                bounds.2.max(c[0]),
                bounds.3.max(c[1]),
            );
        }
        let span = (bounds.2 - bounds.0).max(bounds.3 - bounds.1).max(1e-9);
        let pad = 0.08 * span;
        (
            bounds.0 - pad,
            bounds.1 - pad,
            bounds.2 + pad,
            bounds.3 + pad,
        )
    }

    fn overlay_extent(&self) -> f64 {
        let w = self.body.witness();
        self.overlays
            .iter()
            .flat_map(|o| o.shape.points())
            .map(|p| p.distance(w))
            .fold(0.0, f64::max)
    }

    pub fn to_svg(&self) -> String {
        let reach = 3.0 * self.overlay_extent().max(self.body.scale());
        let outline = self.outline(reach);
        let (x0, y0, x1, y1) = self.viewport(&outline);
        let (w, h) = (x1 - x0, y1 - y0);
        let stroke = 0.004 * w.max(h);
        // SVG y grows downwards; flip so the picture has the usual orientation.
        let pt = |p: &Point| format!("{},{}", num(p.as_slice()[0]), num(-p.as_slice()[1]));
        let join = |ps: &[Point]| ps.iter().map(pt).collect::<Vec<_>>().join(" ");

        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
            num(SIZE_PX),
            num(SIZE_PX * h / w),
            num(x0),
            num(-y1),
            num(w),
            num(h)
        );
        let _ = writeln!(
            out,
            r##"  <polygon points="{}" fill="#eef3fb" stroke="#1f3b73" stroke-width="{}"/>"##,
            join(&outline),
            num(stroke)
        );
        for o in &self.overlays {
            let color = escape(&o.color);
            let _ = writeln!(
                out,
                r#"  <g class="overlay" data-label="{}">"#,
                escape(&o.label)
            );
            match &o.shape {
                OverlayShape::Polygon(ps) => {
                    let _ = writeln!(
                        out,
                        r#"    <polygon points="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
                        join(ps),
                        num(stroke)
                    );
                }
                OverlayShape::Path(ps) => {
                    let _ = writeln!(
                        out,
                        r#"    <polyline points="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
                        join(ps),
                        num(stroke)
                    );
                }
                OverlayShape::Points(ps) => {
                    for p in ps {
                        let c = p.as_slice();
                        let _ = writeln!(
                            out,
                            r#"    <circle cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
                            num(c[0]),
                            num(-c[1]),
                            num(2.5 * stroke)
                        );
                    }
                }
            }
            if let Some(anchor) = o.shape.points().first() {
                let c = anchor.as_slice();
                let _ = writeln!(
                    out,
                    r#"    <text x="{}" y="{}" font-size="{}" fill="{color}">{}</text>"#,
                    num(c[0] + 3.0 * stroke),
                    num(-c[1] - 3.0 * stroke),
                    num(8.0 * stroke),
                    escape(&o.label)
                );
            }
            let _ = writeln!(out, "  </g>");
        }
        out.push_str("</svg>\n");
        out
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}
