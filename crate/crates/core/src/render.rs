//! Deterministic SVG drawings of curves: one path per component, with
//! orientation arrowheads, coorientation ticks and signed crossing markers.

use crate::curve::{find_crossings, CurveError, PlanarCurve, Point};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    /// Output units per curve unit.
    pub scale: f64,
    pub stroke_width: f64,
    pub crossing_radius: f64,
    /// Length of the coorientation ticks and size of the arrowheads.
    pub arrow_length: f64,
    pub padding: f64,
    /// Stroke colors, cycled by component index.
    pub palette: Vec<String>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            scale: 100.0,
            stroke_width: 1.5,
            crossing_radius: 3.0,
            arrow_length: 8.0,
            padding: 20.0,
            palette: [
                "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
            ]
            .map(String::from)
            .to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("invalid render spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), RenderError> {
        let fields = [
            ("scale", self.scale),
            ("stroke_width", self.stroke_width),
            ("crossing_radius", self.crossing_radius),
            ("arrow_length", self.arrow_length),
            ("padding", self.padding),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(RenderError::InvalidSpec(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.palette.is_empty() {
            return Err(RenderError::InvalidSpec("palette is empty".into()));
        }
        Ok(())
    }
}

struct Canvas {
    lo: Point,
    hi: Point,
    scale: f64,
    pad: f64,
}

impl Canvas {
    fn map(&self, p: Point) -> (f64, f64) {
        (
            (p.x - self.lo.x) * self.scale + self.pad,
            (self.hi.y - p.y) * self.scale + self.pad,
        )
    }

    fn size(&self) -> (f64, f64) {
        (
            (self.hi.x - self.lo.x) * self.scale + 2.0 * self.pad,
            (self.hi.y - self.lo.y) * self.scale + 2.0 * self.pad,
        )
    }
}

pub fn render_svg(curve: &PlanarCurve, spec: &RenderSpec) -> Result<String, RenderError> {
    spec.validate()?;
    let Some((lo, hi)) = curve.bounding_box() else {
        let s = 2.0 * spec.padding;
        return Ok(format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s:.3}\" height=\"{s:.3}\" viewBox=\"0 0 {s:.3} {s:.3}\"></svg>\n"
        ));
    };
    let crossings = find_crossings(curve)?;
    let cv = Canvas {
        lo,
        hi,
        scale: spec.scale,
        pad: spec.padding,
    };
    let (w, h) = cv.size();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.3}\" height=\"{h:.3}\" viewBox=\"0 0 {w:.3} {h:.3}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");

    // Model-space length of a screen-space distance.
    let model = |d: f64| d / spec.scale;

    for (ci, c) in curve.components.iter().enumerate() {
        let color = &spec.palette[ci % spec.palette.len()];
        let mut d = String::new();
        for (i, &p) in c.vertices.iter().enumerate() {
            let (x, y) = cv.map(p);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(
            out,
            "<path class=\"component\" data-component=\"{ci}\" d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{:.3}\" stroke-linejoin=\"round\"/>",
            spec.stroke_width
        );

        let n = c.len();
        let step = (n / 4).max(1);
        for k in 0..n.min(4) {
            let i = (c.basepoint + k * step) % n;
            let (p, q) = c.segment(i);
            let t = (q - p).normalized();
            let mid = p.lerp(q, 0.5);
            let a = model(spec.arrow_length);
            let tip = mid + t * (a * 0.5);
            let back = mid - t * (a * 0.5);
            let l = back + t.rotate_ccw() * (a * 0.35);
            let r = back + t.rotate_cw() * (a * 0.35);
            let pts: Vec<String> = [tip, l, r]
                .iter()
                .map(|&p| {
                    let (x, y) = cv.map(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                out,
                "<polygon class=\"arrow\" points=\"{}\" fill=\"{color}\"/>",
                pts.join(" ")
            );
            let tick_from = p.lerp(q, 0.25);
            let tick_to = tick_from + t.rotate_cw() * a;
            let (x1, y1) = cv.map(tick_from);
            let (x2, y2) = cv.map(tick_to);
            let _ = writeln!(
                out,
                "<line class=\"coorientation\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"{color}\" stroke-width=\"{:.3}\"/>",
                spec.stroke_width * 0.75
            );
        }
        let (bx, by) = cv.map(c.vertices[c.basepoint]);
        let _ = writeln!(
            out,
            "<circle class=\"basepoint\" cx=\"{bx:.3}\" cy=\"{by:.3}\" r=\"{:.3}\" fill=\"white\" stroke=\"{color}\" stroke-width=\"{:.3}\"/>",
            spec.crossing_radius,
            spec.stroke_width
        );
    }

    for x in &crossings {
        let (cx, cy) = cv.map(x.location);
        let (class, label) = if x.sign > 0 {
            ("crossing-pos", "+")
        } else {
            ("crossing-neg", "\u{2212}")
        };
        let _ = writeln!(
            out,
            "<circle class=\"{class}\" cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{:.3}\" fill=\"black\"/>",
            spec.crossing_radius
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"{:.3}\" font-family=\"sans-serif\">{label}</text>",
            cx + spec.crossing_radius * 1.5,
            cy - spec.crossing_radius * 1.5,
            spec.crossing_radius * 4.0
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
