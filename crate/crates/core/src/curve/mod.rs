//! Generic immersed closed plane curves modelled as polylines.
//!
//! A [`PlanarCurve`] is an ordered collection of closed, oriented polylines,
//! each with a basepoint vertex. Coorientation is never stored: it is the unit
//! tangent rotated a quarter turn clockwise, so that (coorientation, tangent)
//! is a positive basis.
//!
//! The submodules compute everything that can be read off such a curve:
//! transverse double points and their signs ([`crossings`]), the boundary of
//! the unbounded complementary region and its inner/outer arcs ([`arcs`]), and
//! the winding number together with the signed tallies that enter the Whitney
//! formula ([`invariants`]).

pub mod arcs;
pub mod crossings;
pub mod invariants;
pub mod segment;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

pub use arcs::{
    choose_basepoint, classify_arcs, inner_outer, lowest_point_check, BoundaryArc, LowestPointCheck,
};
pub use crossings::{find_crossings, Crossing};
pub use invariants::{invariants, winding_number, ComponentInvariants, InvariantRecord};
pub use segment::validate_genericity;

/// Minimum separation between distinct incidences, in input units.
pub const EPS_GEOM: f64 = 1e-9;
/// Largest accepted distance of a turning sum from an integer number of turns.
pub const EPS_WIND: f64 = 1e-6;

/// A point or vector in the plane. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Quarter turn clockwise. Applied to a tangent this yields the coorientation.
    pub fn rotate_cw(self) -> Point {
        Point::new(self.y, -self.x)
    }

    /// Quarter turn counterclockwise.
    pub fn rotate_ccw(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// One closed oriented polyline. Traversal order is the orientation; the last
/// vertex connects back to the first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveComponent {
    pub vertices: Vec<Point>,
    pub basepoint: usize,
}

impl CurveComponent {
    pub fn new(vertices: Vec<Point>, basepoint: usize) -> Self {
        Self {
            vertices,
            basepoint,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Endpoints of segment `i`, which runs from vertex `i` to vertex `i + 1`
    /// (cyclically).
    pub fn segment(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn direction(&self, i: usize) -> Point {
        let (a, b) = self.segment(i);
        b - a
    }

    /// The same point set traversed backwards; the basepoint stays on the
    /// same vertex.
    pub fn reversed(&self) -> Self {
        let n = self.vertices.len();
        let vertices: Vec<Point> = self.vertices.iter().rev().copied().collect();
        let basepoint = if n == 0 { 0 } else { n - 1 - self.basepoint };
        Self {
            vertices,
            basepoint,
        }
    }

    pub fn translated(&self, by: Point) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p + by).collect(),
            basepoint: self.basepoint,
        }
    }

    /// Twice the signed area enclosed by the polyline (shoelace sum).
    pub fn signed_area2(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum()
    }

    /// Index of the vertex with lexicographically smallest `(y, x)`.
    pub fn lowest_vertex(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.vertices.iter().enumerate() {
            let b = self.vertices[best];
            if (p.y, p.x) < (b.y, b.x) {
                best = i;
            }
        }
        best
    }

    /// Coorientation at vertex `i`, taken from the bisector of the two unit
    /// tangents meeting there.
    pub fn vertex_coorientation(&self, i: usize) -> Point {
        let n = self.vertices.len();
        let din = self.direction((i + n - 1) % n).normalized();
        let dout = self.direction(i).normalized();
        (din + dout).rotate_cw()
    }

    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        bounding_box(self.vertices.iter().copied())
    }
}

/// An ordered collection of closed components. Component order fixes the sign
/// convention for crossings between different components.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanarCurve {
    pub components: Vec<CurveComponent>,
}

impl PlanarCurve {
    pub fn new(components: Vec<CurveComponent>) -> Self {
        Self { components }
    }

    pub fn single(component: CurveComponent) -> Self {
        Self {
            components: vec![component],
        }
    }

    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        bounding_box(
            self.components
                .iter()
                .flat_map(|c| c.vertices.iter().copied()),
        )
    }

    pub fn translated(&self, by: Point) -> Self {
        Self {
            components: self.components.iter().map(|c| c.translated(by)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(CurveComponent::len).sum()
    }
}

fn bounding_box(points: impl Iterator<Item = Point>) -> Option<(Point, Point)> {
    points.fold(None, |acc, p| match acc {
        None => Some((p, p)),
        Some((lo, hi)) => Some((
            Point::new(lo.x.min(p.x), lo.y.min(p.y)),
            Point::new(hi.x.max(p.x), hi.y.max(p.y)),
        )),
    })
}

/// Whether a boundary component (or a point of it) is inner or outer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryClass {
    Inner,
    Outer,
}

impl fmt::Display for BoundaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryClass::Inner => f.write_str("inner"),
            BoundaryClass::Outer => f.write_str("outer"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenericityFailure {
    Tangency,
    TriplePoint,
    VertexIncidence,
    NearCoincidence,
}

impl fmt::Display for GenericityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GenericityFailure::Tangency => "tangency",
            GenericityFailure::TriplePoint => "triple point",
            GenericityFailure::VertexIncidence => "vertex incidence",
            GenericityFailure::NearCoincidence => "near coincidence",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("curve is not generic: {kind} near ({:.6}, {:.6})", location.x, location.y)]
    NonGenericCurve {
        kind: GenericityFailure,
        location: Point,
    },
    #[error("component {component} is degenerate: {reason}")]
    DegenerateComponent { component: usize, reason: String },
    #[error("turning sum of component {component} is {residual:.3e} away from an integer")]
    NumericalInstability { component: usize, residual: f64 },
    #[error("basepoint of component {component} is invalid: {reason}")]
    InvalidBasepoint { component: usize, reason: String },
    #[error("component {component} has no vertex usable as a basepoint")]
    NoValidBasepoint { component: usize },
    #[error("Whitney identity violated ({scope}): winding {winding} != {tally}")]
    WhitneyViolation {
        scope: String,
        winding: i64,
        tally: i64,
    },
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn regular_polygon(n: usize, radius: f64, ccw: bool) -> CurveComponent {
        let mut vertices: Vec<Point> = (0..n)
            .map(|i| {
                let t = -std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * i as f64 / n as f64;
                Point::new(radius * t.cos(), radius * t.sin())
            })
            .collect();
        if !ccw {
            vertices.reverse();
            vertices.rotate_right(1);
        }
        CurveComponent::new(vertices, 0)
    }

    pub fn unit_square() -> CurveComponent {
        CurveComponent::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            0,
        )
    }

    /// A counterclockwise loop carrying one clockwise curl on its outside,
    /// drawn on the top edge. The lowest point is outer but the curl exposes
    /// inner points on the boundary of the unbounded region.
    pub fn loop_with_outer_curl() -> CurveComponent {
        let pts = [
            (0.0, -1.0),
            (1.0, -0.5),
            (1.0, 0.5),
            (0.4, 1.0),
            // clockwise curl above the top edge (travel is westward here)
            (0.2, 1.0),
            (-0.1, 1.3),
            (-0.1, 1.6),
            (0.2, 1.6),
            (-0.3, 1.0),
            (-0.5, 1.0),
            (-1.0, 0.5),
            (-1.0, -0.5),
        ];
        CurveComponent::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), 0)
    }

    #[test]
    fn reversal_keeps_basepoint_position() {
        let c = CurveComponent::new(unit_square().vertices, 1);
        let r = c.reversed();
        assert_eq!(r.vertices[r.basepoint], c.vertices[c.basepoint]);
        assert_eq!(r.reversed(), c);
    }

    #[test]
    fn point_json_is_a_pair() {
        let p = Point::new(1.5, -2.0);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1.5,-2.0]");
        let back: Point = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn coorientation_is_clockwise_quarter_turn() {
        let t = Point::new(1.0, 0.0);
        let c = t.rotate_cw();
        // det[c t] > 0
        assert!(c.cross(t) > 0.0);
        assert_eq!(c, Point::new(0.0, -1.0));
    }
}
