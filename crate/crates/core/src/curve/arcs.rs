//! Boundary of the unbounded complementary region of a single component.
//!
//! The component's self-crossings cut it into arcs. Each arc has a constant
//! face on either side, so the planar map formed by crossings (vertices) and
//! arcs (edges) is traced into faces with half-edges. The unbounded face is
//! located by casting a vertical ray up from below the bounding box: the
//! first arc it meets has the unbounded face on its lower side.
//!
//! An arc bordering the unbounded face is outer when the coorientation (the
//! right-hand side of the direction of travel) points into that face.

use super::segment::{scan, RawCrossing};
use super::{BoundaryClass, CurveComponent, CurveError, Point};
use serde::{Deserialize, Serialize};
use std::slice;

/// A maximal arc of the component lying on the boundary of its unbounded
/// complementary region, between consecutive self-crossings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryArc {
    /// Segment and fraction where the arc starts; `None` for an embedded
    /// component, whose single arc is the whole loop.
    pub start: Option<(usize, f64)>,
    pub end: Option<(usize, f64)>,
    /// Vertices strictly inside the arc, in traversal order.
    pub vertices: Vec<usize>,
    pub class: BoundaryClass,
}

#[derive(Debug, Clone, Copy)]
struct Event {
    seg: usize,
    frac: f64,
    crossing: usize,
}

fn pos_le(a: (usize, f64), b: (usize, f64)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1)
}

/// Planar map of one component, with every arc labelled by the side (if
/// any) on which the unbounded face lies.
pub(crate) struct Arrangement {
    n: usize,
    events: Vec<Event>,
    /// Per arc: `Some(Outer)` if the unbounded face is on its right,
    /// `Some(Inner)` if on its left, `None` if the arc is interior.
    arc_class: Vec<Option<BoundaryClass>>,
    pub(crate) crossings: Vec<RawCrossing>,
}

impl Arrangement {
    pub(crate) fn build(index: usize, c: &CurveComponent) -> Result<Self, CurveError> {
        let crossings = scan(slice::from_ref(c)).map_err(|e| reindex(e, index))?;
        let n = c.len();
        let mut events: Vec<Event> = crossings
            .iter()
            .enumerate()
            .flat_map(|(k, x)| {
                [
                    Event {
                        seg: x.a.segment,
                        frac: x.a_frac,
                        crossing: k,
                    },
                    Event {
                        seg: x.b.segment,
                        frac: x.b_frac,
                        crossing: k,
                    },
                ]
            })
            .collect();
        events.sort_by(|a, b| a.seg.cmp(&b.seg).then(a.frac.total_cmp(&b.frac)));

        let mut arr = Arrangement {
            n,
            events,
            arc_class: Vec::new(),
            crossings,
        };
        let (hit_seg, hit_frac) = ray_hit(c, &arr.crossings);
        // Below the lowest hit lies the unbounded face; it is on the right of
        // travel when the segment heads in +x.
        let unbounded_on_right = c.direction(hit_seg).x > 0.0;

        if arr.events.is_empty() {
            let class = if unbounded_on_right {
                BoundaryClass::Outer
            } else {
                BoundaryClass::Inner
            };
            arr.arc_class = vec![Some(class)];
            return Ok(arr);
        }

        let faces = arr.trace_faces(c);
        let hit_arc = arr.arc_at(hit_seg, hit_frac);
        let unbounded = if unbounded_on_right {
            faces[2 * hit_arc + 1]
        } else {
            faces[2 * hit_arc]
        };
        arr.arc_class = (0..arr.events.len())
            .map(|a| {
                let left = faces[2 * a] == unbounded;
                let right = faces[2 * a + 1] == unbounded;
                debug_assert!(
                    !(left && right),
                    "arc {a} has the unbounded face on both sides"
                );
                if right {
                    Some(BoundaryClass::Outer)
                } else if left {
                    Some(BoundaryClass::Inner)
                } else {
                    None
                }
            })
            .collect();
        Ok(arr)
    }

    pub(crate) fn arc_count(&self) -> usize {
        self.events.len().max(1)
    }

    /// Index of the arc containing position `(seg, frac)`.
    fn arc_at(&self, seg: usize, frac: f64) -> usize {
        if self.events.is_empty() {
            return 0;
        }
        match self
            .events
            .iter()
            .rposition(|e| pos_le((e.seg, e.frac), (seg, frac)))
        {
            Some(k) => k,
            None => self.events.len() - 1,
        }
    }

    pub(crate) fn vertex_class(&self, v: usize) -> Option<BoundaryClass> {
        self.arc_class[self.arc_at(v, 0.0)]
    }

    /// Face id of every half-edge. Half-edge `2a` runs along arc `a` in the
    /// direction of travel, `2a + 1` against it; the face of a half-edge is
    /// the one on its left.
    fn trace_faces(&self, c: &CurveComponent) -> Vec<usize> {
        let m = self.events.len();
        let origin = |h: usize| -> usize {
            let a = h / 2;
            if h.is_multiple_of(2) {
                self.events[a].crossing
            } else {
                self.events[(a + 1) % m].crossing
            }
        };
        let out_dir = |h: usize| -> Point {
            let a = h / 2;
            if h.is_multiple_of(2) {
                c.direction(self.events[a].seg)
            } else {
                -c.direction(self.events[(a + 1) % m].seg)
            }
        };

        let mut star: Vec<Vec<usize>> = vec![Vec::new(); self.crossings.len()];
        for h in 0..2 * m {
            star[origin(h)].push(h);
        }
        for s in &mut star {
            s.sort_by(|&a, &b| {
                let da = out_dir(a);
                let db = out_dir(b);
                da.y.atan2(da.x).total_cmp(&db.y.atan2(db.x))
            });
        }

        let next = |h: usize| -> usize {
            let twin = h ^ 1;
            let s = &star[origin(twin)];
            let pos = s.iter().position(|&x| x == twin).expect("twin in star");
            s[(pos + s.len() - 1) % s.len()]
        };

        let mut face = vec![usize::MAX; 2 * m];
        let mut count = 0;
        for start in 0..2 * m {
            if face[start] != usize::MAX {
                continue;
            }
            let mut h = start;
            while face[h] == usize::MAX {
                face[h] = count;
                h = next(h);
            }
            count += 1;
        }
        face
    }

    /// Boundary arcs with the vertices they contain.
    pub(crate) fn boundary_arcs(&self) -> Vec<BoundaryArc> {
        if self.events.is_empty() {
            return vec![BoundaryArc {
                start: None,
                end: None,
                vertices: (0..self.n).collect(),
                class: self.arc_class[0].expect("embedded loop bounds the unbounded face"),
            }];
        }
        let m = self.events.len();
        (0..m)
            .filter_map(|a| {
                let class = self.arc_class[a]?;
                let s = self.events[a];
                let e = self.events[(a + 1) % m];
                Some(BoundaryArc {
                    start: Some((s.seg, s.frac)),
                    end: Some((e.seg, e.frac)),
                    vertices: self.inner_vertices(s, e),
                    class,
                })
            })
            .collect()
    }

    fn inner_vertices(&self, s: Event, e: Event) -> Vec<usize> {
        let n = self.n;
        if !pos_le((e.seg, e.frac), (s.seg, s.frac)) {
            (s.seg + 1..=e.seg).collect()
        } else {
            // Wraps past vertex 0.
            let mut v: Vec<usize> = (s.seg + 1..n).collect();
            v.extend(0..=e.seg);
            v
        }
    }
}

fn reindex(e: CurveError, index: usize) -> CurveError {
    match e {
        CurveError::DegenerateComponent { reason, .. } => CurveError::DegenerateComponent {
            component: index,
            reason,
        },
        CurveError::InvalidBasepoint { reason, .. } => CurveError::InvalidBasepoint {
            component: index,
            reason,
        },
        other => other,
    }
}

/// Casts a vertical ray upward from below the bounding box, at an abscissa
/// clear of every vertex and crossing, and returns the first segment hit
/// with the fraction along it.
fn ray_hit(c: &CurveComponent, crossings: &[RawCrossing]) -> (usize, f64) {
    let mut xs: Vec<f64> = c
        .vertices
        .iter()
        .map(|p| p.x)
        .chain(crossings.iter().map(|x| x.location.x))
        .collect();
    xs.sort_by(f64::total_cmp);
    let mut best = (xs[0], xs[1]);
    for w in xs.windows(2) {
        if w[1] - w[0] > best.1 - best.0 {
            best = (w[0], w[1]);
        }
    }
    let x0 = best.0.midpoint(best.1);

    let mut hit: Option<(f64, usize, f64)> = None;
    for i in 0..c.len() {
        let (p, q) = c.segment(i);
        if (p.x < x0) == (q.x < x0) {
            continue;
        }
        let f = (x0 - p.x) / (q.x - p.x);
        let y = p.y + f * (q.y - p.y);
        if hit.is_none_or(|(hy, _, _)| y < hy) {
            hit = Some((y, i, f));
        }
    }
    let (_, seg, frac) = hit.expect("a closed polyline spans every interior abscissa");
    (seg, frac)
}

/// The maximal arcs of the boundary of the component's unbounded region,
/// each labelled inner or outer.
pub fn classify_arcs(component: &CurveComponent) -> Result<Vec<BoundaryArc>, CurveError> {
    Ok(Arrangement::build(0, component)?.boundary_arcs())
}

/// Outer iff every boundary arc is outer.
pub fn inner_outer(component: &CurveComponent) -> Result<BoundaryClass, CurveError> {
    let arr = Arrangement::build(0, component)?;
    Ok(component_class(&arr))
}

pub(crate) fn component_class(arr: &Arrangement) -> BoundaryClass {
    let any_inner = (0..arr.arc_count()).any(|a| arr.arc_class[a] == Some(BoundaryClass::Inner));
    if any_inner {
        BoundaryClass::Inner
    } else {
        BoundaryClass::Outer
    }
}

/// The two independent readings of the lowest vertex of a component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowestPointCheck {
    pub vertex: usize,
    /// Class read from the coorientation: outer iff it points downward.
    pub by_coorientation: BoundaryClass,
    /// Class of the boundary arc containing the vertex, if it is on one.
    pub by_arrangement: Option<BoundaryClass>,
}

impl LowestPointCheck {
    pub fn agrees(&self) -> bool {
        self.by_arrangement == Some(self.by_coorientation)
    }
}

/// Reads the lowest vertex both through the arrangement and through the
/// sign of its coorientation's vertical component.
pub fn lowest_point_check(component: &CurveComponent) -> Result<LowestPointCheck, CurveError> {
    let arr = Arrangement::build(0, component)?;
    Ok(lowest_point_from(&arr, component))
}

pub(crate) fn lowest_point_from(arr: &Arrangement, component: &CurveComponent) -> LowestPointCheck {
    let v = component.lowest_vertex();
    let by_coorientation = if component.vertex_coorientation(v).y < 0.0 {
        BoundaryClass::Outer
    } else {
        BoundaryClass::Inner
    };
    LowestPointCheck {
        vertex: v,
        by_coorientation,
        by_arrangement: arr.vertex_class(v),
    }
}

pub(crate) fn choose_from(
    arr: &Arrangement,
    index: usize,
    component: &CurveComponent,
) -> Result<usize, CurveError> {
    let class = component_class(arr);
    (0..component.len())
        .filter(|&v| arr.vertex_class(v) == Some(class))
        .min_by(|&a, &b| {
            let (pa, pb) = (component.vertices[a], component.vertices[b]);
            pa.y.total_cmp(&pb.y).then(pa.x.total_cmp(&pb.x))
        })
        .ok_or(CurveError::NoValidBasepoint { component: index })
}

/// A vertex on the boundary of the unbounded region whose point class
/// matches the component class: the lowest (then leftmost) such vertex.
pub fn choose_basepoint(component: &CurveComponent) -> Result<usize, CurveError> {
    let arr = Arrangement::build(0, component)?;
    choose_from(&arr, 0, component)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::fixtures::*;

    #[test]
    fn ccw_polygon_single_outer_arc() {
        let c = regular_polygon(20, 1.0, true);
        let arcs = classify_arcs(&c).unwrap();
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].class, BoundaryClass::Outer);
        assert_eq!(inner_outer(&c).unwrap(), BoundaryClass::Outer);
    }

    #[test]
    fn cw_polygon_single_inner_arc() {
        let c = regular_polygon(20, 1.0, false);
        let arcs = classify_arcs(&c).unwrap();
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].class, BoundaryClass::Inner);
        assert_eq!(inner_outer(&c).unwrap(), BoundaryClass::Inner);
    }

    #[test]
    fn basepoint_of_ccw_polygon_is_bottom_vertex() {
        let c = regular_polygon(12, 1.0, true);
        assert_eq!(choose_basepoint(&c).unwrap(), c.lowest_vertex());
        assert_eq!(c.lowest_vertex(), 0);
    }

    #[test]
    fn outside_curl_makes_component_inner() {
        let c = loop_with_outer_curl();
        let arcs = classify_arcs(&c).unwrap();
        assert!(arcs.iter().any(|a| a.class == BoundaryClass::Outer));
        assert!(arcs.iter().any(|a| a.class == BoundaryClass::Inner));
        assert_eq!(inner_outer(&c).unwrap(), BoundaryClass::Inner);
        // Yet the lowest point is outer.
        let lp = lowest_point_check(&c).unwrap();
        assert!(lp.agrees());
        assert_eq!(lp.by_coorientation, BoundaryClass::Outer);
        // The chosen basepoint sits on the curl.
        let b = choose_basepoint(&c).unwrap();
        assert!(c.vertices[b].y > 1.0);
    }

    #[test]
    fn bowtie_lobes_have_opposite_classes() {
        let pts = [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)];
        let c = CurveComponent::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), 0);
        let arcs = classify_arcs(&c).unwrap();
        assert_eq!(arcs.len(), 2);
        let classes: Vec<_> = arcs.iter().map(|a| a.class).collect();
        assert!(classes.contains(&BoundaryClass::Inner));
        assert!(classes.contains(&BoundaryClass::Outer));
        // Vertex 1 (1,1) and 2 (1,0) form the right lobe, travelled clockwise.
        let right = arcs.iter().find(|a| a.vertices.contains(&1)).unwrap();
        assert_eq!(right.vertices, vec![1, 2]);
        assert_eq!(right.class, BoundaryClass::Inner);
    }
}
