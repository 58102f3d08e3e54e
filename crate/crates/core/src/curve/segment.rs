//! Segment-pair classification and the sweep that enforces genericity.
//!
//! Every pair of segments in the collection is either disjoint by more than
//! [`EPS_GEOM`], or crosses transversally at a point interior to both. The
//! sweep sorts segments by their left end and only tests pairs whose
//! (ε-inflated) bounding boxes overlap.

use super::{CurveComponent, CurveError, GenericityFailure, PlanarCurve, Point, EPS_GEOM};

/// Address of one segment: component index and segment index within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentRef {
    pub component: usize,
    pub segment: usize,
}

/// A transverse double point found by the sweep, before signs and arclength
/// parameters are attached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawCrossing {
    pub a: SegmentRef,
    pub a_frac: f64,
    pub b: SegmentRef,
    pub b_frac: f64,
    pub location: Point,
}

fn non_generic(kind: GenericityFailure, location: Point) -> CurveError {
    CurveError::NonGenericCurve { kind, location }
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.distance(a + d * t)
}

/// Outcome of testing two segments that do not share a vertex.
enum PairOutcome {
    Disjoint,
    Cross { s: f64, t: f64, at: Point },
}

fn classify_pair(p0: Point, p1: Point, q0: Point, q1: Point) -> Result<PairOutcome, CurveError> {
    let d = p1 - p0;
    let e = q1 - q0;
    let denom = d.cross(e);
    let scale = d.norm() * e.norm();

    // Parallel (or nearly so): only an overlap is a problem.
    if denom.abs() <= EPS_GEOM * scale {
        let offset = (q0 - p0).cross(d).abs() / d.norm();
        if offset <= EPS_GEOM {
            let len2 = d.dot(d);
            let t0 = (q0 - p0).dot(d) / len2;
            let t1 = (q1 - p0).dot(d) / len2;
            let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
            let slack = EPS_GEOM / d.norm();
            if hi >= -slack && lo <= 1.0 + slack {
                let mid = p0 + d * lo.max(0.0).midpoint(hi.min(1.0));
                return Err(non_generic(GenericityFailure::NearCoincidence, mid));
            }
        }
    }

    for (p, a, b) in [(p0, q0, q1), (p1, q0, q1), (q0, p0, p1), (q1, p0, p1)] {
        if point_segment_distance(p, a, b) <= EPS_GEOM {
            return Err(non_generic(GenericityFailure::VertexIncidence, p));
        }
    }

    if denom == 0.0 {
        return Ok(PairOutcome::Disjoint);
    }
    let w = q0 - p0;
    let s = w.cross(e) / denom;
    let t = w.cross(d) / denom;
    if s <= 0.0 || s >= 1.0 || t <= 0.0 || t >= 1.0 {
        return Ok(PairOutcome::Disjoint);
    }
    let at = p0 + d * s;
    if denom.abs() <= EPS_GEOM * scale {
        return Err(non_generic(GenericityFailure::Tangency, at));
    }
    Ok(PairOutcome::Cross { s, t, at })
}

/// Checks two consecutive segments `p0→p1→p2` of one component: the far
/// endpoint of each must stay clear of the other segment (no fold-back).
fn check_adjacent(p0: Point, p1: Point, p2: Point) -> Result<(), CurveError> {
    if point_segment_distance(p0, p1, p2) <= EPS_GEOM
        || point_segment_distance(p2, p0, p1) <= EPS_GEOM
    {
        return Err(non_generic(GenericityFailure::NearCoincidence, p1));
    }
    Ok(())
}

fn check_structure(index: usize, c: &CurveComponent) -> Result<(), CurveError> {
    let n = c.vertices.len();
    if n < 3 {
        return Err(CurveError::DegenerateComponent {
            component: index,
            reason: format!("{n} vertices, at least 3 required"),
        });
    }
    if c.basepoint >= n {
        return Err(CurveError::InvalidBasepoint {
            component: index,
            reason: format!("index {} out of range for {n} vertices", c.basepoint),
        });
    }
    for (i, p) in c.vertices.iter().enumerate() {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(CurveError::DegenerateComponent {
                component: index,
                reason: format!("vertex {i} is not finite"),
            });
        }
    }
    for i in 0..n {
        let (a, b) = c.segment(i);
        if a.distance(b) <= EPS_GEOM {
            return Err(CurveError::DegenerateComponent {
                component: index,
                reason: format!("segment {i} has zero length"),
            });
        }
    }
    Ok(())
}

fn adjacent(n: usize, i: usize, j: usize) -> bool {
    (i + 1) % n == j || (j + 1) % n == i
}

/// Runs the sweep over all segments of `components` and returns every
/// transverse double point, or the first genericity failure encountered.
pub(crate) fn scan(components: &[CurveComponent]) -> Result<Vec<RawCrossing>, CurveError> {
    for (i, c) in components.iter().enumerate() {
        check_structure(i, c)?;
    }

    struct Entry {
        seg: SegmentRef,
        p0: Point,
        p1: Point,
        min_x: f64,
        max_x: f64,
        min_y: f64,
        max_y: f64,
    }

    let mut entries: Vec<Entry> = Vec::new();
    for (ci, c) in components.iter().enumerate() {
        let n = c.vertices.len();
        for si in 0..n {
            let (p0, p1) = c.segment(si);
            entries.push(Entry {
                seg: SegmentRef {
                    component: ci,
                    segment: si,
                },
                p0,
                p1,
                min_x: p0.x.min(p1.x) - EPS_GEOM,
                max_x: p0.x.max(p1.x) + EPS_GEOM,
                min_y: p0.y.min(p1.y) - EPS_GEOM,
                max_y: p0.y.max(p1.y) + EPS_GEOM,
            });
        }
    }
    entries.sort_by(|a, b| a.min_x.total_cmp(&b.min_x).then(a.seg.cmp(&b.seg)));

    let mut crossings = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    for (k, cur) in entries.iter().enumerate() {
        active.retain(|&j| entries[j].max_x >= cur.min_x);
        for &j in &active {
            let other = &entries[j];
            if other.max_y < cur.min_y || cur.max_y < other.min_y {
                continue;
            }
            let (first, second) = if other.seg < cur.seg {
                (other, cur)
            } else {
                (cur, other)
            };
            let same = first.seg.component == second.seg.component;
            let n = components[first.seg.component].vertices.len();
            if same && adjacent(n, first.seg.segment, second.seg.segment) {
                // Shared vertex: order so that the middle vertex is shared.
                let (a, b) = if (first.seg.segment + 1) % n == second.seg.segment {
                    (first, second)
                } else {
                    (second, first)
                };
                check_adjacent(a.p0, a.p1, b.p1)?;
                continue;
            }
            if let PairOutcome::Cross { s, t, at } =
                classify_pair(first.p0, first.p1, second.p0, second.p1)?
            {
                crossings.push(RawCrossing {
                    a: first.seg,
                    a_frac: s,
                    b: second.seg,
                    b_frac: t,
                    location: at,
                });
            }
        }
        active.push(k);
    }

    check_distinct(&crossings)?;
    crossings.sort_by(|x, y| {
        (x.a, x.b)
            .cmp(&(y.a, y.b))
            .then(x.a_frac.total_cmp(&y.a_frac))
    });
    Ok(crossings)
}

/// Two double points closer than ε mean at least three strands meet there.
fn check_distinct(crossings: &[RawCrossing]) -> Result<(), CurveError> {
    let mut order: Vec<usize> = (0..crossings.len()).collect();
    order.sort_by(|&i, &j| crossings[i].location.x.total_cmp(&crossings[j].location.x));
    for (k, &i) in order.iter().enumerate() {
        let p = crossings[i].location;
        for &j in &order[k + 1..] {
            let q = crossings[j].location;
            if q.x - p.x > EPS_GEOM {
                break;
            }
            if p.distance(q) <= EPS_GEOM {
                return Err(non_generic(GenericityFailure::TriplePoint, p));
            }
        }
    }
    Ok(())
}

/// Succeeds iff every incidence in the collection is a transverse interior
/// double point and all double points are pairwise separated by more than ε.
pub fn validate_genericity(curve: &PlanarCurve) -> Result<(), CurveError> {
    scan(&curve.components).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::fixtures::*;

    fn comp(pts: &[(f64, f64)]) -> CurveComponent {
        CurveComponent::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), 0)
    }

    fn kind_of(r: Result<(), CurveError>) -> Option<GenericityFailure> {
        match r {
            Err(CurveError::NonGenericCurve { kind, .. }) => Some(kind),
            _ => None,
        }
    }

    #[test]
    fn unit_square_is_generic() {
        validate_genericity(&PlanarCurve::single(unit_square())).unwrap();
    }

    #[test]
    fn identical_squares_overlap() {
        let c = PlanarCurve::new(vec![unit_square(), unit_square()]);
        assert_eq!(
            kind_of(validate_genericity(&c)),
            Some(GenericityFailure::NearCoincidence)
        );
    }

    #[test]
    fn three_strands_through_one_point() {
        // Three thin triangles, each with one long edge through the origin.
        let mut comps = Vec::new();
        for k in 0..3 {
            let t = std::f64::consts::PI * k as f64 / 3.0 + 0.1;
            let (c, s) = (t.cos(), t.sin());
            let p = Point::new(c, s);
            let n = Point::new(-s, c) * 0.3;
            comps.push(CurveComponent::new(vec![-p, p, p + n], 0));
        }
        let curve = PlanarCurve::new(comps);
        assert_eq!(
            kind_of(validate_genericity(&curve)),
            Some(GenericityFailure::TriplePoint)
        );
    }

    #[test]
    fn vertex_on_segment_is_rejected() {
        let a = comp(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0)]);
        let b = comp(&[(1.0, 0.0), (1.5, -1.0), (0.5, -1.0)]);
        let curve = PlanarCurve::new(vec![a, b]);
        assert_eq!(
            kind_of(validate_genericity(&curve)),
            Some(GenericityFailure::VertexIncidence)
        );
    }

    #[test]
    fn fold_back_is_rejected() {
        let c = comp(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        assert_eq!(
            kind_of(validate_genericity(&PlanarCurve::single(c))),
            Some(GenericityFailure::NearCoincidence)
        );
    }

    #[test]
    fn structural_errors() {
        let two = comp(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(matches!(
            validate_genericity(&PlanarCurve::single(two)),
            Err(CurveError::DegenerateComponent { .. })
        ));
        let dup = comp(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert!(matches!(
            validate_genericity(&PlanarCurve::single(dup)),
            Err(CurveError::DegenerateComponent { .. })
        ));
        let mut bad_base = unit_square();
        bad_base.basepoint = 9;
        assert!(matches!(
            validate_genericity(&PlanarCurve::single(bad_base)),
            Err(CurveError::InvalidBasepoint { .. })
        ));
    }

    #[test]
    fn figure_eight_has_one_crossing() {
        // Bowtie: (0,0) (1,1) (1,0) (0,1) crosses at (0.5, 0.5).
        let c = comp(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]);
        let raw = scan(&[c]).unwrap();
        assert_eq!(raw.len(), 1);
        assert!(raw[0].location.distance(Point::new(0.5, 0.5)) < 1e-12);
    }

    #[test]
    fn near_tangent_crossing_is_a_tangency() {
        let a = comp(&[(-1.0, 0.0), (1.0, 0.0), (0.0, -1.0)]);
        let b = comp(&[(-1.0, -1e-11), (1.0, 1e-11), (0.0, 1.0)]);
        let curve = PlanarCurve::new(vec![a, b]);
        let kind = kind_of(validate_genericity(&curve));
        assert!(matches!(
            kind,
            Some(GenericityFailure::Tangency) | Some(GenericityFailure::NearCoincidence)
        ));
    }
}
