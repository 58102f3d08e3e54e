//! Double points with their signs and arclength parameters.

use super::segment::{scan, RawCrossing};
use super::{CurveComponent, CurveError, PlanarCurve, Point};
use serde::{Deserialize, Serialize};

/// A transverse double point of the collection.
///
/// For a self-crossing (`comp_a == comp_b`) the `a` side is the branch met
/// first when travelling from the basepoint, so `param_a < param_b`. For a
/// crossing between components, `a` belongs to the lower-indexed component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub comp_a: usize,
    pub comp_b: usize,
    pub param_a: f64,
    pub param_b: f64,
    pub seg_a: usize,
    pub frac_a: f64,
    pub seg_b: usize,
    pub frac_b: f64,
    pub location: Point,
    pub sign: i8,
}

impl Crossing {
    pub fn is_self(&self) -> bool {
        self.comp_a == self.comp_b
    }
}

/// Arclength bookkeeping for one component, measured from its basepoint.
pub(crate) struct Arclength {
    offsets: Vec<f64>,
    lengths: Vec<f64>,
    basepoint: usize,
}

impl Arclength {
    pub(crate) fn new(c: &CurveComponent) -> Self {
        let n = c.len();
        let lengths: Vec<f64> = (0..n).map(|i| c.direction(i).norm()).collect();
        let mut offsets = vec![0.0; n];
        let mut acc = 0.0;
        for k in 0..n {
            let i = (c.basepoint + k) % n;
            offsets[i] = acc;
            acc += lengths[i];
        }
        Self {
            offsets,
            lengths,
            basepoint: c.basepoint,
        }
    }

    pub(crate) fn param(&self, seg: usize, frac: f64) -> f64 {
        self.offsets[seg] + frac * self.lengths[seg]
    }

    /// Exact ordering key along the traversal starting at the basepoint.
    pub(crate) fn key(&self, seg: usize, frac: f64) -> (usize, f64) {
        let n = self.offsets.len();
        ((seg + n - self.basepoint) % n, frac)
    }
}

fn key_lt(a: (usize, f64), b: (usize, f64)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

pub(crate) fn from_raw(curve: &PlanarCurve, raw: &[RawCrossing]) -> Vec<Crossing> {
    let arcl: Vec<Arclength> = curve.components.iter().map(Arclength::new).collect();
    raw.iter()
        .map(|r| {
            let (mut a, mut fa, mut b, mut fb) = (r.a, r.a_frac, r.b, r.b_frac);
            if a.component == b.component {
                let al = &arcl[a.component];
                if key_lt(al.key(b.segment, fb), al.key(a.segment, fa)) {
                    std::mem::swap(&mut a, &mut b);
                    std::mem::swap(&mut fa, &mut fb);
                }
            }
            let da = curve.components[a.component].direction(a.segment);
            let db = curve.components[b.component].direction(b.segment);
            let sign = if da.cross(db) > 0.0 { 1 } else { -1 };
            Crossing {
                comp_a: a.component,
                comp_b: b.component,
                param_a: arcl[a.component].param(a.segment, fa),
                param_b: arcl[b.component].param(b.segment, fb),
                seg_a: a.segment,
                frac_a: fa,
                seg_b: b.segment,
                frac_b: fb,
                location: r.location,
                sign,
            }
        })
        .collect()
}

/// Every double point of the collection exactly once, signed by the two
/// conventions: a self-crossing is positive iff (earlier tangent, later
/// tangent) is a positive basis; a crossing between components is positive
/// iff (lower-index tangent, higher-index tangent) is.
pub fn find_crossings(curve: &PlanarCurve) -> Result<Vec<Crossing>, CurveError> {
    let raw = scan(&curve.components)?;
    Ok(from_raw(curve, &raw))
}
