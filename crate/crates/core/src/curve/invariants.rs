//! Winding numbers, signed crossing tallies and the Whitney identities.

use super::arcs::{component_class, Arrangement};
use super::crossings::from_raw;
use super::segment::scan;
use super::{BoundaryClass, CurveComponent, CurveError, PlanarCurve, EPS_GEOM, EPS_WIND};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Total turning of the tangent in full turns, from the signed exterior
/// angles at the vertices.
pub fn winding_number(component: &CurveComponent) -> Result<i64, CurveError> {
    winding_at(0, component)
}

fn winding_at(index: usize, c: &CurveComponent) -> Result<i64, CurveError> {
    let n = c.len();
    if n < 3 {
        return Err(CurveError::DegenerateComponent {
            component: index,
            reason: format!("{n} vertices, need at least 3"),
        });
    }
    let total: f64 = (0..n)
        .map(|i| {
            let a = c.direction((i + n - 1) % n);
            let b = c.direction(i);
            a.cross(b).atan2(a.dot(b))
        })
        .sum();
    let turns = total / TAU;
    let rounded = turns.round();
    let residual = (turns - rounded).abs();
    if !residual.is_finite() || residual > EPS_WIND {
        return Err(CurveError::NumericalInstability {
            component: index,
            residual,
        });
    }
    Ok(rounded as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInvariants {
    pub w: i64,
    pub inner_outer: BoundaryClass,
    pub n_plus: u32,
    pub n_minus: u32,
}

impl ComponentInvariants {
    pub fn i_plus(&self) -> i64 {
        (self.inner_outer == BoundaryClass::Outer) as i64
    }

    pub fn i_minus(&self) -> i64 {
        (self.inner_outer == BoundaryClass::Inner) as i64
    }

    /// Right-hand side of the Whitney formula.
    pub fn whitney_tally(&self) -> i64 {
        self.i_plus() - self.i_minus() + self.n_minus as i64 - self.n_plus as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub per_component: Vec<ComponentInvariants>,
    #[serde(rename = "I_plus")]
    pub i_plus: u32,
    #[serde(rename = "I_minus")]
    pub i_minus: u32,
    #[serde(rename = "N_plus")]
    pub n_plus: u32,
    #[serde(rename = "N_minus")]
    pub n_minus: u32,
    #[serde(rename = "N_ij_plus")]
    pub n_ij_plus: u32,
    #[serde(rename = "N_ij_minus")]
    pub n_ij_minus: u32,
    #[serde(rename = "Delta")]
    pub delta: u32,
}

impl InvariantRecord {
    /// Sum of the component winding numbers.
    pub fn total_winding(&self) -> i64 {
        self.per_component.iter().map(|c| c.w).sum()
    }

    pub fn collection_tally(&self) -> i64 {
        self.i_plus as i64 - self.i_minus as i64 + self.n_minus as i64 - self.n_plus as i64
    }
}

fn check_basepoint(
    index: usize,
    c: &CurveComponent,
    arr: &Arrangement,
    class: BoundaryClass,
    crossing_points: &[super::Point],
) -> Result<(), CurveError> {
    let bp = c.basepoint;
    let p = c.vertices[bp];
    if crossing_points.iter().any(|x| x.distance(p) <= EPS_GEOM) {
        return Err(CurveError::InvalidBasepoint {
            component: index,
            reason: "basepoint is a double point".into(),
        });
    }
    match arr.vertex_class(bp) {
        None => Err(CurveError::InvalidBasepoint {
            component: index,
            reason: format!("vertex {bp} is not on the boundary of the unbounded region"),
        }),
        Some(pc) if pc != class => Err(CurveError::InvalidBasepoint {
            component: index,
            reason: format!("vertex {bp} is an {pc} point of an {class} component"),
        }),
        Some(_) => Ok(()),
    }
}

/// Every tally of the collection, with both Whitney identities verified.
pub fn invariants(curve: &PlanarCurve) -> Result<InvariantRecord, CurveError> {
    let raw = scan(&curve.components)?;
    let crossings = from_raw(curve, &raw);
    let points: Vec<_> = crossings.iter().map(|x| x.location).collect();

    let mut per_component = Vec::with_capacity(curve.components.len());
    for (i, c) in curve.components.iter().enumerate() {
        let arr = Arrangement::build(i, c)?;
        let class = component_class(&arr);
        check_basepoint(i, c, &arr, class, &points)?;
        let w = winding_at(i, c)?;
        let own = crossings.iter().filter(|x| x.comp_a == i && x.comp_b == i);
        let (mut n_plus, mut n_minus) = (0, 0);
        for x in own {
            if x.sign > 0 {
                n_plus += 1;
            } else {
                n_minus += 1;
            }
        }
        let ci = ComponentInvariants {
            w,
            inner_outer: class,
            n_plus,
            n_minus,
        };
        if ci.whitney_tally() != w {
            return Err(CurveError::WhitneyViolation {
                scope: format!("component {i}"),
                winding: w,
                tally: ci.whitney_tally(),
            });
        }
        per_component.push(ci);
    }

    let (mut n_ij_plus, mut n_ij_minus) = (0, 0);
    for x in crossings.iter().filter(|x| !x.is_self()) {
        if x.sign > 0 {
            n_ij_plus += 1;
        } else {
            n_ij_minus += 1;
        }
    }
    let record = InvariantRecord {
        i_plus: per_component.iter().map(|c| c.i_plus() as u32).sum(),
        i_minus: per_component.iter().map(|c| c.i_minus() as u32).sum(),
        n_plus: per_component.iter().map(|c| c.n_plus).sum(),
        n_minus: per_component.iter().map(|c| c.n_minus).sum(),
        n_ij_plus,
        n_ij_minus,
        delta: crossings.len() as u32,
        per_component,
    };
    if record.total_winding() != record.collection_tally() {
        return Err(CurveError::WhitneyViolation {
            scope: "collection".into(),
            winding: record.total_winding(),
            tally: record.collection_tally(),
        });
    }
    if n_ij_plus != n_ij_minus {
        return Err(CurveError::WhitneyViolation {
            scope: "inter-component balance".into(),
            winding: n_ij_plus as i64,
            tally: n_ij_minus as i64,
        });
    }
    Ok(record)
}
