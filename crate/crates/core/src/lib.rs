//! Invariants of generic immersed plane curves, and sharp lower bounds on the
//! self-crossings of the fold curves of simple stable fold maps from closed
//! surfaces to the plane.
//!
//! * [`curve`]: polyline curves, crossings, winding numbers, inner/outer
//!   classes and the Whitney identities.
//! * [`families`]: the named curve families, their realizations and the
//!   symbolic rewrites between them.
//! * [`splitting`]: splittings of a surface along its fold circles and the
//!   induced bipartite multigraph.
//! * [`bounds`]: the lower-bound formulas.
//! * [`witness`]: configurations meeting the bound with equality.
//! * [`render`] and [`harness`]: SVG output and verification sweeps.

pub mod bounds;
pub mod curve;
pub mod families;
pub mod harness;
pub mod render;
pub mod splitting;
pub mod witness;

pub use bounds::{boundary_bound, fold_bound, fold_bound_surface, gromov_compare, BoundReport};
pub use curve::{CurveComponent, CurveError, PlanarCurve, Point};
pub use families::{CurveWord, WordMultiset};
pub use splitting::{SplitSummary, SplitSurface};
pub use witness::{build_witness, verify_certificate, AdmissibleCombo, WitnessCertificate};
