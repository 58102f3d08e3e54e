//! Lower bounds on the number of fold crossings, in their several
//! equivalent and non-equivalent forms.
//!
//! All arithmetic is exact over `i64`.

use crate::splitting::{check_balance, summarize, SplitError, SplitSummary, SplitSurface};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("the estimate does not apply to genus {genus} with {boundary_count} boundary circles")]
    NotApplicable { genus: u32, boundary_count: u32 },
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("chi(S) = {0} is odd")]
    OddEuler(i64),
}

/// Outcome of the internal consistency checks between the bound forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundIdentities {
    pub max_equals_tree: bool,
    pub refined_equals_tree: bool,
    pub refined_at_least_gromov: bool,
}

impl BoundIdentities {
    pub fn all_hold(&self) -> bool {
        self.max_equals_tree && self.refined_equals_tree && self.refined_at_least_gromov
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `4 max(#S+, #S-) - (chi/2 + |Σ|)`
    pub max_form: i64,
    /// `2(rho + 1 + n) - (chi/2 + |Σ|)`
    pub tree_form: i64,
    /// `max(sum (2g+ + 2), sum (2g- + 2))`, available only when the genera of
    /// the individual components are known.
    pub per_side_form: Option<i64>,
    /// `(2g + 2)/2 - |Σ|`
    pub gromov_form: i64,
    /// `2(rho + n) + (2g + 2)/2 - |Σ|`
    pub refined_gromov_form: i64,
    pub identities: BoundIdentities,
}

/// Self-crossings forced on the boundary image of a genus `g` surface with
/// `k` boundary circles: `4 - k - chi = 2g + 2`.
pub fn boundary_bound(genus: u32, boundary_count: u32) -> Result<i64, BoundError> {
    if genus == 0 || boundary_count == 0 {
        return Err(BoundError::NotApplicable {
            genus,
            boundary_count,
        });
    }
    let k = boundary_count as i64;
    let chi = 2 - 2 * genus as i64 - k;
    Ok(4 - k - chi)
}

fn half_chi(s: &SplitSummary) -> Result<i64, BoundError> {
    if s.chi_s % 2 != 0 {
        return Err(BoundError::OddEuler(s.chi_s));
    }
    Ok(s.chi_s / 2)
}

/// Evaluates every bound form available from a summary.
pub fn fold_bound(summary: &SplitSummary) -> Result<BoundReport, BoundError> {
    if !summary.is_balanced() {
        return Err(SplitError::UnbalancedSplitting {
            chi_plus: summary.chi_plus,
            chi_minus: summary.chi_minus,
        }
        .into());
    }
    let hc = half_chi(summary)?;
    let sigma = summary.sigma_count as i64;
    let rho = summary.rho as i64;
    let n = summary.n_diff as i64;
    let max_side = summary.num_plus.max(summary.num_minus) as i64;
    let max_form = 4 * max_side - (hc + sigma);
    let tree_form = 2 * (rho + 1 + n) - (hc + sigma);
    let cmp = gromov_compare(summary);
    Ok(BoundReport {
        max_form,
        tree_form,
        per_side_form: None,
        gromov_form: cmp.gromov,
        refined_gromov_form: cmp.refined,
        identities: BoundIdentities {
            max_equals_tree: max_form == tree_form,
            refined_equals_tree: cmp.refined == tree_form,
            refined_at_least_gromov: cmp.refined >= cmp.gromov,
        },
    })
}

/// Like [`fold_bound`], with the per-side form computed from the genera.
pub fn fold_bound_surface(s: &SplitSurface) -> Result<BoundReport, BoundError> {
    check_balance(s)?;
    let summary = summarize(s)?;
    let mut report = fold_bound(&summary)?;
    let side = |comps: &[crate::splitting::SurfaceComponent]| -> i64 {
        comps.iter().map(|c| 2 * c.genus as i64 + 2).sum()
    };
    report.per_side_form = Some(side(&s.plus_components).max(side(&s.minus_components)));
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GromovComparison {
    pub gromov: i64,
    pub refined: i64,
    pub slack: i64,
}

/// The Betti-number bound against its refinement by the splitting graph.
pub fn gromov_compare(summary: &SplitSummary) -> GromovComparison {
    let g = summary.genus_s as i64;
    let sigma = summary.sigma_count as i64;
    let betti_half = g + 1;
    let gromov = betti_half - sigma;
    let refined = 2 * (summary.rho as i64 + summary.n_diff as i64) + betti_half - sigma;
    GromovComparison {
        gromov,
        refined,
        slack: refined - gromov,
    }
}
