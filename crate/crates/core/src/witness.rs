//! Sharpness witnesses: for an admissible `(g, |Σ|, #S+, #S-)`, a splitting
//! together with a curve word on every fold circle whose crossing total
//! meets the lower bound exactly.
//!
//! The splitting has three parts. With `m = min(#S+, #S-)` and
//! `n = |#S+ - #S-|`, and the larger side taken to be positive:
//!
//! * the spine is a chain of `m - 1` genus-one vertebrae `V_i` (one
//!   component on each side, joined by a `B+3,1` fold), consecutive vertebrae
//!   linked by a `C+0` fold from `V_i` on the plus side to `V_(i+1)` on the
//!   minus side;
//! * the skull is one component `K` on each side, of genus
//!   `(g - |Σ| + 1) / 2`, joined by `|Σ| + 2 - #S+ - #S-` folds: one
//!   `B+(g-|Σ|+2),1` and otherwise `C+0`;
//! * the teeth are `n` genus-one plus components `T_j`, each attached to the
//!   minus skull by a `B+3,1` fold.
//!
//! When `m >= 2` the last plus vertebra is attached to the minus skull by a
//! `C+0` fold. If the minus side is the larger one, the construction is done
//! with the sides exchanged and then mirrored back.

use crate::bounds::{fold_bound_surface, BoundError, BoundReport};
use crate::curve::PlanarCurve;
use crate::families::{
    crossing_total, predicted_invariants, realize_row, CurveWord, FamilyError, Sign, WordMultiset,
};
use crate::splitting::{
    check_admissible, check_balance, summarize, AdmissibilityVerdict, EdgeWeight, Side,
    SigmaCircle, SplitSummary, SplitSurface, SurfaceComponent,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdmissibleCombo {
    pub g: u32,
    pub sigma_count: u32,
    pub num_plus: u32,
    pub num_minus: u32,
}

impl AdmissibleCombo {
    pub fn new(
        g: u32,
        sigma_count: u32,
        num_plus: u32,
        num_minus: u32,
    ) -> Result<Self, WitnessError> {
        let verdict = check_admissible(g, sigma_count, num_plus, num_minus);
        if !verdict.admissible() {
            return Err(WitnessError::InadmissibleCombo { verdict });
        }
        Ok(Self {
            g,
            sigma_count,
            num_plus,
            num_minus,
        })
    }

    pub fn m(&self) -> u32 {
        self.num_plus.min(self.num_minus)
    }

    pub fn n(&self) -> u32 {
        self.num_plus.abs_diff(self.num_minus)
    }

    pub fn skull_genus(&self) -> u32 {
        (self.g - self.sigma_count).div_ceil(2)
    }

    pub fn summary(&self) -> SplitSummary {
        SplitSummary::from_combo(self.g, self.sigma_count, self.num_plus, self.num_minus)
    }

    /// Expected number of fold circles of each anatomical kind.
    pub fn anatomy_counts(&self) -> AnatomyCounts {
        let m = self.m();
        AnatomyCounts {
            spine_internal: m - 1,
            spine_join: m.saturating_sub(2),
            skull_internal: self.sigma_count + 2 - (self.num_plus + self.num_minus),
            tooth_attach: self.n(),
            spine_skull_join: u32::from(m >= 2),
        }
    }

    /// `4 max(#S+, #S-) + g - |Σ| - 1`.
    pub fn sharp_total(&self) -> i64 {
        4 * self.num_plus.max(self.num_minus) as i64 + self.g as i64 - self.sigma_count as i64 - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Anatomy {
    SpineInternal,
    SpineJoin,
    SkullInternal,
    ToothAttach,
    SpineSkullJoin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AnatomyCounts {
    pub spine_internal: u32,
    pub spine_join: u32,
    pub skull_internal: u32,
    pub tooth_attach: u32,
    pub spine_skull_join: u32,
}

impl AnatomyCounts {
    pub fn total(&self) -> u32 {
        self.spine_internal
            + self.spine_join
            + self.skull_internal
            + self.tooth_attach
            + self.spine_skull_join
    }

    pub fn tally(tags: &[Anatomy]) -> Self {
        let mut c = AnatomyCounts::default();
        for t in tags {
            match t {
                Anatomy::SpineInternal => c.spine_internal += 1,
                Anatomy::SpineJoin => c.spine_join += 1,
                Anatomy::SkullInternal => c.skull_internal += 1,
                Anatomy::ToothAttach => c.tooth_attach += 1,
                Anatomy::SpineSkullJoin => c.spine_skull_join += 1,
            }
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("combination is not admissible; failing: {}", .verdict.failures().join(", "))]
    InadmissibleCombo { verdict: AdmissibilityVerdict },
    #[error("internal count mismatch: {0}")]
    InternalCountMismatch(String),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A constructed splitting with its fold words. `anatomy` and `assignment`
/// run parallel to `splitting.sigma_circles`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub combo: AdmissibleCombo,
    /// Set when the minus side is the larger one and the construction was
    /// mirrored.
    pub mirrored: bool,
    pub splitting: SplitSurface,
    pub anatomy: Vec<Anatomy>,
    pub assignment: Vec<CurveWord>,
    pub delta_sigma: u32,
    pub bound: BoundReport,
}

impl WitnessCertificate {
    pub fn words(&self) -> WordMultiset {
        self.assignment.iter().copied().collect()
    }

    /// Words on the fold circles bounding one component.
    pub fn incident_words(&self, side: Side, label: &str) -> WordMultiset {
        self.splitting
            .sigma_circles
            .iter()
            .zip(&self.assignment)
            .filter(|(c, _)| match side {
                Side::Plus => c.plus == label,
                Side::Minus => c.minus == label,
            })
            .map(|(_, &w)| w)
            .collect()
    }
}

fn weight_of(word: CurveWord) -> EdgeWeight {
    let p = predicted_invariants(word);
    EdgeWeight {
        i_plus: p.i_plus,
        i_minus: p.i_minus,
        n_plus: p.n_plus,
        n_minus: p.n_minus,
    }
}

struct Builder {
    plus: Vec<SurfaceComponent>,
    minus: Vec<SurfaceComponent>,
    circles: Vec<SigmaCircle>,
    anatomy: Vec<Anatomy>,
    words: Vec<CurveWord>,
}

impl Builder {
    fn fold(&mut self, plus: &str, minus: &str, tag: Anatomy, word: CurveWord) {
        let mut c = SigmaCircle::new(plus, minus);
        c.weight = Some(weight_of(word));
        self.circles.push(c);
        self.anatomy.push(tag);
        self.words.push(word);
    }
}

fn vertebra(i: u32) -> String {
    format!("V{i}")
}

pub fn build_witness(combo: AdmissibleCombo) -> Result<WitnessCertificate, WitnessError> {
    let verdict = check_admissible(combo.g, combo.sigma_count, combo.num_plus, combo.num_minus);
    if !verdict.admissible() {
        return Err(WitnessError::InadmissibleCombo { verdict });
    }
    let mirrored = combo.num_minus > combo.num_plus;
    let m = combo.m();
    let n = combo.n();
    let counts = combo.anatomy_counts();
    let skull_genus = combo.skull_genus();
    let b3 = CurveWord::b(Sign::Plus, 3);
    let c0 = CurveWord::c(Sign::Plus, 0);

    let mut b = Builder {
        plus: Vec::new(),
        minus: Vec::new(),
        circles: Vec::new(),
        anatomy: Vec::new(),
        words: Vec::new(),
    };
    for i in 1..m {
        b.plus.push(SurfaceComponent::new(vertebra(i), 1));
        b.minus.push(SurfaceComponent::new(vertebra(i), 1));
    }
    b.plus.push(SurfaceComponent::new("K", skull_genus));
    b.minus.push(SurfaceComponent::new("K", skull_genus));
    for j in 1..=n {
        b.plus.push(SurfaceComponent::new(format!("T{j}"), 1));
    }

    for i in 1..m {
        b.fold(&vertebra(i), &vertebra(i), Anatomy::SpineInternal, b3);
    }
    for i in 1..m.saturating_sub(1) {
        b.fold(&vertebra(i), &vertebra(i + 1), Anatomy::SpineJoin, c0);
    }
    let skull_b = CurveWord::b(Sign::Plus, combo.g - combo.sigma_count + 2);
    for s in 0..counts.skull_internal {
        b.fold(
            "K",
            "K",
            Anatomy::SkullInternal,
            if s == 0 { skull_b } else { c0 },
        );
    }
    for j in 1..=n {
        b.fold(&format!("T{j}"), "K", Anatomy::ToothAttach, b3);
    }
    if m >= 2 {
        b.fold(&vertebra(m - 1), "K", Anatomy::SpineSkullJoin, c0);
    }

    let mut splitting = SplitSurface {
        plus_components: b.plus,
        minus_components: b.minus,
        sigma_circles: b.circles,
    };
    if mirrored {
        std::mem::swap(
            &mut splitting.plus_components,
            &mut splitting.minus_components,
        );
        for c in &mut splitting.sigma_circles {
            std::mem::swap(&mut c.plus, &mut c.minus);
        }
    }

    if AnatomyCounts::tally(&b.anatomy) != counts || counts.total() != combo.sigma_count {
        return Err(WitnessError::InternalCountMismatch(format!(
            "anatomy {:?} for |Σ| = {}",
            AnatomyCounts::tally(&b.anatomy),
            combo.sigma_count
        )));
    }
    let words: WordMultiset = b.words.iter().copied().collect();
    let delta_sigma = crossing_total(&words);
    if delta_sigma as i64 != combo.sharp_total() {
        return Err(WitnessError::InternalCountMismatch(format!(
            "crossing total {delta_sigma} differs from 4 max + g - |Σ| - 1 = {}",
            combo.sharp_total()
        )));
    }
    let bound = fold_bound_surface(&splitting)?;
    if bound.tree_form != delta_sigma as i64 {
        return Err(WitnessError::InternalCountMismatch(format!(
            "crossing total {delta_sigma} differs from the bound {}",
            bound.tree_form
        )));
    }
    Ok(WitnessCertificate {
        combo,
        mirrored,
        splitting,
        anatomy: b.anatomy,
        assignment: b.words,
        delta_sigma,
        bound,
    })
}

/// Realizes every fold word and lays them out in a row, so the curves are
/// pairwise disjoint.
pub fn realize_witness(cert: &WitnessCertificate) -> Result<PlanarCurve, WitnessError> {
    Ok(realize_row(&cert.assignment)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub expected: i64,
    pub found: i64,
}

impl CheckOutcome {
    fn eq(expected: i64, found: i64) -> Self {
        Self {
            passed: expected == found,
            expected,
            found,
        }
    }
}

/// Independent recomputation of every claim a certificate makes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateVerdict {
    /// Both sides have Euler characteristic `1 - g`.
    pub balance: bool,
    /// Per-kind circle counts agree with the combination and sum to `|Σ|`.
    pub anatomy: bool,
    /// Component counts per side and the genus of the closed surface.
    pub components: bool,
    /// Crossing total of the words against the bound from the combination.
    pub crossing_total: CheckOutcome,
    /// The recorded `delta_sigma` against the crossing total of the words.
    pub delta_sigma: CheckOutcome,
    pub notes: Vec<String>,
}

impl CertificateVerdict {
    pub fn passed(&self) -> bool {
        self.balance
            && self.anatomy
            && self.components
            && self.crossing_total.passed
            && self.delta_sigma.passed
    }
}

pub fn verify_certificate(cert: &WitnessCertificate) -> CertificateVerdict {
    let combo = cert.combo;
    let mut notes = Vec::new();
    let summary = summarize(&cert.splitting);

    let target_chi = 1 - combo.g as i64;
    let balance = match (&summary, check_balance(&cert.splitting)) {
        (Ok(s), Ok(())) if s.chi_plus == target_chi && s.chi_minus == target_chi => true,
        (Ok(s), _) => {
            notes.push(format!(
                "chi(S+) = {}, chi(S-) = {}, expected {target_chi}",
                s.chi_plus, s.chi_minus
            ));
            false
        }
        (Err(e), _) => {
            notes.push(e.to_string());
            false
        }
    };

    let n_circles = cert.splitting.sigma_circles.len();
    let parallel = cert.anatomy.len() == n_circles && cert.assignment.len() == n_circles;
    let expected = combo.anatomy_counts();
    let found = AnatomyCounts::tally(&cert.anatomy);
    let anatomy = parallel
        && found == expected
        && found.total() == combo.sigma_count
        && n_circles == combo.sigma_count as usize;
    if !anatomy {
        notes.push(format!(
            "anatomy {found:?} over {n_circles} circles, expected {expected:?} summing to {}",
            combo.sigma_count
        ));
    }

    let num_plus = cert.splitting.plus_components.len() as u32;
    let num_minus = cert.splitting.minus_components.len() as u32;
    let genus_ok = summary.as_ref().is_ok_and(|s| s.genus_s == combo.g);
    let components = num_plus == combo.num_plus && num_minus == combo.num_minus && genus_ok;
    if !components {
        notes.push(format!(
            "{num_plus} plus and {num_minus} minus components (genus ok: {genus_ok}), expected {} and {}",
            combo.num_plus, combo.num_minus
        ));
    }

    let total = crossing_total(&cert.words()) as i64;
    let bound = crate::bounds::fold_bound(&combo.summary())
        .map(|r| r.tree_form)
        .unwrap_or(i64::MIN);
    let crossing = CheckOutcome::eq(bound, total);
    if !crossing.passed {
        notes.push(format!("words carry {total} crossings, bound is {bound}"));
    }
    let delta = CheckOutcome::eq(total, cert.delta_sigma as i64);

    CertificateVerdict {
        balance,
        anatomy,
        components,
        crossing_total: crossing,
        delta_sigma: delta,
        notes,
    }
}
