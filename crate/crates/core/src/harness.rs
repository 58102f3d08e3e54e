//! Verification harnesses: the exhaustive sweep over admissible
//! combinations and the randomized Whitney fuzzer with its brute-force
//! crossing oracle.

use crate::bounds::gromov_compare;
use crate::curve::{
    choose_basepoint, find_crossings, inner_outer, invariants, lowest_point_check,
    validate_genericity, winding_number, BoundaryClass, Crossing, CurveComponent, CurveError,
    PlanarCurve, Point,
};
use crate::splitting::{check_admissible, summarize};
use crate::witness::{build_witness, verify_certificate, AdmissibleCombo, AnatomyCounts};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::time::Instant;

/// Seed used when none is given; overridden by `FOLDATLAS_SEED`.
pub const DEFAULT_SEED: u64 = 7;

pub fn default_seed() -> u64 {
    std::env::var("FOLDATLAS_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Every admissible `(g, |Σ|, #S+, #S-)` with `2 <= g <= g_max`, in
/// lexicographic order.
pub fn admissible_combos(g_max: u32) -> Vec<AdmissibleCombo> {
    let mut out = Vec::new();
    for g in 2..=g_max {
        for s in 1..g {
            for p in 1..=s {
                for q in 1..=s + 1 - p {
                    if check_admissible(g, s, p, q).admissible() {
                        out.push(AdmissibleCombo {
                            g,
                            sigma_count: s,
                            num_plus: p,
                            num_minus: q,
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub combo: AdmissibleCombo,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub g_range: (u32, u32),
    pub sigma_range: (u32, u32),
    pub combos_tested: usize,
    pub failures: Vec<SweepFailure>,
    pub elapsed_ms: u128,
}

fn sweep_one(combo: AdmissibleCombo) -> Result<(), String> {
    let cert = build_witness(combo).map_err(|e| e.to_string())?;
    let verdict = verify_certificate(&cert);
    if !verdict.passed() {
        return Err(format!("certificate rejected: {verdict:?}"));
    }
    let b = &cert.bound;
    let delta = cert.delta_sigma as i64;
    if !(delta == b.tree_form && delta == b.max_form && delta == b.refined_gromov_form) {
        return Err(format!("delta {delta} vs bound forms {b:?}"));
    }
    let summary = summarize(&cert.splitting).map_err(|e| e.to_string())?;
    let cmp = gromov_compare(&summary);
    if cmp.refined < cmp.gromov || cmp.slack != 2 * (summary.rho as i64 + summary.n_diff as i64) {
        return Err(format!("gromov comparison {cmp:?}"));
    }
    let target = 1 - combo.g as i64;
    if summary.chi_plus != target || summary.chi_minus != target {
        return Err(format!(
            "chi = ({}, {}), expected {target}",
            summary.chi_plus, summary.chi_minus
        ));
    }
    let total = AnatomyCounts::tally(&cert.anatomy).total();
    if total != combo.sigma_count {
        return Err(format!("anatomy sums to {total}"));
    }
    Ok(())
}

/// Builds and verifies the witness of every admissible combination up to
/// genus `g_max`.
pub fn run_sweep(g_max: u32) -> SweepReport {
    let start = Instant::now();
    let combos = admissible_combos(g_max);
    let failures = combos
        .iter()
        .filter_map(|&combo| {
            sweep_one(combo)
                .err()
                .map(|reason| SweepFailure { combo, reason })
        })
        .collect();
    SweepReport {
        g_range: (2, g_max),
        sigma_range: (1, g_max.saturating_sub(1)),
        combos_tested: combos.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

// ---------------------------------------------------------------------------
// Brute-force crossing oracle

fn seg_intersection(p0: Point, p1: Point, q0: Point, q1: Point) -> Option<(f64, f64)> {
    let (ax, ay) = (p1.x - p0.x, p1.y - p0.y);
    let (bx, by) = (q1.x - q0.x, q1.y - q0.y);
    let det = ax * by - ay * bx;
    if det == 0.0 {
        return None;
    }
    let (cx, cy) = (q0.x - p0.x, q0.y - p0.y);
    let t = (cx * by - cy * bx) / det;
    let u = (cx * ay - cy * ax) / det;
    (t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0).then_some((t, u))
}

/// Arclength from the basepoint to `(seg, t)`, by walking the polyline.
fn arclength_to(c: &CurveComponent, seg: usize, t: f64) -> f64 {
    let n = c.len();
    let mut s = 0.0;
    let mut i = c.basepoint;
    while i != seg {
        s += c.vertices[i].distance(c.vertices[(i + 1) % n]);
        i = (i + 1) % n;
    }
    s + t * c.vertices[seg].distance(c.vertices[(seg + 1) % n])
}

/// Every double point, by testing all segment pairs. Shares no code with the
/// sweep in [`find_crossings`].
pub fn brute_force_crossings(curve: &PlanarCurve) -> Vec<Crossing> {
    let mut out = Vec::new();
    let comps = &curve.components;
    for (ci, a) in comps.iter().enumerate() {
        for (cj, b) in comps.iter().enumerate().skip(ci) {
            for i in 0..a.len() {
                let j0 = if ci == cj { i + 1 } else { 0 };
                for j in j0..b.len() {
                    if ci == cj && (j == i + 1 || (i == 0 && j == a.len() - 1)) {
                        continue;
                    }
                    let (p0, p1) = (a.vertices[i], a.vertices[(i + 1) % a.len()]);
                    let (q0, q1) = (b.vertices[j], b.vertices[(j + 1) % b.len()]);
                    let Some((t, u)) = seg_intersection(p0, p1, q0, q1) else {
                        continue;
                    };
                    let mut first = (i, t, arclength_to(a, i, t), p1 - p0);
                    let mut second = (j, u, arclength_to(b, j, u), q1 - q0);
                    if ci == cj && second.2 < first.2 {
                        std::mem::swap(&mut first, &mut second);
                    }
                    let det = first.3.x * second.3.y - first.3.y * second.3.x;
                    out.push(Crossing {
                        comp_a: ci,
                        comp_b: cj,
                        param_a: first.2,
                        param_b: second.2,
                        seg_a: first.0,
                        frac_a: first.1,
                        seg_b: second.0,
                        frac_b: second.1,
                        location: p0 + (p1 - p0) * t,
                        sign: if det > 0.0 { 1 } else { -1 },
                    });
                }
            }
        }
    }
    out
}

fn crossing_key(x: &Crossing) -> (usize, usize, usize, usize) {
    let (s1, s2) = (x.seg_a.min(x.seg_b), x.seg_a.max(x.seg_b));
    if x.comp_a == x.comp_b {
        (x.comp_a, x.comp_b, s1, s2)
    } else {
        (x.comp_a, x.comp_b, x.seg_a, x.seg_b)
    }
}

/// Whether two crossing lists describe the same double points with the same
/// signs, parameters and locations.
pub fn same_crossings(a: &[Crossing], b: &[Crossing]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a: Vec<_> = a.to_vec();
    let mut b: Vec<_> = b.to_vec();
    a.sort_by_key(crossing_key);
    b.sort_by_key(crossing_key);
    a.iter().zip(&b).all(|(x, y)| {
        crossing_key(x) == crossing_key(y)
            && x.seg_a == y.seg_a
            && x.sign == y.sign
            && x.location.distance(y.location) < 1e-9
            && (x.param_a - y.param_a).abs() < 1e-9
            && (x.param_b - y.param_b).abs() < 1e-9
    })
}

// ---------------------------------------------------------------------------
// Whitney fuzzer

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MismatchKind {
    Whitney,
    Collection,
    CrossingOracle,
    LowestPoint,
    InterComponentBalance,
    Library,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzMismatch {
    pub trial: usize,
    pub kind: MismatchKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    /// Trials that produced a generic curve within the retry budget.
    pub generated: usize,
    pub skipped: usize,
    pub components: usize,
    pub crossings: usize,
    pub whitney_mismatches: usize,
    pub collection_mismatches: usize,
    pub crossing_oracle_mismatches: usize,
    pub lowest_point_violations: usize,
    pub balance_violations: usize,
    pub library_errors: usize,
    pub mismatches: Vec<FuzzMismatch>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

const MAX_RETRIES: usize = 25;

/// A closed polyline sampled from `r(θ) e^{iθ} + b e^{imθ}`, where `r` is a
/// jittered radius and the epicycle term creates self-crossings.
fn random_component(rng: &mut ChaCha8Rng, center: Point, size: f64) -> CurveComponent {
    let n = rng.random_range(8..=40usize);
    let m = loop {
        let m = rng.random_range(-4i32..=4);
        if m != 0 && m != 1 {
            break m;
        }
    };
    let b = rng.random_range(0.0..1.2);
    let phase = rng.random_range(0.0..TAU);
    let vertices: Vec<Point> = (0..n)
        .map(|j| {
            let th = TAU * (j as f64 + rng.random_range(-0.3..0.3)) / n as f64;
            let r = 1.0 + rng.random_range(-0.25..0.25);
            let mth = m as f64 * th + phase;
            let p = Point::new(r * th.cos() + b * mth.cos(), r * th.sin() + b * mth.sin());
            center + p * size
        })
        .collect();
    let c = CurveComponent::new(vertices, 0);
    if rng.random_bool(0.5) {
        c.reversed()
    } else {
        c
    }
}

fn random_curve(rng: &mut ChaCha8Rng) -> Option<PlanarCurve> {
    let k = match rng.random_range(0..10) {
        0..=5 => 1,
        6..=8 => 2,
        _ => 3,
    };
    let mut comps = Vec::with_capacity(k);
    for _ in 0..k {
        let center = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let size = rng.random_range(0.5..1.5);
        let mut c = random_component(rng, center, size);
        c.basepoint = choose_basepoint(&c).ok()?;
        comps.push(c);
    }
    let curve = PlanarCurve::new(comps);
    validate_genericity(&curve).ok()?;
    Some(curve)
}

struct TrialTally {
    mismatches: Vec<(MismatchKind, String)>,
}

impl TrialTally {
    fn flag(&mut self, kind: MismatchKind, detail: String) {
        self.mismatches.push((kind, detail));
    }
}

fn check_curve(curve: &PlanarCurve) -> Result<TrialTally, CurveError> {
    let mut t = TrialTally {
        mismatches: Vec::new(),
    };
    let swept = find_crossings(curve)?;
    let brute = brute_force_crossings(curve);
    if !same_crossings(&swept, &brute) {
        t.flag(
            MismatchKind::CrossingOracle,
            format!("sweep found {}, brute force {}", swept.len(), brute.len()),
        );
    }

    let (mut total_w, mut tally) = (0i64, 0i64);
    for (i, c) in curve.components.iter().enumerate() {
        let w = winding_number(c)?;
        let class = inner_outer(c)?;
        let i_sign = if class == BoundaryClass::Outer { 1 } else { -1 };
        let n_signed: i64 = brute
            .iter()
            .filter(|x| x.comp_a == i && x.comp_b == i)
            .map(|x| -(x.sign as i64))
            .sum();
        if w != i_sign + n_signed {
            t.flag(
                MismatchKind::Whitney,
                format!("component {i}: w = {w}, tally = {}", i_sign + n_signed),
            );
        }
        total_w += w;
        tally += i_sign + n_signed;

        let lp = lowest_point_check(c)?;
        if !lp.agrees() {
            t.flag(MismatchKind::LowestPoint, format!("component {i}: {lp:?}"));
        }
    }
    if total_w != tally {
        t.flag(
            MismatchKind::Collection,
            format!("W = {total_w}, tally = {tally}"),
        );
    }
    let mixed: i64 = brute
        .iter()
        .filter(|x| !x.is_self())
        .map(|x| x.sign as i64)
        .sum();
    if mixed != 0 {
        t.flag(
            MismatchKind::InterComponentBalance,
            format!("N_ij+ - N_ij- = {mixed}"),
        );
    }
    if let Err(e) = invariants(curve) {
        t.flag(MismatchKind::Library, e.to_string());
    }
    Ok(t)
}

/// Runs `trials` random curves through both sides of every identity.
pub fn run_whitney_fuzz(trials: usize, seed: u64) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FuzzReport {
        seed,
        trials,
        generated: 0,
        skipped: 0,
        components: 0,
        crossings: 0,
        whitney_mismatches: 0,
        collection_mismatches: 0,
        crossing_oracle_mismatches: 0,
        lowest_point_violations: 0,
        balance_violations: 0,
        library_errors: 0,
        mismatches: Vec::new(),
    };
    for trial in 0..trials {
        let Some(curve) = (0..MAX_RETRIES).find_map(|_| random_curve(&mut rng)) else {
            report.skipped += 1;
            continue;
        };
        report.generated += 1;
        report.components += curve.components.len();
        let found = match check_curve(&curve) {
            Ok(t) => {
                report.crossings += brute_force_crossings(&curve).len();
                t.mismatches
            }
            Err(e) => vec![(MismatchKind::Library, e.to_string())],
        };
        for (kind, detail) in found {
            match kind {
                MismatchKind::Whitney => report.whitney_mismatches += 1,
                MismatchKind::Collection => report.collection_mismatches += 1,
                MismatchKind::CrossingOracle => report.crossing_oracle_mismatches += 1,
                MismatchKind::LowestPoint => report.lowest_point_violations += 1,
                MismatchKind::InterComponentBalance => report.balance_violations += 1,
                MismatchKind::Library => report.library_errors += 1,
            }
            report.mismatches.push(FuzzMismatch {
                trial,
                kind,
                detail,
            });
        }
    }
    report
}
