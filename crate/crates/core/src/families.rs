//! The canonical curve families A, B and C, their geometric realizations,
//! and the certified symbolic rewrites between them.
//!
//! A word such as `B+7,1` names a curve by family, sign and index. Each word
//! has a predicted invariant row `(w, i+, i-, n-, n+)`, and [`realize`]
//! produces a polyline whose computed invariants reproduce that row exactly.
//!
//! The realizations are built from three base loops decorated with small
//! curls. A curl inserted on an edge adds one self-crossing and turns the
//! tangent one extra time, counterclockwise for a left curl and clockwise for
//! a right one.
//!
//! | word   | base loop                  | curls                        |
//! |--------|----------------------------|------------------------------|
//! | `C-k`  | counterclockwise circle    | `k` left, inside the disk    |
//! | `A-k`  | figure eight               | `k-1` left, in the ccw lobe  |
//! | `B+k,1`| limaçon with inner loop    | `k` right, on the inner loop |
//!
//! The `+`/`-` partners are the reversals (`C+k`, `A+k`, `B-k,1`). Basepoints
//! are then chosen by [`choose_basepoint`](crate::curve::choose_basepoint),
//! and Whitney's formula forces the split of crossings into signs.

use crate::curve::{self, CurveComponent, CurveError, PlanarCurve, Point};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("invalid word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },
    #[error("rule {rule} does not apply to any word of the input")]
    RuleNotApplicable { rule: String },
    #[error("invalid composition: {reason}")]
    InvalidComposition { reason: String },
    #[error("genus {genus} is not allowed here; the surface must be non-planar")]
    InvalidGenus { genus: u32 },
    #[error("realization failed: {0}")]
    Realization(#[from] CurveError),
}

/// A named canonical curve: family, sign and index. For family B the second
/// index is always 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CurveWord {
    pub family: Family,
    pub k: u32,
    pub sign: Sign,
}

impl CurveWord {
    pub fn new(family: Family, sign: Sign, k: u32) -> Result<Self, FamilyError> {
        let w = CurveWord { family, k, sign };
        let min = match family {
            Family::A | Family::B => 1,
            Family::C => 0,
        };
        if k < min {
            return Err(FamilyError::InvalidWord {
                word: w.to_string(),
                reason: format!("index must be at least {min}"),
            });
        }
        Ok(w)
    }

    pub fn a(sign: Sign, k: u32) -> Self {
        Self::new(Family::A, sign, k).expect("valid A index")
    }

    pub fn b(sign: Sign, k: u32) -> Self {
        Self::new(Family::B, sign, k).expect("valid B index")
    }

    pub fn c(sign: Sign, k: u32) -> Self {
        Self::new(Family::C, sign, k).expect("valid C index")
    }

    /// The word realized by the same curve traversed backwards.
    pub fn reversed(self) -> Self {
        CurveWord {
            sign: self.sign.flipped(),
            ..self
        }
    }
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
        };
        let sign = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{fam}{sign}{}", self.k)?;
        if self.family == Family::B {
            f.write_str(",1")?;
        }
        Ok(())
    }
}

impl FromStr for CurveWord {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| FamilyError::InvalidWord {
            word: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let mut chars = t.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            _ => return Err(bad("family must be A, B or C")),
        };
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') | Some('\u{2212}') => Sign::Minus,
            _ => return Err(bad("sign must be + or -")),
        };
        let rest = chars.as_str();
        let digits = match family {
            Family::B => rest
                .strip_suffix(",1")
                .ok_or_else(|| bad("family B words end in \",1\""))?,
            _ => rest,
        };
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("index must be a non-negative integer"));
        }
        let k: u32 = digits.parse().map_err(|_| bad("index out of range"))?;
        CurveWord::new(family, sign, k).map_err(|_| bad("index below the family minimum"))
    }
}

impl TryFrom<String> for CurveWord {
    type Error = FamilyError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CurveWord> for String {
    fn from(w: CurveWord) -> String {
        w.to_string()
    }
}

/// The invariant row of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedInvariants {
    pub w: i64,
    pub i_plus: u32,
    pub i_minus: u32,
    pub n_minus: u32,
    pub n_plus: u32,
}

impl PredictedInvariants {
    pub fn crossings(&self) -> u32 {
        self.n_minus + self.n_plus
    }

    pub fn as_tuple(&self) -> (i64, u32, u32, u32, u32) {
        (self.w, self.i_plus, self.i_minus, self.n_minus, self.n_plus)
    }
}

pub fn predicted_invariants(word: CurveWord) -> PredictedInvariants {
    let k = word.k;
    let ki = k as i64;
    let (w, i_plus, i_minus, n_minus, n_plus) = match (word.family, word.sign) {
        (Family::A, Sign::Minus) => (ki - 1, 0, 1, k, 0),
        (Family::A, Sign::Plus) => (1 - ki, 0, 1, 1, k - 1),
        (Family::B, Sign::Minus) => (ki - 2, 0, 1, k, 1),
        (Family::B, Sign::Plus) => (2 - ki, 1, 0, 1, k),
        (Family::C, Sign::Minus) => (ki + 1, 1, 0, k, 0),
        (Family::C, Sign::Plus) => (-ki - 1, 0, 1, 0, k),
    };
    PredictedInvariants {
        w,
        i_plus,
        i_minus,
        n_minus,
        n_plus,
    }
}

/// A multiset of words, kept sorted so that equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<CurveWord>", into = "Vec<CurveWord>")]
pub struct WordMultiset {
    words: Vec<CurveWord>,
}

impl WordMultiset {
    pub fn new(mut words: Vec<CurveWord>) -> Self {
        words.sort();
        Self { words }
    }

    pub fn words(&self) -> &[CurveWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn count(&self, word: CurveWord) -> usize {
        self.words.iter().filter(|&&w| w == word).count()
    }

    pub fn total_winding(&self) -> i64 {
        self.words.iter().map(|&w| predicted_invariants(w).w).sum()
    }
}

impl From<Vec<CurveWord>> for WordMultiset {
    fn from(v: Vec<CurveWord>) -> Self {
        Self::new(v)
    }
}

impl From<WordMultiset> for Vec<CurveWord> {
    fn from(m: WordMultiset) -> Self {
        m.words
    }
}

impl FromIterator<CurveWord> for WordMultiset {
    fn from_iter<I: IntoIterator<Item = CurveWord>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl fmt::Display for WordMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

/// Sum of `n+ + n-` over the words.
pub fn crossing_total(words: &WordMultiset) -> u32 {
    words
        .words
        .iter()
        .map(|&w| predicted_invariants(w).crossings())
        .sum()
}

/// `B+(2g+1),1` together with `k - 1` embedded clockwise holes `C+0`.
pub fn sharp_boundary(genus: u32, boundary_count: u32) -> Result<WordMultiset, FamilyError> {
    if genus == 0 {
        return Err(FamilyError::InvalidGenus { genus });
    }
    if boundary_count == 0 {
        return Err(FamilyError::InvalidComposition {
            reason: "a surface with boundary has at least one boundary circle".into(),
        });
    }
    let mut words = vec![CurveWord::b(Sign::Plus, 2 * genus + 1)];
    words.extend((1..boundary_count).map(|_| CurveWord::c(Sign::Plus, 0)));
    Ok(WordMultiset::new(words))
}

// ---------------------------------------------------------------------------
// Rewrites

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RewriteKind {
    PositiveIsotopy,
    PositiveConcordance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RewriteRule {
    /// `A-k => C-(k-2)`, `k >= 2`.
    R1 { k: u32 },
    /// `C+(k-2) => A+k`, `k >= 2`.
    R2 { k: u32 },
    /// `A+k => B+(k+1),1`.
    R3 { k: u32 },
    /// `C+0 => B+3,1`.
    R4,
    /// `B+k,1 => B+i0,1 + C+i1 + ... + C+is` for a composition of `k`.
    R5 { k: u32, parts: Vec<u32> },
}

impl RewriteRule {
    pub fn kind(&self) -> RewriteKind {
        match self {
            RewriteRule::R5 { .. } => RewriteKind::PositiveConcordance,
            _ => RewriteKind::PositiveIsotopy,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            RewriteRule::R1 { .. } => "R1",
            RewriteRule::R2 { .. } => "R2",
            RewriteRule::R3 { .. } => "R3",
            RewriteRule::R4 => "R4",
            RewriteRule::R5 { .. } => "R5",
        }
    }

    /// The word consumed and the words produced.
    fn action(&self) -> Result<(CurveWord, Vec<CurveWord>), FamilyError> {
        let na = || FamilyError::RuleNotApplicable {
            rule: self.to_string(),
        };
        Ok(match *self {
            RewriteRule::R1 { k } => {
                if k < 2 {
                    return Err(na());
                }
                (
                    CurveWord::a(Sign::Minus, k),
                    vec![CurveWord::c(Sign::Minus, k - 2)],
                )
            }
            RewriteRule::R2 { k } => {
                if k < 2 {
                    return Err(na());
                }
                (
                    CurveWord::c(Sign::Plus, k - 2),
                    vec![CurveWord::a(Sign::Plus, k)],
                )
            }
            RewriteRule::R3 { k } => {
                if k < 1 {
                    return Err(na());
                }
                (
                    CurveWord::a(Sign::Plus, k),
                    vec![CurveWord::b(Sign::Plus, k + 1)],
                )
            }
            RewriteRule::R4 => (
                CurveWord::c(Sign::Plus, 0),
                vec![CurveWord::b(Sign::Plus, 3)],
            ),
            RewriteRule::R5 { k, ref parts } => {
                if k < 1 {
                    return Err(na());
                }
                if parts.is_empty() || parts.contains(&0) {
                    return Err(FamilyError::InvalidComposition {
                        reason: "parts must be a non-empty list of positive integers".into(),
                    });
                }
                let sum: u64 = parts.iter().map(|&p| p as u64).sum();
                if sum != k as u64 {
                    return Err(FamilyError::InvalidComposition {
                        reason: format!("parts sum to {sum}, expected {k}"),
                    });
                }
                let mut out = vec![CurveWord::b(Sign::Plus, parts[0])];
                out.extend(parts[1..].iter().map(|&p| CurveWord::c(Sign::Plus, p)));
                (CurveWord::b(Sign::Plus, k), out)
            }
        })
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteRule::R1 { k } | RewriteRule::R2 { k } | RewriteRule::R3 { k } => {
                write!(f, "{}(k={k})", self.id())
            }
            RewriteRule::R4 => f.write_str("R4"),
            RewriteRule::R5 { k, parts } => write!(f, "R5(k={k}, parts={parts:?})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub kind: RewriteKind,
    pub before: WordMultiset,
    pub after: WordMultiset,
    pub rule: RewriteRule,
}

/// Applies `rule` to one occurrence of its source word in `input`.
pub fn apply_rewrite(input: &WordMultiset, rule: &RewriteRule) -> Result<RewriteStep, FamilyError> {
    let (from, to) = rule.action()?;
    let pos = input.words.iter().position(|&w| w == from).ok_or_else(|| {
        FamilyError::RuleNotApplicable {
            rule: rule.to_string(),
        }
    })?;
    let mut words = input.words.clone();
    words.remove(pos);
    words.extend(to);
    Ok(RewriteStep {
        kind: rule.kind(),
        before: input.clone(),
        after: WordMultiset::new(words),
        rule: rule.clone(),
    })
}

// ---------------------------------------------------------------------------
// Geometry

/// Replaces edge `i -> i+1` of `base` by an edge carrying a small curl on
/// its left (`left = true`) or right side.
fn curl_points(p: Point, q: Point, left: bool) -> [Point; 5] {
    let u = q - p;
    let v = if left { u.rotate_ccw() } else { u.rotate_cw() };
    let at = |s: f64, t: f64| p + u * s + v * t;
    [
        at(0.25, 0.0),
        at(0.55, 0.25),
        at(0.55, 0.5),
        at(0.25, 0.5),
        at(0.75, 0.0),
    ]
}

fn with_curls(base: &[Point], edges: &[usize], left: bool) -> Vec<Point> {
    let n = base.len();
    let mut out = Vec::with_capacity(n + 5 * edges.len());
    for i in 0..n {
        out.push(base[i]);
        if edges.contains(&i) {
            out.extend(curl_points(base[i], base[(i + 1) % n], left));
        }
    }
    out
}

/// Every other edge whose midpoint parameter lies in `[lo, hi]`, at most
/// `count` of them. Returns `None` if there is not enough room.
fn curl_edges(n: usize, lo: f64, hi: f64, count: usize) -> Option<Vec<usize>> {
    let step = TAU / n as f64;
    let candidates: Vec<usize> = (0..n)
        .filter(|&j| {
            let mid = step * (j as f64 + 1.0);
            (lo..=hi).contains(&mid)
        })
        .step_by(2)
        .take(count)
        .collect();
    (candidates.len() == count).then_some(candidates)
}

fn sample(n: usize, f: impl Fn(f64) -> Point) -> Vec<Point> {
    (0..n)
        .map(|j| f(TAU * (j as f64 + 0.5) / n as f64))
        .collect()
}

fn circle_with_curls(k: usize) -> Vec<Point> {
    let m = (4 * k + 8).max(16);
    let base: Vec<Point> = (0..m)
        .map(|j| {
            let t = -PI / 2.0 + TAU * j as f64 / m as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    let edges: Vec<usize> = (0..k).map(|i| 2 * i).collect();
    with_curls(&base, &edges, true)
}

fn figure_eight_with_curls(curls: usize) -> Vec<Point> {
    let mut n = 64 + 12 * curls;
    loop {
        if let Some(edges) = curl_edges(n, 1.25 * PI, 1.75 * PI, curls) {
            let base = sample(n, |t| Point::new(t.sin(), (2.0 * t).sin() / 2.0));
            return with_curls(&base, &edges, true);
        }
        n += 16;
    }
}

fn limacon_with_curls(curls: usize) -> Vec<Point> {
    let mut n = 64 + 12 * curls;
    loop {
        if let Some(edges) = curl_edges(n, 2.6, 3.7, curls) {
            let base = sample(n, |t| {
                Point::new(
                    t.cos() + 0.9 * (2.0 * t).cos(),
                    t.sin() + 0.9 * (2.0 * t).sin(),
                )
            });
            return with_curls(&base, &edges, false);
        }
        n += 16;
    }
}

/// Centers the bounding box at the origin and scales the larger half-extent
/// to 1.
fn normalize(points: Vec<Point>) -> Vec<Point> {
    let (lo, hi) = CurveComponent::new(points.clone(), 0)
        .bounding_box()
        .expect("non-empty");
    let center = (lo + hi) * 0.5;
    let half = ((hi.x - lo.x).max(hi.y - lo.y)) / 2.0;
    points
        .into_iter()
        .map(|p| (p - center) * (1.0 / half))
        .collect()
}

/// A single-component realization of `word`, centered at the origin inside
/// `[-1, 1]^2`, with its canonical basepoint.
pub fn realize_component(word: CurveWord) -> Result<CurveComponent, FamilyError> {
    let k = word.k as usize;
    // Build the minus/plus representative named in the module table, then
    // reverse if the other sign was asked for.
    let (points, reverse) = match (word.family, word.sign) {
        (Family::C, s) => (circle_with_curls(k), s == Sign::Plus),
        (Family::A, s) => (figure_eight_with_curls(k - 1), s == Sign::Plus),
        (Family::B, s) => (limacon_with_curls(k), s == Sign::Minus),
    };
    let mut c = CurveComponent::new(normalize(points), 0);
    if reverse {
        c = c.reversed();
    }
    c.basepoint = curve::choose_basepoint(&c)?;
    Ok(c)
}

pub fn realize(word: CurveWord) -> Result<PlanarCurve, FamilyError> {
    Ok(PlanarCurve::single(realize_component(word)?))
}

/// Horizontal spacing between consecutive words laid out on a row.
pub const GRID_SPACING: f64 = 3.0;

/// Realizes each word and places them left to right, `GRID_SPACING` apart,
/// so that no two components meet.
pub fn realize_row<'a>(
    words: impl IntoIterator<Item = &'a CurveWord>,
) -> Result<PlanarCurve, FamilyError> {
    let components = words
        .into_iter()
        .enumerate()
        .map(|(i, &w)| {
            Ok(realize_component(w)?.translated(Point::new(GRID_SPACING * i as f64, 0.0)))
        })
        .collect::<Result<Vec<_>, FamilyError>>()?;
    Ok(PlanarCurve::new(components))
}

pub fn realize_multiset(words: &WordMultiset) -> Result<PlanarCurve, FamilyError> {
    realize_row(words.words())
}

/// Every valid word with index at most `k_max`.
pub fn all_words(k_max: u32) -> Vec<CurveWord> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C] {
        for sign in [Sign::Minus, Sign::Plus] {
            for k in 0..=k_max {
                if let Ok(w) = CurveWord::new(family, sign, k) {
                    out.push(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{find_crossings, invariants, winding_number, BoundaryClass};

    fn w(s: &str) -> CurveWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["A-3", "A+1", "B+7,1", "B-1,1", "C+0", "C-12"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert_eq!(w("A\u{2212}2"), w("A-2"));
        for bad in [
            "", "D+1", "A*1", "A+0", "B+0,1", "B+3", "B+3,2", "C+", "C+-1", "C+x",
        ] {
            assert!(bad.parse::<CurveWord>().is_err(), "{bad}");
        }
    }

    #[test]
    fn multiset_json_is_a_string_array() {
        let m = WordMultiset::new(vec![w("C+0"), w("B+3,1")]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"["B+3,1","C+0"]"#);
        let back: WordMultiset = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<WordMultiset>(r#"["A+0"]"#).is_err());
    }

    #[test]
    fn table_rows() {
        assert_eq!(
            predicted_invariants(w("B+3,1")).as_tuple(),
            (-1, 1, 0, 1, 3)
        );
        assert_eq!(predicted_invariants(w("C+0")).as_tuple(), (-1, 0, 1, 0, 0));
        assert_eq!(predicted_invariants(w("A-1")).as_tuple(), (0, 0, 1, 1, 0));
    }

    #[test]
    fn totals() {
        for g in 1..=6 {
            let m = WordMultiset::new(vec![CurveWord::b(Sign::Plus, 2 * g + 1)]);
            assert_eq!(crossing_total(&m), 2 * g + 2);
        }
        let m = WordMultiset::new(vec![w("B+4,1"), w("C+1"), w("C+3"), w("C+2")]);
        assert_eq!(crossing_total(&m), 11);
        assert_eq!(crossing_total(&WordMultiset::default()), 0);
    }

    #[test]
    fn sharp_boundary_examples() {
        assert_eq!(
            sharp_boundary(1, 1).unwrap(),
            WordMultiset::new(vec![w("B+3,1")])
        );
        let two = sharp_boundary(1, 2).unwrap();
        assert_eq!(two, WordMultiset::new(vec![w("B+3,1"), w("C+0")]));
        assert_eq!(crossing_total(&two), 4);
        let three = sharp_boundary(3, 3).unwrap();
        assert_eq!(
            three,
            WordMultiset::new(vec![w("B+7,1"), w("C+0"), w("C+0")])
        );
        assert_eq!(crossing_total(&three), 8);
        assert_eq!(
            sharp_boundary(0, 1),
            Err(FamilyError::InvalidGenus { genus: 0 })
        );
    }

    #[test]
    fn rewrite_examples() {
        let b10 = WordMultiset::new(vec![w("B+10,1")]);
        let step = apply_rewrite(
            &b10,
            &RewriteRule::R5 {
                k: 10,
                parts: vec![4, 1, 3, 2],
            },
        )
        .unwrap();
        assert_eq!(step.kind, RewriteKind::PositiveConcordance);
        assert_eq!(
            step.after,
            WordMultiset::new(vec![w("B+4,1"), w("C+1"), w("C+3"), w("C+2")])
        );

        let b5 = WordMultiset::new(vec![w("B+5,1")]);
        let id = apply_rewrite(
            &b5,
            &RewriteRule::R5 {
                k: 5,
                parts: vec![5],
            },
        )
        .unwrap();
        assert_eq!(id.after, b5);

        let a5 = WordMultiset::new(vec![w("A-5")]);
        let r1 = apply_rewrite(&a5, &RewriteRule::R1 { k: 5 }).unwrap();
        assert_eq!(r1.kind, RewriteKind::PositiveIsotopy);
        assert_eq!(r1.after, WordMultiset::new(vec![w("C-3")]));

        let c0 = WordMultiset::new(vec![w("C+0"), w("C+0")]);
        let r4 = apply_rewrite(&c0, &RewriteRule::R4).unwrap();
        assert_eq!(r4.after, WordMultiset::new(vec![w("B+3,1"), w("C+0")]));
    }

    #[test]
    fn rewrite_errors() {
        let m = WordMultiset::new(vec![w("B+4,1")]);
        assert!(matches!(
            apply_rewrite(&m, &RewriteRule::R1 { k: 3 }),
            Err(FamilyError::RuleNotApplicable { .. })
        ));
        assert!(matches!(
            apply_rewrite(
                &m,
                &RewriteRule::R5 {
                    k: 4,
                    parts: vec![2, 1]
                }
            ),
            Err(FamilyError::InvalidComposition { .. })
        ));
        assert!(matches!(
            apply_rewrite(
                &m,
                &RewriteRule::R5 {
                    k: 4,
                    parts: vec![4, 0]
                }
            ),
            Err(FamilyError::InvalidComposition { .. })
        ));
        assert!(matches!(
            apply_rewrite(
                &m,
                &RewriteRule::R5 {
                    k: 5,
                    parts: vec![5]
                }
            ),
            Err(FamilyError::RuleNotApplicable { .. })
        ));
    }

    #[test]
    fn isotopy_rules_preserve_winding() {
        for k in 2..=10 {
            let rules = [
                RewriteRule::R1 { k },
                RewriteRule::R2 { k },
                RewriteRule::R3 { k },
                RewriteRule::R4,
            ];
            for rule in rules {
                let (from, to) = rule.action().unwrap();
                assert_eq!(to.len(), 1);
                assert_eq!(
                    predicted_invariants(from).w,
                    predicted_invariants(to[0]).w,
                    "{rule}"
                );
            }
        }
    }

    fn check_realization(word: CurveWord) {
        let c = realize(word).unwrap();
        let (lo, hi) = c.bounding_box().unwrap();
        assert!(lo.x >= -1.0 - 1e-12 && lo.y >= -1.0 - 1e-12, "{word}");
        assert!(hi.x <= 1.0 + 1e-12 && hi.y <= 1.0 + 1e-12, "{word}");
        let r = invariants(&c).unwrap_or_else(|e| panic!("{word}: {e}"));
        let ci = r.per_component[0];
        let got = (
            ci.w,
            ci.i_plus() as u32,
            ci.i_minus() as u32,
            ci.n_minus,
            ci.n_plus,
        );
        assert_eq!(got, predicted_invariants(word).as_tuple(), "{word}");
    }

    #[test]
    fn realizations_match_rows() {
        for word in all_words(6) {
            check_realization(word);
        }
    }

    #[test]
    fn worked_realization_examples() {
        let c3 = realize(w("C-3")).unwrap();
        assert_eq!(winding_number(&c3.components[0]).unwrap(), 4);
        let a3 = realize(w("A+3")).unwrap();
        assert_eq!(winding_number(&a3.components[0]).unwrap(), -2);
        assert_eq!(
            curve::inner_outer(&realize_component(w("A-3")).unwrap()).unwrap(),
            BoundaryClass::Inner
        );
        let b3 = find_crossings(&realize(w("B+3,1")).unwrap()).unwrap();
        assert_eq!(b3.len(), 4);
        assert_eq!(b3.iter().filter(|x| x.sign > 0).count(), 3);
        let b7 = find_crossings(&realize(w("B+7,1")).unwrap()).unwrap();
        assert_eq!(b7.len(), 8);
        let c0 = realize(w("C+0")).unwrap();
        assert!(find_crossings(&c0).unwrap().is_empty());
        assert_eq!(winding_number(&c0.components[0]).unwrap(), -1);
    }

    #[test]
    fn row_layout_has_no_mixed_crossings() {
        let m = WordMultiset::new(vec![w("B+7,1"), w("C+0"), w("A-2")]);
        let c = realize_multiset(&m).unwrap();
        let r = invariants(&c).unwrap();
        assert_eq!(r.n_ij_plus + r.n_ij_minus, 0);
        assert_eq!(r.delta, crossing_total(&m));
    }
}
