//! Splittings of a closed surface into a positive and a negative part along
//! the fold circles, and the bipartite multigraph they induce.
//!
//! A component's boundary count is never stored: it is the number of fold
//! circles that touch it.

use petgraph::algo::{connected_components, min_spanning_tree};
use petgraph::data::Element;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceComponent {
    pub label: String,
    pub genus: u32,
}

impl SurfaceComponent {
    pub fn new(label: impl Into<String>, genus: u32) -> Self {
        Self {
            label: label.into(),
            genus,
        }
    }
}

/// Inner/outer class and signed self-crossing counts of the image of a fold
/// circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeWeight {
    pub i_plus: u32,
    pub i_minus: u32,
    pub n_plus: u32,
    pub n_minus: u32,
}

impl EdgeWeight {
    pub fn is_valid(&self) -> bool {
        self.i_plus + self.i_minus == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaCircle {
    pub plus: String,
    pub minus: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<EdgeWeight>,
}

impl SigmaCircle {
    pub fn new(plus: impl Into<String>, minus: impl Into<String>) -> Self {
        Self {
            plus: plus.into(),
            minus: minus.into(),
            weight: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SplitSurface {
    #[serde(rename = "plus")]
    pub plus_components: Vec<SurfaceComponent>,
    #[serde(rename = "minus")]
    pub minus_components: Vec<SurfaceComponent>,
    #[serde(rename = "sigma")]
    pub sigma_circles: Vec<SigmaCircle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("malformed splitting: {reason}")]
    MalformedSplitting { reason: String },
    #[error("unbalanced splitting: chi(S+) = {chi_plus}, chi(S-) = {chi_minus}")]
    UnbalancedSplitting { chi_plus: i64, chi_minus: i64 },
}

fn malformed(reason: impl Into<String>) -> SplitError {
    SplitError::MalformedSplitting {
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

fn label_index(comps: &[SurfaceComponent]) -> HashMap<&str, usize> {
    comps
        .iter()
        .enumerate()
        .map(|(i, c)| (c.label.as_str(), i))
        .collect()
}

impl SplitSurface {
    /// Number of fold circles touching each component, in component order.
    pub fn slot_counts(&self) -> (Vec<u32>, Vec<u32>) {
        let (pi, mi) = (
            label_index(&self.plus_components),
            label_index(&self.minus_components),
        );
        let mut kp = vec![0; self.plus_components.len()];
        let mut km = vec![0; self.minus_components.len()];
        for s in &self.sigma_circles {
            if let Some(&i) = pi.get(s.plus.as_str()) {
                kp[i] += 1;
            }
            if let Some(&j) = mi.get(s.minus.as_str()) {
                km[j] += 1;
            }
        }
        (kp, km)
    }

    /// Checks the structural invariants: non-empty sides, unique labels,
    /// resolvable circle references, non-planar components, connectivity.
    pub fn validate(&self) -> Result<(), SplitError> {
        if self.plus_components.is_empty() || self.minus_components.is_empty() {
            return Err(malformed("both sides need at least one component"));
        }
        for (side, comps) in [
            ("plus", &self.plus_components),
            ("minus", &self.minus_components),
        ] {
            let mut seen = HashSet::new();
            for c in comps {
                if !seen.insert(c.label.as_str()) {
                    return Err(malformed(format!("duplicate {side} label {:?}", c.label)));
                }
                if c.genus == 0 {
                    return Err(malformed(format!(
                        "{side} component {:?} is planar",
                        c.label
                    )));
                }
            }
        }
        for (n, s) in self.sigma_circles.iter().enumerate() {
            if !self.plus_components.iter().any(|c| c.label == s.plus) {
                return Err(malformed(format!(
                    "circle {n} references unknown plus component {:?}",
                    s.plus
                )));
            }
            if !self.minus_components.iter().any(|c| c.label == s.minus) {
                return Err(malformed(format!(
                    "circle {n} references unknown minus component {:?}",
                    s.minus
                )));
            }
            if let Some(w) = s.weight {
                if !w.is_valid() {
                    return Err(malformed(format!(
                        "circle {n} has weight with i+ + i- != 1"
                    )));
                }
            }
        }
        let g = self.raw_graph();
        if connected_components(&g.graph) != 1 {
            return Err(malformed("the splitting graph is disconnected"));
        }
        Ok(())
    }

    fn raw_graph(&self) -> SplitGraph {
        let (kp, km) = self.slot_counts();
        let mut graph = UnGraph::new_undirected();
        let mut nodes: HashMap<(Side, &str), NodeIndex> = HashMap::new();
        for (side, comps, slots) in [
            (Side::Plus, &self.plus_components, &kp),
            (Side::Minus, &self.minus_components, &km),
        ] {
            for (c, &k) in comps.iter().zip(slots) {
                let chi = 2 - 2 * c.genus as i64 - k as i64;
                let idx = graph.add_node(GraphVertex {
                    side,
                    label: c.label.clone(),
                    genus: c.genus,
                    slots: k,
                    chi,
                });
                nodes.insert((side, c.label.as_str()), idx);
            }
        }
        let mut bundles: BTreeMap<(NodeIndex, NodeIndex), Vec<Option<EdgeWeight>>> =
            BTreeMap::new();
        for s in &self.sigma_circles {
            let (Some(&a), Some(&b)) = (
                nodes.get(&(Side::Plus, s.plus.as_str())),
                nodes.get(&(Side::Minus, s.minus.as_str())),
            ) else {
                continue;
            };
            bundles.entry((a, b)).or_default().push(s.weight);
        }
        for ((a, b), weights) in bundles {
            graph.add_edge(
                a,
                b,
                GraphEdge {
                    multiplicity: weights.len() as u32,
                    weights,
                },
            );
        }
        SplitGraph { graph }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub side: Side,
    pub label: String,
    pub genus: u32,
    pub slots: u32,
    pub chi: i64,
}

/// All fold circles between one pair of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub multiplicity: u32,
    pub weights: Vec<Option<EdgeWeight>>,
}

/// The bipartite multigraph of a splitting. Parallel circles are bundled
/// into a single edge carrying their multiplicity.
#[derive(Debug, Clone)]
pub struct SplitGraph {
    pub graph: UnGraph<GraphVertex, GraphEdge>,
}

impl SplitGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Number of distinct adjacent component pairs.
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn multiplicity(&self, plus: &str, minus: &str) -> u32 {
        let find = |side: Side, label: &str| {
            self.graph
                .node_indices()
                .find(|&i| self.graph[i].side == side && self.graph[i].label == label)
        };
        match (find(Side::Plus, plus), find(Side::Minus, minus)) {
            (Some(a), Some(b)) => self
                .graph
                .find_edge(a, b)
                .map_or(0, |e| self.graph[e].multiplicity),
            _ => 0,
        }
    }

    /// Edge count of a spanning tree, found by building one.
    pub fn spanning_tree_edges(&self) -> usize {
        let unit = self.graph.map(|_, _| (), |_, _| 1u32);
        min_spanning_tree(&unit)
            .filter(|e| matches!(e, Element::Edge { .. }))
            .count()
    }

    pub fn is_connected(&self) -> bool {
        connected_components(&self.graph) == 1
    }

    /// Graphviz rendering. Vertices carry genus, slot count and Euler
    /// characteristic; edges carry their multiplicity.
    pub fn to_dot(&self) -> String {
        let id = |v: &GraphVertex| {
            let p = match v.side {
                Side::Plus => "plus",
                Side::Minus => "minus",
            };
            format!("{p}:{}", v.label)
        };
        let mut out = String::from("graph splitting {\n");
        for i in self.graph.node_indices() {
            let v = &self.graph[i];
            let shape = match v.side {
                Side::Plus => "box",
                Side::Minus => "ellipse",
            };
            let _ = writeln!(
                out,
                "  {:?} [label={:?}, shape={shape}, genus={}, slots={}, chi={}];",
                id(v),
                format!("{} (g={}, chi={})", v.label, v.genus, v.chi),
                v.genus,
                v.slots,
                v.chi
            );
        }
        for e in self.graph.edge_indices() {
            let (a, b) = self.graph.edge_endpoints(e).expect("edge exists");
            let m = self.graph[e].multiplicity;
            let _ = writeln!(
                out,
                "  {:?} -- {:?} [multiplicity={m}, label=\"{m}\"];",
                id(&self.graph[a]),
                id(&self.graph[b])
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn to_graph(s: &SplitSurface) -> Result<SplitGraph, SplitError> {
    s.validate()?;
    Ok(s.raw_graph())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitSummary {
    pub num_plus: u32,
    pub num_minus: u32,
    pub sigma_count: u32,
    pub n_diff: u32,
    pub rho: u32,
    pub chi_plus: i64,
    pub chi_minus: i64,
    #[serde(rename = "chi_S")]
    pub chi_s: i64,
    #[serde(rename = "genus_S")]
    pub genus_s: u32,
}

impl SplitSummary {
    /// Summary of a balanced splitting known only through its counts: both
    /// sides then have Euler characteristic `1 - g`.
    pub fn from_combo(g: u32, sigma_count: u32, num_plus: u32, num_minus: u32) -> Self {
        let chi_side = 1 - g as i64;
        SplitSummary {
            num_plus,
            num_minus,
            sigma_count,
            n_diff: num_plus.abs_diff(num_minus),
            rho: (num_plus + num_minus).saturating_sub(1),
            chi_plus: chi_side,
            chi_minus: chi_side,
            chi_s: 2 * chi_side,
            genus_s: g,
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.chi_plus == self.chi_minus
    }
}

pub fn summarize(s: &SplitSurface) -> Result<SplitSummary, SplitError> {
    let graph = to_graph(s)?;
    let (kp, km) = s.slot_counts();
    let chi = |comps: &[SurfaceComponent], slots: &[u32]| -> i64 {
        comps
            .iter()
            .zip(slots)
            .map(|(c, &k)| 2 - 2 * c.genus as i64 - k as i64)
            .sum()
    };
    let chi_plus = chi(&s.plus_components, &kp);
    let chi_minus = chi(&s.minus_components, &km);
    let chi_s = chi_plus + chi_minus;
    if chi_s % 2 != 0 || chi_s > 2 {
        return Err(malformed(format!(
            "chi(S) = {chi_s} is not that of a closed orientable surface"
        )));
    }
    let num_plus = s.plus_components.len() as u32;
    let num_minus = s.minus_components.len() as u32;
    let rho = num_plus + num_minus - 1;
    debug_assert_eq!(graph.spanning_tree_edges(), rho as usize);
    Ok(SplitSummary {
        num_plus,
        num_minus,
        sigma_count: s.sigma_circles.len() as u32,
        n_diff: num_plus.abs_diff(num_minus),
        rho,
        chi_plus,
        chi_minus,
        chi_s,
        genus_s: ((2 - chi_s) / 2) as u32,
    })
}

/// Succeeds iff both sides have the same Euler characteristic. The
/// equivalent count form `#S+ - #S- = sum g+ - sum g-` is checked as well.
pub fn check_balance(s: &SplitSurface) -> Result<(), SplitError> {
    let sum = summarize(s)?;
    let gp: i64 = s.plus_components.iter().map(|c| c.genus as i64).sum();
    let gm: i64 = s.minus_components.iter().map(|c| c.genus as i64).sum();
    let counts_ok = sum.num_plus as i64 - sum.num_minus as i64 == gp - gm;
    if !sum.is_balanced() || !counts_ok {
        return Err(SplitError::UnbalancedSplitting {
            chi_plus: sum.chi_plus,
            chi_minus: sum.chi_minus,
        });
    }
    Ok(())
}

/// Per-condition outcome of the admissibility test for `(g, |Σ|, #S+, #S-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityVerdict {
    /// `g >= 2`
    pub genus_at_least_two: bool,
    /// `g > |Σ| >= 1`
    pub sigma_below_genus: bool,
    /// `|Σ| >= #S+ + #S- - 1`
    pub sigma_spans_graph: bool,
    /// `|Σ| - g` is odd
    pub parity: bool,
    /// `#S+ >= 1` and `#S- >= 1`
    pub sides_nonempty: bool,
}

impl AdmissibilityVerdict {
    pub fn admissible(&self) -> bool {
        self.genus_at_least_two
            && self.sigma_below_genus
            && self.sigma_spans_graph
            && self.parity
            && self.sides_nonempty
    }

    /// Names of the failing conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.genus_at_least_two, "genus_at_least_two"),
            (self.sigma_below_genus, "sigma_below_genus"),
            (self.sigma_spans_graph, "sigma_spans_graph"),
            (self.parity, "parity"),
            (self.sides_nonempty, "sides_nonempty"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, n)| n)
        .collect()
    }
}

pub fn check_admissible(
    g: u32,
    sigma_count: u32,
    num_plus: u32,
    num_minus: u32,
) -> AdmissibilityVerdict {
    let (g, s, p, q) = (
        g as i64,
        sigma_count as i64,
        num_plus as i64,
        num_minus as i64,
    );
    AdmissibilityVerdict {
        genus_at_least_two: g >= 2,
        sigma_below_genus: g > s && s >= 1,
        sigma_spans_graph: s >= p + q - 1,
        parity: (s - g).rem_euclid(2) == 1,
        sides_nonempty: p >= 1 && q >= 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comps(side: &str, genera: &[u32]) -> Vec<SurfaceComponent> {
        genera
            .iter()
            .enumerate()
            .map(|(i, &g)| SurfaceComponent::new(format!("{side}{}", i + 1), g))
            .collect()
    }

    fn four_component_example() -> SplitSurface {
        let mut sigma = vec![SigmaCircle::new("P1", "M1")];
        sigma.extend((0..3).map(|_| SigmaCircle::new("P2", "M1")));
        sigma.push(SigmaCircle::new("P2", "M2"));
        SplitSurface {
            plus_components: comps("P", &[1, 1]),
            minus_components: comps("M", &[1, 2]),
            sigma_circles: sigma,
        }
    }

    fn pair(gp: u32, gm: u32) -> SplitSurface {
        SplitSurface {
            plus_components: comps("P", &[gp]),
            minus_components: comps("M", &[gm]),
            sigma_circles: vec![SigmaCircle::new("P1", "M1")],
        }
    }

    #[test]
    fn four_component_example_graph() {
        let s = four_component_example();
        let (kp, km) = s.slot_counts();
        assert_eq!((kp, km), (vec![1, 4], vec![4, 1]));
        let sum = summarize(&s).unwrap();
        assert_eq!(sum.rho, 3);
        let g = to_graph(&s).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.multiplicity("P2", "M1"), 3);
        assert_eq!(g.spanning_tree_edges(), 3);
        // As drawn, the two sides do not balance.
        assert_eq!((sum.chi_plus, sum.chi_minus), (-5, -7));
        assert!(matches!(
            check_balance(&s),
            Err(SplitError::UnbalancedSplitting { .. })
        ));
    }

    #[test]
    fn minimal_pair() {
        let s = pair(1, 1);
        let sum = summarize(&s).unwrap();
        assert_eq!(
            (sum.chi_plus, sum.chi_minus, sum.chi_s, sum.genus_s),
            (-1, -1, -2, 2)
        );
        assert_eq!(sum.rho, 1);
        check_balance(&s).unwrap();
        let g = to_graph(&s).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn unbalanced_pair() {
        assert_eq!(
            check_balance(&pair(1, 2)),
            Err(SplitError::UnbalancedSplitting {
                chi_plus: -1,
                chi_minus: -3
            })
        );
    }

    #[test]
    fn malformed_inputs() {
        let mut dangling = pair(1, 1);
        dangling.sigma_circles.push(SigmaCircle::new("P9", "M1"));
        assert!(matches!(
            summarize(&dangling),
            Err(SplitError::MalformedSplitting { .. })
        ));

        let mut planar = pair(1, 1);
        planar.plus_components[0].genus = 0;
        assert!(matches!(
            summarize(&planar),
            Err(SplitError::MalformedSplitting { .. })
        ));

        let mut split = pair(1, 1);
        split.plus_components.push(SurfaceComponent::new("P2", 1));
        assert!(matches!(
            summarize(&split),
            Err(SplitError::MalformedSplitting { .. })
        ));

        let empty = SplitSurface::default();
        assert!(matches!(
            summarize(&empty),
            Err(SplitError::MalformedSplitting { .. })
        ));

        let mut dup = pair(1, 1);
        dup.minus_components.push(SurfaceComponent::new("M1", 1));
        assert!(matches!(
            summarize(&dup),
            Err(SplitError::MalformedSplitting { .. })
        ));
    }

    #[test]
    fn admissibility_examples() {
        assert!(check_admissible(14, 9, 5, 3).admissible());
        assert!(check_admissible(2, 1, 1, 1).admissible());
        let v = check_admissible(3, 1, 1, 1);
        assert!(!v.admissible());
        assert_eq!(v.failures(), vec!["parity"]);
    }

    #[test]
    fn json_shape() {
        let mut s = pair(1, 1);
        s.sigma_circles[0].weight = Some(EdgeWeight {
            i_plus: 1,
            i_minus: 0,
            n_plus: 3,
            n_minus: 1,
        });
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["plus"][0]["label"], "P1");
        assert_eq!(v["sigma"][0]["minus"], "M1");
        assert_eq!(v["sigma"][0]["weight"]["n_plus"], 3);
        let back: SplitSurface = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        let bare: SplitSurface =
            serde_json::from_str(r#"{"plus":[{"label":"a","genus":1}],"minus":[{"label":"b","genus":1}],"sigma":[{"plus":"a","minus":"b"}]}"#)
                .unwrap();
        assert_eq!(bare.sigma_circles[0].weight, None);
    }

    #[test]
    fn dot_export() {
        let dot = to_graph(&four_component_example()).unwrap().to_dot();
        assert!(dot.starts_with("graph splitting {"));
        assert!(dot.contains("\"plus:P2\" -- \"minus:M1\" [multiplicity=3"));
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
