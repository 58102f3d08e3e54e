use foldatlas::curve::invariants;
use foldatlas::families::{crossing_total, sharp_boundary, CurveWord, WordMultiset};
use foldatlas::harness::admissible_combos;
use foldatlas::render::{render_svg, RenderSpec};
use foldatlas::splitting::{summarize, Side};
use foldatlas::witness::{
    build_witness, realize_witness, verify_certificate, AdmissibleCombo, Anatomy,
    WitnessCertificate,
};

fn word(s: &str) -> CurveWord {
    s.parse().unwrap()
}

#[test]
fn anatomy_identities_over_sweep() {
    for c in admissible_combos(12) {
        let cert = build_witness(c).unwrap();
        let (p, q) = (c.num_plus, c.num_minus);
        let m = p.min(q);
        let n = p.abs_diff(q);
        let (big, small) = if cert.mirrored {
            (
                &cert.splitting.minus_components,
                &cert.splitting.plus_components,
            )
        } else {
            (
                &cert.splitting.plus_components,
                &cert.splitting.minus_components,
            )
        };
        assert_eq!(big.len() as u32, (m - 1) + 1 + n);
        assert_eq!(small.len() as u32, (m - 1) + 1);
        assert_eq!(2 * (m - 1) + (c.g + 2 - (p + q)) + n, c.g);
        assert_eq!(cert.anatomy.len() as u32, c.sigma_count);
        assert_eq!(cert.splitting.sigma_circles.len() as u32, c.sigma_count);

        let s = summarize(&cert.splitting).unwrap();
        assert_eq!(s.genus_s, c.g);
        assert_eq!((s.chi_plus, s.chi_minus), (1 - c.g as i64, 1 - c.g as i64));

        let delta = cert.delta_sigma as i64;
        assert_eq!(delta, cert.bound.tree_form);
        assert_eq!(delta, cert.bound.max_form);
        assert_eq!(
            delta,
            4 * p.max(q) as i64 + c.g as i64 - c.sigma_count as i64 - 1
        );
        assert_eq!(cert.bound.per_side_form, Some(delta));
        assert!(verify_certificate(&cert).passed());
    }
}

#[test]
fn degenerate_spine_has_no_spine_folds() {
    for c in admissible_combos(9)
        .into_iter()
        .filter(|c| c.num_plus.min(c.num_minus) == 1)
    {
        let cert = build_witness(c).unwrap();
        assert!(!cert.anatomy.iter().any(|a| matches!(
            a,
            Anatomy::SpineInternal | Anatomy::SpineJoin | Anatomy::SpineSkullJoin
        )));
    }
}

/// Words on each component agree with the sharp boundary of its genus and
/// slot count, once tooth folds (`B+3,1`) are read back as `C+0`.
fn check_bookkeeping(cert: &WitnessCertificate) {
    let (kp, km) = cert.splitting.slot_counts();
    let sides = [
        (Side::Plus, &cert.splitting.plus_components, kp),
        (Side::Minus, &cert.splitting.minus_components, km),
    ];
    for (side, comps, slots) in sides {
        for (comp, k) in comps.iter().zip(slots) {
            let words = cert.incident_words(side, &comp.label);
            assert_eq!(words.len() as u32, k);
            let teeth: Vec<_> = cert
                .splitting
                .sigma_circles
                .iter()
                .zip(&cert.anatomy)
                .filter(|(c, &a)| {
                    a == Anatomy::ToothAttach
                        && match side {
                            Side::Plus => c.plus == comp.label,
                            Side::Minus => c.minus == comp.label,
                        }
                })
                .collect();
            let expected = sharp_boundary(comp.genus, k).unwrap();
            let tooth_count = teeth.len();
            // The tooth's own side sees exactly its sharp boundary.
            let is_tooth = comp.label.starts_with('T');
            if is_tooth || tooth_count == 0 {
                assert_eq!(words, expected, "{side:?} {}", comp.label);
            } else {
                let mut replaced: Vec<CurveWord> = expected.words().to_vec();
                for _ in 0..tooth_count {
                    let pos = replaced.iter().position(|&w| w == word("C+0")).unwrap();
                    replaced[pos] = word("B+3,1");
                }
                assert_eq!(
                    words,
                    WordMultiset::new(replaced),
                    "{side:?} {}",
                    comp.label
                );
            }
        }
    }
}

#[test]
fn boundary_word_bookkeeping() {
    for c in admissible_combos(10) {
        check_bookkeeping(&build_witness(c).unwrap());
    }
}

#[test]
fn geometric_crossings_match_symbolic_total() {
    for c in admissible_combos(6) {
        let cert = build_witness(c).unwrap();
        let curve = realize_witness(&cert).unwrap();
        let r = invariants(&curve).unwrap();
        assert_eq!(r.delta, cert.delta_sigma);
        assert_eq!(r.n_ij_plus + r.n_ij_minus, 0);
        assert_eq!(curve.components.len() as u32, c.sigma_count);
    }
}

#[test]
fn worked_example_realization() {
    let cert = build_witness(AdmissibleCombo::new(14, 9, 5, 3).unwrap()).unwrap();
    let curve = realize_witness(&cert).unwrap();
    assert_eq!(curve.components.len(), 9);
    let r = invariants(&curve).unwrap();
    assert_eq!(r.delta, 24);
    assert_eq!(crossing_total(&cert.words()), 24);
    let svg = render_svg(&curve, &RenderSpec::default()).unwrap();
    assert_eq!(svg.matches("<path").count(), 9);
    let dots = svg.matches("class=\"crossing-pos\"").count()
        + svg.matches("class=\"crossing-neg\"").count();
    assert_eq!(dots, 24);
    // Component bounding boxes are pairwise disjoint.
    let boxes: Vec<_> = curve
        .components
        .iter()
        .map(|c| c.bounding_box().unwrap())
        .collect();
    for (i, a) in boxes.iter().enumerate() {
        for b in &boxes[i + 1..] {
            assert!(a.1.x < b.0.x || b.1.x < a.0.x);
        }
    }
}

#[test]
fn certificate_json_round_trip() {
    let cert = build_witness(AdmissibleCombo::new(8, 5, 2, 3).unwrap()).unwrap();
    assert!(cert.mirrored);
    let text = serde_json::to_string(&cert).unwrap();
    let back: WitnessCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["splitting"]["plus"].is_array());
    assert_eq!(v["assignment"][0], "B+3,1");
    assert!(v["bound"]["tree_form"].is_i64());
}
