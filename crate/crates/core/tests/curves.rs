use foldatlas::curve::{
    choose_basepoint, classify_arcs, find_crossings, inner_outer, invariants, lowest_point_check,
    winding_number, BoundaryClass, CurveComponent, CurveError, GenericityFailure, PlanarCurve,
    Point,
};
use foldatlas::families::{
    all_words, predicted_invariants, realize, realize_component, CurveWord, Family, Sign,
};
use foldatlas::harness::{brute_force_crossings, same_crossings};
use proptest::prelude::*;
use std::f64::consts::TAU;

fn word(s: &str) -> CurveWord {
    s.parse().unwrap()
}

/// Turning number by summing the angle between consecutive edge headings,
/// each heading unwrapped against the previous one.
fn turning_oracle(c: &CurveComponent) -> f64 {
    let n = c.vertices.len();
    let heading = |i: usize| {
        let d = c.vertices[(i + 1) % n] - c.vertices[i];
        d.y.atan2(d.x)
    };
    let mut total = 0.0;
    for i in 0..n {
        let mut delta = heading((i + 1) % n) - heading(i);
        while delta > std::f64::consts::PI {
            delta -= TAU;
        }
        while delta <= -std::f64::consts::PI {
            delta += TAU;
        }
        total += delta;
    }
    total / TAU
}

#[test]
fn every_word_up_to_fourteen_reproduces_its_row() {
    for w in all_words(14) {
        let c = realize(w).unwrap();
        let r = invariants(&c).unwrap_or_else(|e| panic!("{w}: {e}"));
        let ci = r.per_component[0];
        let p = predicted_invariants(w);
        assert_eq!(
            (
                ci.w,
                ci.i_plus() as u32,
                ci.i_minus() as u32,
                ci.n_minus,
                ci.n_plus
            ),
            p.as_tuple(),
            "{w}"
        );
        assert!(
            (turning_oracle(&c.components[0]) - p.w as f64).abs() < 1e-9,
            "{w}"
        );
    }
}

#[test]
fn classes_and_basepoints_of_named_curves() {
    let a3 = realize_component(word("A-3")).unwrap();
    assert_eq!(inner_outer(&a3).unwrap(), BoundaryClass::Inner);
    let arcs = classify_arcs(&a3).unwrap();
    let bp_arc = arcs
        .iter()
        .find(|a| a.vertices.contains(&a3.basepoint))
        .unwrap();
    assert_eq!(bp_arc.class, BoundaryClass::Inner);

    let c2 = realize_component(word("C-2")).unwrap();
    let arcs = classify_arcs(&c2).unwrap();
    let bp_arc = arcs
        .iter()
        .find(|a| a.vertices.contains(&c2.basepoint))
        .unwrap();
    assert_eq!(bp_arc.class, BoundaryClass::Outer);

    let b3 = realize_component(word("B+3,1")).unwrap();
    assert!(classify_arcs(&b3)
        .unwrap()
        .iter()
        .any(|a| a.class == BoundaryClass::Outer));
}

#[test]
fn reversal_negates_winding_and_keeps_crossing_count() {
    for w in all_words(6) {
        let c = realize_component(w).unwrap();
        let r = c.reversed();
        assert_eq!(
            winding_number(&r).unwrap(),
            -winding_number(&c).unwrap(),
            "{w}"
        );
        let n = |c: &CurveComponent| {
            find_crossings(&PlanarCurve::single(c.clone()))
                .unwrap()
                .len()
        };
        assert_eq!(n(&r), n(&c));
    }
}

#[test]
fn basepoint_on_wrong_arc_is_rejected() {
    // Vertices of the inner loop are not on the boundary of the unbounded region.
    let mut c = realize_component(word("B+4,1")).unwrap();
    let top = (0..c.len())
        .max_by(|&a, &b| c.vertices[a].y.total_cmp(&c.vertices[b].y))
        .unwrap();
    c.basepoint = top;
    assert!(invariants(&PlanarCurve::single(c.clone())).is_ok());
    let on_boundary: Vec<usize> = classify_arcs(&c)
        .unwrap()
        .into_iter()
        .flat_map(|a| a.vertices)
        .collect();
    let inner_vertex = (0..c.len())
        .find(|v| !on_boundary.contains(v))
        .expect("the inner loop is off the boundary");
    c.basepoint = inner_vertex;
    assert!(matches!(
        invariants(&PlanarCurve::single(c)),
        Err(CurveError::InvalidBasepoint { .. })
    ));
}

#[test]
fn genericity_failures_surface_through_invariants() {
    let sq = |dx: f64| {
        CurveComponent::new(
            vec![
                Point::new(dx, 0.0),
                Point::new(1.0 + dx, 0.0),
                Point::new(1.0 + dx, 1.0),
                Point::new(dx, 1.0),
            ],
            0,
        )
    };
    let twice = PlanarCurve::new(vec![sq(0.0), sq(0.0)]);
    assert!(matches!(
        invariants(&twice),
        Err(CurveError::NonGenericCurve {
            kind: GenericityFailure::NearCoincidence,
            ..
        })
    ));
}

#[test]
fn invariants_are_a_pure_function() {
    let c = realize(word("A+5")).unwrap();
    let a = invariants(&c).unwrap();
    let b = invariants(&c.clone()).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn curve_json_round_trip() {
    let c = realize(word("C-3")).unwrap();
    let text = serde_json::to_string(&c).unwrap();
    assert!(text.starts_with(r#"{"components":[{"vertices":[["#));
    let back: PlanarCurve = serde_json::from_str(&text).unwrap();
    assert_eq!(back, c);
}

fn star(n: usize, radii: &[f64], wobble: i32, amp: f64) -> CurveComponent {
    let vertices = (0..n)
        .map(|j| {
            let t = TAU * j as f64 / n as f64;
            let r = radii[j % radii.len()];
            let m = wobble as f64 * t;
            Point::new(r * t.cos() + amp * m.cos(), r * t.sin() + amp * m.sin())
        })
        .collect();
    CurveComponent::new(vertices, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_text_round_trips(fam in 0..3usize, plus in any::<bool>(), k in 0u32..50) {
        let family = [Family::A, Family::B, Family::C][fam];
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        if let Ok(w) = CurveWord::new(family, sign, k) {
            prop_assert_eq!(w.to_string().parse::<CurveWord>().unwrap(), w);
            let json = serde_json::to_string(&w).unwrap();
            prop_assert_eq!(serde_json::from_str::<CurveWord>(&json).unwrap(), w);
        }
    }

    #[test]
    fn random_stars_satisfy_whitney_and_oracles(
        n in 8usize..40,
        radii in prop::collection::vec(0.7f64..1.3, 1..6),
        wobble in prop::sample::select(vec![-4, -3, -2, -1, 2, 3, 4]),
        amp in 0.0f64..1.2,
        reverse in any::<bool>(),
    ) {
        let mut c = star(n, &radii, wobble, amp);
        if reverse {
            c = c.reversed();
        }
        let Ok(bp) = choose_basepoint(&c) else { return Ok(()); };
        c.basepoint = bp;
        let curve = PlanarCurve::single(c.clone());
        let swept = find_crossings(&curve).unwrap();
        prop_assert!(same_crossings(&swept, &brute_force_crossings(&curve)));

        let r = invariants(&curve).unwrap();
        let ci = r.per_component[0];
        let w = turning_oracle(&c).round() as i64;
        prop_assert_eq!(ci.w, w);
        prop_assert_eq!(w, ci.i_plus() - ci.i_minus() + ci.n_minus as i64 - ci.n_plus as i64);
        prop_assert!(lowest_point_check(&c).unwrap().agrees());
    }
}
