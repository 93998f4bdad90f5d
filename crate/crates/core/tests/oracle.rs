//! Cross-module oracles: the reduction engine against the subset-sum
//! reference on exhaustive and hand-frozen inputs.

mod common;

use common::{build, connected_multigraph_edge_lists};
use relroots::multigraph::{FamilySpec, Multigraph, TerminalPair};
use relroots::polynomial::{isolate_real_roots, Poly};
use relroots::reliability::{compose_gadget, lift_roots_disk1, trel, trel_brute_force};
use relroots::{C64, Q};

fn g(vs: &[&str], es: &[(&str, &str)], s: &str, t: &str) -> (Multigraph, TerminalPair) {
    Multigraph::from_edge_list(vs, es, s, t).unwrap()
}

/// Engine == brute force == frozen rendering, so a regression in either
/// computation or printing is caught.
fn check_frozen(gg: &Multigraph, tp: &TerminalPair, frozen: &str) {
    let engine = trel(gg, tp).unwrap();
    let brute = trel_brute_force(gg, tp).unwrap();
    assert_eq!(engine, brute, "engine vs subset sum for {frozen}");
    assert_eq!(engine.to_string(), frozen);
}

#[test]
fn frozen_reliability_values() {
    let k4 = &["a", "b", "c", "d"][..];
    let k4_edges = &[
        ("a", "b"),
        ("a", "c"),
        ("a", "d"),
        ("b", "c"),
        ("b", "d"),
        ("c", "d"),
    ][..];
    let (gg, tp) = g(k4, k4_edges, "a", "b");
    check_frozen(&gg, &tp, "p + 2*p^2 - 7*p^4 + 7*p^5 - 2*p^6");

    let k23 = &["a", "b", "x", "y", "z"][..];
    let k23_edges = &[
        ("a", "x"),
        ("a", "y"),
        ("a", "z"),
        ("b", "x"),
        ("b", "y"),
        ("b", "z"),
    ][..];
    let (gg, tp) = g(k23, k23_edges, "a", "x");
    check_frozen(&gg, &tp, "p + 2*p^3 - 2*p^4 - p^5 + p^6");
    // the two degree-3 vertices see three disjoint 2-paths: 1 - (1 - p^2)^3
    let (gg, tp) = g(k23, k23_edges, "a", "b");
    check_frozen(&gg, &tp, "3*p^2 - 3*p^4 + p^6");
    let (gg, tp) = g(k23, k23_edges, "x", "y");
    check_frozen(&gg, &tp, "2*p^2 + p^4 - 4*p^5 + 2*p^6");

    let dia = &[
        ("a", "b"),
        ("a", "c"),
        ("a", "d"),
        ("b", "c"),
        ("b", "d"),
    ][..];
    let (gg, tp) = g(k4, dia, "a", "b");
    check_frozen(&gg, &tp, "p + 2*p^2 - 2*p^3 - p^4 + p^5");
    let (gg, tp) = g(k4, dia, "c", "d");
    check_frozen(&gg, &tp, "2*p^2 + 2*p^3 - 5*p^4 + 2*p^5");

    // parallel edges through the engine's parallel reduction
    let (gg, tp) = g(
        k4,
        &[
            ("a", "b"),
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ],
        "c",
        "d",
    );
    check_frozen(&gg, &tp, "p + 2*p^2 + 2*p^3 - 15*p^4 + 19*p^5 - 10*p^6 + 2*p^7");

    let (c5, tp5) = FamilySpec::Cycle { n: 5, k: 2 }.build().unwrap();
    check_frozen(&c5, &tp5, "p^2 + p^3 - p^5");
    let (th, thtp) = FamilySpec::Theta { l: 3, k: 2 }.build().unwrap();
    check_frozen(&th, &thtp, "2*p^3 - p^6");
}

#[test]
fn exhaustive_small_multigraphs_match_the_subset_sum() {
    let mut checked = 0usize;
    for n in 2..=4 {
        let cap = if n == 4 { 6 } else { 7 };
        for edges in connected_multigraph_edge_lists(n, cap) {
            let (gg, tp) = build(n, &edges, 0, 1);
            let engine = trel(&gg, &tp).unwrap();
            let brute = trel_brute_force(&gg, &tp).unwrap();
            assert_eq!(engine, brute, "n={n}, edges={edges:?}");
            checked += 1;
        }
    }
    assert!(checked > 500, "enumeration too small ({checked})");
}

#[test]
fn self_substitution_of_the_antipodal_square_is_frozen() {
    let (c4, c4tp) = FamilySpec::Cycle { n: 4, k: 2 }.build().unwrap();
    let composed = compose_gadget(&c4, &c4tp, &c4, &c4tp).unwrap();
    assert_eq!(
        composed.to_string(),
        "8*p^4 - 8*p^6 - 14*p^8 + 32*p^10 - 24*p^12 + 8*p^14 - p^16"
    );
    // and it agrees with the explicitly substituted graph
    let (sub, subtp) = c4.substitute_gadget(&c4tp, &c4, &c4tp).unwrap();
    assert_eq!(trel(&sub, &subtp).unwrap(), composed);
    // hand expansion of f(f) for f = 2p^2 - p^4
    let f = Poly::from_i64(&[0, 0, 2, 0, -1]);
    assert_eq!(f.compose(&f), composed);
}

#[test]
fn theta_8_2_has_a_real_root_below_minus_one() {
    let (th, tp) = FamilySpec::Theta { l: 8, k: 2 }.build().unwrap();
    let f = trel(&th, &tp).unwrap();
    assert_eq!(f, Poly::from_i64(&[0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, -1]));

    let roots = isolate_real_roots(&f);
    let neg: Vec<_> = roots.iter().filter(|r| r.approx() < 0.0).collect();
    assert_eq!(neg.len(), 1);
    let r = neg[0];
    let width = &r.hi - &r.lo;
    assert!(width < Q::new(1.into(), 1_000_000_000.into()), "width {width}");
    // -2^(1/8)
    let target = -(2f64.powf(0.125));
    assert!((r.approx() - target).abs() < 1e-9);
    assert!(r.approx() < -1.0);
}

#[test]
fn bundle_lift_roots_vanish_on_the_composed_polynomial() {
    // -sqrt(2) is a root of 2p^2 - p^4; its m-bundle lifts are roots of the
    // composition with 1 - (1-p)^m.
    let f = Poly::from_i64(&[0, 0, 2, 0, -1]);
    let r = C64::new(-std::f64::consts::SQRT_2, 0.0);
    for m in 2..=4u32 {
        let (bg, btp) = FamilySpec::Bundle { m }.build().unwrap();
        let bundle = trel(&bg, &btp).unwrap();
        let composed = f.compose(&bundle);
        let lifted = lift_roots_disk1(r, m);
        assert_eq!(lifted.len(), m as usize);
        for z in lifted {
            // defining identity, evaluated where it is well conditioned
            assert!(
                (bundle.eval_c(z) - r).norm() < 1e-12,
                "m={m}, z={z}, bundle value {}",
                bundle.eval_c(z)
            );
            assert!(
                composed.eval_c(z).norm() < 1e-8,
                "m={m}, z={z}, |value|={}",
                composed.eval_c(z).norm()
            );
        }
    }
}
