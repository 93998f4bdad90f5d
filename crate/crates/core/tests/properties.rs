//! Randomized invariants across modules: deletion-contraction as a
//! polynomial identity, gadget composition, probability behavior on [0,1],
//! coverage-form coherence, and agreement between the exact real-root
//! machinery and the floating-point root finder.

mod common;

use common::{build, random_connected_multigraph};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relroots::dynamics::inverse_orbit;
use relroots::multigraph::ContractedTerminals;
use relroots::polynomial::{count_real_roots_in, isolate_real_roots, FForm, Poly};
use relroots::reliability::{compose_gadget, trel};
use relroots::rootfinder::all_roots;
use relroots::stability::{hermite_biehler, real_root_census};
use relroots::{C64, Q};

#[test]
fn deletion_contraction_is_a_polynomial_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..120 {
        let (n, edges) = random_connected_multigraph(&mut rng, 6, 9);
        let (g, tp) = build(n, &edges, 0, 1);
        let f = trel(&g, &tp).unwrap();

        let eid = rng.gen_range(0..g.edge_count());
        let rd = trel(&g.delete_edge(eid).unwrap(), &tp).unwrap();
        let c = g.contract_edge(eid, &tp).unwrap();
        let rc = match c.terminals {
            ContractedTerminals::Merged(_) => Poly::one(),
            ContractedTerminals::Pair(ctp) => trel(&c.graph, &ctp).unwrap(),
        };

        let p = Poly::var();
        let q = &Poly::one() - &p;
        assert_eq!(
            f,
            &(&p * &rc) + &(&q * &rd),
            "n={n}, edges={edges:?}, eid={eid}"
        );
    }
}

#[test]
fn gadget_composition_matches_explicit_substitution() {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    for _ in 0..40 {
        let (hn, hedges) = random_connected_multigraph(&mut rng, 5, 6);
        let (gn, gedges) = random_connected_multigraph(&mut rng, 4, 5);
        let (host, htp) = build(hn, &hedges, 0, 1);
        let (gad, gtp) = build(gn, &gedges, 0, 1);
        for (a, atp, b, btp) in [(&host, &htp, &gad, &gtp), (&gad, &gtp, &host, &htp)] {
            let composed = compose_gadget(a, atp, b, btp).unwrap();
            let (sub, subtp) = a.substitute_gadget(atp, b, btp).unwrap();
            assert_eq!(trel(&sub, &subtp).unwrap(), composed);
        }
    }
}

#[test]
fn reliability_behaves_like_a_probability_on_the_unit_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..80 {
        let (n, edges) = random_connected_multigraph(&mut rng, 6, 8);
        let (g, tp) = build(n, &edges, 0, 1);
        let f = trel(&g, &tp).unwrap();
        assert!(f.coeff(0).is_zero(), "f(0) = 0");
        assert!(f.eval_q(&Q::one()).is_one(), "f(1) = 1 for {edges:?}");
        for num in 1..=9i64 {
            let x = Q::new(num.into(), 10.into());
            let v = f.eval_q(&x);
            assert!(
                v >= Q::zero() && v <= Q::one(),
                "f({num}/10) = {v} out of range for {edges:?}"
            );
        }
    }
}

#[test]
fn coverage_form_counts_are_integral_nonnegative_and_upward_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..80 {
        let (n, edges) = random_connected_multigraph(&mut rng, 6, 8);
        let (g, tp) = build(n, &edges, 0, 1);
        let f = trel(&g, &tp).unwrap();
        let ff = FForm::from_poly(&f, g.edge_count() as u32).unwrap();
        assert!(ff.is_integral_and_nonnegative(), "edges={edges:?}");
        assert!(ff.upward_closure_ok(), "edges={edges:?}");
        assert_eq!(ff.to_poly(), f);
    }
}

#[test]
fn at_most_one_fixed_point_strictly_inside_the_unit_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..80 {
        let (n, edges) = random_connected_multigraph(&mut rng, 6, 8);
        let (g, tp) = build(n, &edges, 0, 1);
        let f = trel(&g, &tp).unwrap();
        let diff = &f - &Poly::var();
        if diff.is_zero() {
            continue; // a single edge is the identity map
        }
        // count over (0, 1]: p = 1 is always fixed
        let fixed = count_real_roots_in(&diff, &Q::zero(), &Q::one());
        assert!(fixed >= 1, "edges={edges:?}");
        assert!(fixed - 1 <= 1, "edges={edges:?}, f={f}");
    }
}

#[test]
fn inverse_orbit_points_return_to_the_origin_under_iteration() {
    for f in [
        Poly::from_i64(&[0, 0, 2, 0, -1]),
        Poly::from_i64(&[0, 0, 0, 2, 0, 0, -1]),
    ] {
        let cloud = inverse_orbit(&f, 5, 4000, 1).unwrap();
        assert!(cloud.points.len() > 50);
        assert_eq!(cloud.points[0].z, C64::new(0.0, 0.0));
        assert_eq!(cloud.points[0].level, 0);
        for pt in &cloud.points {
            let mut z = pt.z;
            for _ in 0..pt.level {
                z = f.eval_c(z);
            }
            assert!(
                z.norm() < 1e-6,
                "start {}, level {}, end {z}",
                pt.z,
                pt.level
            );
        }
    }
}

/// The monic polynomial with the given simple real roots and conjugate
/// pairs `a +- bi`.
fn planted_poly(reals: &[i64], pairs: &[(i64, i64)]) -> Poly {
    let mut f = Poly::one();
    for &r in reals {
        f = &f * &Poly::from_i64(&[-r, 1]);
    }
    for &(a, b) in pairs {
        f = &f * &Poly::from_i64(&[a * a + b * b, -2 * a, 1]);
    }
    f
}

proptest! {
    #[test]
    fn planted_roots_are_recovered_with_conjugate_pairing(
        reals in proptest::collection::btree_set(-4i64..=4, 0..4),
        pairs in proptest::collection::btree_set((-3i64..=3, 1i64..=3), 0..3),
    ) {
        let reals: Vec<i64> = reals.into_iter().collect();
        let pairs: Vec<(i64, i64)> = pairs.into_iter().collect();
        let f = planted_poly(&reals, &pairs);
        prop_assume!(f.degree() >= 1);

        let rs = all_roots(&f).unwrap();
        prop_assert_eq!(rs.total_multiplicity() as usize, f.degree());
        prop_assert!(rs.reconstruction_error < 1e-8, "reconstruction {}", rs.reconstruction_error);

        let found = rs.all_roots();
        let locate = |w: C64| found.iter().any(|(z, _)| (z - w).norm() < 1e-7);
        for &r in &reals {
            prop_assert!(locate(C64::new(r as f64, 0.0)), "missing {r}");
        }
        for &(a, b) in &pairs {
            prop_assert!(locate(C64::new(a as f64, b as f64)), "missing {a}+{b}i");
            prop_assert!(locate(C64::new(a as f64, -(b as f64))), "missing conjugate {a}-{b}i");
        }

        // exact isolation sees exactly the planted real roots
        let isolated = isolate_real_roots(&f);
        prop_assert_eq!(isolated.len(), reals.len());
        for (r, want) in isolated.iter().zip(&reals) {
            prop_assert_eq!(r.multiplicity, 1);
            prop_assert!((r.approx() - *want as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn descartes_bounds_the_census_with_matching_parity(
        coeffs in proptest::collection::vec(-9i64..=9, 2..9),
    ) {
        let f = Poly::from_i64(&coeffs);
        prop_assume!(!f.is_zero());
        let census = real_root_census(&f).unwrap();
        let pos = census.positive_with_multiplicity as usize;
        let neg = census.negative_with_multiplicity as usize;
        prop_assert!(pos <= census.descartes_positive_bound);
        prop_assert_eq!(pos % 2, census.descartes_positive_bound % 2);
        prop_assert!(neg <= census.descartes_negative_bound);
        prop_assert_eq!(neg % 2, census.descartes_negative_bound % 2);
    }

    #[test]
    fn planted_left_halfplane_products_pass_hermite_biehler(
        a in 1i64..=5,
        u in 1i64..=4,
        v in 1i64..=4,
    ) {
        // (p + a)(p^2 + 2up + u^2 + v^2): roots -a and -u +- vi
        let stable = &Poly::from_i64(&[a, 1]) * &Poly::from_i64(&[u * u + v * v, 2 * u, 1]);
        let report = hermite_biehler(&stable).unwrap();
        prop_assert!(report.weakly_stable, "failure {:?}", report.failure);

        // planting a right-halfplane root must break the test
        let unstable = &stable * &Poly::from_i64(&[-a, 1]);
        let report = hermite_biehler(&unstable).unwrap();
        prop_assert!(!report.weakly_stable);
        prop_assert!(report.failure.is_some());
    }
}
