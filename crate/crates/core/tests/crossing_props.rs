mod common;

use std::f64::consts::TAU;

use carousel_core::convex_kernel::{ConvexBody, Point, Similarity, Tolerance};
use carousel_core::crossing::{crosses, CrossVerdict};
use proptest::prelude::*;
use rand::Rng;

use common::*;

const TOL: Tolerance = Tolerance::ANALYTIC;

/// A body and an isometric copy placed so that the two overlap.
fn overlapping_pair(seed: u64) -> (ConvexBody, ConvexBody) {
    let mut r = rng(seed);
    let k = random_body(&mut r);
    let c = k.center();
    let phi =
        Similarity::translation(point_in(&mut r, 0.5)).compose(&Similarity::rotation_about(c, r.gen_range(0.0..TAU)));
    let k2 = k.apply(&phi);
    (k, k2)
}

fn isometry(r: &mut impl Rng) -> Similarity {
    let m = Similarity::translation(point_in(r, 5.0)).compose(&Similarity::rotation(r.gen_range(0.0..TAU)));
    if r.gen_bool(0.5) {
        m.compose(&Similarity::reflection_across(Point::ORIGIN, r.gen_range(0.0..TAU)))
    } else {
        m
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn crossing_is_symmetric(seed in any::<u64>()) {
        let (k, k2) = overlapping_pair(seed);
        let ab = crosses(&k, &k2, &TOL);
        let ba = crosses(&k2, &k, &TOL);
        prop_assert_eq!(ab.witness().is_some(), ba.witness().is_some());
        if let (Some(x), Some(y)) = (ab.witness(), ba.witness()) {
            // Congruent patterns can tie, so only the score and validity are compared.
            prop_assert!((x.margin - y.margin).abs() <= 1e-9);
            prop_assert!(x.validate(&k, &k2, TOL.eps_geom).is_some());
            prop_assert!(y.validate(&k2, &k, TOL.eps_geom).is_some());
            let mut flipped = *x;
            flipped.role = x.role.swapped();
            prop_assert!(flipped.validate(&k2, &k, TOL.eps_geom).is_some());
        }
    }

    #[test]
    fn crossing_is_rigid_invariant(seed in any::<u64>()) {
        let (k, k2) = overlapping_pair(seed);
        let phi = isometry(&mut rng(seed ^ 77));
        let (a, b) = (k.apply(&phi), k2.apply(&phi));
        let before = crosses(&k, &k2, &TOL);
        let after = crosses(&a, &b, &TOL);
        prop_assert_eq!(before.witness().is_some(), after.witness().is_some());
        if let Some(w) = before.witness() {
            let moved = w.transformed(&phi);
            prop_assert!(moved.validate(&a, &b, TOL.eps_geom).is_some());
        }
    }

    #[test]
    fn witnesses_validate(seed in any::<u64>()) {
        let (k, k2) = overlapping_pair(seed);
        if let CrossVerdict::Witness(w) = crosses(&k, &k2, &TOL) {
            let m = w.validate(&k, &k2, TOL.eps_geom);
            prop_assert!(m.is_some_and(|m| m > TOL.eps_geom));
            for t in [w.t1, w.t2] {
                let nu = t.outward_normal().radians();
                prop_assert!((k.support(nu) - t.offset()).abs() <= 1e-8);
                prop_assert!((k2.support(nu) - t.offset()).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn congruent_disks_never_cross(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rad = r.gen_range(0.1..5.0);
        let a = ConvexBody::disk(point_in(&mut r, 5.0), rad);
        let b = ConvexBody::disk(point_in(&mut r, 5.0), rad);
        prop_assert!(crosses(&a, &b, &TOL).witness().is_none());
    }
}
