mod common;

use std::f64::consts::{PI, TAU};

use carousel_core::convex_kernel::{Angle, ConvexBody, DirectedLine, Point, Tolerance};
use carousel_core::tangency::{
    common_tangents, parallel_support_beyond_secant, pointed_supporting_line, semitangents, slide_turn, supporting_line,
};
use proptest::prelude::*;
use rand::Rng;

use common::*;

const TOL: Tolerance = Tolerance::ANALYTIC;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn supporting_line_has_body_on_left(seed in any::<u64>(), theta in 0.0f64..TAU) {
        let k = random_body(&mut rng(seed));
        let l = supporting_line(&k, theta);
        let nu = l.outward_normal().radians();
        prop_assert!((k.support(nu) - l.offset()).abs() <= 1e-9);
        for p in k.boundary_polyline(256) {
            prop_assert!(l.signed_distance(p) >= -1e-9);
        }
    }

    #[test]
    fn semitangents_at_smooth_points_coincide(seed in any::<u64>(), nu in 0.0f64..TAU) {
        let mut r = rng(seed);
        let c = point_in(&mut r, 3.0);
        let a = r.gen_range(0.3..3.0);
        let k = if r.gen_bool(0.5) {
            ConvexBody::disk(c, a)
        } else {
            ConvexBody::ellipse(c, a, a * r.gen_range(0.2..1.0), r.gen_range(0.0..TAU))
        };
        let p = k.face(nu).first;
        let s = semitangents(&k, p, &TOL).unwrap();
        prop_assert!(s.gap() <= 1e-6, "gap {}", s.gap());
    }

    #[test]
    fn semitangents_at_vertices_span_the_normal_cone(seed in any::<u64>()) {
        let k = random_polygon(&mut rng(seed), 12, Point::ORIGIN, 2.0);
        let v = k.vertices().unwrap().to_vec();
        let n = v.len();
        for i in 0..n {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            let turn = (b - a).angle();
            let exterior = carousel_core::convex_kernel::normalize((c - b).angle() - turn);
            let s = semitangents(&k, b, &TOL).unwrap();
            prop_assert!((s.gap() - exterior).abs() <= 1e-9, "gap {} vs {}", s.gap(), exterior);
            prop_assert!(s.first.direction.dist(Angle::new(turn)) <= 1e-9);
        }
    }

    #[test]
    fn parallel_support_lies_strictly_right(seed in any::<u64>(), dir in 0.0f64..TAU, s in 0.0f64..0.9) {
        let mut r = rng(seed);
        let k = random_body(&mut r);
        let c = k.center();
        let reach = (0..8).map(|j| k.width(PI * j as f64 / 8.0)).fold(f64::MAX, f64::min);
        let through = c + Point::unit(r.gen_range(0.0..TAU)) * (0.3 * reach * s);
        let l = DirectedLine::new(through, Angle::new(dir));
        let (z, lp) = parallel_support_beyond_secant(&k, &l).unwrap();
        prop_assert!(l.signed_distance(z) < -1e-9);
        prop_assert!(l.signed_distance(lp.anchor) < -1e-9);
        prop_assert!((lp.signed_distance(z)).abs() <= 1e-9);
        prop_assert!(lp.direction.dist(l.direction) <= 1e-12);
    }

    #[test]
    fn slide_turn_closes(seed in any::<u64>(), theta in 0.0f64..TAU) {
        let k = random_body(&mut rng(seed));
        let start = pointed_supporting_line(&k, theta);
        let end = slide_turn(&k, start, |s| s.swept >= TAU, 360).unwrap();
        prop_assert!(end.psl.point.dist(start.point) <= 1e-6);
        prop_assert!(end.psl.line.direction.dist(start.line.direction) <= 1e-6);
    }

    #[test]
    fn slide_turn_states_stay_supporting(seed in any::<u64>(), stop_at in 0.1f64..6.0) {
        let k = random_body(&mut rng(seed));
        let start = pointed_supporting_line(&k, 0.3);
        let s = slide_turn(&k, start, |s| s.swept >= stop_at, 360).unwrap();
        prop_assert!(s.psl.is_valid_for(&k, 1e-9));
    }

    #[test]
    fn common_tangents_support_both(a in any::<u64>(), b in any::<u64>()) {
        let ka = random_body(&mut rng(a));
        let kb = random_body(&mut rng(b));
        let ts = common_tangents(&ka, &kb, &TOL);
        for t in &ts.tangents {
            let off = t.line.offset();
            prop_assert!((ka.support(t.normal) - off).abs() <= 1e-8);
            prop_assert!((kb.support(t.normal) - off).abs() <= 1e-8);
        }
        // No sign change of the support difference is left between reported tangents.
        let g = |nu: f64| ka.support(nu) - kb.support(nu);
        let n = 2048;
        let mut changes = 0;
        for i in 0..n {
            let (x, y) = (g(TAU * i as f64 / n as f64), g(TAU * (i + 1) as f64 / n as f64));
            if x.abs() > 1e-7 && y.abs() > 1e-7 && x.signum() != y.signum() {
                changes += 1;
            }
        }
        prop_assert!(ts.tangents.len() >= changes, "{} tangents, {} sign changes", ts.tangents.len(), changes);
    }

    #[test]
    fn disjoint_smooth_bodies_have_two_tangents(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = r.gen_range(0.3..2.0);
        let e1 = ConvexBody::ellipse(Point::ORIGIN, a, a * r.gen_range(0.3..1.0), r.gen_range(0.0..TAU));
        let b = r.gen_range(0.3..2.0);
        let gap = a + b + r.gen_range(0.01..3.0);
        let c = Point::unit(r.gen_range(0.0..TAU)) * gap;
        let e2 = ConvexBody::ellipse(c, b, b * r.gen_range(0.3..1.0), r.gen_range(0.0..TAU));
        prop_assert_eq!(common_tangents(&e1, &e2, &TOL).tangents.len(), 2);
    }
}
