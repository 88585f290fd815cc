//! Brute-force oracles for polygon inputs.

mod common;

use std::f64::consts::TAU;

use carousel_core::convex_kernel::{
    contains, hull_with_points, Angle, ConvexBody, DirectedLine, Point, Tolerance, Verdict,
};
use carousel_core::tangency::{common_tangents, pointed_supporting_line, secant_boundary_points, slide_turn};
use proptest::prelude::*;
use rand::Rng;

use common::*;

const TOL: Tolerance = Tolerance::ANALYTIC;

fn polygon_pair(seed: u64) -> (ConvexBody, ConvexBody) {
    let mut r = rng(seed);
    let ca = point_in(&mut r, 0.3);
    let a = random_polygon(&mut r, 20, ca, 1.0);
    let (cb, rb) = (point_in(&mut r, 0.8), r.gen_range(0.1..1.0));
    (a, random_polygon(&mut r, 20, cb, rb))
}

/// Vertices of the hull by testing every ordered pair as a candidate edge.
fn brute_hull(pts: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        for (j, &q) in pts.iter().enumerate() {
            if i == j || p.dist(q) < 1e-12 {
                continue;
            }
            let edge = pts.iter().all(|&x| (q - p).cross(x - p) > -1e-12);
            if edge && !out.iter().any(|o| o.dist(p) < 1e-12) {
                out.push(p);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polygon_containment_matches_vertices(seed in any::<u64>()) {
        let (a, b) = polygon_pair(seed);
        let excess = b.vertices().unwrap().iter().map(|&v| -a.point_margin(v)).fold(f64::MIN, f64::max);
        let c = contains(&a, &b, &TOL);
        prop_assert!((c.margin + excess).abs() <= 1e-9, "margin {} vs vertex excess {}", c.margin, excess);
        if excess.abs() > 1e-9 {
            prop_assert_eq!(c.verdict == Verdict::Contained, excess < 0.0);
        }
    }

    #[test]
    fn polygon_tangents_match_vertex_pairs(seed in any::<u64>()) {
        let (a, b) = polygon_pair(seed);
        let want = vertex_pair_tangents(a.vertices().unwrap(), b.vertices().unwrap(), 1e-9);
        let have: Vec<f64> = common_tangents(&a, &b, &TOL).tangents.iter().map(|t| t.normal).collect();
        prop_assert_eq!(want.len(), have.len(), "{:?} vs {:?}", have, want);
        for w in &want {
            prop_assert!(have.iter().any(|h| angle_gap(*h, *w) < 1e-7));
        }
    }

    #[test]
    fn secant_points_match_edge_intersections(seed in any::<u64>(), dir in 0.0f64..TAU) {
        let mut r = rng(seed);
        let k = random_polygon(&mut r, 16, Point::ORIGIN, 2.0);
        let through = k.center() + point_in(&mut r, 0.2);
        let l = DirectedLine::new(through, Angle::new(dir));
        let v = k.vertices().unwrap();
        let u = l.unit();
        let mut ts: Vec<f64> = Vec::new();
        for i in 0..v.len() {
            let (p, q) = (v[i], v[(i + 1) % v.len()]);
            let e = q - p;
            let den = u.cross(e);
            if den.abs() < 1e-14 {
                continue;
            }
            let s = u.cross(through - p) / den;
            if (-1e-12..=1.0 + 1e-12).contains(&s) {
                ts.push(l.project(p + e * s));
            }
        }
        let lo = ts.iter().cloned().fold(f64::MAX, f64::min);
        let hi = ts.iter().cloned().fold(f64::MIN, f64::max);
        let (x, y) = secant_boundary_points(&k, &l).unwrap();
        prop_assert!((l.project(x) - lo).abs() < 1e-9 && (l.project(y) - hi).abs() < 1e-9);
        prop_assert!(l.signed_distance(x).abs() < 1e-9 && l.signed_distance(y).abs() < 1e-9);
    }

    #[test]
    fn slide_turn_visits_vertices_in_order(seed in any::<u64>(), theta in 0.0f64..TAU) {
        let k = random_polygon(&mut rng(seed), 12, Point::ORIGIN, 2.0);
        let v = k.vertices().unwrap().to_vec();
        let start = pointed_supporting_line(&k, theta);
        let mut seen: Vec<usize> = Vec::new();
        slide_turn(&k, start, |s| {
            if let Some(i) = v.iter().position(|p| p.dist(s.psl.point) < 1e-12) {
                if seen.last() != Some(&i) {
                    seen.push(i);
                }
            }
            s.swept >= TAU
        }, 360).unwrap();
        let n = v.len();
        if seen.len() > 1 && seen.first() == seen.last() {
            seen.pop();
        }
        prop_assert_eq!(seen.len(), n, "{:?}", seen);
        for w in seen.windows(2) {
            prop_assert_eq!(w[1], (w[0] + 1) % n);
        }
    }

    #[test]
    fn polygon_hull_matches_brute_force(seed in any::<u64>(), extra in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..6)) {
        let k = random_polygon(&mut rng(seed), 12, Point::ORIGIN, 1.5);
        let pts: Vec<Point> = extra.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        let h = hull_with_points(&k, &pts);
        let got = h.vertices().expect("a polygon stays a polygon").to_vec();
        let all: Vec<Point> = k.vertices().unwrap().iter().chain(&pts).copied().collect();
        let want = brute_hull(&all);
        prop_assert_eq!(got.len(), want.len());
        for p in &want {
            prop_assert!(got.iter().any(|g| g.dist(*p) < 1e-12));
        }
    }
}
