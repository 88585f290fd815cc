#![allow(dead_code)]

use carousel_core::convex_kernel::{polygon, ConvexBody, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic generator; `GEOM_SEED` overrides the per-test seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    let base = std::env::var("GEOM_SEED").ok().and_then(|s| s.parse::<u64>().ok()).unwrap_or(0);
    ChaCha8Rng::seed_from_u64(base ^ seed)
}

pub fn point_in(rng: &mut impl Rng, r: f64) -> Point {
    Point::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Convex polygon from `3..=max_n` points near a circle, as an exact hull.
pub fn random_polygon(rng: &mut impl Rng, max_n: usize, center: Point, radius: f64) -> ConvexBody {
    loop {
        let n = rng.gen_range(3..=max_n);
        let pts: Vec<Point> = (0..n)
            .map(|_| {
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                let r = radius * rng.gen_range(0.6..1.0);
                center + Point::unit(a) * r
            })
            .collect();
        let hull = polygon::convex_hull(&pts);
        if hull.len() >= 3 && polygon::signed_area2(&hull) > 0.05 * radius * radius {
            return ConvexBody::polygon(hull).expect("hull is convex");
        }
    }
}

/// A random body with nonempty interior from the analytic families and polygons.
pub fn random_body(rng: &mut impl Rng) -> ConvexBody {
    let c = point_in(rng, 3.0);
    let rot = rng.gen_range(0.0..std::f64::consts::TAU);
    match rng.gen_range(0..5) {
        0 => ConvexBody::disk(c, rng.gen_range(0.2..3.0)),
        1 => {
            let a = rng.gen_range(0.3..3.0);
            ConvexBody::ellipse(c, a, a * rng.gen_range(0.2..1.0), rot)
        }
        2 => ConvexBody::reuleaux(c, rng.gen_range(0.3..3.0), rot),
        3 => ConvexBody::stadium(c, rng.gen_range(0.1..2.0), rng.gen_range(0.2..1.5), rot),
        _ => {
            let r = rng.gen_range(0.3..3.0);
            random_polygon(rng, 12, c, r)
        }
    }
}

pub fn square() -> ConvexBody {
    ConvexBody::polygon(vec![
        Point::new(-1.0, -1.0),
        Point::new(1.0, -1.0),
        Point::new(1.0, 1.0),
        Point::new(-1.0, 1.0),
    ])
    .unwrap()
}

pub fn trapezoid() -> ConvexBody {
    ConvexBody::polygon(vec![Point::new(0.0, 0.0), Point::new(3.0, 0.0), Point::new(2.0, 1.0), Point::new(0.0, 1.0)])
        .unwrap()
}

/// Normals of the common tangents of two polygons, from every pair of vertices.
pub fn vertex_pair_tangents(a: &[Point], b: &[Point], eps: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    let all: Vec<Point> = a.iter().chain(b).copied().collect();
    for &p in a {
        for &q in b {
            let Some(u) = (q - p).normalized() else { continue };
            for dir in [u, -u] {
                if all.iter().all(|&x| dir.cross(x - p) >= -eps) {
                    let nu = carousel_core::convex_kernel::normalize(dir.angle() - std::f64::consts::FRAC_PI_2);
                    if !out.iter().any(|&o| angle_gap(o, nu) < 1e-9) {
                        out.push(nu);
                    }
                }
            }
        }
    }
    out
}

pub fn angle_gap(a: f64, b: f64) -> f64 {
    carousel_core::convex_kernel::signed_diff(a, b).abs()
}

/// Two congruent disks placed uniformly inside a random triangle.
pub fn disks_in_triangle(rng: &mut impl Rng) -> ([Point; 3], ConvexBody, ConvexBody) {
    loop {
        let t = [point_in(rng, 5.0), point_in(rng, 5.0), point_in(rng, 5.0)];
        let area2 = (t[1] - t[0]).cross(t[2] - t[0]).abs();
        let perim = t[0].dist(t[1]) + t[1].dist(t[2]) + t[2].dist(t[0]);
        if area2 < 2.0 {
            continue;
        }
        let inradius = area2 / perim;
        let r = inradius * rng.gen_range(0.05..0.95);
        let edge_dist = |x: Point| {
            (0..3)
                .map(|i| {
                    let (p, q) = (t[i], t[(i + 1) % 3]);
                    (q - p).normalized().unwrap().cross(x - p).abs()
                })
                .fold(f64::MAX, f64::min)
        };
        let inside = |x: Point| {
            let s: Vec<f64> = (0..3).map(|i| (t[(i + 1) % 3] - t[i]).cross(x - t[i])).collect();
            s.iter().all(|&v| v > 0.0) || s.iter().all(|&v| v < 0.0)
        };
        let mut place = || {
            for _ in 0..10_000 {
                let w: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
                let sum: f64 = w.iter().sum();
                let x = Point::new(
                    (w[0] * t[0].x + w[1] * t[1].x + w[2] * t[2].x) / sum,
                    (w[0] * t[0].y + w[1] * t[1].y + w[2] * t[2].y) / sum,
                );
                if inside(x) && edge_dist(x) >= r * (1.0 + 1e-6) {
                    return Some(x);
                }
            }
            None
        };
        if let (Some(c0), Some(c1)) = (place(), place()) {
            return (t, ConvexBody::disk(c0, r), ConvexBody::disk(c1, r));
        }
    }
}
