//! Canonical analytic shapes, centred at the origin in their own frame.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI, TAU};

use serde::{Deserialize, Serialize};

use super::angle::{normalize, signed_diff};
use super::point::{dist_to_segment, Point};

/// Cosines below this are treated as an exact hit of a flat face normal.
const FLAT_COS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Disk {
        radius: f64,
    },
    /// Semi-axes `a` along x and `b` along y.
    Ellipse {
        a: f64,
        b: f64,
    },
    /// The segment from `(-half_length, 0)` to `(half_length, 0)`.
    Segment {
        half_length: f64,
    },
    /// Reuleaux triangle of constant width `width`; one vertex points along +y.
    Reuleaux {
        width: f64,
    },
    /// Minkowski sum of a horizontal segment and a disk.
    Stadium {
        half_length: f64,
        radius: f64,
    },
}

impl Shape {
    pub fn validate(&self) -> Result<(), String> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        let good = match *self {
            Shape::Disk { radius } => radius.is_finite() && radius >= 0.0,
            Shape::Ellipse { a, b } => ok(a) && ok(b),
            Shape::Segment { half_length } => ok(half_length),
            Shape::Reuleaux { width } => ok(width),
            Shape::Stadium { half_length, radius } => ok(half_length) && ok(radius),
        };
        if good {
            Ok(())
        } else {
            Err(format!("invalid shape parameters: {self:?}"))
        }
    }

    pub fn has_interior(&self) -> bool {
        match *self {
            Shape::Disk { radius } => radius > 0.0,
            Shape::Segment { .. } => false,
            _ => true,
        }
    }

    pub(crate) fn reuleaux_vertices(width: f64) -> [Point; 3] {
        let r = width / 3f64.sqrt();
        [0, 1, 2].map(|k| Point::unit(FRAC_PI_2 + TAU * k as f64 / 3.0) * r)
    }

    /// Reuleaux piece for normal `mu`: `(k, true)` on the arc centred at vertex `k`,
    /// `(k, false)` at vertex `k`.
    fn reuleaux_piece(mu: f64) -> (usize, bool) {
        for k in 0..3 {
            let a = FRAC_PI_2 + TAU * k as f64 / 3.0;
            if signed_diff(mu, a).abs() <= FRAC_PI_6 {
                return (k, false);
            }
        }
        for k in 0..3 {
            let a = FRAC_PI_2 + TAU * k as f64 / 3.0 + PI;
            if signed_diff(mu, a).abs() <= FRAC_PI_6 + 1e-15 {
                return (k, true);
            }
        }
        unreachable!("Reuleaux pieces cover the circle")
    }

    pub fn support(&self, mu: f64) -> f64 {
        let (s, c) = mu.sin_cos();
        match *self {
            Shape::Disk { radius } => radius,
            Shape::Ellipse { a, b } => (a * a * c * c + b * b * s * s).sqrt(),
            Shape::Segment { half_length } => half_length * c.abs(),
            Shape::Stadium { half_length, radius } => half_length * c.abs() + radius,
            Shape::Reuleaux { width } => {
                let v = Self::reuleaux_vertices(width);
                let (k, arc) = Self::reuleaux_piece(mu);
                v[k].x * c + v[k].y * s + if arc { width } else { 0.0 }
            }
        }
    }

    /// Index of the smooth piece of the support function containing `mu`.
    /// The support function has no downward kink inside a piece.
    pub fn piece(&self, mu: f64) -> u64 {
        match *self {
            Shape::Segment { .. } | Shape::Stadium { .. } => u64::from(mu.cos() < 0.0),
            _ => 0,
        }
    }

    /// Touch set of the supporting line with outward normal `mu` (unordered endpoints).
    pub fn face(&self, mu: f64) -> (Point, Point) {
        let (s, c) = mu.sin_cos();
        let n = Point::new(c, s);
        match *self {
            Shape::Disk { radius } => (n * radius, n * radius),
            Shape::Ellipse { a, b } => {
                let h = (a * a * c * c + b * b * s * s).sqrt();
                let p = Point::new(a * a * c / h, b * b * s / h);
                (p, p)
            }
            Shape::Segment { half_length } => segment_face(half_length, c, Point::ORIGIN),
            Shape::Stadium { half_length, radius } => segment_face(half_length, c, n * radius),
            Shape::Reuleaux { width } => {
                let v = Self::reuleaux_vertices(width);
                let (k, arc) = Self::reuleaux_piece(mu);
                let p = if arc { v[k] + n * width } else { v[k] };
                (p, p)
            }
        }
    }

    /// Upper bound on the radius of curvature of the boundary.
    pub fn curvature_bound(&self) -> f64 {
        match *self {
            Shape::Disk { radius } => radius,
            Shape::Ellipse { a, b } => a.max(b).powi(2) / a.min(b),
            Shape::Segment { .. } => 0.0,
            Shape::Stadium { radius, .. } => radius,
            Shape::Reuleaux { width } => width,
        }
    }

    /// Largest distance from the local origin.
    pub fn extent(&self) -> f64 {
        match *self {
            Shape::Disk { radius } => radius,
            Shape::Ellipse { a, b } => a.max(b),
            Shape::Segment { half_length } => half_length,
            Shape::Stadium { half_length, radius } => half_length + radius,
            Shape::Reuleaux { width } => width / 3f64.sqrt(),
        }
    }

    /// Normals at which the touch set is a non-degenerate segment, with its length.
    pub fn flat_faces(&self) -> Vec<(f64, f64)> {
        match *self {
            Shape::Segment { half_length } | Shape::Stadium { half_length, .. } => {
                vec![(FRAC_PI_2, 2.0 * half_length), (1.5 * PI, 2.0 * half_length)]
            }
            _ => Vec::new(),
        }
    }

    /// Boundary points with more than one supporting line, with the width of the normal cone.
    pub fn corners(&self) -> Vec<(Point, f64)> {
        match *self {
            Shape::Segment { half_length } => {
                vec![(Point::new(half_length, 0.0), PI), (Point::new(-half_length, 0.0), PI)]
            }
            Shape::Reuleaux { width } => Self::reuleaux_vertices(width).into_iter().map(|v| (v, PI / 3.0)).collect(),
            Shape::Disk { radius: 0.0 } => vec![(Point::ORIGIN, TAU)],
            _ => Vec::new(),
        }
    }

    /// Normal cone at a boundary point as `(start, width)`, counterclockwise from `start`.
    pub fn normal_cone(&self, p: Point, eps: f64) -> (f64, f64) {
        match *self {
            Shape::Disk { radius } => {
                if radius == 0.0 {
                    (0.0, TAU)
                } else {
                    (p.angle(), 0.0)
                }
            }
            Shape::Ellipse { a, b } => (Point::new(p.x / (a * a), p.y / (b * b)).angle(), 0.0),
            Shape::Segment { half_length } => {
                // Interior points share the left endpoint's arc.
                if p.x >= half_length - eps {
                    (1.5 * PI, PI)
                } else {
                    (FRAC_PI_2, PI)
                }
            }
            Shape::Stadium { half_length, .. } => {
                if p.x.abs() <= half_length {
                    (if p.y >= 0.0 { FRAC_PI_2 } else { 1.5 * PI }, 0.0)
                } else {
                    let c = Point::new(half_length.copysign(p.x), 0.0);
                    ((p - c).angle(), 0.0)
                }
            }
            Shape::Reuleaux { width } => {
                let v = Self::reuleaux_vertices(width);
                for (k, vk) in v.iter().enumerate() {
                    if p.dist(*vk) <= eps {
                        let a = FRAC_PI_2 + TAU * k as f64 / 3.0;
                        return (normalize(a - FRAC_PI_6), PI / 3.0);
                    }
                }
                // On an arc: pick the centre whose circle passes through p.
                let (k, _) = v
                    .iter()
                    .enumerate()
                    .map(|(k, vk)| (k, (p.dist(*vk) - width).abs()))
                    .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
                ((p - v[k]).angle(), 0.0)
            }
        }
    }

    /// Signed distance to the boundary: positive inside, negative outside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        match *self {
            Shape::Disk { radius } => radius - p.norm(),
            Shape::Ellipse { a, b } => ellipse_signed_distance(a, b, p),
            Shape::Segment { half_length } => {
                -dist_to_segment(p, Point::new(-half_length, 0.0), Point::new(half_length, 0.0))
            }
            Shape::Stadium { half_length, radius } => {
                radius - dist_to_segment(p, Point::new(-half_length, 0.0), Point::new(half_length, 0.0))
            }
            Shape::Reuleaux { width } => reuleaux_signed_distance(width, p),
        }
    }
}

fn segment_face(half_length: f64, c: f64, offset: Point) -> (Point, Point) {
    let r = Point::new(half_length, 0.0) + offset;
    let l = Point::new(-half_length, 0.0) + offset;
    if c > FLAT_COS {
        (r, r)
    } else if c < -FLAT_COS {
        (l, l)
    } else {
        (l, r)
    }
}

fn reuleaux_signed_distance(width: f64, p: Point) -> f64 {
    let v = Shape::reuleaux_vertices(width);
    let inside = v.iter().all(|vk| p.dist(*vk) <= width);
    // Boundary arc k is centred at v[k] and runs between the other two vertices.
    let mut best = f64::INFINITY;
    for k in 0..3 {
        let centre = v[k];
        let a = FRAC_PI_2 + TAU * k as f64 / 3.0 + PI;
        let d = p - centre;
        let within = d.norm() > 0.0 && signed_diff(d.angle(), a).abs() <= FRAC_PI_6;
        let dk = if within { (d.norm() - width).abs() } else { p.dist(v[(k + 1) % 3]).min(p.dist(v[(k + 2) % 3])) };
        best = best.min(dk);
    }
    if inside {
        best
    } else {
        -best
    }
}

/// Signed distance from `p` to the ellipse `x²/a² + y²/b² = 1`.
pub fn ellipse_signed_distance(a: f64, b: f64, p: Point) -> f64 {
    let inside = (p.x / a).powi(2) + (p.y / b).powi(2) <= 1.0;
    let (e0, e1, y0, y1) = if a >= b { (a, b, p.x.abs(), p.y.abs()) } else { (b, a, p.y.abs(), p.x.abs()) };
    let d = distance_point_ellipse(e0, e1, y0, y1);
    if inside {
        d
    } else {
        -d
    }
}

// Closest-point distance for a query in the first quadrant with e0 >= e1
// (bisection on the Lagrange multiplier).
fn distance_point_ellipse(e0: f64, e1: f64, y0: f64, y1: f64) -> f64 {
    if y1 > 0.0 {
        if y0 > 0.0 {
            let z0 = y0 / e0;
            let z1 = y1 / e1;
            let g = z0 * z0 + z1 * z1 - 1.0;
            if g != 0.0 {
                let r0 = (e0 / e1).powi(2);
                let sbar = robust_root(r0, z0, z1, g);
                let x0 = r0 * y0 / (sbar + r0);
                let x1 = y1 / (sbar + 1.0);
                (x0 - y0).hypot(x1 - y1)
            } else {
                0.0
            }
        } else {
            (y1 - e1).abs()
        }
    } else {
        let numer0 = e0 * y0;
        let denom0 = e0 * e0 - e1 * e1;
        if numer0 < denom0 {
            let xde0 = numer0 / denom0;
            let x0 = e0 * xde0;
            let x1 = e1 * (1.0 - xde0 * xde0).max(0.0).sqrt();
            (x0 - y0).hypot(x1)
        } else {
            (y0 - e0).abs()
        }
    }
}

fn robust_root(r0: f64, z0: f64, z1: f64, g: f64) -> f64 {
    let n0 = r0 * z0;
    let mut s0 = z1 - 1.0;
    let mut s1 = if g < 0.0 { 0.0 } else { n0.hypot(z1) - 1.0 };
    let mut s = 0.0;
    for _ in 0..200 {
        s = 0.5 * (s0 + s1);
        if s == s0 || s == s1 {
            break;
        }
        let ratio0 = n0 / (s + r0);
        let ratio1 = z1 / (s + 1.0);
        let gs = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
        if gs > 0.0 {
            s0 = s;
        } else if gs < 0.0 {
            s1 = s;
        } else {
            break;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reuleaux_support_is_continuous_and_constant_width() {
        let r = Shape::Reuleaux { width: 2.0 };
        for i in 0..3600 {
            let mu = TAU * i as f64 / 3600.0;
            let w = r.support(mu) + r.support(mu + PI);
            assert!((w - 2.0).abs() < 1e-12, "width {w} at {mu}");
            let (p, _) = r.face(mu);
            assert!((p.x * mu.cos() + p.y * mu.sin() - r.support(mu)).abs() < 1e-12);
        }
    }

    #[test]
    fn reuleaux_signed_distance_matches_support_definition() {
        let r = Shape::Reuleaux { width: 2.0 };
        for &(x, y) in &[(0.0, 0.0), (0.3, -0.2), (1.5, 1.5), (0.0, 1.3), (-2.0, -1.0)] {
            let p = Point::new(x, y);
            let brute = (0..20000)
                .map(|i| {
                    let mu = TAU * i as f64 / 20000.0;
                    r.support(mu) - (p.x * mu.cos() + p.y * mu.sin())
                })
                .fold(f64::INFINITY, f64::min);
            assert!((r.signed_distance(p) - brute).abs() < 1e-6, "{p:?}");
        }
    }

    #[test]
    fn ellipse_distance_against_brute_force() {
        let (a, b) = (1.0, 0.6);
        for &(x, y) in &[(2.0, 1.0), (0.1, 0.05), (-0.5, 0.4), (0.0, 2.0), (1.5, 0.0), (0.3, 0.0)] {
            let p = Point::new(x, y);
            let brute = (0..200000)
                .map(|i| {
                    let t = TAU * i as f64 / 200000.0;
                    p.dist(Point::new(a * t.cos(), b * t.sin()))
                })
                .fold(f64::INFINITY, f64::min);
            assert!((ellipse_signed_distance(a, b, p).abs() - brute).abs() < 1e-6, "{p:?}");
        }
    }
}
