//! The weak carousel property for two bodies in a triangle, and its refutation from a
//! crossing witness.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::convex_kernel::{contains, polygon, Angle, ConvexBody, DirectedLine, Point, Tolerance, Verdict};
use crate::crossing::{disk_test, CrossingWitness, DiskTest, Role, SearchConfig};
use crate::tangency::supporting_line;
use crate::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    pub a: [Point; 3],
}

impl Triangle {
    /// Rejects collinear vertices. A clockwise triple is made counterclockwise by
    /// exchanging `A1` and `A2`.
    pub fn new(a0: Point, a1: Point, a2: Point) -> Result<Self> {
        let area = (a1 - a0).cross(a2 - a0);
        let scale = (a1 - a0).norm() * (a2 - a0).norm();
        if !area.is_finite() || area.abs() <= 1e-12 * scale || !scale.is_finite() {
            return Err(GeomError::InvalidBody("triangle vertices are collinear".into()));
        }
        Ok(if area > 0.0 { Self { a: [a0, a1, a2] } } else { Self { a: [a0, a2, a1] } })
    }

    pub fn body(&self) -> ConvexBody {
        ConvexBody::hull_of(&self.a)
    }

    /// The two vertices other than `A_j`.
    pub fn without(&self, j: usize) -> [Point; 2] {
        [self.a[(j + 1) % 3], self.a[(j + 2) % 3]]
    }

    pub fn apply(&self, phi: &crate::convex_kernel::Similarity) -> Result<Self> {
        let [a0, a1, a2] = self.a.map(|p| phi.apply_point(p));
        Self::new(a0, a1, a2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CarouselResult {
    Sat { j: usize, k: usize },
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarouselVerdict {
    pub result: CarouselResult,
    /// Margin of `K_{1-k} ⊆ hull(K_k ∪ T \ {A_j})` at index `2j + k`.
    pub margins: [f64; 6],
    /// Normal attaining each margin.
    pub normals: [f64; 6],
}

impl CarouselVerdict {
    pub fn margin(&self, j: usize, k: usize) -> f64 {
        self.margins[2 * j + k]
    }
}

/// Checks whether one body lies in the hull of the other and two triangle vertices.
/// Both bodies must lie in the triangle.
pub fn carousel_check(k0: &ConvexBody, k1: &ConvexBody, t: &Triangle, tol: &Tolerance) -> Result<CarouselVerdict> {
    let tb = t.body();
    let mut unknown = false;
    for (name, b) in [("K0", k0), ("K1", k1)] {
        let c = contains(&tb, b, tol);
        match c.verdict {
            Verdict::NotContained => {
                return Err(GeomError::Domain(format!("{name} is not inside the triangle (margin {:e})", c.margin)))
            }
            Verdict::Unknown => unknown = true,
            Verdict::Contained => {}
        }
    }
    let bodies = [k0, k1];
    let mut margins = [0.0; 6];
    let mut normals = [0.0; 6];
    let mut first_sat = None;
    for j in 0..3 {
        for k in 0..2 {
            let hull = bodies[k].with_points(&t.without(j));
            let c = contains(&hull, bodies[1 - k], tol);
            margins[2 * j + k] = c.margin;
            normals[2 * j + k] = c.normal;
            match c.verdict {
                Verdict::Contained if first_sat.is_none() => first_sat = Some((j, k)),
                Verdict::Unknown => unknown = true,
                _ => {}
            }
        }
    }
    let result = match first_sat {
        Some((j, k)) => CarouselResult::Sat { j, k },
        None if unknown => CarouselResult::Unknown,
        None => CarouselResult::Unsat,
    };
    Ok(CarouselVerdict { result, margins, normals })
}

/// Two congruent segments in an equilateral triangle for which every one of the six
/// containments fails.
pub fn segment_counterexample() -> (ConvexBody, ConvexBody, Triangle) {
    let s = 3f64.sqrt();
    let t = Triangle::new(Point::new(0.0, 1.0), Point::new(-s / 2.0, -0.5), Point::new(s / 2.0, -0.5))
        .expect("equilateral triangle");
    let seg = |c: Point, ang: f64, half: f64| {
        let d = Point::unit(ang) * half;
        ConvexBody::segment(c - d, c + d)
    };
    let k0 = seg(Point::new(SEG_FIXTURE[0], SEG_FIXTURE[1]), SEG_FIXTURE[2], SEG_FIXTURE[6]);
    let k1 = seg(Point::new(SEG_FIXTURE[3], SEG_FIXTURE[4]), SEG_FIXTURE[5], SEG_FIXTURE[6]);
    (k0, k1, t)
}

/// Centres, angles and common half-length of the two segments (found by a pose search).
const SEG_FIXTURE: [f64; 7] = [-0.17, -0.12, 1.95, -0.089, 0.068, 0.375, 0.39];

/// Required violation of each containment, in units of `eps_geom`.
const STRICT: f64 = 10.0;

fn all_violated(v: &CarouselVerdict, eps: f64) -> bool {
    v.result == CarouselResult::Unsat && v.margins.iter().all(|&m| m < -STRICT * eps)
}

/// Builds a triangle around a crossing pair in which the weak carousel property fails.
pub fn triangle_from_crossing(
    k: &ConvexBody,
    k2: &ConvexBody,
    w: &CrossingWitness,
    tol: &Tolerance,
) -> Result<Triangle> {
    let margin = w
        .validate(k, k2, tol.eps_geom)
        .ok_or_else(|| GeomError::Precondition("witness does not validate for the given bodies".into()))?;
    let (lead, trail) = match w.role {
        Role::KFirst => (k, k2),
        Role::K2First => (k2, k),
    };
    // Label the tangents so that δ(t1) = δ(t2) + α with α ∈ (0, π].
    let mut t1 = w.t1;
    let mut t2 = w.t2;
    let mut alpha = t2.direction.ccw_to(t1.direction);
    if !(alpha > 0.0 && alpha <= PI + 1e-12) {
        std::mem::swap(&mut t1, &mut t2);
        alpha = t2.direction.ccw_to(t1.direction);
    }
    let center = lead.center().midpoint(trail.center());
    let radius = lead.radius_about(center).max(trail.radius_about(center));

    let build = |eta: f64, dist: f64| -> Option<Triangle> {
        let a1 = supporting_line(trail, t2.direction.radians() + eta);
        let a2 = supporting_line(lead, t1.direction.radians() - eta);
        let apex = a1.intersect(&a2)?;
        let n = (center - apex).normalized()?;
        let far = center + n * dist;
        let a0 = DirectedLine::new(far, Angle::new(n.angle() + FRAC_PI_2));
        let p1 = a2.intersect(&a0)?;
        let p2 = a1.intersect(&a0)?;
        Triangle::new(apex, p1, p2).ok()
    };
    let check = |tri: &Triangle| -> Option<CarouselVerdict> {
        carousel_check(k, k2, tri, tol).ok().filter(|v| all_violated(v, tol.eps_geom))
    };

    let mut eta = (alpha / 4.0).min(0.25);
    let mut last_err = String::from("no attempt");
    for _ in 0..=20 {
        let far = 4.0 * radius;
        match build(eta, far) {
            Some(tri) if check(&tri).is_some() => {
                // Pull the closing side in while the construction stays certified.
                let floor = [lead, trail]
                    .iter()
                    .map(|b| {
                        let n = (center - tri.a[0]).normalized().unwrap_or(Point::new(1.0, 0.0));
                        b.support(n.angle()) - center.dot(n)
                    })
                    .fold(0.0, f64::max);
                let (mut lo, mut hi) = (floor, far);
                let mut best = tri;
                for _ in 0..24 {
                    let mid = 0.5 * (lo + hi);
                    match build(eta, mid).filter(|t| check(t).is_some()) {
                        Some(t) => {
                            best = t;
                            hi = mid;
                        }
                        None => lo = mid,
                    }
                }
                return Ok(best);
            }
            Some(tri) => {
                last_err = match carousel_check(k, k2, &tri, tol) {
                    Ok(v) => format!("eta {eta:e}: margins {:?}", v.margins),
                    Err(e) => format!("eta {eta:e}: {e}"),
                }
            }
            None => last_err = format!("eta {eta:e}: degenerate triangle"),
        }
        eta *= 0.5;
    }
    Err(GeomError::ConstructionFailed(format!("witness margin {margin:e}; last attempt {last_err}")))
}

#[derive(Debug, Clone)]
pub struct Falsification {
    pub k1: ConvexBody,
    pub triangle: Triangle,
    pub phi: crate::convex_kernel::Similarity,
    pub witness: CrossingWitness,
    pub verdict: CarouselVerdict,
}

/// Searches an isometric copy crossing `k` and turns it into a violating triangle.
pub fn carousel_falsify(k: &ConvexBody, cfg: &SearchConfig, tol: &Tolerance) -> Result<Option<Falsification>> {
    match disk_test(k, cfg, tol) {
        DiskTest::NoWitnessFound { .. } => Ok(None),
        DiskTest::Witness { phi, witness, .. } => {
            let k1 = k.apply(&phi);
            let triangle = triangle_from_crossing(k, &k1, &witness, tol)?;
            let verdict = carousel_check(k, &k1, &triangle, tol)?;
            Ok(Some(Falsification { k1, triangle, phi, witness, verdict }))
        }
    }
}

/// Vertices of the triangle as a polygon, for drawing and containment.
pub fn triangle_polygon(t: &Triangle) -> Vec<Point> {
    polygon::convex_hull(&t.a)
}
