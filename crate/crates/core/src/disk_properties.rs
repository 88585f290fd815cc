//! Checkers for the properties that separate disks from other convex bodies, and the
//! ladder that runs them in order.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::convex_kernel::numeric::golden_max;
use crate::convex_kernel::{body_distance, line_intersection, normalize, ConvexBody, Point, Similarity, Tolerance};
use crate::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PropertyId {
    PerpendicularlyOpposed,
    ChordEquality,
    Smoothness,
    StrictConvexity,
    PerpendicularDiagonalsBisect,
    DiagonalSymmetry,
    CentralSymmetry,
    DiagonalsThroughCenter,
    RadialPerpendicularity,
}

impl PropertyId {
    pub const LADDER: [PropertyId; 9] = [
        PropertyId::PerpendicularlyOpposed,
        PropertyId::ChordEquality,
        PropertyId::Smoothness,
        PropertyId::StrictConvexity,
        PropertyId::PerpendicularDiagonalsBisect,
        PropertyId::DiagonalSymmetry,
        PropertyId::CentralSymmetry,
        PropertyId::DiagonalsThroughCenter,
        PropertyId::RadialPerpendicularity,
    ];

    /// Position of the property in the classical chain of disk characterizations.
    pub fn number(self) -> u8 {
        match self {
            PropertyId::PerpendicularlyOpposed => 9,
            PropertyId::ChordEquality => 10,
            PropertyId::Smoothness => 11,
            PropertyId::StrictConvexity => 13,
            PropertyId::PerpendicularDiagonalsBisect => 21,
            PropertyId::DiagonalSymmetry => 23,
            PropertyId::CentralSymmetry => 24,
            PropertyId::DiagonalsThroughCenter => 25,
            PropertyId::RadialPerpendicularity => 28,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::LADDER.into_iter().find(|p| p.number() == n)
    }

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::PerpendicularlyOpposed => "perpendicularly-opposed",
            PropertyId::ChordEquality => "chord-equality",
            PropertyId::Smoothness => "smoothness",
            PropertyId::StrictConvexity => "strict-convexity",
            PropertyId::PerpendicularDiagonalsBisect => "perpendicular-diagonals-bisect",
            PropertyId::DiagonalSymmetry => "diagonal-symmetry",
            PropertyId::CentralSymmetry => "central-symmetry",
            PropertyId::DiagonalsThroughCenter => "diagonals-through-center",
            PropertyId::RadialPerpendicularity => "radial-perpendicularity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PropVerdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Parallel supporting lines with direction `theta` and their face midpoints.
    Direction {
        theta: f64,
        first: Point,
        second: Point,
    },
    Corner {
        point: Point,
        cone: f64,
    },
    Face {
        normal: f64,
        first: Point,
        last: Point,
    },
    /// Two perpendicular diagonals and their crossing point.
    DiagonalPair {
        first: Diagonal,
        second: Diagonal,
        crossing: Point,
    },
    Diagonal {
        diagonal: Diagonal,
    },
    Center {
        center: Point,
    },
    Radial {
        point: Point,
        center: Point,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub id: PropertyId,
    pub verdict: PropVerdict,
    pub witness: Option<Witness>,
    /// Size of the worst violation found (or of the worst deviation when passing).
    pub magnitude: f64,
    /// Named sub-measurements.
    pub measures: Vec<(&'static str, f64)>,
    pub note: Option<String>,
}

impl PropertyReport {
    fn new(id: PropertyId, pass: bool, witness: Option<Witness>, magnitude: f64) -> Self {
        Self {
            id,
            verdict: if pass { PropVerdict::Pass } else { PropVerdict::Fail },
            witness,
            magnitude,
            measures: Vec::new(),
            note: None,
        }
    }

    fn unknown(id: PropertyId, note: impl Into<String>) -> Self {
        Self {
            id,
            verdict: PropVerdict::Unknown,
            witness: None,
            magnitude: 0.0,
            measures: Vec::new(),
            note: Some(note.into()),
        }
    }

    pub fn measure(&self, name: &str) -> Option<f64> {
        self.measures.iter().find(|m| m.0 == name).map(|m| m.1)
    }

    pub fn center(&self) -> Option<Point> {
        match self.witness {
            Some(Witness::Center { center }) => Some(center),
            _ => None,
        }
    }
}

/// A chord whose perpendiculars at both ends support the body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagonal {
    pub p1: Point,
    pub p2: Point,
}

impl Diagonal {
    pub fn direction(&self) -> f64 {
        (self.p2 - self.p1).angle()
    }

    pub fn midpoint(&self) -> Point {
        self.p1.midpoint(self.p2)
    }

    pub fn length(&self) -> f64 {
        self.p1.dist(self.p2)
    }

    pub fn distance_to(&self, x: Point) -> f64 {
        let u = (self.p2 - self.p1).normalized().unwrap_or(Point::new(1.0, 0.0));
        u.cross(x - self.p1).abs()
    }

    /// Whether both end perpendiculars support `k` within `eps`.
    pub fn is_valid_for(&self, k: &ConvexBody, eps: f64) -> bool {
        let Some(u) = (self.p2 - self.p1).normalized() else {
            return false;
        };
        let gap = |p: Point, out: Point| (k.support(out.angle()) - p.dot(out)).abs();
        gap(self.p1, -u) <= eps && gap(self.p2, u) <= eps
    }
}

/// Allowances for the discretization error of sampled bodies.
#[derive(Debug, Clone, Copy)]
struct Slack {
    geom: f64,
    angle: f64,
    dist: f64,
}

fn slack(k: &ConvexBody, tol: &Tolerance) -> Slack {
    match k {
        ConvexBody::Sampled(s) => Slack {
            geom: tol.eps_geom + 2.0 * s.error_bound(),
            angle: tol.eps_angle + 1.5 * s.step(),
            dist: tol.eps_geom + 4.0 * s.error_bound(),
        },
        _ => Slack { geom: tol.eps_geom, angle: tol.eps_angle, dist: tol.eps_geom },
    }
}

/// Directions scanned by the ladder, coarse to fine: 0, π/2, π/4, 3π/4, π/8, ...
fn dyadic_directions(levels: u32) -> Vec<f64> {
    let mut out = vec![0.0, FRAC_PI_2];
    for l in 2..=levels {
        let d = 1u32 << l;
        out.extend((1..d).step_by(2).map(|i| PI * i as f64 / d as f64));
    }
    out
}

const LADDER_LEVELS: u32 = 6;
const DIAGONAL_SCAN: usize = 128;
const SYMMETRY_PROBES: usize = 16;
const RADIAL_SAMPLES: usize = 720;

pub fn check_perpendicularly_opposed(k: &ConvexBody, theta: f64, tol: &Tolerance) -> PropertyReport {
    let id = PropertyId::PerpendicularlyOpposed;
    let nu = theta - FRAC_PI_2;
    let m0 = k.face(nu).midpoint();
    let m1 = k.face(nu + PI).midpoint();
    let c = m1 - m0;
    let Some(cu) = c.normalized() else {
        return PropertyReport::unknown(id, "the two supporting lines coincide");
    };
    let dev = cu.cross(Point::unit(nu)).abs().min(1.0).asin();
    let s = slack(k, tol);
    let thr = match k {
        ConvexBody::Sampled(_) => s.angle + 2.0 * s.geom / c.norm(),
        _ => s.angle,
    };
    PropertyReport::new(
        id,
        dev <= thr,
        Some(Witness::Direction { theta: normalize(theta), first: m0, second: m1 }),
        dev,
    )
}

pub fn check_chord_equality(k: &ConvexBody, theta: f64, tol: &Tolerance) -> PropertyReport {
    let nu = theta - FRAC_PI_2;
    let f0 = k.face(nu);
    let f1 = k.face(nu + PI);
    let d = (f0.length() - f1.length()).abs();
    let mut r = PropertyReport::new(
        PropertyId::ChordEquality,
        d <= slack(k, tol).geom,
        Some(Witness::Direction { theta: normalize(theta), first: f0.midpoint(), second: f1.midpoint() }),
        d,
    );
    r.measures = vec![("first_length", f0.length()), ("second_length", f1.length())];
    r
}

/// Scans directions coarse to fine, then the directions of flat faces, and keeps the
/// first failure.
fn scan_directions(
    k: &ConvexBody,
    tol: &Tolerance,
    f: fn(&ConvexBody, f64, &Tolerance) -> PropertyReport,
) -> PropertyReport {
    let mut worst: Option<PropertyReport> = None;
    let mut dirs = dyadic_directions(LADDER_LEVELS);
    dirs.extend(k.flat_faces().into_iter().map(|(nu, _)| normalize(nu + FRAC_PI_2) % PI));
    for theta in dirs {
        let r = f(k, theta, tol);
        if r.verdict == PropVerdict::Fail {
            return r;
        }
        if worst.as_ref().is_none_or(|w| r.magnitude > w.magnitude) {
            worst = Some(r);
        }
    }
    let mut w = worst.expect("non-empty scan");
    if w.verdict == PropVerdict::Pass {
        w.witness = None;
    }
    w
}

pub fn check_smoothness(k: &ConvexBody, tol: &Tolerance) -> PropertyReport {
    let thr = slack(k, tol).angle;
    let worst = k.corners().into_iter().filter(|c| c.1 > thr).max_by(|a, b| {
        if (a.1 - b.1).abs() <= 1e-12 {
            (a.0.x, a.0.y).partial_cmp(&(b.0.x, b.0.y)).unwrap_or(std::cmp::Ordering::Equal)
        } else {
            a.1.total_cmp(&b.1)
        }
    });
    match worst {
        Some((point, cone)) => {
            PropertyReport::new(PropertyId::Smoothness, false, Some(Witness::Corner { point, cone }), cone)
        }
        None => PropertyReport::new(PropertyId::Smoothness, true, None, 0.0),
    }
}

pub fn check_strict_convexity(k: &ConvexBody, tol: &Tolerance) -> PropertyReport {
    let thr = slack(k, tol).geom;
    let worst =
        k.flat_faces().into_iter().map(|(nu, len)| (normalize(nu), len)).filter(|f| f.1 > thr).max_by(|a, b| {
            if (a.1 - b.1).abs() <= 1e-12 {
                b.0.total_cmp(&a.0)
            } else {
                a.1.total_cmp(&b.1)
            }
        });
    match worst {
        Some((normal, len)) => {
            let f = k.face(normal);
            PropertyReport::new(
                PropertyId::StrictConvexity,
                false,
                Some(Witness::Face { normal, first: f.first, last: f.last }),
                len,
            )
        }
        None => PropertyReport::new(PropertyId::StrictConvexity, true, None, 0.0),
    }
}

/// Signed offset of the opposite touch point from the normal line at the touch point of `nu`.
fn diagonal_mismatch(k: &ConvexBody, nu: f64) -> (f64, Point, Point) {
    let p = k.face(nu).midpoint();
    let q = k.face(nu + PI).midpoint();
    (Point::unit(nu).cross(q - p), p, q)
}

/// The diagonal whose first endpoint has outward normal `nu`, if there is one.
pub fn diagonal_at(k: &ConvexBody, nu: f64, tol: &Tolerance) -> Option<Diagonal> {
    let s = slack(k, tol);
    let (f, p, q) = diagonal_mismatch(k, nu);
    (f.abs() <= s.geom && p.dist(q) > s.geom).then_some(Diagonal { p1: p, p2: q })
}

/// Diagonals found on a grid of `n` normals over a half turn, plus those located by
/// bisection between grid normals and those at flat faces. Each comes with the outward
/// normal at `p1`.
pub fn diagonals(k: &ConvexBody, n: usize, tol: &Tolerance) -> Vec<(f64, Diagonal)> {
    let s = slack(k, tol);
    let step = PI / n as f64;
    let vals: Vec<(f64, Point, Point)> = (0..=n).map(|i| diagonal_mismatch(k, step * i as f64)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let nu = step * i as f64;
        let (fa, p, q) = vals[i];
        if fa.abs() <= s.geom {
            if p.dist(q) > s.geom {
                out.push((nu, Diagonal { p1: p, p2: q }));
            }
            continue;
        }
        let fb = vals[i + 1].0;
        if fb.abs() > s.geom && fa.signum() != fb.signum() {
            let (mut lo, mut hi, mut flo) = (nu, nu + step, fa);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = diagonal_mismatch(k, mid).0;
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-14 {
                    break;
                }
            }
            let mid = 0.5 * (lo + hi);
            if let Some(d) = diagonal_at(k, mid, tol) {
                out.push((mid, d));
            }
        }
    }
    // The mismatch jumps at flat faces, which may carry a diagonal exactly there.
    for (nu, _) in k.flat_faces() {
        let nu = normalize(nu) % PI;
        if out.iter().all(|(m, _)| (m - nu).abs() > 1e-9) {
            if let Some(d) = diagonal_at(k, nu, tol) {
                out.push((nu, d));
            }
        }
    }
    out
}

/// The diagonal starting at boundary point `p`, if the normal line at `p` is also normal
/// at its far end.
pub fn opposite_point(k: &ConvexBody, p: Point, tol: &Tolerance) -> Result<Option<Diagonal>> {
    let s = slack(k, tol);
    let m = k.point_margin(p);
    if m.abs() > s.geom {
        return Err(GeomError::NotOnBoundary { point: p, distance: m.abs() });
    }
    let (start, width) = k.normal_cone(p, s.geom);
    if width > s.angle {
        return Err(GeomError::Precondition(format!(
            "boundary is not smooth at ({}, {}): normal cone {width}",
            p.x, p.y
        )));
    }
    let nu = start + 0.5 * width;
    let q = k.face(nu + PI).midpoint();
    let off = Point::unit(nu).cross(q - p);
    Ok((off.abs() <= s.geom && p.dist(q) > s.geom).then_some(Diagonal { p1: p, p2: q }))
}

/// Perpendicular diagonal pairs among the scanned diagonals, with their crossing point.
fn perpendicular_pairs(k: &ConvexBody, tol: &Tolerance) -> Vec<(Diagonal, Diagonal, Point)> {
    let mut out = Vec::new();
    for (nu, d) in diagonals(k, DIAGONAL_SCAN, tol) {
        if let Some(e) = diagonal_at(k, nu + FRAC_PI_2, tol) {
            if let Some(x) = line_intersection(d.p1, d.p2 - d.p1, e.p1, e.p2 - e.p1) {
                out.push((d, e, x));
            }
        }
    }
    out
}

pub fn check_perpendicular_diagonals_bisect(k: &ConvexBody, tol: &Tolerance) -> PropertyReport {
    let id = PropertyId::PerpendicularDiagonalsBisect;
    let pairs = perpendicular_pairs(k, tol);
    let worst = pairs
        .into_iter()
        .map(|(d, e, x)| {
            let dev = x.dist(d.midpoint()).max(x.dist(e.midpoint()));
            (dev, d, e, x)
        })
        .max_by(|a, b| a.0.total_cmp(&b.0));
    match worst {
        None => PropertyReport::unknown(id, "no pair of perpendicular diagonals found"),
        Some((dev, first, second, crossing)) => PropertyReport::new(
            id,
            dev <= slack(k, tol).geom,
            Some(Witness::DiagonalPair { first, second, crossing }),
            dev,
        ),
    }
}

pub fn check_diagonal_symmetry(k: &ConvexBody, d: &Diagonal, tol: &Tolerance) -> PropertyReport {
    let phi = Similarity::reflection_across(d.p1, d.direction());
    let dist = body_distance(k, &k.apply(&phi), tol.samples);
    PropertyReport::new(
        PropertyId::DiagonalSymmetry,
        dist <= slack(k, tol).dist,
        Some(Witness::Diagonal { diagonal: *d }),
        dist,
    )
}

/// Centre from the first perpendicular diagonal pair, tested as a centre of symmetry.
/// The centre is reported in the witness whatever the verdict.
pub fn check_central_symmetry(k: &ConvexBody, tol: &Tolerance) -> PropertyReport {
    let id = PropertyId::CentralSymmetry;
    let Some((_, _, center)) = perpendicular_pairs(k, tol).into_iter().next() else {
        return PropertyReport::unknown(id, "no pair of perpendicular diagonals found");
    };
    let dist = body_distance(k, &k.apply(&Similarity::point_reflection(center)), tol.samples);
    PropertyReport::new(id, dist <= slack(k, tol).dist, Some(Witness::Center { center }), dist)
}

pub fn check_diagonals_through_center(k: &ConvexBody, o: Point, tol: &Tolerance) -> PropertyReport {
    let id = PropertyId::DiagonalsThroughCenter;
    let worst = diagonals(k, DIAGONAL_SCAN, tol)
        .into_iter()
        .map(|(_, d)| (d.distance_to(o), d))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    match worst {
        None => PropertyReport::unknown(id, "no diagonal found"),
        Some((dist, diagonal)) => {
            PropertyReport::new(id, dist <= slack(k, tol).geom, Some(Witness::Diagonal { diagonal }), dist)
        }
    }
}

/// Slope of the tangent to the polar curve `r(α)`.
pub fn polar_slope(r: f64, dr: f64, alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    (dr * s + r * c) / (dr * c - r * s)
}

/// Residual of `p'(x) = −x/p(x)` at a point `(x, y)` of a curve with slope `slope`.
pub fn ode_residual(x: f64, y: f64, slope: f64) -> f64 {
    slope + x / y
}

pub fn check_radial_perpendicularity(k: &ConvexBody, o: Point, tol: &Tolerance) -> PropertyReport {
    let id = PropertyId::RadialPerpendicularity;
    if k.point_margin(o) <= 0.0 {
        return PropertyReport::unknown(id, "centre is not an interior point");
    }
    let s = slack(k, tol);
    let step = TAU / RADIAL_SAMPLES as f64;
    let touch = |nu: f64| k.face(nu).midpoint();

    let mut defect = (0.0, Point::ORIGIN);
    let mut far = (f64::MIN, 0.0);
    let mut near = (f64::MAX, 0.0);
    let inner = |nu: f64| k.support(nu) - o.dot(Point::unit(nu));
    for i in 0..RADIAL_SAMPLES {
        let nu = step * i as f64;
        let p = touch(nu);
        let v = p - o;
        if let Some(vu) = v.normalized() {
            let d = vu.dot(Point::unit(nu + FRAC_PI_2)).abs().min(1.0).asin();
            if d > defect.0 {
                defect = (d, p);
            }
        }
        if v.norm() > far.0 {
            far = (v.norm(), nu);
        }
        if inner(nu) < near.0 {
            near = (inner(nu), nu);
        }
    }
    let rmax = golden_max(far.1 - step, far.1 + step, 100, |t| touch(t).dist(o)).1.max(far.0);
    let rmin = (-golden_max(near.1 - step, near.1 + step, 100, |t| -inner(t)).1).min(near.0);
    let spread = rmax - rmin;

    // Residual of the circle equation, with slopes from the polar form of the boundary.
    let mut residual: f64 = 0.0;
    let h = 1e-5;
    let radius = |a: f64| k.chord(o, Point::unit(a)).map(|c| c.1);
    for i in 0..RADIAL_SAMPLES {
        let a = step * (i as f64 + 0.5);
        let (Some(r), Some(rp), Some(rm)) = (radius(a), radius(a + h), radius(a - h)) else {
            continue;
        };
        let (x, y) = (r * a.cos(), r * a.sin());
        if y.abs() < 0.5 * r {
            continue;
        }
        let slope = polar_slope(r, (rp - rm) / (2.0 * h), a);
        residual = residual.max(ode_residual(x, y, slope).abs());
    }

    let pass_angle = defect.0 <= s.angle;
    let pass_spread = spread <= s.geom;
    let point = if pass_angle { touch(far.1) } else { defect.1 };
    let mut r = PropertyReport::new(
        id,
        pass_angle && pass_spread,
        Some(Witness::Radial { point, center: o }),
        if pass_spread { defect.0 } else { spread },
    );
    r.measures = vec![("angle_defect", defect.0), ("radial_spread", spread), ("ode_residual", residual)];
    r
}

/// Runs every checker in order. Diagonal checks need a smooth strictly convex body; the
/// centre checks need the symmetry centre.
pub fn property_ladder(k: &ConvexBody, tol: &Tolerance) -> Vec<PropertyReport> {
    let mut out = Vec::with_capacity(9);
    out.push(scan_directions(k, tol, check_perpendicularly_opposed));
    out.push(scan_directions(k, tol, check_chord_equality));
    let smooth = check_smoothness(k, tol);
    let strict = check_strict_convexity(k, tol);
    let regular = smooth.verdict == PropVerdict::Pass && strict.verdict == PropVerdict::Pass;
    out.push(smooth);
    out.push(strict);

    if regular {
        out.push(check_perpendicular_diagonals_bisect(k, tol));
        let ds = diagonals(k, DIAGONAL_SCAN, tol);
        let stride = (ds.len() / SYMMETRY_PROBES).max(1);
        let worst = ds
            .iter()
            .step_by(stride)
            .map(|(_, d)| check_diagonal_symmetry(k, d, tol))
            .max_by(|a, b| a.magnitude.total_cmp(&b.magnitude));
        out.push(worst.unwrap_or_else(|| PropertyReport::unknown(PropertyId::DiagonalSymmetry, "no diagonal found")));
    } else {
        for id in [PropertyId::PerpendicularDiagonalsBisect, PropertyId::DiagonalSymmetry] {
            out.push(PropertyReport::unknown(id, "needs a smooth strictly convex body"));
        }
    }

    let central = check_central_symmetry(k, tol);
    let center = (central.verdict == PropVerdict::Pass).then(|| central.center()).flatten();
    out.push(central);
    match center {
        Some(o) => {
            out.push(check_diagonals_through_center(k, o, tol));
            out.push(check_radial_perpendicularity(k, o, tol));
        }
        None => {
            for id in [PropertyId::DiagonalsThroughCenter, PropertyId::RadialPerpendicularity] {
                out.push(PropertyReport::unknown(id, "needs a centre of symmetry"));
            }
        }
    }
    out
}

/// Sampled body bounded by the star-shaped polar curve `r(α)` about the origin. The
/// curve must be convex.
pub fn polar_body(n: usize, r: impl Fn(f64) -> f64) -> ConvexBody {
    let fine = 16 * n;
    let pts: Vec<Point> = (0..fine)
        .map(|i| {
            let a = TAU * i as f64 / fine as f64;
            Point::unit(a) * r(a)
        })
        .collect();
    let da = TAU / fine as f64;
    // The touch point moves monotonically with the normal, so climb from the previous one.
    let cursor = std::cell::Cell::new(0usize);
    ConvexBody::sampled_from_fn(n, |nu| {
        let u = Point::unit(nu);
        let at = |i: usize| pts[i % fine].dot(u);
        let mut i = cursor.get();
        if i == 0 {
            i = (0..fine).max_by(|&a, &b| at(a).total_cmp(&at(b))).unwrap_or(0);
        }
        while at(i + 1) > at(i) {
            i = (i + 1) % fine;
        }
        while at(i + fine - 1) > at(i) {
            i = (i + fine - 1) % fine;
        }
        cursor.set(i.max(1));
        let a = TAU * i as f64 / fine as f64;
        golden_max(a - da, a + da, 80, |t| (Point::unit(t) * r(t)).dot(u)).1.max(at(i))
    })
}

/// The egg-shaped oval `r(α) = 1 + 0.1 cos α`.
pub fn egg_body(n: usize) -> ConvexBody {
    polar_body(n, |a| 1.0 + 0.1 * a.cos())
}
