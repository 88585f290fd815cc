//! Supporting lines, semitangents, secants, slide-turn traversal and common tangents.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::convex_kernel::numeric::{bisect_root, golden_max};
use crate::convex_kernel::{normalize, signed_diff, Angle, ConvexBody, DirectedLine, Face, Point, Tolerance};
use crate::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointedSupportingLine {
    pub point: Point,
    pub line: DirectedLine,
}

impl PointedSupportingLine {
    /// Checks that the point lies on the line and the line supports `k`.
    pub fn is_valid_for(&self, k: &ConvexBody, eps: f64) -> bool {
        let nu = self.line.outward_normal().radians();
        self.line.signed_distance(self.point).abs() <= eps && (k.support(nu) - self.line.offset()).abs() <= eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemitangentPair {
    pub first: DirectedLine,
    pub last: DirectedLine,
}

impl SemitangentPair {
    /// Counterclockwise angle from `first` to `last`.
    pub fn gap(&self) -> f64 {
        self.first.direction.ccw_to(self.last.direction)
    }
}

/// The supporting line of direction `theta`, with the body on its left.
pub fn supporting_line(k: &ConvexBody, theta: f64) -> DirectedLine {
    let nu = theta - FRAC_PI_2;
    DirectedLine::new(k.face(nu).first, Angle::new(theta))
}

pub fn pointed_supporting_line(k: &ConvexBody, theta: f64) -> PointedSupportingLine {
    let line = supporting_line(k, theta);
    PointedSupportingLine { point: line.anchor, line }
}

fn require_boundary(k: &ConvexBody, p: Point, eps: f64) -> Result<()> {
    let d = k.point_margin(p);
    if d.abs() > eps {
        return Err(GeomError::NotOnBoundary { point: p, distance: d });
    }
    Ok(())
}

/// First and last supporting lines through a boundary point under counterclockwise rotation.
pub fn semitangents(k: &ConvexBody, p: Point, tol: &Tolerance) -> Result<SemitangentPair> {
    require_boundary(k, p, tol.eps_geom)?;
    let (start, width) = k.normal_cone(p, tol.eps_geom.max(1e-12));
    let first = DirectedLine::new(p, Angle::new(start + FRAC_PI_2));
    let last = DirectedLine::new(p, Angle::new(start + width + FRAC_PI_2));
    Ok(SemitangentPair { first, last })
}

/// Boundary points `(X, Y)` of a secant: `X` where the line enters the body, `Y` where it
/// leaves. The counterclockwise boundary arc from `X` to `Y` lies on the right of the line.
pub fn secant_boundary_points(k: &ConvexBody, l: &DirectedLine) -> Result<(Point, Point)> {
    let (t0, t1) = k.chord(l.anchor, l.unit()).ok_or(GeomError::NotASecant)?;
    Ok((l.point_at(t0), l.point_at(t1)))
}

/// For a secant `l`, the supporting line `l'` with the same direction (on the right of `l`)
/// and the last point `Z` of its touch set.
pub fn parallel_support_beyond_secant(k: &ConvexBody, l: &DirectedLine) -> Result<(Point, DirectedLine)> {
    secant_boundary_points(k, l)?;
    let theta = l.direction.radians();
    let face = k.face(theta - FRAC_PI_2);
    Ok((face.last, DirectedLine::new(face.first, l.direction)))
}

/// Position reached by a slide-turn traversal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlideState {
    pub psl: PointedSupportingLine,
    /// Total rotation since the start, in radians.
    pub swept: f64,
}

/// Directions are offsets from the starting direction.
enum Leg {
    Slide { theta: f64, from: Point, to: Point },
    Turn { from: f64, to: f64 },
}

/// Offsets in `(0, 2π]` from `theta0` of the directions at which the traversal slides.
fn knots(k: &ConvexBody, theta0: f64, steps: usize) -> Vec<f64> {
    let offset = |t: f64| {
        let d = normalize(t - theta0);
        if d <= 1e-15 {
            TAU
        } else {
            d
        }
    };
    let mut out: Vec<f64> = match k {
        ConvexBody::Polygon { .. } => Vec::new(),
        _ => (1..=steps).map(|i| TAU * i as f64 / steps as f64).collect(),
    };
    out.extend(k.flat_faces().into_iter().map(|(nu, _)| offset(nu + FRAC_PI_2)));
    out.push(TAU);
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    out
}

/// Advances a pointed supporting line forward around `k` (slide along faces, turn through
/// corner cones) and returns the first state where `stop` holds. Smooth boundaries are
/// stepped with `steps` uniform turns per revolution.
pub fn slide_turn(
    k: &ConvexBody,
    start: PointedSupportingLine,
    mut stop: impl FnMut(&SlideState) -> bool,
    steps: usize,
) -> Result<SlideState> {
    let theta0 = start.line.direction.radians();
    // Positions are tracked by their offset from `theta0` so a full turn sweeps exactly 2π.
    let state = |p: Point, d: f64| SlideState {
        psl: PointedSupportingLine { point: p, line: DirectedLine::new(p, Angle::new(theta0 + d)) },
        swept: d,
    };
    let s0 = state(start.point, 0.0);
    if stop(&s0) {
        return Ok(s0);
    }
    let face0 = k.face(theta0 - FRAC_PI_2);
    let mut legs = vec![Leg::Slide { theta: 0.0, from: start.point, to: face0.last }];
    let mut prev = 0.0;
    for d in knots(k, theta0, steps) {
        legs.push(Leg::Turn { from: prev, to: d });
        let f = k.face(theta0 + d - FRAC_PI_2);
        legs.push(Leg::Slide { theta: d, from: f.first, to: f.last });
        prev = d;
    }
    let at = |leg: &Leg, s: f64| -> SlideState {
        match *leg {
            Leg::Slide { theta, from, to } => state(from.lerp(to, s), theta),
            Leg::Turn { from, to } => {
                let d = from + (to - from) * s;
                state(k.face(theta0 + d - FRAC_PI_2).first, d)
            }
        }
    };
    for leg in &legs {
        let end = at(leg, 1.0);
        if stop(&end) {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..80 {
                let m = 0.5 * (lo + hi);
                if stop(&at(leg, m)) {
                    hi = m;
                } else {
                    lo = m;
                }
            }
            return Ok(at(leg, hi));
        }
    }
    Err(GeomError::ExhaustedRevolution)
}

/// A line supporting two bodies at once, both on its left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommonTangent {
    pub line: DirectedLine,
    /// Outward normal of the line.
    pub normal: f64,
    pub face_k: Face,
    pub face_k2: Face,
    /// The support difference touches zero without changing sign here.
    pub grazing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentSet {
    pub tangents: Vec<CommonTangent>,
    /// The two support functions agree everywhere: every supporting line is common.
    pub coincident: bool,
}

fn tangent_at(k: &ConvexBody, k2: &ConvexBody, nu: f64, grazing: bool) -> CommonTangent {
    let nu = normalize(nu);
    let face_k = k.face(nu);
    let face_k2 = k2.face(nu);
    CommonTangent {
        line: DirectedLine::new(face_k.first, Angle::new(nu + FRAC_PI_2)),
        normal: nu,
        face_k,
        face_k2,
        grazing,
    }
}

/// Common tangents with the default grid of `4·samples` normals.
pub fn common_tangents(k: &ConvexBody, k2: &ConvexBody, tol: &Tolerance) -> TangentSet {
    common_tangents_with(k, k2, tol, 4 * tol.samples)
}

/// Roots of `g(ν) = h_K(ν) − h_K'(ν)` located on a grid of `n` normals (plus breakpoints)
/// and refined by bisection. Tangential zeros are reported with `grazing` set.
pub fn common_tangents_with(k: &ConvexBody, k2: &ConvexBody, tol: &Tolerance, n: usize) -> TangentSet {
    let g = |nu: f64| k.support(nu) - k2.support(nu);
    let zero = tol.eps_geom;
    let step = TAU / n as f64;
    // An irrational offset keeps symmetric roots off the grid.
    let shift = std::f64::consts::FRAC_1_PI * step;
    let mut grid: Vec<f64> = (0..n).map(|i| shift + step * i as f64).collect();
    grid.extend(k.breakpoints().into_iter().chain(k2.breakpoints()).map(normalize));
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let m = grid.len();
    let vals: Vec<f64> = grid.iter().map(|&nu| g(nu)).collect();
    if vals.iter().all(|v| v.abs() <= zero) {
        return TangentSet { tangents: Vec::new(), coincident: true };
    }
    let sign = |v: f64| -> i8 {
        if v > zero {
            1
        } else if v < -zero {
            -1
        } else {
            0
        }
    };
    let signs: Vec<i8> = vals.iter().map(|&v| sign(v)).collect();
    // Unwrapped position of grid index i + j·m.
    let pos = |i: usize| grid[i % m] + TAU * (i / m) as f64;
    let start = (0..m).find(|&i| signs[i] != 0).expect("some nonzero value");
    let mut roots: Vec<(f64, bool)> = Vec::new();
    let root_in = |a: f64, b: f64, ga: f64| bisect_root(a, b, ga, 200, tol.eps_angle.min(1e-14), g);

    let mut i = start;
    while i < start + m {
        let j = i + 1;
        let sj = signs[j % m];
        if sj == 0 {
            // Walk the run of near-zero values.
            let mut e = j;
            while signs[e % m] == 0 {
                e += 1;
            }
            let (a, b) = (pos(i), pos(e));
            let si = signs[i % m];
            let se = signs[e % m];
            if si != se && e - j <= 2 {
                roots.push((root_in(a, b, vals[i % m]), false));
            } else {
                // Tangential contact or a common arc: report the flattest point.
                let (nu, _) = golden_max(a, b, 200, |t| -g(t).abs());
                roots.push((nu, true));
            }
            i = e;
            continue;
        }
        let si = signs[i % m];
        if si != sj {
            roots.push((root_in(pos(i), pos(j), vals[i % m]), false));
        } else {
            // Same sign on both sides: look for a dip towards zero between i-1 and j.
            let prev = i + m - 1;
            let vi = vals[i % m].abs();
            if signs[prev % m] == si && vi <= vals[prev % m].abs() && vi <= vals[j % m].abs() {
                let (a, b) = (pos(prev) - TAU, pos(j));
                let s = f64::from(si);
                let (nu, best) = golden_max(a, b, 200, |t| -s * g(t));
                let low = -best;
                if low < -zero {
                    roots.push((root_in(a, nu, vals[prev % m]), false));
                    roots.push((root_in(nu, b, -s * low.abs()), false));
                } else if low <= zero {
                    roots.push((nu, true));
                }
            }
        }
        i = j;
    }
    let mut tangents: Vec<CommonTangent> = roots.into_iter().map(|(nu, gr)| tangent_at(k, k2, nu, gr)).collect();
    tangents.sort_by(|a, b| a.normal.total_cmp(&b.normal));
    tangents.dedup_by(|a, b| signed_diff(a.normal, b.normal).abs() < 1e-9);
    if tangents.len() > 1 {
        let (f, l) = (tangents[0].normal, tangents[tangents.len() - 1].normal);
        if signed_diff(f, l).abs() < 1e-9 {
            tangents.pop();
        }
    }
    TangentSet { tangents, coincident: false }
}

/// Result of the intersection-point construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentBetween {
    pub line: DirectedLine,
    /// First point of the line's contact with `K'`.
    pub p_dagger: Point,
    /// Last point of the line's contact with `K`.
    pub p_ddagger: Point,
}

/// For a common boundary point `P` where both bodies are smooth, a common tangent whose
/// direction lies strictly between the tangent directions of `K` and `K'` at `P`, with the
/// contact with `K'` coming first.
pub fn common_tangent_between(
    k: &ConvexBody,
    k2: &ConvexBody,
    p: Point,
    range: Option<(f64, f64)>,
    tol: &Tolerance,
) -> Result<TangentBetween> {
    let s1 = semitangents(k, p, tol)?;
    let s2 = semitangents(k2, p, tol)?;
    if s1.gap() > tol.eps_angle || s2.gap() > tol.eps_angle {
        return Err(GeomError::Precondition("a body has a corner at P".into()));
    }
    let d1 = s1.first.direction;
    let alpha = d1.ccw_to(s2.first.direction);
    if !(alpha > tol.eps_angle && alpha < PI - tol.eps_angle) {
        return Err(GeomError::Precondition(format!("tangent direction gap {alpha} is not in (0, π)")));
    }
    let (lo, hi) = range.unwrap_or((d1.radians(), d1.radians() + alpha));
    let span = normalize(hi - lo);
    let set = common_tangents(k, k2, tol);
    let mut cands: Vec<(f64, CommonTangent)> = set
        .tangents
        .into_iter()
        .map(|t| (normalize(t.line.direction.radians() - lo), t))
        .filter(|(off, _)| *off > tol.eps_angle && *off < span - tol.eps_angle)
        .collect();
    cands.sort_by(|a, b| a.0.total_cmp(&b.0));
    let eps = tol.eps_geom;
    for (_, t) in cands {
        let pd = t.face_k2.first;
        let pdd = t.face_k.last;
        let ordered = t.line.project(pd) < t.line.project(pdd) - eps;
        if ordered && k.point_margin(pd) < -eps && k2.point_margin(pdd) < -eps {
            return Ok(TangentBetween { line: t.line, p_dagger: pd, p_ddagger: pdd });
        }
    }
    Err(GeomError::Precondition("no common tangent with the required order between the tangent directions".into()))
}
