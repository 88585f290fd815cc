//! Crossing of two convex bodies along two common tangents, and the search for an
//! isometric copy that crosses a given body.

use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::convex_kernel::numeric::bisect_root;
use crate::convex_kernel::{Angle, ConvexBody, DirectedLine, Point, Similarity, Tolerance};
use crate::tangency::{common_tangents, common_tangents_with, CommonTangent};

/// Which body comes first on both tangents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// `K` leads, `K'` trails.
    KFirst,
    /// `K'` leads, `K` trails.
    K2First,
}

impl Role {
    pub fn swapped(self) -> Role {
        match self {
            Role::KFirst => Role::K2First,
            Role::K2First => Role::KFirst,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingWitness {
    pub t1: DirectedLine,
    pub t2: DirectedLine,
    /// First point of the union on `t1`; lies in the leading body only.
    pub u1: Point,
    /// Last point of the union on `t1`; lies in the trailing body only.
    pub u1p: Point,
    pub u2: Point,
    pub u2p: Point,
    pub role: Role,
    /// Smallest of the four distances by which the points avoid the other body.
    pub margin: f64,
}

impl CrossingWitness {
    /// The same witness for the pair mapped by `phi`. A reflection reverses the tangents,
    /// which exchanges first and last points and so flips the role.
    pub fn transformed(&self, phi: &Similarity) -> CrossingWitness {
        let line = |l: &DirectedLine| {
            let a = phi.apply_point(l.anchor);
            let b = phi.apply_point(l.point_at(1.0));
            let m = DirectedLine::through(a, b).unwrap_or(*l);
            if phi.reflect {
                m.reversed()
            } else {
                m
            }
        };
        let p = |x: Point| phi.apply_point(x);
        let (u1, u1p, u2, u2p, role) = if phi.reflect {
            (p(self.u1p), p(self.u1), p(self.u2p), p(self.u2), self.role.swapped())
        } else {
            (p(self.u1), p(self.u1p), p(self.u2), p(self.u2p), self.role)
        };
        CrossingWitness {
            t1: line(&self.t1),
            t2: line(&self.t2),
            u1,
            u1p,
            u2,
            u2p,
            role,
            margin: self.margin * phi.scale,
        }
    }

    /// Re-checks the witness against the bodies: both lines support both bodies and the
    /// four points avoid the other body by more than `eps`. Returns the smallest margin.
    pub fn validate(&self, k: &ConvexBody, k2: &ConvexBody, eps: f64) -> Option<f64> {
        let (a, b) = match self.role {
            Role::KFirst => (k, k2),
            Role::K2First => (k2, k),
        };
        for t in [&self.t1, &self.t2] {
            let nu = t.outward_normal().radians();
            if (a.support(nu) - t.offset()).abs() > eps || (b.support(nu) - t.offset()).abs() > eps {
                return None;
            }
        }
        if self.t1.approx_eq(&self.t2, eps, 1e-9) {
            return None;
        }
        let checks = [
            (self.u1, a, b, &self.t1, true),
            (self.u2, a, b, &self.t2, true),
            (self.u1p, b, a, &self.t1, false),
            (self.u2p, b, a, &self.t2, false),
        ];
        let mut worst = f64::INFINITY;
        for (p, own, other, t, _) in checks {
            if own.point_margin(p) < -eps || t.signed_distance(p).abs() > eps {
                return None;
            }
            worst = worst.min(-other.point_margin(p));
        }
        (worst > eps).then_some(worst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CrossVerdict {
    Witness(CrossingWitness),
    NoCrossing,
    /// A tangential common tangent prevents a decision.
    Unknown {
        grazing_normal: f64,
    },
}

impl CrossVerdict {
    pub fn witness(&self) -> Option<&CrossingWitness> {
        match self {
            CrossVerdict::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// Per-tangent strictness of each role: positive when the leading body's first point and
/// the trailing body's last point are outside the other body.
#[derive(Debug, Clone, Copy)]
struct TangentPattern {
    score_k_first: f64,
    score_k2_first: f64,
}

fn role_score(
    t: &CommonTangent,
    a_face: (Point, Point),
    b_face: (Point, Point),
    a: &ConvexBody,
    b: &ConvexBody,
) -> f64 {
    let proj = |p: Point| t.line.project(p);
    let gap_first = proj(b_face.0) - proj(a_face.0);
    let s_first = if gap_first > 0.0 { -b.point_margin(a_face.0) } else { gap_first };
    let gap_last = proj(b_face.1) - proj(a_face.1);
    let s_last = if gap_last > 0.0 { -a.point_margin(b_face.1) } else { gap_last };
    s_first.min(s_last)
}

fn pattern(t: &CommonTangent, k: &ConvexBody, k2: &ConvexBody) -> TangentPattern {
    let fk = (t.face_k.first, t.face_k.last);
    let fk2 = (t.face_k2.first, t.face_k2.last);
    TangentPattern { score_k_first: role_score(t, fk, fk2, k, k2), score_k2_first: role_score(t, fk2, fk, k2, k) }
}

/// Best pair of distinct tangents for one role: `(score, i, j)`.
fn best_pair(scores: &[f64]) -> Option<(f64, usize, usize)> {
    if scores.len() < 2 {
        return None;
    }
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let (i, j) = (idx[0].min(idx[1]), idx[0].max(idx[1]));
    Some((scores[idx[1]], i, j))
}

fn evaluate(tangents: &[CommonTangent], k: &ConvexBody, k2: &ConvexBody) -> Option<(f64, Role, usize, usize)> {
    let pats: Vec<TangentPattern> = tangents.iter().map(|t| pattern(t, k, k2)).collect();
    let a: Vec<f64> = pats.iter().map(|p| p.score_k_first).collect();
    let b: Vec<f64> = pats.iter().map(|p| p.score_k2_first).collect();
    let ra = best_pair(&a).map(|(s, i, j)| (s, Role::KFirst, i, j));
    let rb = best_pair(&b).map(|(s, i, j)| (s, Role::K2First, i, j));
    match (ra, rb) {
        (Some(x), Some(y)) => Some(if y.0 > x.0 { y } else { x }),
        (x, y) => x.or(y),
    }
}

/// Search objective: the strictness of the best near-witness. Positive exactly when a
/// pair of tangents shows the crossing pattern.
pub fn crossing_score(k: &ConvexBody, k2: &ConvexBody, tol: &Tolerance) -> f64 {
    crossing_score_with(k, k2, tol, 4 * tol.samples)
}

/// Score value used when fewer than two common tangents exist.
const NO_PAIR: f64 = -1.0;

pub fn crossing_score_with(k: &ConvexBody, k2: &ConvexBody, tol: &Tolerance, grid: usize) -> f64 {
    let set = common_tangents_with(k, k2, tol, grid);
    if set.coincident {
        return NO_PAIR;
    }
    evaluate(&set.tangents, k, k2).map_or(NO_PAIR, |e| e.0)
}

/// Whether `k` and `k2` cross each other, with a witness when they do.
pub fn crosses(k: &ConvexBody, k2: &ConvexBody, tol: &Tolerance) -> CrossVerdict {
    let set = common_tangents(k, k2, tol);
    if set.coincident {
        return CrossVerdict::NoCrossing;
    }
    let ts = &set.tangents;
    if let Some((score, role, i, j)) = evaluate(ts, k, k2) {
        if score > tol.eps_geom {
            let pick = |t: &CommonTangent| match role {
                Role::KFirst => (t.face_k.first, t.face_k2.last),
                Role::K2First => (t.face_k2.first, t.face_k.last),
            };
            let (u1, u1p) = pick(&ts[i]);
            let (u2, u2p) = pick(&ts[j]);
            return CrossVerdict::Witness(CrossingWitness {
                t1: ts[i].line,
                t2: ts[j].line,
                u1,
                u1p,
                u2,
                u2p,
                role,
                margin: score,
            });
        }
    }
    match ts.iter().find(|t| t.grazing) {
        Some(t) => CrossVerdict::Unknown { grazing_normal: t.normal },
        None => CrossVerdict::NoCrossing,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub rotation_steps: usize,
    pub translation_grid: usize,
    pub include_reflection: bool,
    pub refine_iters: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { rotation_steps: 360, translation_grid: 33, include_reflection: true, refine_iters: 40 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.rotation_steps == 0 || self.translation_grid == 0 {
            return Err("search grid sizes must be positive".into());
        }
        Ok(())
    }

    pub fn candidates(&self) -> usize {
        self.rotation_steps * (1 + usize::from(self.include_reflection)) * self.translation_grid.pow(2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DiskTest {
    NoWitnessFound { candidates: usize, config: SearchConfig },
    Witness { phi: Similarity, witness: CrossingWitness, candidate: usize },
}

/// Isometry `x ↦ R(rho)·F(x − c) + c + t`.
pub fn isometry_about(c: Point, rho: f64, reflect: bool, t: Point) -> Similarity {
    let lin = Similarity { rotation: Angle::new(rho), reflect, scale: 1.0, translation: Point::ORIGIN };
    Similarity { translation: c + t - lin.apply_vector(c), ..lin }
}

/// Coarse test of one grid isometry using tabulated support values.
struct Coarse<'a> {
    k: &'a ConvexBody,
    c: Point,
    m: usize,
    q: usize,
    /// `h_K(ν_i) − ⟨c, ν_i⟩`.
    table: Vec<f64>,
    units: Vec<Point>,
    zero: f64,
}

impl<'a> Coarse<'a> {
    fn new(k: &'a ConvexBody, c: Point, rotations: usize) -> Self {
        let q = 256usize.div_ceil(rotations).max(1);
        let m = rotations * q;
        let units: Vec<Point> = (0..m).map(|i| Point::unit(TAU * i as f64 / m as f64)).collect();
        let table = units.iter().enumerate().map(|(i, u)| k.support(TAU * i as f64 / m as f64) - c.dot(*u)).collect();
        let zero = 1e-12 * (1.0 + k.radius_about(c));
        Self { k, c, m, q, table, units, zero }
    }

    /// Positive when the tangents located on the table grid show a repeated role.
    fn promising(&self, r: usize, reflect: bool, t: Point) -> bool {
        let m = self.m;
        let g: Vec<f64> = (0..m)
            .map(|i| {
                let idx = if reflect { (r * self.q + m - i) % m } else { (i + m - (r * self.q) % m) % m };
                self.table[i] - self.table[idx] - t.dot(self.units[i])
            })
            .collect();
        let sgn = |v: f64| (v > self.zero) as i8 - (v < -self.zero) as i8;
        let changes: Vec<usize> = (0..m)
            .filter(|&i| {
                let (a, b) = (sgn(g[i]), sgn(g[(i + 1) % m]));
                a != 0 && b != 0 && a != b
            })
            .collect();
        if changes.len() < 3 {
            return false;
        }
        let phi = isometry_about(self.c, TAU * r as f64 / (m / self.q) as f64, reflect, t);
        let k2 = self.k.apply(&phi);
        let step = TAU / m as f64;
        let mut firsts = [0usize; 2];
        for &i in &changes {
            let a = step * i as f64;
            let f = |nu: f64| self.k.support(nu) - k2.support(nu);
            let nu = bisect_root(a, a + step, g[i], 20, 0.0, f);
            let fk = self.k.face(nu);
            let fk2 = k2.face(nu);
            let u = Point::unit(nu + FRAC_PI_2);
            let (k_first, k_last) = (fk.first.dot(u), fk.last.dot(u));
            let (k2_first, k2_last) = (fk2.first.dot(u), fk2.last.dot(u));
            if k_first < k2_first && k2_last > k_last {
                firsts[0] += 1;
            } else if k2_first < k_first && k_last > k2_last {
                firsts[1] += 1;
            }
        }
        firsts.iter().any(|&n| n >= 2)
    }
}

/// Pattern search on `(rho, tx, ty)` maximising the crossing score.
fn refine(
    k: &ConvexBody,
    c: Point,
    start: (f64, Point),
    reflect: bool,
    steps: (f64, f64),
    iters: usize,
    tol: &Tolerance,
) -> Similarity {
    let score = |rho: f64, t: Point| {
        let phi = isometry_about(c, rho, reflect, t);
        crossing_score_with(k, &k.apply(&phi), tol, 1024)
    };
    let (mut rho, mut t) = start;
    let mut best = score(rho, t);
    let (mut dr, mut dt) = steps;
    for _ in 0..iters {
        let moves = [
            (dr, Point::ORIGIN),
            (-dr, Point::ORIGIN),
            (0.0, Point::new(dt, 0.0)),
            (0.0, Point::new(-dt, 0.0)),
            (0.0, Point::new(0.0, dt)),
            (0.0, Point::new(0.0, -dt)),
        ];
        let mut improved = false;
        for (a, b) in moves {
            let s = score(rho + a, t + b);
            if s > best {
                best = s;
                rho += a;
                t += b;
                improved = true;
                break;
            }
        }
        if !improved {
            dr *= 0.5;
            dt *= 0.5;
        }
    }
    isometry_about(c, rho, reflect, t)
}

/// Searches isometric copies of `k` for one that crosses `k`. The grid is scanned
/// rotation-major, then reflection, then translations row by row; the first validated
/// witness in that order is returned.
pub fn disk_test(k: &ConvexBody, cfg: &SearchConfig, tol: &Tolerance) -> DiskTest {
    let (lo, hi) = k.bbox();
    let c = lo.midpoint(hi);
    let w = (hi.x - lo.x).max(hi.y - lo.y);
    let n_t = cfg.translation_grid;
    let coord = |i: usize| {
        if n_t == 1 {
            0.0
        } else {
            -w + 2.0 * w * i as f64 / (n_t - 1) as f64
        }
    };
    let coarse = Coarse::new(k, c, cfg.rotation_steps);
    let flips: Vec<bool> = if cfg.include_reflection { vec![false, true] } else { vec![false] };
    let per_rotation = flips.len() * n_t * n_t;
    let steps = (TAU / cfg.rotation_steps as f64, if n_t > 1 { 2.0 * w / (n_t - 1) as f64 } else { w });

    let found = (0..cfg.rotation_steps).into_par_iter().find_map_first(|r| {
        let rho = TAU * r as f64 / cfg.rotation_steps as f64;
        for (fi, &reflect) in flips.iter().enumerate() {
            for iy in 0..n_t {
                for ix in 0..n_t {
                    let t = Point::new(coord(ix), coord(iy));
                    if !coarse.promising(r, reflect, t) {
                        continue;
                    }
                    let phi = refine(k, c, (rho, t), reflect, steps, cfg.refine_iters, tol);
                    let k2 = k.apply(&phi);
                    if let CrossVerdict::Witness(wit) = crosses(k, &k2, tol) {
                        if wit.validate(k, &k2, tol.eps_geom).is_some() {
                            let index = r * per_rotation + fi * n_t * n_t + iy * n_t + ix;
                            return Some((phi, wit, index));
                        }
                    }
                }
            }
        }
        None
    });
    match found {
        Some((phi, witness, candidate)) => DiskTest::Witness { phi, witness, candidate },
        None => DiskTest::NoWitnessFound { candidates: cfg.candidates(), config: *cfg },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn translated_disks_do_not_cross() {
        let a = ConvexBody::disk(Point::ORIGIN, 1.0);
        let b = ConvexBody::disk(Point::new(0.5, 0.0), 1.0);
        assert_eq!(crosses(&a, &b, &tol()), CrossVerdict::NoCrossing);
        assert!(crossing_score(&a, &b, &tol()) <= 0.0);
        assert_eq!(crosses(&a, &a, &tol()), CrossVerdict::NoCrossing);
    }

    #[test]
    fn rotated_ellipses_cross_on_diagonal_tangents() {
        let (a, b) = (1.0f64, 0.6f64);
        let e1 = ConvexBody::ellipse(Point::ORIGIN, a, b, 0.0);
        let e2 = ConvexBody::ellipse(Point::ORIGIN, a, b, FRAC_PI_2);
        let w = *crosses(&e1, &e2, &tol()).witness().expect("witness");
        assert_eq!(w.role, Role::KFirst);
        let touch = |nu: f64| {
            let h = (a * a * nu.cos().powi(2) + b * b * nu.sin().powi(2)).sqrt();
            Point::new(a * a * nu.cos() / h, b * b * nu.sin() / h)
        };
        let n1 = w.t1.outward_normal().radians();
        let n2 = w.t2.outward_normal().radians();
        assert!((n1 - PI / 4.0).abs() < 1e-9 && (n2 - 5.0 * PI / 4.0).abs() < 1e-9);
        assert!(w.u1.dist(touch(PI / 4.0)) < 1e-9);
        assert!(w.u2.dist(touch(5.0 * PI / 4.0)) < 1e-9);
        assert!(w.validate(&e1, &e2, 1e-9).is_some());
        assert!(crossing_score(&e1, &e2, &tol()) > 0.0);
        let rev = *crosses(&e2, &e1, &tol()).witness().expect("symmetric");
        assert_eq!(rev.role, Role::K2First);
    }

    #[test]
    fn forged_witness_fails_validation() {
        let (e1, e2) = (
            ConvexBody::ellipse(Point::ORIGIN, 1.0, 0.6, 0.0),
            ConvexBody::ellipse(Point::ORIGIN, 1.0, 0.6, FRAC_PI_2),
        );
        let mut w = *crosses(&e1, &e2, &tol()).witness().unwrap();
        w.u1 = w.u1p;
        assert!(w.validate(&e1, &e2, 1e-9).is_none());
    }

    #[test]
    fn isometry_about_center() {
        let c = Point::new(1.0, 2.0);
        let phi = isometry_about(c, FRAC_PI_2, false, Point::new(0.5, 0.0));
        assert!(phi.apply_point(c).dist(Point::new(1.5, 2.0)) < 1e-15);
        let psi = isometry_about(c, 0.0, true, Point::ORIGIN);
        assert!(psi.apply_point(Point::new(1.0, 3.0)).dist(Point::new(1.0, 1.0)) < 1e-15);
    }

    #[test]
    fn coarse_table_matches_exact_support() {
        let k = ConvexBody::ellipse(Point::new(0.3, -0.2), 1.0, 0.7, 0.4);
        let c = k.center();
        let co = Coarse::new(&k, c, 36);
        for &(r, reflect) in &[(5usize, false), (11, true)] {
            let t = Point::new(0.1, -0.3);
            let phi = isometry_about(c, TAU * r as f64 / 36.0, reflect, t);
            let k2 = k.apply(&phi);
            for i in 0..co.m {
                let nu = TAU * i as f64 / co.m as f64;
                let idx = if reflect { (r * co.q + co.m - i) % co.m } else { (i + co.m - r * co.q) % co.m };
                let table = co.table[idx] + (c + t).dot(co.units[i]);
                assert!((table - k2.support(nu)).abs() < 1e-12);
            }
        }
    }
}
