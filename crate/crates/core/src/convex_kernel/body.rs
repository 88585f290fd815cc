use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::angle::{normalize, signed_diff};
use super::numeric::{bisect_predicate, bisect_root, golden_max};
use super::point::Point;
use super::polygon;
use super::sampled::SupportSampled;
use super::shape::Shape;
use super::similarity::Similarity;

/// Touch set of a supporting line, ordered along the line direction `ν + π/2`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Face {
    pub first: Point,
    pub last: Point,
}

impl Face {
    pub fn point(p: Point) -> Self {
        Self { first: p, last: p }
    }

    /// Orders two touch points along the direction of the supporting line with normal `nu`.
    pub fn ordered(a: Point, b: Point, nu: f64) -> Self {
        let u = Point::unit(nu + FRAC_PI_2);
        if a.dot(u) <= b.dot(u) {
            Self { first: a, last: b }
        } else {
            Self { first: b, last: a }
        }
    }

    pub fn midpoint(&self) -> Point {
        self.first.midpoint(self.last)
    }

    pub fn length(&self) -> f64 {
        self.first.dist(self.last)
    }
}

/// A compact convex subset of the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    /// A canonical shape placed by a similarity.
    Analytic {
        shape: Shape,
        pose: Similarity,
    },
    /// Counterclockwise vertices; one or two vertices give a point or a segment.
    Polygon {
        vertices: Vec<Point>,
    },
    Sampled(SupportSampled),
    /// Convex hull of a body and finitely many points outside it.
    Hull {
        base: Box<ConvexBody>,
        points: Vec<Point>,
    },
}

const HULL_PIECE: u64 = 1 << 40;

impl ConvexBody {
    pub fn analytic(shape: Shape, pose: Similarity) -> Self {
        ConvexBody::Analytic { shape, pose }
    }

    pub fn disk(center: Point, radius: f64) -> Self {
        Self::analytic(Shape::Disk { radius }, Similarity::translation(center))
    }

    pub fn point(p: Point) -> Self {
        Self::disk(p, 0.0)
    }

    pub fn ellipse(center: Point, a: f64, b: f64, rotation: f64) -> Self {
        Self::analytic(Shape::Ellipse { a, b }, placed(center, rotation))
    }

    /// The segment `[p, q]`; a singleton when `p == q`.
    pub fn segment(p: Point, q: Point) -> Self {
        let d = q - p;
        if d.norm() == 0.0 {
            return Self::point(p);
        }
        Self::analytic(Shape::Segment { half_length: 0.5 * d.norm() }, placed(p.midpoint(q), d.angle()))
    }

    pub fn reuleaux(center: Point, width: f64, rotation: f64) -> Self {
        Self::analytic(Shape::Reuleaux { width }, placed(center, rotation))
    }

    pub fn stadium(center: Point, half_length: f64, radius: f64, rotation: f64) -> Self {
        Self::analytic(Shape::Stadium { half_length, radius }, placed(center, rotation))
    }

    /// Strictly convex counterclockwise polygon.
    pub fn polygon(vertices: Vec<Point>) -> Result<Self, String> {
        polygon::validate_ccw(&vertices)?;
        Ok(ConvexBody::Polygon { vertices })
    }

    /// Convex hull of a nonempty point set.
    pub fn hull_of(points: &[Point]) -> Self {
        ConvexBody::Polygon { vertices: polygon::convex_hull(points) }
    }

    pub fn sampled(values: Vec<f64>) -> Result<Self, String> {
        SupportSampled::new(values).map(ConvexBody::Sampled)
    }

    pub fn sampled_from_fn(n: usize, f: impl Fn(f64) -> f64) -> Self {
        ConvexBody::Sampled(SupportSampled::from_fn(n, f))
    }

    pub fn validate(&self) -> Result<(), String> {
        match self {
            ConvexBody::Analytic { shape, pose } => {
                shape.validate()?;
                let t = pose.translation;
                if !(pose.scale.is_finite() && pose.scale > 0.0 && t.is_finite() && pose.rotation.radians().is_finite())
                {
                    return Err(format!("invalid pose {pose:?}"));
                }
                Ok(())
            }
            ConvexBody::Polygon { vertices } => polygon::validate_ccw(vertices),
            ConvexBody::Sampled(s) => SupportSampled::new(s.values().to_vec()).map(|_| ()),
            ConvexBody::Hull { base, points } => {
                base.validate()?;
                if points.iter().all(|p| p.is_finite()) {
                    Ok(())
                } else {
                    Err("hull point is not finite".into())
                }
            }
        }
    }

    /// True when a sampled support function is involved.
    pub fn is_sampled(&self) -> bool {
        match self {
            ConvexBody::Sampled(_) => true,
            ConvexBody::Hull { base, .. } => base.is_sampled(),
            _ => false,
        }
    }

    pub fn vertices(&self) -> Option<&[Point]> {
        match self {
            ConvexBody::Polygon { vertices } => Some(vertices),
            _ => None,
        }
    }

    /// `h(ν) = max ⟨x, (cos ν, sin ν)⟩` over the body.
    pub fn support(&self, nu: f64) -> f64 {
        match self {
            ConvexBody::Analytic { shape, pose } => {
                pose.scale * shape.support(pose.pullback_angle(nu)) + pose.translation.dot(Point::unit(nu))
            }
            ConvexBody::Polygon { vertices } => polygon::support(vertices, nu),
            ConvexBody::Sampled(s) => s.support(nu),
            ConvexBody::Hull { base, points } => {
                let u = Point::unit(nu);
                points.iter().map(|p| p.dot(u)).fold(base.support(nu), f64::max)
            }
        }
    }

    /// Label of the smooth piece of `h` containing `nu`. Between two normals with the same
    /// label the radius of curvature stays below `curvature_bound`.
    pub fn piece(&self, nu: f64) -> u64 {
        match self {
            ConvexBody::Analytic { shape, pose } => shape.piece(pose.pullback_angle(nu)),
            ConvexBody::Polygon { vertices } => polygon::argmax(vertices, Point::unit(nu)) as u64,
            ConvexBody::Sampled(s) => s.piece(nu),
            ConvexBody::Hull { base, points } => {
                let u = Point::unit(nu);
                let hb = base.support(nu);
                let mut best = (None, hb);
                for (i, p) in points.iter().enumerate() {
                    let v = p.dot(u);
                    if v > best.1 {
                        best = (Some(i), v);
                    }
                }
                match best.0 {
                    Some(i) => HULL_PIECE + i as u64,
                    None => base.piece(nu),
                }
            }
        }
    }

    /// Tolerance used to decide whether a second touch point belongs to a face.
    fn face_eps(&self) -> f64 {
        1e-10 * (1.0 + self.support(0.0).abs().max(self.support(PI).abs()))
    }

    /// Touch set of the supporting line with outward normal `nu`.
    pub fn face(&self, nu: f64) -> Face {
        let (a, b) = match self {
            ConvexBody::Analytic { shape, pose } => {
                let (a, b) = shape.face(pose.pullback_angle(nu));
                (pose.apply_point(a), pose.apply_point(b))
            }
            ConvexBody::Polygon { vertices } => polygon::face(vertices, nu, self.face_eps()),
            ConvexBody::Sampled(s) => s.face(nu),
            ConvexBody::Hull { base, points } => {
                let eps = self.face_eps();
                let u = Point::unit(nu);
                let h = self.support(nu);
                let mut cands: Vec<Point> = points.iter().copied().filter(|p| p.dot(u) >= h - eps).collect();
                if base.support(nu) >= h - eps {
                    let f = base.face(nu);
                    cands.push(f.first);
                    cands.push(f.last);
                }
                let d = Point::unit(nu + FRAC_PI_2);
                let lo = cands.iter().copied().fold(cands[0], |m, p| if p.dot(d) < m.dot(d) { p } else { m });
                let hi = cands.iter().copied().fold(cands[0], |m, p| if p.dot(d) > m.dot(d) { p } else { m });
                (lo, hi)
            }
        };
        Face::ordered(a, b, nu)
    }

    /// Signed distance to the boundary, positive inside. Equals `min_ν h(ν) − ⟨x, ν⟩`.
    pub fn point_margin(&self, x: Point) -> f64 {
        match self {
            ConvexBody::Analytic { shape, pose } => pose.scale * shape.signed_distance(pose.inverse().apply_point(x)),
            ConvexBody::Polygon { vertices } => polygon::signed_distance(vertices, x),
            ConvexBody::Sampled(s) => s.signed_distance(x),
            ConvexBody::Hull { .. } => self.margin_by_support(x),
        }
    }

    /// `min_ν h(ν) − ⟨x, ν⟩` by a grid scan refined around the smallest values.
    pub fn margin_by_support(&self, x: Point) -> f64 {
        const N: usize = 1024;
        let step = TAU / N as f64;
        let f = |nu: f64| self.support(nu) - x.dot(Point::unit(nu));
        let vals: Vec<f64> = (0..N).map(|i| f(step * i as f64)).collect();
        let mut idx: Vec<usize> =
            (0..N).filter(|&i| vals[i] <= vals[(i + N - 1) % N] && vals[i] <= vals[(i + 1) % N]).collect();
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let mut best = vals.iter().copied().fold(f64::INFINITY, f64::min);
        for &i in idx.iter().take(4) {
            let c = step * i as f64;
            let (_, m) = golden_max(c - step, c + step, 100, |t| -f(t));
            best = best.min(-m);
        }
        best
    }

    /// Normal cone `(start, width)` at a boundary point, counterclockwise from `start`.
    pub fn normal_cone(&self, p: Point, eps: f64) -> (f64, f64) {
        match self {
            ConvexBody::Analytic { shape, pose } => {
                let local = pose.inverse().apply_point(p);
                let (s, w) = shape.normal_cone(local, eps / pose.scale);
                let start = if pose.reflect { pose.apply_angle(s + w) } else { pose.apply_angle(s) };
                (start, w)
            }
            ConvexBody::Polygon { vertices } => polygon::normal_cone(vertices, p, eps),
            ConvexBody::Sampled(s) => polygon::normal_cone(s.outline(), p, eps.max(1e-9)),
            ConvexBody::Hull { .. } => self.cone_by_support(p, eps),
        }
    }

    /// Normal cone from the set of normals whose supporting line passes within `eps` of `p`.
    pub fn cone_by_support(&self, p: Point, eps: f64) -> (f64, f64) {
        const N: usize = 4096;
        let step = TAU / N as f64;
        let on = |nu: f64| self.support(nu) - p.dot(Point::unit(nu)) <= eps.max(1e-12);
        let flags: Vec<bool> = (0..N).map(|i| on(step * i as f64)).collect();
        if flags.iter().all(|&b| b) {
            return (0.0, TAU);
        }
        // Longest circular run of normals touching p.
        let Some(start0) = (0..N).find(|&i| !flags[i]) else {
            return (0.0, TAU);
        };
        let mut best: Option<(usize, usize)> = None;
        let mut run: Option<(usize, usize)> = None;
        for k in 1..=N {
            let i = (start0 + k) % N;
            if flags[i] {
                run = Some(match run {
                    Some((s, l)) => (s, l + 1),
                    None => (i, 1),
                });
            } else if let Some(r) = run.take() {
                if best.is_none_or(|b| r.1 > b.1) {
                    best = Some(r);
                }
            }
        }
        let Some((s, len)) = best else {
            // No grid normal touches: a smooth point; refine the best normal.
            let gap = |nu: f64| self.support(nu) - p.dot(Point::unit(nu));
            let i = (0..N).min_by(|&a, &b| gap(step * a as f64).total_cmp(&gap(step * b as f64))).unwrap_or(0);
            let c = step * i as f64;
            let (best_nu, _) = golden_max(c - step, c + step, 100, |t| -gap(t));
            return (normalize(best_nu), 0.0);
        };
        let a = step * s as f64;
        let b = step * (s + len - 1) as f64;
        let lo = bisect_predicate(a - step, a, 60, 1e-14, &on);
        let hi = -bisect_predicate(-(b + step), -b, 60, 1e-14, |t| on(-t));
        (normalize(lo), (hi - lo).max(0.0))
    }

    /// Normals where `h` may fail to be smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            ConvexBody::Analytic { shape, pose } => {
                let mut local: Vec<f64> = shape.flat_faces().iter().map(|f| f.0).collect();
                if let Shape::Reuleaux { .. } = shape {
                    local.extend((0..6).map(|k| FRAC_PI_2 + PI / 6.0 + PI / 3.0 * k as f64));
                }
                local.into_iter().map(|a| pose.apply_angle(a)).collect()
            }
            ConvexBody::Polygon { vertices } => polygon::edge_normals(vertices),
            ConvexBody::Sampled(s) => s.breakpoints(),
            ConvexBody::Hull { base, .. } => base.breakpoints(),
        }
    }

    /// Bound on the radius of curvature inside a smooth piece of `h`.
    pub fn curvature_bound(&self) -> f64 {
        match self {
            ConvexBody::Analytic { shape, pose } => pose.scale * shape.curvature_bound(),
            ConvexBody::Polygon { .. } | ConvexBody::Sampled(_) => 0.0,
            ConvexBody::Hull { base, .. } => base.curvature_bound(),
        }
    }

    /// Upper bound on `max |x − c|` over the body (exact for polygons).
    pub fn radius_about(&self, c: Point) -> f64 {
        match self {
            ConvexBody::Analytic { shape, pose } => match shape {
                Shape::Disk { radius } => pose.translation.dist(c) + pose.scale * radius,
                _ => pose.translation.dist(c) + pose.scale * shape.extent(),
            },
            ConvexBody::Polygon { vertices } => vertices.iter().map(|v| v.dist(c)).fold(0.0, f64::max),
            ConvexBody::Sampled(s) => s.outline().iter().map(|v| v.dist(c)).fold(0.0, f64::max),
            ConvexBody::Hull { base, points } => points.iter().map(|v| v.dist(c)).fold(base.radius_about(c), f64::max),
        }
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bbox(&self) -> (Point, Point) {
        (Point::new(-self.support(PI), -self.support(1.5 * PI)), Point::new(self.support(0.0), self.support(FRAC_PI_2)))
    }

    pub fn center(&self) -> Point {
        let (lo, hi) = self.bbox();
        lo.midpoint(hi)
    }

    /// Width `h(ν) + h(ν + π)`.
    pub fn width(&self, nu: f64) -> f64 {
        self.support(nu) + self.support(nu + PI)
    }

    pub fn has_interior(&self) -> bool {
        match self {
            ConvexBody::Analytic { shape, .. } => shape.has_interior(),
            ConvexBody::Polygon { vertices } => vertices.len() >= 3,
            _ => (0..360).all(|i| self.width(PI * i as f64 / 360.0) > 1e-12),
        }
    }

    /// Boundary points with a normal cone wider than zero, with the cone width.
    pub fn corners(&self) -> Vec<(Point, f64)> {
        match self {
            ConvexBody::Analytic { shape, pose } => {
                shape.corners().into_iter().map(|(p, w)| (pose.apply_point(p), w)).collect()
            }
            ConvexBody::Polygon { vertices } => {
                let n = vertices.len();
                match n {
                    1 => vec![(vertices[0], TAU)],
                    2 => vec![(vertices[0], PI), (vertices[1], PI)],
                    _ => (0..n)
                        .map(|i| {
                            let a = polygon::edge_normal(vertices, (i + n - 1) % n);
                            let b = polygon::edge_normal(vertices, i);
                            (vertices[i], normalize(b - a))
                        })
                        .collect(),
                }
            }
            ConvexBody::Sampled(s) => {
                // Corner i carries the normals between samples i and i+1; merge coincident ones.
                let n = s.len();
                let step = s.step();
                let merge = 1e-9 * (1.0 + s.radius_bound());
                let raw: Vec<Point> = (0..n).map(|i| s.face(step * (i as f64 + 0.5)).0).collect();
                let Some(start) = (0..n).find(|&i| raw[i].dist(raw[(i + n - 1) % n]) > merge) else {
                    return vec![(raw[0], TAU)];
                };
                let mut out: Vec<(Point, f64)> = Vec::new();
                for k in 0..n {
                    let i = (start + k) % n;
                    match out.last_mut() {
                        Some((p, w)) if p.dist(raw[i]) <= merge => *w += step,
                        _ => out.push((raw[i], step)),
                    }
                }
                out
            }
            ConvexBody::Hull { base, points } => {
                let eps = 1e-9 * (1.0 + self.radius_about(Point::ORIGIN));
                let mut cand: Vec<Point> = points.clone();
                cand.extend(base.corners().into_iter().map(|c| c.0));
                cand.into_iter()
                    .filter(|p| self.point_margin(*p).abs() <= eps)
                    .map(|p| (p, self.cone_by_support(p, eps).1))
                    .filter(|c| c.1 > 0.0)
                    .collect()
            }
        }
    }

    /// Normals whose touch set is a non-degenerate segment, with its length.
    pub fn flat_faces(&self) -> Vec<(f64, f64)> {
        match self {
            ConvexBody::Analytic { shape, pose } => {
                shape.flat_faces().into_iter().map(|(nu, len)| (pose.apply_angle(nu), pose.scale * len)).collect()
            }
            ConvexBody::Polygon { vertices } => {
                let n = vertices.len();
                if n < 2 {
                    return Vec::new();
                }
                (0..n).map(|i| (polygon::edge_normal(vertices, i), vertices[i].dist(vertices[(i + 1) % n]))).collect()
            }
            ConvexBody::Sampled(s) => {
                let step = s.step();
                (0..s.len())
                    .map(|i| {
                        let nu = step * i as f64;
                        (nu, self.face(nu).length())
                    })
                    .filter(|f| f.1 > 0.0)
                    .collect()
            }
            ConvexBody::Hull { base, .. } => {
                // Transitions between pieces of h carry the faces added by the extra points.
                const N: usize = 4096;
                let step = TAU / N as f64;
                let mut out: Vec<(f64, f64)> = Vec::new();
                for i in 0..N {
                    let a = step * i as f64;
                    let pa = self.piece(a);
                    if self.piece(a + step) != pa {
                        let t = bisect_predicate(a, a + step, 60, 1e-15, |t| self.piece(t) != pa);
                        let f = self.face(t);
                        if f.length() > 0.0 {
                            out.push((normalize(t), f.length()));
                        }
                    }
                }
                for (nu, _) in base.flat_faces() {
                    let f = self.face(nu);
                    if f.length() > 0.0 && !out.iter().any(|o| signed_diff(o.0, nu).abs() < 1e-9) {
                        out.push((nu, f.length()));
                    }
                }
                out
            }
        }
    }

    /// Parameter interval `[t0, t1]` of `a + t·u` (unit `u`) inside the body, when the line
    /// meets the interior.
    pub fn chord(&self, a: Point, u: Point) -> Option<(f64, f64)> {
        match self {
            ConvexBody::Polygon { vertices } => return polygon::clip_line(vertices, a, u).filter(|(lo, hi)| hi > lo),
            ConvexBody::Sampled(s) => return polygon::clip_line(s.outline(), a, u).filter(|(lo, hi)| hi > lo),
            _ => {}
        }
        let r = self.radius_about(a) * (1.0 + 1e-12) + 1e-12;
        let m = |t: f64| self.point_margin(a + u * t);
        let (tm, best) = golden_max(-r, r, 200, m);
        if best <= 0.0 {
            return None;
        }
        let tol = 1e-15 * (1.0 + r);
        let lo = bisect_root(-r, tm, m(-r), 200, tol, m);
        let hi = bisect_root(tm, r, best, 200, tol, m);
        Some((lo, hi))
    }

    /// Image under a similarity.
    pub fn apply(&self, phi: &Similarity) -> ConvexBody {
        match self {
            ConvexBody::Analytic { shape, pose } => ConvexBody::Analytic { shape: *shape, pose: phi.compose(pose) },
            ConvexBody::Polygon { vertices } => {
                let mut v: Vec<Point> = vertices.iter().map(|p| phi.apply_point(*p)).collect();
                if phi.reflect {
                    v.reverse();
                }
                ConvexBody::Polygon { vertices: v }
            }
            ConvexBody::Sampled(s) => {
                let t = phi.translation;
                ConvexBody::Sampled(SupportSampled::from_fn(s.len(), |nu| {
                    phi.scale * s.support(phi.pullback_angle(nu)) + t.dot(Point::unit(nu))
                }))
            }
            ConvexBody::Hull { base, points } => ConvexBody::Hull {
                base: Box::new(base.apply(phi)),
                points: points.iter().map(|p| phi.apply_point(*p)).collect(),
            },
        }
    }

    /// Convex hull of the body together with `pts`.
    pub fn with_points(&self, pts: &[Point]) -> ConvexBody {
        let slack = 1e-12 * (1.0 + self.radius_about(Point::ORIGIN));
        let outside: Vec<Point> = pts.iter().copied().filter(|p| self.point_margin(*p) < -slack).collect();
        if outside.is_empty() {
            return self.clone();
        }
        let exact_vertices: Option<Vec<Point>> = match self {
            ConvexBody::Polygon { vertices } => Some(vertices.clone()),
            ConvexBody::Analytic { shape: Shape::Segment { half_length }, pose } => Some(vec![
                pose.apply_point(Point::new(-half_length, 0.0)),
                pose.apply_point(Point::new(*half_length, 0.0)),
            ]),
            ConvexBody::Analytic { shape: Shape::Disk { radius }, pose } if *radius == 0.0 => {
                Some(vec![pose.translation])
            }
            _ => None,
        };
        if let Some(mut v) = exact_vertices {
            v.extend(outside);
            return ConvexBody::hull_of(&v);
        }
        match self {
            ConvexBody::Hull { base, points } => {
                let mut all = points.clone();
                all.extend(outside);
                ConvexBody::Hull { base: base.clone(), points: all }
            }
            _ => ConvexBody::Hull { base: Box::new(self.clone()), points: outside },
        }
    }

    /// Boundary points in counterclockwise order, for drawing.
    pub fn boundary_polyline(&self, n: usize) -> Vec<Point> {
        if let ConvexBody::Polygon { vertices } = self {
            return vertices.clone();
        }
        let mut out: Vec<Point> = Vec::with_capacity(2 * n);
        for i in 0..n {
            let f = self.face(TAU * i as f64 / n as f64);
            for p in [f.first, f.last] {
                if out.last().is_none_or(|q| q.dist(p) > 1e-12) {
                    out.push(p);
                }
            }
        }
        out
    }
}

fn placed(center: Point, rotation: f64) -> Similarity {
    Similarity { translation: center, ..Similarity::rotation(rotation) }
}
