//! Convex polygon primitives. Vertices are counterclockwise; one- and two-vertex
//! "polygons" stand for a singleton and a segment.

use std::f64::consts::{FRAC_PI_2, TAU};

use super::angle::normalize;
use super::point::{dist_to_segment, Point};

/// Twice the signed area; positive for counterclockwise order.
pub fn signed_area2(v: &[Point]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum()
}

/// Checks strict convexity and counterclockwise order.
pub fn validate_ccw(v: &[Point]) -> Result<(), String> {
    if v.is_empty() {
        return Err("polygon has no vertices".into());
    }
    if let Some(i) = v.iter().position(|p| !p.is_finite()) {
        return Err(format!("vertex {i} is not finite"));
    }
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            if v[i] == v[j] {
                return Err(format!("vertex {j} repeats vertex {i}"));
            }
        }
    }
    if n < 3 {
        return Ok(());
    }
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let c = v[(i + 2) % n];
        if (b - a).cross(c - b) <= 0.0 {
            return Err(format!("polygon is not strictly convex and counterclockwise at vertex {}", (i + 1) % n));
        }
    }
    Ok(())
}

/// Convex hull (Andrew's monotone chain), counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(p - lower[lower.len() - 1]) <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(p - upper[upper.len() - 1]) <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Index of a vertex maximising `⟨v, u⟩` (first one on ties).
pub fn argmax(v: &[Point], u: Point) -> usize {
    let mut best = 0;
    let mut bv = f64::NEG_INFINITY;
    for (i, p) in v.iter().enumerate() {
        let d = p.dot(u);
        if d > bv {
            bv = d;
            best = i;
        }
    }
    best
}

pub fn support(v: &[Point], nu: f64) -> f64 {
    let u = Point::unit(nu);
    v.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max)
}

/// Outward normal of edge `i` (from `v[i]` to `v[i+1]`).
pub fn edge_normal(v: &[Point], i: usize) -> f64 {
    let n = v.len();
    let d = v[(i + 1) % n] - v[i];
    normalize(d.y.atan2(d.x) - FRAC_PI_2)
}

pub fn edge_normals(v: &[Point]) -> Vec<f64> {
    if v.len() < 2 {
        return Vec::new();
    }
    (0..v.len()).map(|i| edge_normal(v, i)).collect()
}

/// Touch set at normal `nu`: the extreme vertex, or the whole edge when `nu` is that
/// edge's normal up to `eps` in support value.
pub fn face(v: &[Point], nu: f64, eps: f64) -> (Point, Point) {
    let u = Point::unit(nu);
    let i = argmax(v, u);
    let n = v.len();
    if n == 1 {
        return (v[0], v[0]);
    }
    let best = v[i].dot(u);
    let next = (i + 1) % n;
    let prev = (i + n - 1) % n;
    if v[next].dot(u) >= best - eps {
        (v[i], v[next])
    } else if v[prev].dot(u) >= best - eps {
        (v[prev], v[i])
    } else {
        (v[i], v[i])
    }
}

/// Normal cone `(start, width)` at a boundary point, counterclockwise.
pub fn normal_cone(v: &[Point], p: Point, eps: f64) -> (f64, f64) {
    let n = v.len();
    if n == 1 {
        return (0.0, TAU);
    }
    for i in 0..n {
        if v[i].dist(p) <= eps {
            let start = edge_normal(v, (i + n - 1) % n);
            let end = edge_normal(v, i);
            return (start, normalize(end - start));
        }
    }
    let mut best = (0, f64::INFINITY);
    for i in 0..n {
        let d = dist_to_segment(p, v[i], v[(i + 1) % n]);
        if d < best.1 {
            best = (i, d);
        }
    }
    (edge_normal(v, best.0), 0.0)
}

/// Signed distance to the boundary, positive inside.
pub fn signed_distance(v: &[Point], p: Point) -> f64 {
    let n = v.len();
    if n == 1 {
        return -p.dist(v[0]);
    }
    let boundary = (0..n).map(|i| dist_to_segment(p, v[i], v[(i + 1) % n])).fold(f64::INFINITY, f64::min);
    if n == 2 {
        return -boundary;
    }
    let inside = (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(p - v[i]) >= 0.0);
    if inside {
        boundary
    } else {
        -boundary
    }
}

/// Parameter interval of the line `a + t·u` inside the polygon (Cyrus–Beck).
pub fn clip_line(v: &[Point], a: Point, u: Point) -> Option<(f64, f64)> {
    let n = v.len();
    if n < 3 {
        return None;
    }
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for i in 0..n {
        let p = v[i];
        let e = v[(i + 1) % n] - p;
        // Inside: cross(e, x - p) >= 0.
        let num = e.cross(a - p);
        let den = e.cross(u);
        if den.abs() < 1e-300 {
            if num < 0.0 {
                return None;
            }
        } else {
            let t = -num / den;
            if den > 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
    }
    (lo <= hi).then_some((lo, hi))
}
