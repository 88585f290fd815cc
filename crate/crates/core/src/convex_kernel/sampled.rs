//! Bodies given by support values at `n` equally spaced outward normals.

use std::f64::consts::TAU;

use super::point::{line_intersection, Point};
use super::polygon;

/// Support values `h[i]` at normals `2πi/n`, linearly interpolated in between.
/// Faces and point queries use the circumscribed polygon cut out by the sample lines.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportSampled {
    h: Vec<f64>,
    radius_bound: f64,
    /// `corners[i]` is where sample lines `i` and `i + 1` meet.
    corners: Vec<Point>,
    /// Convex hull of `corners` (near-coincident corners merged).
    outline: Vec<Point>,
}

impl SupportSampled {
    /// Validates finiteness and the discrete convexity condition
    /// `h[i-1] + h[i+1] >= 2 h[i] cos(2π/n)`.
    pub fn new(h: Vec<f64>) -> Result<Self, String> {
        let n = h.len();
        if n < 8 {
            return Err(format!("support_samples needs at least 8 values, got {n}"));
        }
        if let Some(i) = h.iter().position(|v| !v.is_finite()) {
            return Err(format!("support sample {i} is not finite"));
        }
        let c = (TAU / n as f64).cos();
        let scale = h.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        for i in 0..n {
            let lhs = h[(i + n - 1) % n] + h[(i + 1) % n];
            let rhs = 2.0 * h[i] * c;
            if lhs < rhs - 1e-12 * scale {
                return Err(format!("support samples violate discrete convexity at index {i} ({lhs} < {rhs})"));
            }
        }
        Ok(Self::build(h))
    }

    /// Lowers values that violate discrete convexity until none do. Used after resampling,
    /// where interpolation can break the condition by rounding-sized amounts.
    pub fn repaired(mut h: Vec<f64>) -> Self {
        let n = h.len();
        let c = (TAU / n as f64).cos();
        for _ in 0..n {
            let mut changed = false;
            for i in 0..n {
                let cap = (h[(i + n - 1) % n] + h[(i + 1) % n]) / (2.0 * c);
                if h[i] > cap {
                    h[i] = cap;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self::build(h)
    }

    /// Samples a support function at `n` normals.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Self {
        Self::repaired((0..n).map(|i| f(TAU * i as f64 / n as f64)).collect())
    }

    fn build(h: Vec<f64>) -> Self {
        let n = h.len();
        let corners: Vec<Point> = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                let (ni, nj) = (Self::angle_of(n, i), Self::angle_of(n, j));
                let pi = Point::unit(ni) * h[i];
                let pj = Point::unit(nj) * h[j];
                line_intersection(pi, Point::unit(ni).perp(), pj, Point::unit(nj).perp()).unwrap_or(pi)
            })
            .collect();
        let outline = polygon::convex_hull(&corners);
        let radius_bound = corners.iter().map(|p| p.norm()).fold(0.0, f64::max);
        Self { h, radius_bound, corners, outline }
    }

    fn angle_of(n: usize, i: usize) -> f64 {
        TAU * i as f64 / n as f64
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.h
    }

    pub fn step(&self) -> f64 {
        TAU / self.h.len() as f64
    }

    /// Largest distance from the origin of the circumscribed polygon.
    pub fn radius_bound(&self) -> f64 {
        self.radius_bound
    }

    /// Bound on the gap between the interpolated and the underlying support function.
    pub fn error_bound(&self) -> f64 {
        self.radius_bound * self.step()
    }

    pub fn outline(&self) -> &[Point] {
        &self.outline
    }

    /// `(i, t)` with `nu = (i + t)·step`, `t ∈ [0, 1)`.
    fn locate(&self, nu: f64) -> (usize, f64) {
        let n = self.h.len();
        let x = super::angle::normalize(nu) / self.step();
        let i = (x.floor() as usize).min(n - 1);
        (i, x - i as f64)
    }

    pub fn support(&self, nu: f64) -> f64 {
        let n = self.h.len();
        let (i, t) = self.locate(nu);
        self.h[i] * (1.0 - t) + self.h[(i + 1) % n] * t
    }

    pub fn piece(&self, nu: f64) -> u64 {
        self.locate(nu).0 as u64
    }

    /// Touch set (unordered): a sample line's edge at a sample normal, otherwise a corner.
    pub fn face(&self, nu: f64) -> (Point, Point) {
        let n = self.h.len();
        let (i, t) = self.locate(nu);
        if t <= 1e-9 {
            (self.corners[(i + n - 1) % n], self.corners[i])
        } else if t >= 1.0 - 1e-9 {
            let j = (i + 1) % n;
            (self.corners[i], self.corners[j])
        } else {
            (self.corners[i], self.corners[i])
        }
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        polygon::signed_distance(&self.outline, p)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        (0..self.h.len()).map(|i| Self::angle_of(self.h.len(), i)).collect()
    }
}
