use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::angle::Angle;
use super::point::Point;

/// An oriented line. A supporting line keeps its body in the closed half-plane on its left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectedLine {
    pub anchor: Point,
    pub direction: Angle,
}

impl DirectedLine {
    pub fn new(anchor: Point, direction: Angle) -> Self {
        Self { anchor, direction }
    }

    pub fn through(p: Point, q: Point) -> Option<Self> {
        let d = q - p;
        (d.norm() > 0.0).then(|| Self::new(p, Angle::new(d.y.atan2(d.x))))
    }

    #[inline]
    pub fn unit(&self) -> Point {
        self.direction.unit()
    }

    /// Left normal `(-sin θ, cos θ)`.
    #[inline]
    pub fn left_normal(&self) -> Point {
        self.unit().perp()
    }

    /// Outward normal angle `θ - π/2` of a supporting line with this direction.
    #[inline]
    pub fn outward_normal(&self) -> Angle {
        self.direction - PI / 2.0
    }

    /// Signed offset `⟨anchor, ν⟩` along the outward normal; equals `h(ν)` for a supporting line.
    pub fn offset(&self) -> f64 {
        self.anchor.dot(self.outward_normal().unit())
    }

    /// Positive on the left, negative on the right.
    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        (p - self.anchor).dot(self.left_normal())
    }

    /// Coordinate of `p` along the line direction, measured from the anchor.
    #[inline]
    pub fn project(&self, p: Point) -> f64 {
        (p - self.anchor).dot(self.unit())
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.anchor + self.unit() * t
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.anchor, self.direction.opposite())
    }

    /// Equality as oriented lines: same direction and same signed offset.
    pub fn approx_eq(&self, other: &DirectedLine, eps_geom: f64, eps_angle: f64) -> bool {
        self.direction.dist(other.direction) <= eps_angle && (self.offset() - other.offset()).abs() <= eps_geom
    }

    pub fn intersect(&self, other: &DirectedLine) -> Option<Point> {
        super::point::line_intersection(self.anchor, self.unit(), other.anchor, other.unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_side_convention() {
        let l = DirectedLine::new(Point::new(0.0, -1.0), Angle::ZERO);
        assert!(l.signed_distance(Point::ORIGIN) > 0.0);
        assert!((l.offset() - 1.0).abs() < 1e-15);
        assert!((l.outward_normal().radians() - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn equality_ignores_anchor_choice() {
        let a = DirectedLine::new(Point::new(0.0, 1.0), Angle::new(PI));
        let b = DirectedLine::new(Point::new(5.0, 1.0), Angle::new(PI));
        assert!(a.approx_eq(&b, 1e-12, 1e-12));
        assert!(!a.approx_eq(&a.reversed(), 1e-12, 1e-12));
    }
}
