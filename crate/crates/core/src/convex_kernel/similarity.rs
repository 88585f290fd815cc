use serde::{Deserialize, Serialize};

use super::angle::{normalize, Angle};
use super::line::DirectedLine;
use super::point::Point;

/// `x ↦ scale · R(rotation) · F(x) + translation`, where `F` is the reflection across the
/// x-axis when `reflect` is set and the identity otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    #[serde(default)]
    pub rotation: Angle,
    #[serde(default)]
    pub reflect: bool,
    #[serde(default = "one")]
    pub scale: f64,
    #[serde(default)]
    pub translation: Point,
}

fn one() -> f64 {
    1.0
}

impl Default for Similarity {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Similarity {
    pub const IDENTITY: Similarity =
        Similarity { rotation: Angle::ZERO, reflect: false, scale: 1.0, translation: Point::ORIGIN };

    pub fn translation(t: Point) -> Self {
        Self { translation: t, ..Self::IDENTITY }
    }

    pub fn rotation(a: f64) -> Self {
        Self { rotation: Angle::new(a), ..Self::IDENTITY }
    }

    pub fn scaling(s: f64) -> Self {
        Self { scale: s, ..Self::IDENTITY }
    }

    /// Rotation by `a` about `center`.
    pub fn rotation_about(center: Point, a: f64) -> Self {
        Self { rotation: Angle::new(a), translation: center - center.rotate(a), ..Self::IDENTITY }
    }

    /// Reflection across the line through `p` with direction angle `dir`.
    pub fn reflection_across(p: Point, dir: f64) -> Self {
        // F followed by R(2·dir) reflects across the line through the origin at angle dir.
        let lin = Self { rotation: Angle::new(2.0 * dir), reflect: true, scale: 1.0, translation: Point::ORIGIN };
        Self { translation: p - lin.apply_vector(p), ..lin }
    }

    /// Point reflection through `center`.
    pub fn point_reflection(center: Point) -> Self {
        Self::rotation_about(center, std::f64::consts::PI)
    }

    pub fn is_isometry(&self) -> bool {
        (self.scale - 1.0).abs() <= 1e-12
    }

    /// Linear part applied to a vector.
    #[inline]
    pub fn apply_vector(&self, v: Point) -> Point {
        let v = if self.reflect { Point::new(v.x, -v.y) } else { v };
        v.rotate(self.rotation.radians()) * self.scale
    }

    #[inline]
    pub fn apply_point(&self, p: Point) -> Point {
        self.apply_vector(p) + self.translation
    }

    /// Image of a direction angle under the linear part.
    #[inline]
    pub fn apply_angle(&self, a: f64) -> f64 {
        let a = if self.reflect { -a } else { a };
        normalize(a + self.rotation.radians())
    }

    /// Preimage of a direction angle under the linear part.
    #[inline]
    pub fn pullback_angle(&self, a: f64) -> f64 {
        let a = a - self.rotation.radians();
        normalize(if self.reflect { -a } else { a })
    }

    /// Geometric image of a directed line. Reflections reverse which side is "left".
    pub fn apply_line(&self, l: &DirectedLine) -> DirectedLine {
        DirectedLine::new(self.apply_point(l.anchor), Angle::new(self.apply_angle(l.direction.radians())))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        let r2 = other.rotation.radians();
        let rot = self.rotation.radians() + if self.reflect { -r2 } else { r2 };
        Similarity {
            rotation: Angle::new(rot),
            reflect: self.reflect ^ other.reflect,
            scale: self.scale * other.scale,
            translation: self.apply_vector(other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> Similarity {
        let s = 1.0 / self.scale;
        let rot = if self.reflect { self.rotation.radians() } else { -self.rotation.radians() };
        let lin = Similarity { rotation: Angle::new(rot), reflect: self.reflect, scale: s, translation: Point::ORIGIN };
        Similarity { translation: -lin.apply_vector(self.translation), ..lin }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn sim() -> impl Strategy<Value = Similarity> {
        (0.0..6.3f64, any::<bool>(), 0.2..5.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_map(|(r, f, s, x, y)| {
            Similarity { rotation: Angle::new(r), reflect: f, scale: s, translation: Point::new(x, y) }
        })
    }

    #[test]
    fn reflection_across_line_fixes_it() {
        let r = Similarity::reflection_across(Point::new(1.0, 2.0), PI / 4.0);
        let on = Point::new(2.0, 3.0);
        assert!(r.apply_point(on).dist(on) < 1e-12);
        let off = Point::new(1.0, 3.0);
        assert!(r.apply_point(off).dist(Point::new(2.0, 2.0)) < 1e-12);
    }

    proptest! {
        #[test]
        fn inverse_undoes(phi in sim(), x in -5.0..5.0f64, y in -5.0..5.0f64) {
            let p = Point::new(x, y);
            let q = phi.inverse().apply_point(phi.apply_point(p));
            prop_assert!(q.dist(p) < 1e-9);
        }

        #[test]
        fn composition_matches_sequential(a in sim(), b in sim(), x in -5.0..5.0f64, y in -5.0..5.0f64) {
            let p = Point::new(x, y);
            let lhs = a.compose(&b).apply_point(p);
            let rhs = a.apply_point(b.apply_point(p));
            prop_assert!(lhs.dist(rhs) < 1e-8 * (1.0 + rhs.norm()));
        }

        #[test]
        fn angles_follow_vectors(phi in sim(), a in 0.0..6.3f64) {
            let v = phi.apply_vector(Point::unit(a));
            let b = phi.apply_angle(a);
            prop_assert!(Angle::new(v.angle()).dist(Angle::new(b)) < 1e-9);
            prop_assert!(Angle::new(phi.pullback_angle(b)).dist(Angle::new(a)) < 1e-9);
        }
    }
}
