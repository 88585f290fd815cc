use std::f64::consts::{PI, TAU};
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use super::point::Point;

/// Reduce an angle to `[0, 2π)`.
#[inline]
pub fn normalize(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed difference `a - b` reduced to `(-π, π]`.
#[inline]
pub fn signed_diff(a: f64, b: f64) -> f64 {
    let d = normalize(a - b);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// A direction on the unit circle, stored in radians in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(radians: f64) -> Self {
        Angle(normalize(radians))
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn unit(self) -> Point {
        Point::unit(self.0)
    }

    /// Counterclockwise angle from `self` to `other`, in `[0, 2π)`.
    pub fn ccw_to(self, other: Angle) -> f64 {
        normalize(other.0 - self.0)
    }

    /// Unsigned angular distance on the circle, in `[0, π]`.
    pub fn dist(self, other: Angle) -> f64 {
        signed_diff(self.0, other.0).abs()
    }

    pub fn opposite(self) -> Angle {
        Angle::new(self.0 + PI)
    }
}

impl Add<f64> for Angle {
    type Output = Angle;
    fn add(self, rhs: f64) -> Angle {
        Angle::new(self.0 + rhs)
    }
}

impl Sub<f64> for Angle {
    type Output = Angle;
    fn sub(self, rhs: f64) -> Angle {
        Angle::new(self.0 - rhs)
    }
}

impl From<f64> for Angle {
    fn from(r: f64) -> Self {
        Angle::new(r)
    }
}

/// Outward normal of the supporting line with direction `theta` (body on the left).
#[inline]
pub fn normal_of_direction(theta: f64) -> f64 {
    normalize(theta - PI / 2.0)
}

/// Direction of the supporting line whose outward normal is `nu`.
#[inline]
pub fn direction_of_normal(nu: f64) -> f64 {
    normalize(nu + PI / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_edges() {
        assert_eq!(normalize(0.0), 0.0);
        assert_eq!(normalize(TAU), 0.0);
        assert!((normalize(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!(normalize(-1e-300) < TAU);
    }

    #[test]
    fn direction_normal_convention() {
        // Direction 0 points along +x; the body lies above, so the outward normal points down.
        assert!((normal_of_direction(0.0) - 1.5 * PI).abs() < 1e-15);
        assert!((direction_of_normal(0.0) - PI / 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(a in -100.0f64..100.0) {
            let n = normalize(a);
            prop_assert!((0.0..TAU).contains(&n));
            prop_assert_eq!(normalize(n), n);
        }

        #[test]
        fn addition_is_modular(a in -10.0f64..10.0, b in -10.0f64..10.0) {
            let lhs = Angle::new(a) + b;
            let rhs = Angle::new(a + b);
            prop_assert!(lhs.dist(rhs) < 1e-12);
        }
    }
}
