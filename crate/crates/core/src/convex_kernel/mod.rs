//! Convex bodies, support functions, similarities and certified containment.

mod angle;
mod body;
mod containment;
mod line;
pub mod numeric;
mod point;
pub mod polygon;
mod sampled;
mod shape;
mod similarity;
mod tolerance;

pub use angle::{direction_of_normal, normal_of_direction, normalize, signed_diff, Angle};
pub use body::{ConvexBody, Face};
pub use containment::{body_distance, contains, Containment, Verdict};
pub use line::DirectedLine;
pub use point::{dist_to_segment, line_intersection, Point};
pub use sampled::SupportSampled;
pub use shape::{ellipse_signed_distance, Shape};
pub use similarity::Similarity;
pub use tolerance::Tolerance;

/// `h_K(ν)`.
pub fn support_value(k: &ConvexBody, nu: f64) -> f64 {
    k.support(nu)
}

/// Touch set of the supporting line with outward normal `nu`.
pub fn face(k: &ConvexBody, nu: f64) -> Face {
    k.face(nu)
}

/// Convex hull of `k` and `pts`.
pub fn hull_with_points(k: &ConvexBody, pts: &[Point]) -> ConvexBody {
    k.with_points(pts)
}

/// Image of `k` under `phi`.
pub fn apply(phi: &Similarity, k: &ConvexBody) -> ConvexBody {
    k.apply(phi)
}
