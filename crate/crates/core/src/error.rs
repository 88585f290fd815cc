use thiserror::Error;

use crate::convex_kernel::Point;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeomError {
    #[error("point ({}, {}) is not on the boundary (distance {distance:e})", point.x, point.y)]
    NotOnBoundary { point: Point, distance: f64 },
    #[error("line does not pass through the interior of the body")]
    NotASecant,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("predicate not satisfied within one full revolution")]
    ExhaustedRevolution,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("could not be decided at the configured resolution: {0}")]
    Unresolved(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
