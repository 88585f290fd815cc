//! Convex plane bodies, their common tangents, crossing witnesses, the weak carousel
//! property and a ladder of disk-characterising checks.

pub mod carousel;
pub mod convex_kernel;
pub mod crossing;
pub mod disk_properties;
mod error;
pub mod tangency;

pub use error::{GeomError, Result};
