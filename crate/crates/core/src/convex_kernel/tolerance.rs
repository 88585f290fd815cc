use serde::{Deserialize, Serialize};

/// Numeric tolerances shared by all predicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_geom: f64,
    pub eps_angle: f64,
    /// Normals evaluated before adaptive refinement in containment and distance queries.
    pub samples: usize,
}

impl Tolerance {
    pub const ANALYTIC: Tolerance = Tolerance { eps_geom: 1e-9, eps_angle: 1e-9, samples: 4096 };

    pub const SAMPLED: Tolerance = Tolerance { eps_geom: 1e-6, eps_angle: 1e-9, samples: 4096 };

    pub fn with_eps(self, eps_geom: f64) -> Self {
        Self { eps_geom, ..self }
    }

    /// Default tolerance for a query involving the given bodies.
    pub fn for_bodies(bodies: &[&super::ConvexBody]) -> Self {
        if bodies.iter().any(|b| b.is_sampled()) {
            Self::SAMPLED
        } else {
            Self::ANALYTIC
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.eps_geom > 0.0 && self.eps_angle > 0.0 && self.samples >= 8 {
            Ok(())
        } else {
            Err(format!("tolerances must be positive: {self:?}"))
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::ANALYTIC
    }
}
