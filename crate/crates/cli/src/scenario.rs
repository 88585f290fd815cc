//! Scenario files: named shapes, an optional triangle and command parameters.

use std::collections::HashSet;
use std::fmt;

use carousel_core::carousel::Triangle;
use carousel_core::convex_kernel::{Angle, ConvexBody, Point, Similarity};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

type Xy = [f64; 2];

fn pt(p: Xy) -> Point {
    Point::new(p[0], p[1])
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub bodies: Vec<NamedShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangle: Option<[Xy; 3]>,
    #[serde(default, skip_serializing_if = "Params::is_empty")]
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedShape {
    pub name: String,
    #[serde(flatten)]
    pub shape: ShapeSpec,
    /// Applied after the shape is built.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pose: Option<Pose>,
}

/// Shape parameters. Angles are in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeSpec {
    Disk {
        #[serde(default)]
        center: Xy,
        radius: f64,
    },
    Ellipse {
        #[serde(default)]
        center: Xy,
        a: f64,
        b: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        rotation: f64,
    },
    Segment {
        #[serde(default)]
        center: Xy,
        half_length: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        rotation: f64,
    },
    /// Constant width `width`, one vertex along +y before rotation.
    Reuleaux {
        #[serde(default)]
        center: Xy,
        width: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        rotation: f64,
    },
    Stadium {
        #[serde(default)]
        center: Xy,
        half_length: f64,
        radius: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        rotation: f64,
    },
    Polygon {
        vertices: Vec<Xy>,
    },
    /// Support values at the normals `2πi/n`.
    SupportSamples {
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pose {
    #[serde(default)]
    pub rotation: f64,
    #[serde(default)]
    pub reflect: bool,
    #[serde(default = "one")]
    pub scale: f64,
    #[serde(default)]
    pub translation: Xy,
}

fn one() -> f64 {
    1.0
}

impl Pose {
    pub fn similarity(&self) -> Similarity {
        Similarity {
            rotation: Angle::new(self.rotation),
            reflect: self.reflect,
            scale: self.scale,
            translation: pt(self.translation),
        }
    }
}

/// Defaults for the commands; flags on the command line win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Bodies the commands act on, by name. Defaults to the first one or two.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bodies: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation_grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflection: Option<bool>,
}

impl Params {
    pub fn is_empty(&self) -> bool {
        *self == Params::default()
    }
}

/// A parse or validation failure, located by line and column or by field path.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self { location: location.into(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for Diagnostic {}

impl ShapeSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ShapeSpec::Disk { .. } => "disk",
            ShapeSpec::Ellipse { .. } => "ellipse",
            ShapeSpec::Segment { .. } => "segment",
            ShapeSpec::Reuleaux { .. } => "reuleaux",
            ShapeSpec::Stadium { .. } => "stadium",
            ShapeSpec::Polygon { .. } => "polygon",
            ShapeSpec::SupportSamples { .. } => "support_samples",
        }
    }

    pub fn build(&self) -> Result<ConvexBody, String> {
        let body = match *self {
            ShapeSpec::Disk { center, radius } => ConvexBody::disk(pt(center), radius),
            ShapeSpec::Ellipse { center, a, b, rotation } => ConvexBody::ellipse(pt(center), a, b, rotation),
            ShapeSpec::Segment { center, half_length, rotation } => {
                let d = Point::unit(rotation) * half_length;
                ConvexBody::segment(pt(center) - d, pt(center) + d)
            }
            ShapeSpec::Reuleaux { center, width, rotation } => ConvexBody::reuleaux(pt(center), width, rotation),
            ShapeSpec::Stadium { center, half_length, radius, rotation } => {
                ConvexBody::stadium(pt(center), half_length, radius, rotation)
            }
            ShapeSpec::Polygon { ref vertices } => {
                return ConvexBody::polygon(vertices.iter().map(|&v| pt(v)).collect())
            }
            ShapeSpec::SupportSamples { ref values } => return ConvexBody::sampled(values.clone()),
        };
        body.validate()?;
        Ok(body)
    }
}

impl NamedShape {
    pub fn build(&self) -> Result<ConvexBody, String> {
        let k = self.shape.build()?;
        match self.pose {
            None => Ok(k),
            Some(p) => {
                let s = p.similarity();
                if !(s.scale.is_finite() && s.scale > 0.0 && s.translation.is_finite() && p.rotation.is_finite()) {
                    return Err(format!("invalid pose {p:?}"));
                }
                Ok(k.apply(&s))
            }
        }
    }
}

/// A validated scenario with its bodies built.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub scenario: Scenario,
    pub bodies: Vec<ConvexBody>,
    pub triangle: Option<Triangle>,
    pub warnings: Vec<String>,
}

impl Parsed {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.scenario.bodies.iter().position(|b| b.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.scenario.bodies[i].name
    }
}

fn signed_area(v: &[Xy]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0
}

pub fn parse_scenario(text: &str) -> Result<Parsed, Diagnostic> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        let path = e.path().to_string();
        let loc = format!("line {} column {}", inner.line(), inner.column());
        let loc = if path == "." { loc } else { format!("{loc} ({path})") };
        Diagnostic::at(loc, inner.to_string())
    })?;
    validate(scenario)
}

/// Checks names and shapes, fixes clockwise polygons, and builds the bodies.
pub fn validate(mut scenario: Scenario) -> Result<Parsed, Diagnostic> {
    if scenario.version != FORMAT_VERSION {
        return Err(Diagnostic::at(
            "version",
            format!("unsupported version {} (expected {FORMAT_VERSION})", scenario.version),
        ));
    }
    if scenario.bodies.is_empty() {
        return Err(Diagnostic::at("bodies", "at least one body is required"));
    }
    let mut warnings = Vec::new();
    let mut seen = HashSet::new();
    let mut bodies = Vec::with_capacity(scenario.bodies.len());
    for (i, b) in scenario.bodies.iter_mut().enumerate() {
        let here = format!("bodies[{i}] ({:?})", b.name);
        if b.name.is_empty() {
            return Err(Diagnostic::at(format!("bodies[{i}].name"), "name is empty"));
        }
        if !seen.insert(b.name.clone()) {
            return Err(Diagnostic::at(format!("bodies[{i}].name"), format!("duplicate name {:?}", b.name)));
        }
        if let ShapeSpec::Polygon { vertices } = &mut b.shape {
            if vertices.len() >= 3 && signed_area(vertices) < 0.0 {
                vertices.reverse();
                warnings.push(format!("{here}: clockwise vertices reversed to counterclockwise order"));
            }
        }
        bodies.push(b.build().map_err(|m| Diagnostic::at(format!("{here} {}", b.shape.kind()), m))?);
    }
    for (i, name) in scenario.params.bodies.iter().enumerate() {
        if !seen.contains(name) {
            return Err(Diagnostic::at(format!("params.bodies[{i}]"), format!("unknown body {name:?}")));
        }
    }
    let triangle = match scenario.triangle {
        None => None,
        Some([a, b, c]) => {
            Some(Triangle::new(pt(a), pt(b), pt(c)).map_err(|e| Diagnostic::at("triangle", e.to_string()))?)
        }
    };
    Ok(Parsed { scenario, bodies, triangle, warnings })
}

pub fn to_json(s: &Scenario) -> String {
    serde_json::to_string_pretty(s).expect("scenario serializes")
}
