//! Command outcomes, their exit codes and their text form.

use std::fmt::Write as _;

use carousel_core::carousel::{CarouselResult, CarouselVerdict, Triangle};
use carousel_core::convex_kernel::{DirectedLine, Point, Similarity, Tolerance};
use carousel_core::crossing::{CrossVerdict, CrossingWitness, DiskTest, Role, SearchConfig};
use carousel_core::disk_properties::{PropVerdict, PropertyReport, Witness};
use serde::Serialize;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 64;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FalsifyResult {
    NoWitnessFound {
        candidates: usize,
    },
    Found {
        phi: Similarity,
        witness: CrossingWitness,
        triangle: Triangle,
        verdict: CarouselVerdict,
    },
    /// A crossing copy exists but no violating triangle could be built from it.
    ConstructionFailed {
        phi: Similarity,
        witness: CrossingWitness,
        message: String,
    },
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Outcome {
    CarouselCheck { bodies: [String; 2], triangle: Triangle, verdict: CarouselVerdict },
    FindCrossing { bodies: [String; 2], verdict: CrossVerdict },
    DiskTest { body: String, result: DiskTest },
    Properties { body: String, reports: Vec<PropertyReport> },
    Falsify { body: String, config: SearchConfig, result: FalsifyResult },
    Render { bodies: Vec<String> },
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub tolerance: Tolerance,
    pub warnings: Vec<String>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::CarouselCheck { verdict, .. } => match verdict.result {
                CarouselResult::Sat { .. } => EXIT_HOLDS,
                CarouselResult::Unsat => EXIT_VIOLATED,
                CarouselResult::Unknown => EXIT_UNKNOWN,
            },
            Outcome::FindCrossing { verdict, .. } => match verdict {
                CrossVerdict::NoCrossing => EXIT_HOLDS,
                CrossVerdict::Witness(_) => EXIT_VIOLATED,
                CrossVerdict::Unknown { .. } => EXIT_UNKNOWN,
            },
            Outcome::DiskTest { result, .. } => match result {
                DiskTest::NoWitnessFound { .. } => EXIT_HOLDS,
                DiskTest::Witness { .. } => EXIT_VIOLATED,
            },
            Outcome::Properties { reports, .. } => {
                if reports.iter().any(|r| r.verdict == PropVerdict::Fail) {
                    EXIT_VIOLATED
                } else if reports.iter().any(|r| r.verdict == PropVerdict::Unknown) {
                    EXIT_UNKNOWN
                } else {
                    EXIT_HOLDS
                }
            }
            Outcome::Falsify { result, .. } => match result {
                FalsifyResult::NoWitnessFound { .. } => EXIT_HOLDS,
                FalsifyResult::Found { verdict, .. } if verdict.result == CarouselResult::Unsat => EXIT_VIOLATED,
                _ => EXIT_UNKNOWN,
            },
            Outcome::Render { .. } => EXIT_HOLDS,
        }
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        match &self.outcome {
            Outcome::CarouselCheck { bodies, triangle, verdict } => {
                let head = match verdict.result {
                    CarouselResult::Sat { j, k } => format!("SAT (j={j}, k={k})"),
                    CarouselResult::Unsat => "UNSAT".into(),
                    CarouselResult::Unknown => "UNKNOWN".into(),
                };
                let _ = writeln!(s, "carousel-check {} {}: {head}", bodies[0], bodies[1]);
                let _ = writeln!(s, "  triangle {} {} {}", p(triangle.a[0]), p(triangle.a[1]), p(triangle.a[2]));
                for j in 0..3 {
                    for k in 0..2 {
                        let i = 2 * j + k;
                        let _ = writeln!(
                            s,
                            "  j={j} k={k} margin {:+.6e} normal {:.6}",
                            verdict.margins[i], verdict.normals[i]
                        );
                    }
                }
            }
            Outcome::FindCrossing { bodies, verdict } => {
                let _ = write!(s, "find-crossing {} {}: ", bodies[0], bodies[1]);
                match verdict {
                    CrossVerdict::NoCrossing => s.push_str("NO_CROSSING\n"),
                    CrossVerdict::Unknown { grazing_normal } => {
                        let _ = writeln!(s, "UNKNOWN (grazing common tangent at normal {grazing_normal:.6})");
                    }
                    CrossVerdict::Witness(w) => {
                        s.push_str("WITNESS\n");
                        witness_block(&mut s, w);
                    }
                }
            }
            Outcome::DiskTest { body, result } => match result {
                DiskTest::NoWitnessFound { candidates, config } => {
                    let _ = writeln!(
                        s,
                        "disk-test {body}: NO_WITNESS_FOUND at resolution {}",
                        resolution(config, *candidates)
                    );
                }
                DiskTest::Witness { phi, witness, candidate } => {
                    let _ = writeln!(s, "disk-test {body}: WITNESS at candidate {candidate}");
                    let _ = writeln!(s, "  copy {}", similarity(phi));
                    witness_block(&mut s, witness);
                }
            },
            Outcome::Properties { body, reports } => {
                let _ = writeln!(s, "properties {body}:");
                for r in reports {
                    let v = match r.verdict {
                        PropVerdict::Pass => "PASS",
                        PropVerdict::Fail => "FAIL",
                        PropVerdict::Unknown => "UNKNOWN",
                    };
                    let num = format!("({})", r.id.number());
                    let _ = write!(s, "  {num:<5}{:<32} {v:<7} magnitude {:.3e}", r.id.name(), r.magnitude);
                    for (name, value) in &r.measures {
                        let _ = write!(s, " {name}={value:.3e}");
                    }
                    s.push('\n');
                    if let Some(w) = &r.witness {
                        let _ = writeln!(s, "      witness {}", property_witness(w));
                    }
                    if let Some(n) = &r.note {
                        let _ = writeln!(s, "      note {n}");
                    }
                }
            }
            Outcome::Falsify { body, config, result } => match result {
                FalsifyResult::NoWitnessFound { candidates } => {
                    let _ = writeln!(
                        s,
                        "falsify {body}: NO_WITNESS_FOUND at resolution {}",
                        resolution(config, *candidates)
                    );
                }
                FalsifyResult::Found { phi, witness, triangle, verdict } => {
                    let r = match verdict.result {
                        CarouselResult::Unsat => "UNSAT",
                        CarouselResult::Sat { .. } => "SAT",
                        CarouselResult::Unknown => "UNKNOWN",
                    };
                    let _ = writeln!(s, "falsify {body}: {r}");
                    let _ = writeln!(s, "  copy {}", similarity(phi));
                    let _ = writeln!(s, "  triangle {} {} {}", p(triangle.a[0]), p(triangle.a[1]), p(triangle.a[2]));
                    for (i, m) in verdict.margins.iter().enumerate() {
                        let _ = writeln!(s, "  j={} k={} margin {m:+.6e}", i / 2, i % 2);
                    }
                    witness_block(&mut s, witness);
                }
                FalsifyResult::ConstructionFailed { phi, witness, message } => {
                    let _ = writeln!(s, "falsify {body}: UNKNOWN ({message})");
                    let _ = writeln!(s, "  copy {}", similarity(phi));
                    witness_block(&mut s, witness);
                }
            },
            Outcome::Render { bodies } => {
                let _ = writeln!(s, "render: {}", bodies.join(", "));
            }
        }
        s
    }
}

fn p(x: Point) -> String {
    format!("({:.6}, {:.6})", x.x, x.y)
}

fn line(l: &DirectedLine) -> String {
    format!("through {} direction {:.6}", p(l.anchor), l.direction.radians())
}

fn similarity(m: &Similarity) -> String {
    format!("rotation {:.6} reflect {} translation {}", m.rotation.radians(), m.reflect, p(m.translation))
}

fn resolution(c: &SearchConfig, candidates: usize) -> String {
    let refl = if c.include_reflection { " x reflection" } else { "" };
    format!("{} rotations x {}^2 translations{refl} ({candidates} candidates)", c.rotation_steps, c.translation_grid)
}

fn witness_block(s: &mut String, w: &CrossingWitness) {
    let lead = match w.role {
        Role::KFirst => "first body leads",
        Role::K2First => "second body leads",
    };
    let _ = writeln!(s, "  role {lead}");
    let _ = writeln!(s, "  t1 {}", line(&w.t1));
    let _ = writeln!(s, "  t2 {}", line(&w.t2));
    let _ = writeln!(s, "  U1 {}  U1' {}", p(w.u1), p(w.u1p));
    let _ = writeln!(s, "  U2 {}  U2' {}", p(w.u2), p(w.u2p));
    let _ = writeln!(s, "  margin {:.6e}", w.margin);
}

fn property_witness(w: &Witness) -> String {
    match w {
        Witness::Direction { theta, first, second } => {
            format!("direction {theta:.6} faces at {} {}", p(*first), p(*second))
        }
        Witness::Corner { point, cone } => format!("corner {} cone {cone:.6}", p(*point)),
        Witness::Face { normal, first, last } => format!("face normal {normal:.6} from {} to {}", p(*first), p(*last)),
        Witness::DiagonalPair { first, second, crossing } => format!(
            "diagonals {}-{} and {}-{} cross at {}",
            p(first.p1),
            p(first.p2),
            p(second.p1),
            p(second.p2),
            p(*crossing)
        ),
        Witness::Diagonal { diagonal } => format!("diagonal {}-{}", p(diagonal.p1), p(diagonal.p2)),
        Witness::Center { center } => format!("center {}", p(*center)),
        Witness::Radial { point, center } => format!("point {} center {}", p(*point), p(*center)),
    }
}
