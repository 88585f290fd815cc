//! Scenario parsing, command dispatch, reports and SVG output for the `geom` tool.

pub mod report;
pub mod scenario;
pub mod svg;

use carousel_core::carousel::{carousel_check, carousel_falsify, Falsification};
use carousel_core::convex_kernel::{hull_with_points, ConvexBody, Tolerance};
use carousel_core::crossing::{crosses, disk_test, CrossingWitness, DiskTest, SearchConfig};
use carousel_core::disk_properties::{property_ladder, Witness};
use carousel_core::GeomError;

use report::{FalsifyResult, Outcome, Report};
use scenario::{Diagnostic, Parsed};
use svg::Scene;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    CarouselCheck,
    FindCrossing,
    DiskTest,
    Properties,
    Falsify,
    Render,
}

/// Command-line overrides of the scenario parameters.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub rotation_steps: Option<usize>,
    pub translation_grid: Option<usize>,
    pub bodies: Vec<String>,
}

fn input(location: &str, message: impl Into<String>) -> Diagnostic {
    Diagnostic { location: location.into(), message: message.into() }
}

fn select(parsed: &Parsed, flags: &Flags, count: usize) -> Result<Vec<usize>, Diagnostic> {
    let names = if flags.bodies.is_empty() { &parsed.scenario.params.bodies } else { &flags.bodies };
    let picked: Vec<usize> = if names.is_empty() {
        (0..count.min(parsed.bodies.len())).collect()
    } else {
        names
            .iter()
            .map(|n| parsed.index_of(n).ok_or_else(|| input("--body", format!("unknown body {n:?}"))))
            .collect::<Result<_, _>>()?
    };
    if picked.len() < count {
        return Err(input("bodies", format!("this command needs {count} bodies, found {}", picked.len())));
    }
    Ok(picked[..count].to_vec())
}

fn tolerance(parsed: &Parsed, flags: &Flags, bodies: &[&ConvexBody]) -> Result<Tolerance, Diagnostic> {
    let mut tol = Tolerance::for_bodies(bodies);
    if let Some(e) = flags.tol.or(parsed.scenario.params.tol) {
        tol = tol.with_eps(e);
    }
    if let Some(n) = flags.samples.or(parsed.scenario.params.samples) {
        tol.samples = n;
    }
    tol.validate().map_err(|m| input("--tol/--samples", m))?;
    Ok(tol)
}

fn search_config(parsed: &Parsed, flags: &Flags) -> Result<SearchConfig, Diagnostic> {
    let p = &parsed.scenario.params;
    let d = SearchConfig::default();
    let cfg = SearchConfig {
        rotation_steps: flags.rotation_steps.or(p.rotation_steps).unwrap_or(d.rotation_steps),
        translation_grid: flags.translation_grid.or(p.translation_grid).unwrap_or(d.translation_grid),
        include_reflection: p.reflection.unwrap_or(d.include_reflection),
        ..d
    };
    cfg.validate().map_err(|m| input("--rotation-steps", m))?;
    Ok(cfg)
}

fn add_witness(scene: &mut Scene, w: &CrossingWitness) {
    scene.lines.push(("t1".into(), w.t1));
    scene.lines.push(("t2".into(), w.t2));
    for (name, p) in [("U1", w.u1), ("U1′", w.u1p), ("U2", w.u2), ("U2′", w.u2p)] {
        scene.points.push((name.into(), p));
    }
}

fn add_property_witness(scene: &mut Scene, label: String, w: &Witness) {
    let pts = match w {
        Witness::Direction { first, second, .. } => vec![*first, *second],
        Witness::Corner { point, .. } => vec![*point],
        Witness::Face { first, last, .. } => vec![*first, *last],
        Witness::DiagonalPair { first, second, crossing } => vec![first.p1, first.p2, second.p1, second.p2, *crossing],
        Witness::Diagonal { diagonal } => vec![diagonal.p1, diagonal.p2],
        Witness::Center { center } => vec![*center],
        Witness::Radial { point, center } => vec![*point, *center],
    };
    scene.points.extend(pts.into_iter().map(|p| (label.clone(), p)));
}

/// Runs one command. Errors are input problems (exit code 64).
pub fn run(cmd: Command, parsed: &Parsed, flags: &Flags) -> Result<(Report, Scene), Diagnostic> {
    let mut scene = Scene::default();
    let named = |i: usize| (parsed.name(i).to_string(), parsed.bodies[i].clone());
    let (tol, outcome) = match cmd {
        Command::CarouselCheck => {
            let ix = select(parsed, flags, 2)?;
            let (k0, k1) = (&parsed.bodies[ix[0]], &parsed.bodies[ix[1]]);
            let tri = parsed.triangle.ok_or_else(|| input("triangle", "carousel-check needs a triangle"))?;
            let tol = tolerance(parsed, flags, &[k0, k1])?;
            let verdict = carousel_check(k0, k1, &tri, &tol).map_err(|e| input("triangle", e.to_string()))?;
            scene.bodies = vec![named(ix[0]), named(ix[1])];
            scene.triangle = Some(tri);
            for j in 0..3 {
                for k in [k0, k1] {
                    scene.outlines.push(hull_with_points(k, &tri.without(j)));
                }
            }
            let bodies = [parsed.name(ix[0]).to_string(), parsed.name(ix[1]).to_string()];
            (tol, Outcome::CarouselCheck { bodies, triangle: tri, verdict })
        }
        Command::FindCrossing => {
            let ix = select(parsed, flags, 2)?;
            let (k, k2) = (&parsed.bodies[ix[0]], &parsed.bodies[ix[1]]);
            let tol = tolerance(parsed, flags, &[k, k2])?;
            let verdict = crosses(k, k2, &tol);
            scene.bodies = vec![named(ix[0]), named(ix[1])];
            if let Some(w) = verdict.witness() {
                add_witness(&mut scene, w);
            }
            let bodies = [parsed.name(ix[0]).to_string(), parsed.name(ix[1]).to_string()];
            (tol, Outcome::FindCrossing { bodies, verdict })
        }
        Command::DiskTest => {
            let i = select(parsed, flags, 1)?[0];
            let k = &parsed.bodies[i];
            let tol = tolerance(parsed, flags, &[k])?;
            let cfg = search_config(parsed, flags)?;
            let result = disk_test(k, &cfg, &tol);
            scene.bodies = vec![named(i)];
            if let DiskTest::Witness { phi, witness, .. } = &result {
                scene.bodies.push((format!("{}′", parsed.name(i)), k.apply(phi)));
                add_witness(&mut scene, witness);
            }
            let body = parsed.name(i).to_string();
            (tol, Outcome::DiskTest { body, result })
        }
        Command::Properties => {
            let i = select(parsed, flags, 1)?[0];
            let k = &parsed.bodies[i];
            let tol = tolerance(parsed, flags, &[k])?;
            let reports = property_ladder(k, &tol);
            scene.bodies = vec![named(i)];
            for r in &reports {
                if let Some(w) = &r.witness {
                    add_property_witness(&mut scene, format!("({})", r.id.number()), w);
                }
            }
            let body = parsed.name(i).to_string();
            (tol, Outcome::Properties { body, reports })
        }
        Command::Falsify => {
            let i = select(parsed, flags, 1)?[0];
            let k = &parsed.bodies[i];
            let tol = tolerance(parsed, flags, &[k])?;
            let config = search_config(parsed, flags)?;
            scene.bodies = vec![named(i)];
            let result = match carousel_falsify(k, &config, &tol) {
                Ok(None) => FalsifyResult::NoWitnessFound { candidates: config.candidates() },
                Ok(Some(Falsification { k1, triangle, phi, witness, verdict })) => {
                    scene.bodies.push((format!("{}′", parsed.name(i)), k1));
                    scene.triangle = Some(triangle);
                    add_witness(&mut scene, &witness);
                    FalsifyResult::Found { phi, witness, triangle, verdict }
                }
                Err(GeomError::ConstructionFailed(message)) => match disk_test(k, &config, &tol) {
                    DiskTest::Witness { phi, witness, .. } => {
                        scene.bodies.push((format!("{}′", parsed.name(i)), k.apply(&phi)));
                        add_witness(&mut scene, &witness);
                        FalsifyResult::ConstructionFailed { phi, witness, message }
                    }
                    DiskTest::NoWitnessFound { candidates, .. } => FalsifyResult::NoWitnessFound { candidates },
                },
                Err(e) => return Err(input("body", e.to_string())),
            };
            let body = parsed.name(i).to_string();
            (tol, Outcome::Falsify { body, config, result })
        }
        Command::Render => {
            let all: Vec<&ConvexBody> = parsed.bodies.iter().collect();
            let tol = tolerance(parsed, flags, &all)?;
            scene.bodies = (0..parsed.bodies.len()).map(named).collect();
            scene.triangle = parsed.triangle;
            let bodies = parsed.scenario.bodies.iter().map(|b| b.name.clone()).collect();
            (tol, Outcome::Render { bodies })
        }
    };
    let report =
        Report { version: env!("CARGO_PKG_VERSION"), tolerance: tol, warnings: parsed.warnings.clone(), outcome };
    Ok((report, scene))
}
