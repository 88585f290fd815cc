use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use geom_cli::report::EXIT_INPUT;
use geom_cli::scenario::parse_scenario;
use geom_cli::svg::render_svg;
use geom_cli::{run, Command, Flags};

#[derive(Parser, Debug)]
#[command(name = "geom", version, about = "Convex bodies, crossing witnesses and the weak carousel check")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Scenario file (JSON).
    #[arg(long)]
    scenario: PathBuf,
    /// Geometric tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Normals sampled by containment and distance queries.
    #[arg(long)]
    samples: Option<usize>,
    /// Rotations tried by the isometry search.
    #[arg(long)]
    rotation_steps: Option<usize>,
    /// Translations per axis tried by the isometry search.
    #[arg(long)]
    translation_grid: Option<usize>,
    /// Body to use, by name; repeat for two-body commands.
    #[arg(long = "body")]
    bodies: Vec<String>,
    /// Write an SVG drawing here.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Weak carousel check for two bodies and the scenario triangle.
    CarouselCheck(Common),
    /// Crossing witness for two bodies.
    FindCrossing(Common),
    /// Search for an isometric copy crossing the body.
    DiskTest(Common),
    /// Disk-characterising properties of the body.
    Properties(Common),
    /// Build a triangle on which the weak carousel property fails for the body.
    Falsify(Common),
    /// Draw the scenario.
    Render(Common),
}

fn execute(cmd: Command, c: &Common) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(&c.scenario).with_context(|| format!("reading {}", c.scenario.display()))?;
    let parsed = parse_scenario(&text).with_context(|| format!("in {}", c.scenario.display()))?;
    let flags = Flags {
        tol: c.tol,
        samples: c.samples,
        rotation_steps: c.rotation_steps,
        translation_grid: c.translation_grid,
        bodies: c.bodies.clone(),
    };
    let (report, scene) = run(cmd, &parsed, &flags)?;
    if c.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(path) = &c.svg {
        std::fs::write(path, render_svg(&scene)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let (cmd, common) = match &cli.command {
        Cmd::CarouselCheck(c) => (Command::CarouselCheck, c),
        Cmd::FindCrossing(c) => (Command::FindCrossing, c),
        Cmd::DiskTest(c) => (Command::DiskTest, c),
        Cmd::Properties(c) => (Command::Properties, c),
        Cmd::Falsify(c) => (Command::Falsify, c),
        Cmd::Render(c) => (Command::Render, c),
    };
    match execute(cmd, common) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
