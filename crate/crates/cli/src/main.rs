//! `h2c`: classify point sets of the complex hyperbolic plane and rerun
//! the verification suite from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 malformed input,
//! 3 input outside the domain (a point not in the ball, a degenerate
//! configuration).

mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use h2c_core::{
    bisector_crossing, bisector_from_spine, bisector_residual, closure_oracle, distance,
    geodesic_through, hull_classify_with_certificate, project_to_geodesic, Endpoint, HullClass,
    ProjPoint, Tolerance,
};
use serde_json::{json, Value};

use input::{negative_point, parse_point, read_scene, Failure, Scene};

const DEFAULT_SEED: u64 = 42;
const DEFAULT_SAMPLES: usize = 1000;

#[derive(Parser)]
#[command(name = "h2c", version, about = "Totally geodesic hulls in the complex hyperbolic plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scene file (JSON); `-` reads standard input.
    #[arg(long, global = true)]
    scene: Option<PathBuf>,

    /// Membership tolerance; overrides the scene's.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Seed for sampled checks and the closure oracle [default: 42].
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Number of samples per sampled check [default: 1000].
    #[arg(long, global = true)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the totally geodesic hull of the scene's points.
    Classify,
    /// Run the closed-form and sampled checks, one JSON line each.
    Verify,
    /// Distance between two points.
    Distance { p: String, q: String },
    /// Orthogonal projection of a point onto the geodesic through two others.
    Project {
        point: String,
        spine_a: String,
        spine_b: String,
    },
    /// Where the geodesic segment from p to q crosses the bisector with the
    /// given spine.
    Crossing {
        spine_a: String,
        spine_b: String,
        p: String,
        q: String,
    },
}

/// Settings after merging flags over the scene file over the defaults.
struct Resolved {
    scene: Option<Scene>,
    tol: Tolerance,
    seed: u64,
    samples: usize,
}

fn resolve(cli: &Cli) -> Result<Resolved, Failure> {
    let scene = cli.scene.as_deref().map(read_scene).transpose()?;
    let tol = match (cli.tolerance, scene.as_ref().and_then(|s| s.tolerance)) {
        (Some(eps), _) => Tolerance::with_membership(eps)?,
        (None, Some(t)) => t,
        (None, None) => Tolerance::default(),
    };
    let seed = cli
        .seed
        .or(scene.as_ref().and_then(|s| s.seed))
        .unwrap_or(DEFAULT_SEED);
    let samples = cli
        .samples
        .or(scene.as_ref().and_then(|s| s.samples))
        .unwrap_or(DEFAULT_SAMPLES);
    Ok(Resolved {
        scene,
        tol,
        seed,
        samples,
    })
}

fn classify(r: &Resolved) -> Result<(Value, bool), Failure> {
    let scene = r
        .scene
        .as_ref()
        .ok_or_else(|| Failure::Malformed("classify needs --scene".into()))?;
    let points: Vec<ProjPoint> = scene
        .points
        .iter()
        .map(|v| negative_point(v, &r.tol))
        .collect::<Result<_, _>>()?;
    let (class, certificate) = hull_classify_with_certificate(&points, &r.tol)?;
    let oracle = match class {
        HullClass::Empty | HullClass::Whole => None,
        _ => Some(closure_oracle(&points, &class, r.samples, r.seed, &r.tol)?),
    };
    let refuted = oracle.is_some_and(|o| o.refuted);
    let mut report = output::to_value(&class)?;
    report["oracle"] = output::to_value(&oracle)?;
    if let Some(c) = certificate {
        report["certificate"] = output::to_value(&c)?;
    }
    Ok((report, !refuted))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let r = resolve(cli)?;
    let tol = &r.tol;
    match &cli.command {
        Command::Classify => {
            let (report, ok) = classify(&r)?;
            output::emit(&report);
            Ok(ok)
        }
        Command::Verify => {
            let checks = verify::run(&verify::Settings {
                seed: r.seed,
                samples: r.samples,
                tol: r.tol,
            });
            for c in &checks {
                output::emit(&output::to_value(c)?);
            }
            Ok(checks.iter().all(|c| c.pass))
        }
        Command::Distance { p, q } => {
            let (p, q) = (parse_point(p, tol)?, parse_point(q, tol)?);
            output::emit(&output::to_value(&json!({ "distance": distance(&p, &q) }))?);
            Ok(true)
        }
        Command::Project {
            point,
            spine_a,
            spine_b,
        } => {
            let p = parse_point(point, tol)?;
            let g = geodesic_through(&parse_point(spine_a, tol)?, &parse_point(spine_b, tol)?, tol)?;
            let foot = project_to_geodesic(&g, &p, tol)?;
            output::emit(&output::to_value(&json!({
                "projection": foot.rep(),
                "distance": distance(&p, &foot),
            }))?);
            Ok(true)
        }
        Command::Crossing {
            spine_a,
            spine_b,
            p,
            q,
        } => {
            let g = geodesic_through(&parse_point(spine_a, tol)?, &parse_point(spine_b, tol)?, tol)?;
            let b = bisector_from_spine(&g);
            let (p, q) = (parse_point(p, tol)?, parse_point(q, tol)?);
            let x = bisector_crossing(&b, &p, &Endpoint::Point(q), tol)?;
            output::emit(&output::to_value(&json!({
                "crossing": x.rep(),
                "residual": bisector_residual(&b, &x),
            }))?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("h2c: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
