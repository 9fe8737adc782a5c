//! Scene files and point arguments.

use std::fs;
use std::io::Read;
use std::path::Path;

use h2c_core::{GeometryError, HVector, ProjPoint, Tolerance};
use serde::Deserialize;

/// Why a command could not produce its report.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or ill-formed input; exit code 2.
    Malformed(String),
    /// Well-formed input outside the domain of the operation; exit code 3.
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Malformed(_) => 2,
            Failure::Domain(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Malformed(m) => write!(f, "malformed input: {m}"),
            Failure::Domain(m) => write!(f, "domain violation: {m}"),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::ZeroVector | GeometryError::InvalidTolerance => {
                Failure::Malformed(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// A point written either as `[[re, im], [re, im], [re, im]]` or, for real
/// coordinates, as `[x0, x1, x2]`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum PointArg {
    Complex(HVector),
    Real([f64; 3]),
}

impl PointArg {
    pub fn vector(&self) -> HVector {
        match self {
            PointArg::Complex(v) => *v,
            PointArg::Real([a, b, c]) => HVector::real(*a, *b, *c),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    points: Vec<PointArg>,
    seed: Option<u64>,
    tolerance: Option<Tolerance>,
    samples: Option<usize>,
}

pub struct Scene {
    pub points: Vec<HVector>,
    pub seed: Option<u64>,
    pub tolerance: Option<Tolerance>,
    pub samples: Option<usize>,
}

pub fn read_scene(path: &Path) -> Result<Scene, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Malformed(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?
    };
    let file: SceneFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    if let Some(t) = &file.tolerance {
        t.validate()?;
    }
    let points: Vec<HVector> = file.points.iter().map(PointArg::vector).collect();
    for (k, v) in points.iter().enumerate() {
        if !v.is_finite() || v.norm() == 0.0 {
            return Err(Failure::Malformed(format!("point {k} is zero or not finite")));
        }
    }
    Ok(Scene {
        points,
        seed: file.seed,
        tolerance: file.tolerance,
        samples: file.samples,
    })
}

pub fn parse_vector(arg: &str) -> Result<HVector, Failure> {
    let p: PointArg =
        serde_json::from_str(arg).map_err(|e| Failure::Malformed(format!("point {arg:?}: {e}")))?;
    let v = p.vector();
    if !v.is_finite() || v.norm() == 0.0 {
        return Err(Failure::Malformed(format!("point {arg:?} is zero or not finite")));
    }
    Ok(v)
}

/// A point of the ball; anything else is a domain violation.
pub fn negative_point(v: &HVector, tol: &Tolerance) -> Result<ProjPoint, Failure> {
    Ok(ProjPoint::negative(v, tol)?)
}

pub fn parse_point(arg: &str, tol: &Tolerance) -> Result<ProjPoint, Failure> {
    negative_point(&parse_vector(arg)?, tol)
}
