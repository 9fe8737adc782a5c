//! The smallest complete totally geodesic subset containing finitely many
//! points, and a randomized audit of a claimed answer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::construction::{whole_space_construction, WholeSpaceTrace};
use crate::error::{GeometryError, Result};
use crate::flats::{on_complex_geodesic, real_plane_through, ComplexGeodesic, RealPlane};
use crate::geodesic::{distance, geodesic_through, on_geodesic, point_at_arclength, Geodesic};
use crate::hermitian::{herm, proj_equal, ProjPoint, Tolerance};
use crate::tangent::TangentVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HullTag {
    Empty,
    Point,
    Geodesic,
    ComplexGeodesic,
    RealPlane,
    Whole,
}

impl HullTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            HullTag::Empty => "Empty",
            HullTag::Point => "Point",
            HullTag::Geodesic => "Geodesic",
            HullTag::ComplexGeodesic => "ComplexGeodesic",
            HullTag::RealPlane => "RealPlane",
            HullTag::Whole => "Whole",
        }
    }
}

/// A hull together with the flat realizing it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HullClass {
    Empty,
    Point(ProjPoint),
    Geodesic(Geodesic),
    ComplexGeodesic(ComplexGeodesic),
    RealPlane(RealPlane),
    Whole,
}

impl HullClass {
    pub fn tag(&self) -> HullTag {
        match self {
            HullClass::Empty => HullTag::Empty,
            HullClass::Point(_) => HullTag::Point,
            HullClass::Geodesic(_) => HullTag::Geodesic,
            HullClass::ComplexGeodesic(_) => HullTag::ComplexGeodesic,
            HullClass::RealPlane(_) => HullTag::RealPlane,
            HullClass::Whole => HullTag::Whole,
        }
    }

    /// Membership residual of `x` in the witness; `None` for `Empty` and
    /// `Whole`.
    pub fn residual(&self, x: &ProjPoint) -> Option<f64> {
        match self {
            HullClass::Empty | HullClass::Whole => None,
            HullClass::Point(p) => {
                let (a, b) = (p.unit_rep(), x.unit_rep());
                Some((b - a.scale(b.dot(&a))).norm())
            }
            HullClass::Geodesic(g) => Some(g.residual(x)),
            HullClass::ComplexGeodesic(l) => Some(l.residual(x)),
            HullClass::RealPlane(r) => Some(r.residual(x)),
        }
    }
}

/// `{"tag": ..., "witness": ...}`, with a null witness for `Empty`/`Whole`.
impl Serialize for HullClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HullClass", 2)?;
        st.serialize_field("tag", self.tag().as_str())?;
        match self {
            HullClass::Empty | HullClass::Whole => st.serialize_field("witness", &None::<()>)?,
            HullClass::Point(p) => st.serialize_field("witness", p)?,
            HullClass::Geodesic(g) => st.serialize_field("witness", g)?,
            HullClass::ComplexGeodesic(l) => st.serialize_field("witness", l)?,
            HullClass::RealPlane(r) => st.serialize_field("witness", r)?,
        }
        st.end()
    }
}

/// Why the hull is the whole space.
#[derive(Clone, Debug, PartialEq)]
pub enum WholeCertificate {
    /// The spine geodesic and the off-spine point share no flat.
    NoCommonFlat(Box<WholeSpaceTrace>),
    /// All earlier points lie on a complex geodesic; this input does not.
    OffComplexGeodesic { index: usize },
    /// All earlier points lie on a real plane; this input does not.
    OffRealPlane { index: usize },
}

impl Serialize for WholeCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WholeCertificate", 2)?;
        match self {
            WholeCertificate::NoCommonFlat(trace) => {
                st.serialize_field("reason", "NoCommonFlat")?;
                st.serialize_field("trace", trace)?;
            }
            WholeCertificate::OffComplexGeodesic { index } => {
                st.serialize_field("reason", "OffComplexGeodesic")?;
                st.serialize_field("index", index)?;
            }
            WholeCertificate::OffRealPlane { index } => {
                st.serialize_field("reason", "OffRealPlane")?;
                st.serialize_field("index", index)?;
            }
        }
        st.end()
    }
}

enum Decision {
    Done(HullClass),
    NoCommonFlat { spine: Geodesic, point: usize },
    OffComplexGeodesic(usize),
    OffRealPlane(usize),
}

fn decide(points: &[ProjPoint], tol: &Tolerance) -> Result<Decision> {
    if points.iter().any(|p| !p.is_negative()) {
        return Err(GeometryError::NotNegative);
    }
    let Some(p0) = points.first() else {
        return Ok(Decision::Done(HullClass::Empty));
    };
    let Some(q) = points.iter().find(|q| !proj_equal(p0, q, tol)) else {
        return Ok(Decision::Done(HullClass::Point(*p0)));
    };
    let g = geodesic_through(p0, q, tol)?;
    let Some(k) = points.iter().position(|x| !on_geodesic(&g, x, tol)) else {
        return Ok(Decision::Done(HullClass::Geodesic(g)));
    };
    let p = &points[k];

    // the complex geodesic containing g is its complex spine
    let spine = ComplexGeodesic::from_polar(g.polar(), tol)?;
    if on_complex_geodesic(&spine, p, tol) {
        return Ok(match points.iter().position(|x| !on_complex_geodesic(&spine, x, tol)) {
            None => Decision::Done(HullClass::ComplexGeodesic(spine)),
            Some(i) => Decision::OffComplexGeodesic(i),
        });
    }
    match real_plane_through(p0, q, p, tol) {
        Ok(plane) => Ok(
            match points.iter().position(|x| plane.residual(x) >= tol.eps_mem) {
                None => Decision::Done(HullClass::RealPlane(plane)),
                Some(i) => Decision::OffRealPlane(i),
            },
        ),
        Err(GeometryError::NoCommonRealPlane) => Ok(Decision::NoCommonFlat { spine: g, point: k }),
        Err(e) => Err(e),
    }
}

/// Classifies the hull of finitely many negative points.
///
/// The first two distinct points span a geodesic `g`; the first point off
/// `g` decides between the complex spine of `g`, the real plane through
/// `g` and that point, or neither. Any further point off the chosen flat
/// makes the hull the whole space.
pub fn hull_classify(points: &[ProjPoint], tol: &Tolerance) -> Result<HullClass> {
    Ok(match decide(points, tol)? {
        Decision::Done(c) => c,
        _ => HullClass::Whole,
    })
}

/// Like [`hull_classify`], and for `Whole` also the reason; when the spine
/// and the deciding point share no flat, the reason carries the full
/// constructive trace.
pub fn hull_classify_with_certificate(
    points: &[ProjPoint],
    tol: &Tolerance,
) -> Result<(HullClass, Option<WholeCertificate>)> {
    Ok(match decide(points, tol)? {
        Decision::Done(c) => (c, None),
        Decision::OffComplexGeodesic(index) => {
            (HullClass::Whole, Some(WholeCertificate::OffComplexGeodesic { index }))
        }
        Decision::OffRealPlane(index) => {
            (HullClass::Whole, Some(WholeCertificate::OffRealPlane { index }))
        }
        Decision::NoCommonFlat { spine, point } => {
            let trace = whole_space_construction(&spine, &points[point], tol)?;
            (HullClass::Whole, Some(WholeCertificate::NoCommonFlat(Box::new(trace))))
        }
    })
}

/// Outcome of [`closure_oracle`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub samples: usize,
    pub seed: u64,
    /// Largest membership residual seen, inputs included.
    pub max_residual: f64,
    /// A residual exceeded `eps_mem`: the claimed class is not closed.
    pub refuted: bool,
    /// Index of the first offending sample, if any.
    pub refuted_at: Option<usize>,
    /// Size of the final member pool.
    pub members: usize,
}

/// Pool members closer than this are not joined: the geodesic through
/// nearly coincident points is ill-conditioned.
const MIN_SEPARATION: f64 = 0.1;
/// How far past each end of the joining segment samples may fall.
const SAMPLE_SPAN: f64 = 3.0;

/// Randomized audit of a claimed hull: repeatedly joins two accepted
/// members by a geodesic, samples a point on it (up to `SAMPLE_SPAN`
/// beyond either member) and measures its membership residual in the
/// claimed witness.
///
/// Every sample is checked, but only samples between their two parents
/// join the member pool. Extrapolation amplifies the rounding error of the
/// parents, and letting extrapolated points breed would compound that
/// error geometrically over the run.
pub fn closure_oracle(
    points: &[ProjPoint],
    claimed: &HullClass,
    samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<OracleReport> {
    if matches!(claimed, HullClass::Empty | HullClass::Whole) {
        return Err(GeometryError::ParameterOutOfRange(
            "closure audit needs a claimed flat",
        ));
    }
    let residual = |x: &ProjPoint| claimed.residual(x).unwrap_or(0.0);
    let mut report = OracleReport {
        samples: 0,
        seed,
        max_residual: 0.0,
        refuted: false,
        refuted_at: None,
        members: points.len(),
    };
    for x in points {
        report.max_residual = report.max_residual.max(residual(x));
    }
    if report.max_residual > tol.eps_mem {
        report.refuted = true;
        return Ok(report);
    }
    let mut pool: Vec<ProjPoint> = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let Some((a, b, d)) = pick_distinct(&mut rng, &pool) else {
            break;
        };
        report.samples = k + 1;
        let g = geodesic_through(&a, &b, tol)?;
        let t = tangent_towards(&a, &b)?;
        let theta = rng.random_range(-SAMPLE_SPAN..=d + SAMPLE_SPAN);
        let x = point_at_arclength(&g, &a, &t, theta, tol)?;
        let res = residual(&x);
        report.max_residual = report.max_residual.max(res);
        if res > tol.eps_mem {
            report.refuted = true;
            report.refuted_at = Some(k);
            break;
        }
        if (0.0..=d).contains(&theta) {
            pool.push(x);
        }
    }
    report.members = pool.len();
    Ok(report)
}

/// Unit tangent at `a` of the geodesic ray towards `b`.
fn tangent_towards(a: &ProjPoint, b: &ProjPoint) -> Result<TangentVector> {
    // rephase b so that herm(b, a) < 0; its projection to a^perp then points at b
    let h = herm(b.rep(), a.rep());
    let b = b.rep().scale(-h.conj() / h.norm());
    TangentVector::project(*a, &b)?.normalized()
}

fn pick_distinct<R: Rng>(rng: &mut R, pool: &[ProjPoint]) -> Option<(ProjPoint, ProjPoint, f64)> {
    if pool.len() < 2 {
        return None;
    }
    for _ in 0..64 {
        let i = rng.random_range(0..pool.len());
        let j = rng.random_range(0..pool.len());
        if i == j {
            continue;
        }
        let d = distance(&pool[i], &pool[j]);
        if d > MIN_SEPARATION {
            return Some((pool[i], pool[j], d));
        }
    }
    None
}
