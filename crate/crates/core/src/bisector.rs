//! Bisectors `B = ball ∩ P(W + C u)` over a real spine `G = ball ∩ P(W)`.
//!
//! `B` is foliated by complex slices `P(C x + C u)`, `x` on the spine, and
//! is the union of the meridians `P(W + R z u)`, `|z| = 1`, which pairwise
//! meet along the spine. As a hypersurface it is cut out by
//! `Im(<x, v1><v2, x> / <v1, v2>) = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::flats::{ComplexGeodesic, RealPlane};
use crate::geodesic::{
    geodesic_through, geodesic_to_boundary, on_geodesic, point_at_vertex_param, Geodesic,
};
use crate::hermitian::{
    canonicalize, herm, herm_norm, herm_orthogonal, Complex, HVector, PointKind, ProjPoint,
    Tolerance, I, ONE,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bisector {
    spine: Geodesic,
    u: HVector,
}

#[derive(Serialize, Deserialize)]
struct BisectorRepr {
    spine: Geodesic,
    u: HVector,
}

impl Serialize for Bisector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BisectorRepr {
            spine: self.spine,
            u: self.u,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bisector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // u is determined by the spine; the stored value is informational
        let r = BisectorRepr::deserialize(d)?;
        Ok(bisector_from_spine(&r.spine))
    }
}

impl Bisector {
    pub fn spine(&self) -> &Geodesic {
        &self.spine
    }

    /// Unit positive vector orthogonal to `W + iW`.
    pub fn u(&self) -> &HVector {
        &self.u
    }

    /// The complex spine `P(W + iW)`.
    pub fn complex_spine(&self) -> ComplexGeodesic {
        ComplexGeodesic::from_polar(&self.u, &Tolerance::default())
            .expect("u is a positive unit vector")
    }
}

pub fn bisector_from_spine(g: &Geodesic) -> Bisector {
    Bisector {
        spine: *g,
        u: *g.polar(),
    }
}

/// `Im(<x, v1><v2, x> / <v1, v2>)` at the representative `x` as given.
pub fn bisector_form(b: &Bisector, x: &HVector) -> f64 {
    let (v1, v2) = (b.spine.v1(), b.spine.v2());
    (herm(x, v1) * herm(v2, x) / herm(v1, v2)).im
}

/// The bisector equation evaluated at the canonical representative of `x`;
/// zero on `B`, and its sign tells the two sides apart.
pub fn bisector_residual(b: &Bisector, x: &ProjPoint) -> f64 {
    bisector_form(b, x.rep())
}

/// `Im(<v1, x><x, v2>)` at the representative `x` as given.
///
/// Same zero set as [`bisector_form`]; with `<v1, v2> = 1/2` the two are
/// related by `bisector_form = -2 spine_side_value`.
pub fn spine_side_value(b: &Bisector, x: &HVector) -> f64 {
    (herm(b.spine.v1(), x) * herm(x, b.spine.v2())).im
}

pub fn on_bisector(b: &Bisector, x: &ProjPoint, tol: &Tolerance) -> bool {
    bisector_residual(b, x).abs() < tol.eps_mem
}

/// The spine point under `x`: drop the `u` component.
pub fn slice_base_point(b: &Bisector, x: &ProjPoint, tol: &Tolerance) -> Result<ProjPoint> {
    let y = *x.rep() - b.u.scale(herm(x.rep(), &b.u));
    let p = canonicalize(&y, tol)?;
    if !on_geodesic(&b.spine, &p, tol) {
        return Err(GeometryError::NotOnBisector);
    }
    Ok(p)
}

/// The slice through the spine point `x`: the complex geodesic of `C x + C u`.
pub fn slice_at(b: &Bisector, x: &ProjPoint, tol: &Tolerance) -> Result<ComplexGeodesic> {
    if !on_geodesic(&b.spine, x, tol) {
        return Err(GeometryError::NotOnSpine);
    }
    ComplexGeodesic::from_polar(&herm_orthogonal(x.rep(), &b.u), tol)
}

/// The meridian `P(W + R z u)`.
pub fn meridian_at(b: &Bisector, z: Complex, tol: &Tolerance) -> Result<RealPlane> {
    if (z.norm() - 1.0).abs() > tol.eps_mem {
        return Err(GeometryError::NonUnitPhase(z.norm()));
    }
    let [w0, w1] = b.spine.w_basis();
    RealPlane::from_basis(&[w0, w1, b.u.scale(z)], tol)
}

/// The phase `z` of the meridian through `x`, normalized so that
/// `Im z > 0`, or `z = 1` when the meridian phase is real (`z ~ -z`).
pub fn meridian_of_point(b: &Bisector, x: &ProjPoint, tol: &Tolerance) -> Result<Complex> {
    if !on_bisector(b, x, tol) {
        return Err(GeometryError::NotOnBisector);
    }
    let xr = x.unit_rep();
    let [c1, _, c3] = b.spine.coordinates(&xr);
    if c3.norm() < tol.eps_mem {
        return Err(GeometryError::OnSpine);
    }
    // rotate x so that its W part is real, then read the phase of the u part
    let k = c1 / c1.norm();
    let w = c3 / k;
    let mut z = w / w.norm();
    if z.im < 0.0 {
        z = -z;
    }
    if z.im.abs() < tol.eps_mem {
        z = ONE;
    }
    Ok(z)
}

/// The result of [`non_tg_witness`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BisectorWitness {
    /// `v1 - v2 + r u`
    pub x: HVector,
    /// `a v1 - a^-1 v2 + i s u`
    pub y: HVector,
    /// `x - (<x,y>/|<x,y>|) y`, a point of the geodesic through `x` and `y`
    pub q_raw: HVector,
    pub q: ProjPoint,
    /// `herm(q_raw, q_raw)`
    pub q_norm: f64,
    /// bisector equation at `q_raw`
    pub residual: f64,
}

/// The bisector over the geodesic through `(1,0,0)` and `(1,1/2,0)`:
/// spine on the `e1` axis, `u = e2`.
pub fn standard_bisector() -> Bisector {
    let tol = Tolerance::default();
    let p = ProjPoint::from_vector(&HVector::real(1.0, 0.0, 0.0)).expect("nonzero");
    let q = ProjPoint::from_vector(&HVector::real(1.0, 0.5, 0.0)).expect("nonzero");
    bisector_from_spine(&geodesic_through(&p, &q, &tol).expect("distinct negative points"))
}

/// Two points of the standard bisector in orthogonal meridians and distinct
/// slices whose connecting geodesic leaves the bisector.
pub fn non_tg_witness(alpha: f64, r: f64, s: f64) -> Result<BisectorWitness> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(GeometryError::ParameterOutOfRange("alpha must be positive"));
    }
    if (alpha - 1.0).abs() < 1e-12 {
        return Err(GeometryError::ParameterOutOfRange("alpha must differ from 1"));
    }
    for (v, what) in [(r, "r must be nonzero in (-1, 1)"), (s, "s must be nonzero in (-1, 1)")] {
        if !(v.abs() < 1.0 && v != 0.0) {
            return Err(GeometryError::ParameterOutOfRange(what));
        }
    }
    let b = standard_bisector();
    let (v1, v2, u) = (*b.spine.v1(), *b.spine.v2(), b.u);
    let x = v1 - v2 + u.scale_real(r);
    let y = v1.scale_real(alpha) - v2.scale_real(1.0 / alpha) + u.scale(I * s);
    let h = herm(&x, &y);
    let q_raw = x - y.scale(h / h.norm());
    let q = canonicalize(&q_raw, &Tolerance::default())?;
    Ok(BisectorWitness {
        x,
        y,
        q_raw,
        q,
        q_norm: herm_norm(&q_raw),
        residual: bisector_form(&b, &q_raw),
    })
}

/// Where a crossing search heads to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Endpoint {
    /// A point of the ball.
    Point(ProjPoint),
    /// An ideal (isotropic) point.
    Ideal(ProjPoint),
}

/// Sign-change bisection for a point of `B` on the geodesic from `p`
/// towards `end`. Works in `ln a` along the vertex parametrization.
pub fn bisector_crossing(
    b: &Bisector,
    p: &ProjPoint,
    end: &Endpoint,
    tol: &Tolerance,
) -> Result<ProjPoint> {
    if !p.is_negative() {
        return Err(GeometryError::NotNegative);
    }
    let f0 = bisector_residual(b, p);
    if f0.abs() < tol.eps_mem {
        return Ok(*p);
    }
    let (path, s_end) = match end {
        Endpoint::Point(q) => {
            let path = geodesic_through(p, q, tol)?;
            let s_end = path.alpha_of(q)?.ln();
            (path, s_end)
        }
        Endpoint::Ideal(v) => {
            if v.kind() != PointKind::Isotropic {
                return Err(GeometryError::NotIsotropic);
            }
            let path = geodesic_to_boundary(p, v, tol)?;
            // the end is v1 (a -> inf) or v2 (a -> 0)
            let (w1, _) = path.vertex_points();
            let towards_v1 = crate::hermitian::proj_equal(&w1, v, tol);
            let s_p = path.alpha_of(p)?.ln();
            // geometric expansion of the bracket, capped at a = 2^{+-20}
            let limit = 20.0 * std::f64::consts::LN_2;
            let mut step = 1.0;
            let mut s_end = None;
            loop {
                let s = if towards_v1 { s_p + step } else { s_p - step };
                let s = s.clamp(-limit - s_p.abs(), limit + s_p.abs());
                let f = residual_at(b, &path, s, tol)?;
                if f.signum() != f0.signum() {
                    s_end = Some(s);
                    break;
                }
                if step >= limit {
                    break;
                }
                step = (step * 2.0).min(limit);
            }
            match s_end {
                Some(s) => (path, s),
                None => return Err(GeometryError::NoSignChange),
            }
        }
    };
    let s_p = path.alpha_of(p)?.ln();
    let f_end = residual_at(b, &path, s_end, tol)?;
    if f_end.abs() < tol.eps_mem {
        return point_at_vertex_param(&path, s_end.exp(), tol);
    }
    if f_end.signum() == f0.signum() {
        return Err(GeometryError::NoSignChange);
    }
    let (mut lo, mut hi) = (s_p, s_end);
    let (mut f_lo, mut f_hi) = (f0, f_end);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = residual_at(b, &path, mid, tol)?;
        if f_mid == 0.0 || (hi - lo).abs() < 1e-15 * (1.0 + mid.abs()) {
            lo = mid;
            f_lo = f_mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let best = if f_lo.abs() <= f_hi.abs() { lo } else { hi };
    point_at_vertex_param(&path, best.exp(), tol)
}

fn residual_at(b: &Bisector, path: &Geodesic, s: f64, tol: &Tolerance) -> Result<f64> {
    let x = point_at_vertex_param(path, s.exp(), tol)?;
    Ok(bisector_residual(b, &x))
}
