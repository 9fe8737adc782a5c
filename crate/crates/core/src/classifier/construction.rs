//! The explicit chain showing that a geodesic and a point sharing no flat
//! generate the whole space.
//!
//! With `v3` the far vertex of the geodesic from `v2` through `p`, write
//! `v3 = e v1 - conj(e) v2 + r u`. The point `v4 = conj(e) v1 - e v2 - r u`
//! lies on the other side of the bisector over `G` than `p`, so the
//! geodesic from `p` to `v4` crosses the bisector at some `x` off `G`. The
//! meridian through `x` is a real plane containing `G` and `x` but not `p`.

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::bisector::{
    bisector_crossing, bisector_from_spine, meridian_at, meridian_of_point, spine_side_value,
    Bisector, Endpoint,
};
use crate::error::{GeometryError, Result};
use crate::flats::{on_real_plane, RealPlane};
use crate::geodesic::{on_geodesic, project_to_geodesic, Geodesic};
use crate::hermitian::{canonicalize, canonicalize_as, herm, Complex, HVector, PointKind, ProjPoint, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpineDecomposition {
    /// Coefficient of `v1`; unit modulus, `Re >= 0`.
    pub epsilon: Complex,
    /// Coefficient of `u`, nonnegative.
    pub r: f64,
    /// Rescaled vertices, still with `herm(v1, v2) = 1/2`.
    pub v1: HVector,
    pub v2: HVector,
    /// Rephased polar.
    pub u: HVector,
    /// Rescaled `v3 = e v1 - conj(e) v2 + r u`.
    pub v3: HVector,
    /// `r > 0`: `v3` is off the complex spine.
    pub off_complex_spine: bool,
    /// `e` real: `v3` and the geodesic lie in a common real plane.
    pub epsilon_real: bool,
}

impl SpineDecomposition {
    /// Euclidean size of `v3 - (e v1 - conj(e) v2 + r u)`.
    pub fn reconstruction_residual(&self) -> f64 {
        let rebuilt =
            self.v1.scale(self.epsilon) - self.v2.scale(self.epsilon.conj()) + self.u.scale_real(self.r);
        (self.v3 - rebuilt).norm()
    }
}

/// Rephases `v1`, `v2`, `u` and rescales `v3` into the normal form
/// `v3 = e v1 - conj(e) v2 + r u`, `|e| = 1`, `r >= 0`.
///
/// `v1 -> m w v1`, `v2 -> w v2 / m` keeps `herm(v1, v2) = 1/2`; `m` equalizes
/// the moduli of the two coefficients and `w` makes one minus the
/// conjugate of the other. Isotropy of `v3` then forces `Re(e^2) = r^2`.
pub fn spine_decomposition(
    g: &Geodesic,
    v3: &ProjPoint,
    tol: &Tolerance,
) -> Result<SpineDecomposition> {
    if v3.kind() != PointKind::Isotropic {
        return Err(GeometryError::NotIsotropic);
    }
    let x = v3.unit_rep();
    let [c1, c2, c3] = g.coordinates(&x);
    if c1.norm() < tol.eps_mem || c2.norm() < tol.eps_mem {
        return Err(GeometryError::VertexInput);
    }
    let mu = (c1.norm() / c2.norm()).sqrt();
    let mut w = Complex::from_polar(1.0, (-c1 * c2).arg() / 2.0);
    let kappa = mu / c1.norm();
    let mut epsilon = c1 * kappa / (w * mu);
    if epsilon.re < 0.0 {
        w = -w;
        epsilon = -epsilon;
    }
    let r = kappa * c3.norm();
    let u_phase = if c3.norm() > 0.0 { c3 / c3.norm() } else { Complex::new(1.0, 0.0) };
    Ok(SpineDecomposition {
        epsilon,
        r,
        v1: g.v1().scale(w * mu),
        v2: g.v2().scale(w / mu),
        u: g.polar().scale(u_phase),
        v3: x.scale_real(kappa),
        off_complex_spine: r > tol.eps_mem,
        epsilon_real: epsilon.im.abs() <= tol.eps_mem,
    })
}

/// Every intermediate value of [`whole_space_construction`].
#[derive(Clone, Debug, PartialEq)]
pub struct WholeSpaceTrace {
    pub p: ProjPoint,
    /// Orthogonal projection of `p` on the spine.
    pub p_proj: ProjPoint,
    pub decomposition: SpineDecomposition,
    /// `p = a v3 - a^-1 e v2` up to a unit factor.
    pub alpha: f64,
    /// The representative `a v3 - a^-1 e v2`.
    pub p_raw: HVector,
    /// `conj(e) v1 - e v2 - r u`.
    pub v4: HVector,
    /// `Im(<v1, p><p, v2>)` at `p_raw`.
    pub side_p: f64,
    /// `Im(<v1, v4><v4, v2>)`.
    pub side_v4: f64,
    /// `herm(p_raw, v4)`.
    pub herm_p_v4: Complex,
    pub crossing: ProjPoint,
    pub crossing_on_spine: bool,
    pub meridian_phase: Complex,
    pub meridian: RealPlane,
    pub p_on_meridian: bool,
}

impl WholeSpaceTrace {
    /// The trace as an ordered list of named values.
    pub fn to_named_values(&self) -> Vec<(&'static str, serde_json::Value)> {
        use serde_json::json;
        let d = &self.decomposition;
        vec![
            ("p", json!(self.p)),
            ("p_proj", json!(self.p_proj)),
            ("v3", json!(d.v3)),
            ("epsilon", json!(d.epsilon)),
            ("r", json!(d.r)),
            ("alpha", json!(self.alpha)),
            ("v4", json!(self.v4)),
            ("side_p", json!(self.side_p)),
            ("side_v4", json!(self.side_v4)),
            ("herm_p_v4", json!(self.herm_p_v4)),
            ("crossing", json!(self.crossing)),
            ("crossing_on_spine", json!(self.crossing_on_spine)),
            ("meridian_phase", json!(self.meridian_phase)),
            ("meridian", json!(self.meridian)),
            ("p_on_meridian", json!(self.p_on_meridian)),
        ]
    }
}

impl Serialize for WholeSpaceTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let values = self.to_named_values();
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for (name, value) in values {
            seq.serialize_element(&serde_json::json!({ "name": name, "value": value }))?;
        }
        seq.end()
    }
}

/// Runs the construction for a geodesic `g` and a point `p` that share
/// neither a complex geodesic nor a real plane.
pub fn whole_space_construction(
    g: &Geodesic,
    p: &ProjPoint,
    tol: &Tolerance,
) -> Result<WholeSpaceTrace> {
    if !p.is_negative() {
        return Err(GeometryError::NotNegative);
    }
    let p_proj = project_to_geodesic(g, p, tol)?;

    // far vertex of the geodesic from v2 through p: 2|h|^2 p + h v2
    let h = herm(p.rep(), g.v2());
    if h.norm() < tol.eps_alg {
        return Err(GeometryError::PolarPoint);
    }
    let far = p.rep().scale_real(2.0 * h.norm_sqr()) + g.v2().scale(h);
    let v3 = canonicalize_as(&far, PointKind::Isotropic, tol)?;
    let d = spine_decomposition(g, &v3, tol)?;
    if !d.off_complex_spine {
        return Err(GeometryError::CommonFlatExists("complex geodesic"));
    }
    if d.epsilon_real {
        return Err(GeometryError::CommonFlatExists("real plane"));
    }

    // p ~ a v3 - a^-1 e v2, and |<p, v2>| / |<p, v3>| = a^2 with |e| = 1
    let alpha = (herm(p.rep(), &d.v2).norm() / herm(p.rep(), &d.v3).norm()).sqrt();
    let p_raw = d.v3.scale_real(alpha) - d.v2.scale(d.epsilon / alpha);
    let v4 = d.v1.scale(d.epsilon.conj()) - d.v2.scale(d.epsilon) - d.u.scale_real(d.r);

    let b: Bisector = bisector_from_spine(g);
    let side_p = spine_side_value(&b, &p_raw);
    let side_v4 = spine_side_value(&b, &v4);
    let v4_point = canonicalize(&v4, tol)?;
    let crossing = bisector_crossing(&b, p, &Endpoint::Ideal(v4_point), tol)?;
    let crossing_on_spine = on_geodesic(g, &crossing, tol);
    if crossing_on_spine {
        return Err(GeometryError::CrossingOnSpine);
    }
    let meridian_phase = meridian_of_point(&b, &crossing, tol)?;
    let meridian = meridian_at(&b, meridian_phase, tol)?;
    let p_on_meridian = on_real_plane(&meridian, p, tol);

    Ok(WholeSpaceTrace {
        p: *p,
        p_proj,
        decomposition: d,
        alpha,
        p_raw,
        v4,
        side_p,
        side_v4,
        herm_p_v4: herm(&p_raw, &v4),
        crossing,
        crossing_on_spine,
        meridian_phase,
        meridian,
        p_on_meridian,
    })
}
