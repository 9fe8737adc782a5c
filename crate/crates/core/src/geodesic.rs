//! Geodesics: `G = ball ∩ P(W)` for a real plane `W` on which the form is
//! real with signature `-+`.
//!
//! A geodesic is stored by its vertices (ideal endpoints) with
//! representatives scaled so that `herm(v1, v2) = 1/2`. Then
//! `a -> a v1 - a^-1 v2`, `a > 0`, sweeps the whole geodesic and every
//! point of it has a representative of that form with `herm = -1`.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::hermitian::{
    canonicalize, canonicalize_as, herm, herm_norm, herm_orthogonal, proj_equal, Complex, HVector,
    PointKind, ProjPoint, Tolerance,
};
use crate::tangent::{same_base, tangent_herm, TangentVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    v1: HVector,
    v2: HVector,
    /// Unit positive vector orthogonal to `v1`, `v2`: the polar of the complex spine.
    polar: HVector,
}

#[derive(Serialize, Deserialize)]
struct GeodesicRepr {
    v1: HVector,
    v2: HVector,
}

impl Serialize for Geodesic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GeodesicRepr {
            v1: self.v1,
            v2: self.v2,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Geodesic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GeodesicRepr::deserialize(d)?;
        Geodesic::from_vertices(&r.v1, &r.v2, &Tolerance::default()).map_err(serde::de::Error::custom)
    }
}

impl Geodesic {
    /// The geodesic with the two given ideal endpoints.
    ///
    /// The vertices are canonicalized, ordered lexicographically and then
    /// rescaled (by the same positive factor, with the phase put on `v2`)
    /// so that `herm(v1, v2) = 1/2`.
    pub fn from_vertices(a: &HVector, b: &HVector, tol: &Tolerance) -> Result<Self> {
        let pa = canonicalize(a, tol)?;
        let pb = canonicalize(b, tol)?;
        if pa.kind() != PointKind::Isotropic || pb.kind() != PointKind::Isotropic {
            return Err(GeometryError::NotIsotropic);
        }
        Geodesic::from_ideal_points(pa, pb, tol)
    }

    /// Vertices already known to be isotropic.
    fn from_ideal_points(pa: ProjPoint, pb: ProjPoint, tol: &Tolerance) -> Result<Self> {
        if proj_equal(&pa, &pb, tol) {
            return Err(GeometryError::CoincidentPoints);
        }
        let (first, second) = if pa.lex_cmp(&pb).is_le() { (pa, pb) } else { (pb, pa) };
        let h = herm(first.rep(), second.rep());
        if h.norm() < tol.eps_alg {
            return Err(GeometryError::DegenerateSubspace);
        }
        let s = 1.0 / (2.0 * h.norm()).sqrt();
        let v1 = first.rep().scale_real(s);
        let v2 = second.rep().scale(h / h.norm() * s);
        let polar = canonicalize(&herm_orthogonal(&v1, &v2), tol)?;
        if polar.kind() != PointKind::Positive {
            return Err(GeometryError::DegenerateSubspace);
        }
        Ok(Geodesic {
            v1,
            v2,
            polar: *polar.rep(),
        })
    }

    pub fn v1(&self) -> &HVector {
        &self.v1
    }

    pub fn v2(&self) -> &HVector {
        &self.v2
    }

    pub fn vertex_points(&self) -> (ProjPoint, ProjPoint) {
        (
            ProjPoint::from_vector(&self.v1).expect("vertex is nonzero"),
            ProjPoint::from_vector(&self.v2).expect("vertex is nonzero"),
        )
    }

    /// Real orthonormal basis `(v1 - v2, v1 + v2)` of `W`, Gram `diag(-1, 1)`.
    pub fn w_basis(&self) -> [HVector; 2] {
        [self.v1 - self.v2, self.v1 + self.v2]
    }

    /// Unit polar vector of the complex geodesic containing this geodesic.
    pub fn polar(&self) -> &HVector {
        &self.polar
    }

    /// Coordinates `(c1, c2, c3)` of `x = c1 v1 + c2 v2 + c3 u`.
    pub(crate) fn coordinates(&self, x: &HVector) -> [Complex; 3] {
        [
            herm(x, &self.v2) * 2.0,
            herm(x, &self.v1) * 2.0,
            herm(x, &self.polar),
        ]
    }

    /// Membership residual, evaluated on the unit-Euclidean representative:
    /// the larger of the out-of-`C W` component and `Im(c1 conj(c2))`.
    pub fn residual(&self, x: &ProjPoint) -> f64 {
        let x = x.unit_rep();
        let [c1, c2, c3] = self.coordinates(&x);
        c3.norm().max((c1 * c2.conj()).im.abs())
    }

    /// The vertex parameter `a` of a point on this geodesic.
    pub fn alpha_of(&self, x: &ProjPoint) -> Result<f64> {
        let a = herm(x.rep(), &self.v1).norm();
        let b = herm(x.rep(), &self.v2).norm();
        let scale = x.rep().norm() * self.v1.norm().max(self.v2.norm());
        if a < 1e-3 * f64::EPSILON * scale || b < 1e-3 * f64::EPSILON * scale {
            return Err(GeometryError::PolarPoint);
        }
        Ok((b / a).sqrt())
    }
}

/// The geodesic through two distinct negative points.
///
/// With `q` rephased so that `herm(p, q) = -cosh d`, `q = cosh d p + sinh d t`
/// for the unit tangent `t` at `p`, and the vertices are `p + t`, `p - t`.
/// Solving for `t` this way keeps full precision far from the origin,
/// where Gram-Schmidt on `p, q` cancels badly.
pub fn geodesic_through(p: &ProjPoint, q: &ProjPoint, tol: &Tolerance) -> Result<Geodesic> {
    if !p.is_negative() || !q.is_negative() {
        return Err(GeometryError::NotNegative);
    }
    if proj_equal(p, q, tol) {
        return Err(GeometryError::CoincidentPoints);
    }
    let h = herm(p.rep(), q.rep());
    let q = q.rep().scale(-h / h.norm());
    let diff = q - p.rep().scale_real(h.norm());
    let sinh = herm_norm(&diff);
    if sinh.is_nan() || sinh <= 0.0 {
        return Err(GeometryError::CoincidentPoints);
    }
    let t = diff.scale_real(1.0 / sinh.sqrt());
    // the vertex close to p is short and its self-product is only known to
    // about eps |p|^2 / |p - t|^2, which can exceed the isotropy band
    let a = canonicalize_as(&(*p.rep() + t), PointKind::Isotropic, tol)?;
    let b = canonicalize_as(&(*p.rep() - t), PointKind::Isotropic, tol)?;
    Geodesic::from_ideal_points(a, b, tol)
}

/// `cosh(theta) p + sinh(theta) t(p)`, the unit-speed parametrization
/// starting at `p0` with velocity `t`.
pub fn point_at_arclength(
    g: &Geodesic,
    p0: &ProjPoint,
    t: &TangentVector,
    theta: f64,
    tol: &Tolerance,
) -> Result<ProjPoint> {
    if !on_geodesic(g, p0, tol) {
        return Err(GeometryError::NotOnGeodesic);
    }
    if !same_base(p0, t.base()) {
        return Err(GeometryError::NotTangentToGeodesic);
    }
    let len2 = tangent_herm(t, t)?.re;
    if (len2 - 1.0).abs() > tol.eps_mem.max(1e-9) * 10.0 {
        return Err(GeometryError::NotUnitTangent);
    }
    let dir = unit_tangent(g, p0)?;
    let along = herm(t.img(), dir.img());
    if (along.norm() - 1.0).abs() > 1e-7 || along.im.abs() > 1e-7 {
        return Err(GeometryError::NotTangentToGeodesic);
    }
    let x = p0.rep().scale_real(theta.cosh()) + t.img().scale_real(theta.sinh());
    canonicalize(&x, tol)
}

/// Unit tangent to `g` at `p` pointing towards `v1`.
pub fn unit_tangent(g: &Geodesic, p: &ProjPoint) -> Result<TangentVector> {
    let alpha = g.alpha_of(p)?;
    let raw = g.v1.scale_real(alpha) - g.v2.scale_real(1.0 / alpha);
    // p.rep = k raw with |k| = 1
    let k = -herm(p.rep(), &raw);
    let dir = (g.v1.scale_real(alpha) + g.v2.scale_real(1.0 / alpha)).scale(k);
    TangentVector::project(*p, &dir)
}

/// The point `a v1 - a^-1 v2`.
pub fn point_at_vertex_param(g: &Geodesic, alpha: f64, tol: &Tolerance) -> Result<ProjPoint> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(GeometryError::NonpositiveAlpha(alpha));
    }
    canonicalize(&vertex_param_raw(g, alpha), tol)
}

pub(crate) fn vertex_param_raw(g: &Geodesic, alpha: f64) -> HVector {
    g.v1.scale_real(alpha) - g.v2.scale_real(1.0 / alpha)
}

/// Membership: `x = c1 v1 + c2 v2 + c3 u` with `c3 = 0` and `c1 conj(c2)` real.
pub fn on_geodesic(g: &Geodesic, x: &ProjPoint, tol: &Tolerance) -> bool {
    x.is_negative() && g.residual(x) < tol.eps_mem
}

/// Hyperbolic distance between negative points, normalized so that the
/// parametrization of [`point_at_arclength`] has unit speed:
/// `cosh^2 d = herm(p,q) herm(q,p) / (herm(p,p) herm(q,q))`.
///
/// Near the diagonal the `sinh` form is used to avoid the `acosh(1 + x)`
/// cancellation.
pub fn distance(p: &ProjPoint, q: &ProjPoint) -> f64 {
    let (p, q) = (p.rep(), q.rep());
    let pp = herm_norm(p);
    let qq = herm_norm(q);
    let cosh2 = herm(p, q).norm_sqr() / (pp * qq);
    if cosh2 >= 2.0 {
        return cosh2.sqrt().acosh();
    }
    let q_perp = *q - p.scale(herm(q, p) / pp);
    let sinh2 = (-herm_norm(&q_perp) / qq).max(0.0);
    sinh2.sqrt().asinh()
}

/// Orthogonal projection onto `g`: `a* = sqrt(|herm(p, v2)| / |herm(p, v1)|)`.
pub fn project_to_geodesic(g: &Geodesic, p: &ProjPoint, tol: &Tolerance) -> Result<ProjPoint> {
    let a = herm(p.rep(), &g.v1).norm();
    let b = herm(p.rep(), &g.v2).norm();
    if a < tol.eps_alg || b < tol.eps_alg {
        return Err(GeometryError::PolarPoint);
    }
    point_at_vertex_param(g, (b / a).sqrt(), tol)
}

/// The geodesic from `p` to the ideal point `v`, from `W = R p + herm(p, v) R v`.
/// Its other vertex is `2 |h|^2 p + h v` with `h = herm(p, v)`.
pub fn geodesic_to_boundary(p: &ProjPoint, v: &ProjPoint, tol: &Tolerance) -> Result<Geodesic> {
    if !p.is_negative() {
        return Err(GeometryError::NotNegative);
    }
    if v.kind() != PointKind::Isotropic {
        return Err(GeometryError::NotIsotropic);
    }
    let h = herm(p.rep(), v.rep());
    if h.norm() < tol.eps_alg {
        return Err(GeometryError::OrthogonalPair);
    }
    let other = p.rep().scale_real(2.0 * h.norm_sqr()) + v.rep().scale(h);
    let other = canonicalize_as(&other, PointKind::Isotropic, tol)?;
    Geodesic::from_ideal_points(*v, other, tol)
}
