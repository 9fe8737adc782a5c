//! The two kinds of totally geodesic planes.
//!
//! A complex geodesic is `ball ∩ P(W)` for a complex plane `W` of signature
//! `-+`; it is stored by its positive polar vector. A real plane is
//! `ball ∩ P(W)` for a real 3-space on which the form is real of signature
//! `-++`; it is stored by an orthonormal real basis of `W`.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::geodesic::{geodesic_through, on_geodesic};
use crate::hermitian::{
    canonicalize, herm, herm_norm, herm_orthogonal, orthonormalize, proj_equal, Complex, HVector,
    PointKind, ProjPoint, Tolerance, I, ONE,
};
use crate::tangent::TangentVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexGeodesic {
    polar: ProjPoint,
    basis: [HVector; 2],
}

#[derive(Serialize, Deserialize)]
struct ComplexGeodesicRepr {
    polar: HVector,
}

impl Serialize for ComplexGeodesic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexGeodesicRepr {
            polar: *self.polar.rep(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexGeodesic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ComplexGeodesicRepr::deserialize(d)?;
        ComplexGeodesic::from_polar(&r.polar, &Tolerance::default()).map_err(serde::de::Error::custom)
    }
}

impl ComplexGeodesic {
    /// The complex geodesic `P(polar^perp)`; the polar must be positive.
    pub fn from_polar(polar: &HVector, tol: &Tolerance) -> Result<Self> {
        let polar = canonicalize(polar, tol)?;
        if polar.kind() != PointKind::Positive {
            return Err(GeometryError::IndefiniteFailure);
        }
        let u = polar.rep();
        // a negative vector orthogonal to u: project e0, which is never orthogonal to a positive u
        let e0 = HVector::basis(0);
        let neg = e0 - u.scale(herm(&e0, u));
        let pos = herm_orthogonal(&neg, u);
        let basis = orthonormalize(&[neg, pos], tol)?;
        Ok(ComplexGeodesic {
            polar,
            basis: [basis[0], basis[1]],
        })
    }

    pub fn polar(&self) -> &ProjPoint {
        &self.polar
    }

    /// Orthonormal complex basis of `polar^perp`, Gram `diag(-1, 1)`.
    pub fn basis(&self) -> &[HVector; 2] {
        &self.basis
    }

    /// `|herm(x, polar)|` on the unit-Euclidean representative of `x`.
    pub fn residual(&self, x: &ProjPoint) -> f64 {
        herm(&x.unit_rep(), self.polar.rep()).norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealPlane {
    basis: [HVector; 3],
}

#[derive(Serialize, Deserialize)]
struct RealPlaneRepr {
    basis: [HVector; 3],
}

impl Serialize for RealPlane {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RealPlaneRepr { basis: self.basis }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealPlane {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RealPlaneRepr::deserialize(d)?;
        RealPlane::from_basis(&r.basis, &Tolerance::default()).map_err(serde::de::Error::custom)
    }
}

impl RealPlane {
    /// Real plane spanned over the reals by three vectors on whose span
    /// the form is real of signature `-++`.
    pub fn from_basis(vectors: &[HVector; 3], tol: &Tolerance) -> Result<Self> {
        for i in 0..3 {
            for j in (i + 1)..3 {
                let h = herm(&vectors[i], &vectors[j]);
                if h.im.abs() > tol.eps_mem * vectors[i].norm() * vectors[j].norm() {
                    return Err(GeometryError::NoCommonRealPlane);
                }
            }
        }
        let mut e = orthonormalize(vectors, tol)?;
        let neg = e
            .iter()
            .position(|v| herm_norm(v) < 0.0)
            .ok_or(GeometryError::SignatureViolation)?;
        e.swap(0, neg);
        Ok(RealPlane {
            basis: [e[0], e[1], e[2]],
        })
    }

    /// Orthonormal real basis, Gram `diag(-1, 1, 1)`.
    pub fn basis(&self) -> &[HVector; 3] {
        &self.basis
    }

    fn coordinates(&self, x: &HVector) -> [Complex; 3] {
        [
            -herm(x, &self.basis[0]),
            herm(x, &self.basis[1]),
            herm(x, &self.basis[2]),
        ]
    }

    /// Largest `|Im(c_i conj(c_j))|` over the coordinates of the
    /// unit-Euclidean representative; zero iff `x` is a complex multiple of
    /// a vector of `W`.
    pub fn residual(&self, x: &ProjPoint) -> f64 {
        let c = self.coordinates(&x.unit_rep());
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in (i + 1)..3 {
                worst = worst.max((c[i] * c[j].conj()).im.abs());
            }
        }
        worst
    }
}

/// The complex geodesic through `p` and `q`.
pub fn complex_geodesic_through(
    p: &ProjPoint,
    q: &ProjPoint,
    tol: &Tolerance,
) -> Result<ComplexGeodesic> {
    if !p.is_negative() {
        return Err(GeometryError::NotNegative);
    }
    if proj_equal(p, q, tol) {
        return Err(GeometryError::CoincidentPoints);
    }
    ComplexGeodesic::from_polar(&herm_orthogonal(p.rep(), q.rep()), tol)
}

pub fn on_complex_geodesic(l: &ComplexGeodesic, x: &ProjPoint, tol: &Tolerance) -> bool {
    l.residual(x) < tol.eps_mem
}

/// The Hermitian triple product `herm(p,q) herm(q,r) herm(r,p)`.
///
/// Its argument does not depend on the representatives, and the three
/// points admit representatives with pairwise real products iff it is real.
pub fn triple_product(p: &HVector, q: &HVector, r: &HVector) -> Complex {
    herm(p, q) * herm(q, r) * herm(r, p)
}

/// The real plane through three points, if any.
///
/// Decided by realness of the triple product; the plane is then built by
/// rotating the phases of `q` and `r` against `p` and orthonormalizing.
pub fn real_plane_through(
    p: &ProjPoint,
    q: &ProjPoint,
    r: &ProjPoint,
    tol: &Tolerance,
) -> Result<RealPlane> {
    if !p.is_negative() {
        return Err(GeometryError::NotNegative);
    }
    if proj_equal(p, q, tol) || proj_equal(p, r, tol) || proj_equal(q, r, tol) {
        return Err(GeometryError::CoincidentPoints);
    }
    if q.is_negative() {
        let g = geodesic_through(p, q, tol)?;
        if on_geodesic(&g, r, tol) {
            return Err(GeometryError::CollinearInput);
        }
    }
    let (pv, qv, rv) = (p.unit_rep(), q.unit_rep(), r.unit_rep());
    let t = triple_product(&pv, &qv, &rv);
    let scale = herm(&pv, &qv).norm().max(tol.eps_alg)
        * herm(&qv, &rv).norm().max(tol.eps_alg)
        * herm(&rv, &pv).norm().max(tol.eps_alg);
    if t.im.abs() > tol.eps_mem * scale {
        return Err(GeometryError::NoCommonRealPlane);
    }

    let phase_to_real = |h: Complex| if h.norm() > tol.eps_alg { h / h.norm() } else { ONE };
    let h_pq = herm(&pv, &qv);
    let h_pr = herm(&pv, &rv);
    // herm(p, l q) = conj(l) h_pq is real for l = h_pq / |h_pq|
    let (lq, lr) = match (h_pq.norm() > tol.eps_alg, h_pr.norm() > tol.eps_alg) {
        (true, true) => (phase_to_real(h_pq), phase_to_real(h_pr)),
        (true, false) => {
            let lq = phase_to_real(h_pq);
            // fix r against the rotated q instead
            (lq, phase_to_real(herm(&qv.scale(lq), &rv)))
        }
        (false, true) => {
            let lr = phase_to_real(h_pr);
            (phase_to_real(herm(&rv.scale(lr), &qv)), lr)
        }
        (false, false) => (ONE, phase_to_real(herm(&qv, &rv))),
    };
    RealPlane::from_basis(&[pv, qv.scale(lq), rv.scale(lr)], tol).map_err(|e| match e {
        GeometryError::DegenerateSubspace | GeometryError::LinearlyDependent => {
            GeometryError::NoCommonRealPlane
        }
        other => other,
    })
}

pub fn on_real_plane(r: &RealPlane, x: &ProjPoint, tol: &Tolerance) -> bool {
    r.residual(x) < tol.eps_mem
}

/// Either kind of flat, for operations defined on both.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Flat {
    Complex(ComplexGeodesic),
    Real(RealPlane),
}

impl Flat {
    pub fn residual(&self, x: &ProjPoint) -> f64 {
        match self {
            Flat::Complex(l) => l.residual(x),
            Flat::Real(r) => r.residual(x),
        }
    }

    pub fn contains(&self, x: &ProjPoint, tol: &Tolerance) -> bool {
        self.residual(x) < tol.eps_mem
    }
}

/// Orthonormal basis of the tangent plane of a flat at one of its points.
///
/// For a complex geodesic the pair is `(t, i t)`; for a real plane `(t, n)`
/// with `<t, n> = 0`.
pub fn restrict_tangent(
    flat: &Flat,
    p: &ProjPoint,
    tol: &Tolerance,
) -> Result<(TangentVector, TangentVector)> {
    if !p.is_negative() {
        return Err(GeometryError::NotNegative);
    }
    if !flat.contains(p, tol) {
        return Err(GeometryError::NotOnFlat);
    }
    match flat {
        Flat::Complex(l) => {
            let dir = herm_orthogonal(p.rep(), l.polar.rep());
            let t = TangentVector::project(*p, &dir)?.normalized()?;
            Ok((t, t.scaled(I)))
        }
        Flat::Real(r) => {
            // p.rep = k w with w in W; rotate W by k so the tangents sit at p.rep
            let c = r.coordinates(p.rep());
            let k = c[0] / c[0].norm();
            let e = orthonormalize(
                &[*p.rep(), r.basis[1].scale(k), r.basis[2].scale(k)],
                tol,
            )?;
            let t = TangentVector::project(*p, &e[1])?.normalized()?;
            let n = TangentVector::project(*p, &e[2])?.normalized()?;
            Ok((t, n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::point_at_vertex_param;
    use crate::hermitian::ZERO;
    use crate::tangent::{sectional_curvature, tangent_herm};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn pt(x: HVector) -> ProjPoint {
        ProjPoint::from_vector(&x).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn close(a: &HVector, b: &HVector) -> bool {
        (*a - *b).norm() < 1e-12
    }

    #[test]
    fn complex_geodesic_examples() {
        let p = pt(HVector::real(1.0, 0.0, 0.0));
        let l = complex_geodesic_through(&p, &pt(HVector::real(1.0, 0.5, 0.0)), &tol()).unwrap();
        assert!(close(l.polar().rep(), &HVector::real(0.0, 0.0, 1.0)));
        let q = pt(HVector::new(ONE, c(0.0, 0.5), ZERO));
        let l2 = complex_geodesic_through(&p, &q, &tol()).unwrap();
        assert!(close(l2.polar().rep(), &HVector::real(0.0, 0.0, 1.0)));
        let l3 = complex_geodesic_through(&p, &pt(HVector::real(1.0, 0.0, 0.5)), &tol()).unwrap();
        assert!(close(l3.polar().rep(), &HVector::real(0.0, 1.0, 0.0)));
        assert_eq!(
            complex_geodesic_through(&p, &p, &tol()),
            Err(GeometryError::CoincidentPoints)
        );
    }

    #[test]
    fn complex_geodesic_membership() {
        let p = pt(HVector::real(1.0, 0.0, 0.0));
        let l = complex_geodesic_through(&p, &pt(HVector::real(1.0, 0.5, 0.0)), &tol()).unwrap();
        assert!(on_complex_geodesic(&l, &pt(HVector::new(ONE, c(0.0, 0.5), ZERO)), &tol()));
        assert!(!on_complex_geodesic(&l, &pt(HVector::real(1.0, 0.0, 0.5)), &tol()));
        let a = pt(HVector::new(ONE, c(0.2, -0.3), ZERO));
        let b = pt(HVector::new(ONE, c(-0.5, 0.1), ZERO));
        let g = geodesic_through(&a, &b, &tol()).unwrap();
        for k in 0..100 {
            let x = point_at_vertex_param(&g, ((k as f64 - 50.0) * 0.1).exp(), &tol()).unwrap();
            assert!(on_complex_geodesic(&l, &x, &tol()));
        }
    }

    #[test]
    fn real_plane_examples() {
        let p = pt(HVector::real(1.0, 0.0, 0.0));
        let q = pt(HVector::real(1.0, 0.5, 0.0));
        let r = pt(HVector::real(1.0, 0.0, 0.5));
        let plane = real_plane_through(&p, &q, &r, &tol()).unwrap();
        let b = plane.basis();
        assert!((herm_norm(&b[0]) + 1.0).abs() < 1e-14);
        assert!((herm_norm(&b[1]) - 1.0).abs() < 1e-14);
        assert!((herm_norm(&b[2]) - 1.0).abs() < 1e-14);
        for x in [p, q, r] {
            assert!(on_real_plane(&plane, &x, &tol()));
        }

        let r2 = pt(HVector::new(ONE, c(0.0, 0.5), c(0.5, 0.0)));
        assert_eq!(
            real_plane_through(&p, &q, &r2, &tol()),
            Err(GeometryError::NoCommonRealPlane)
        );
        let t = triple_product(
            &HVector::real(1.0, 0.0, 0.0),
            &HVector::real(1.0, 0.5, 0.0),
            r2.rep(),
        );
        assert!(t.im.abs() > 0.1);

        let r3 = pt(HVector::real(1.0, -0.25, 0.0));
        assert_eq!(real_plane_through(&p, &q, &r3, &tol()), Err(GeometryError::CollinearInput));
    }

    #[test]
    fn real_plane_from_twisted_representatives() {
        // standard real plane, points given with random phases
        let p = pt(HVector::real(1.0, 0.1, 0.2).scale(c(0.6, 0.8)));
        let q = pt(HVector::real(1.0, -0.3, 0.4).scale(c(0.0, 1.0)));
        let r = pt(HVector::real(1.0, 0.5, -0.5).scale(c(-0.28, 0.96)));
        let plane = real_plane_through(&p, &q, &r, &tol()).unwrap();
        assert!(on_real_plane(&plane, &pt(HVector::real(1.0, 0.7, 0.1)), &tol()));
        assert!(!on_real_plane(&plane, &pt(HVector::new(ONE, c(0.0, 0.5), ZERO)), &tol()));
    }

    #[test]
    fn real_plane_membership_is_phase_invariant() {
        let plane = RealPlane::from_basis(
            &[HVector::basis(0), HVector::basis(1), HVector::basis(2)],
            &tol(),
        )
        .unwrap();
        let x = HVector::real(1.0, 0.3, -0.2);
        assert!(on_real_plane(&plane, &pt(x), &tol()));
        assert!(on_real_plane(&plane, &pt(x.scale(c(0.6, -0.8))), &tol()));
        assert!(!on_real_plane(&plane, &pt(HVector::new(ONE, c(0.0, 0.5), ZERO)), &tol()));
    }

    #[test]
    fn tangent_planes_of_flats() {
        let o = pt(HVector::real(1.0, 0.0, 0.0));
        let plane = Flat::Real(
            RealPlane::from_basis(&[HVector::basis(0), HVector::basis(1), HVector::basis(2)], &tol())
                .unwrap(),
        );
        let (t, n) = restrict_tangent(&plane, &o, &tol()).unwrap();
        assert!(close(t.img(), &HVector::real(0.0, 1.0, 0.0)));
        assert!(close(n.img(), &HVector::real(0.0, 0.0, 1.0)));
        assert!(tangent_herm(&t, &n).unwrap().norm() < 1e-14);
        assert!((sectional_curvature(&t, &n).unwrap() + 1.0).abs() < 1e-12);

        let l = Flat::Complex(ComplexGeodesic::from_polar(&HVector::basis(2), &tol()).unwrap());
        let (t, it) = restrict_tangent(&l, &o, &tol()).unwrap();
        // the tangent of the complex line at the origin is the e1 axis, up to phase
        assert!(t.img()[2].norm() < 1e-14 && (t.img()[1].norm() - 1.0).abs() < 1e-14);
        assert!(close(it.img(), &t.img().scale(I)));
        assert!((sectional_curvature(&t, &it).unwrap() + 4.0).abs() < 1e-12);

        assert_eq!(
            restrict_tangent(&l, &pt(HVector::real(1.0, 0.0, 0.5)), &tol()),
            Err(GeometryError::NotOnFlat)
        );
    }

    #[test]
    fn serde_shapes() {
        let l = ComplexGeodesic::from_polar(&HVector::basis(2), &tol()).unwrap();
        let v = serde_json::to_value(l).unwrap();
        assert_eq!(v, serde_json::json!({"polar": [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}));
        let back: ComplexGeodesic = serde_json::from_value(v).unwrap();
        assert_eq!(back.polar(), l.polar());
        let r = RealPlane::from_basis(&[HVector::basis(0), HVector::basis(1), HVector::basis(2)], &tol())
            .unwrap();
        let v = serde_json::to_value(r).unwrap();
        assert_eq!(v["basis"].as_array().unwrap().len(), 3);
    }
}
