//! Which real subspaces of a tangent space are closed under curvature.
//!
//! A 2-plane spanned by g-orthonormal `t1`, `t2` is written as
//! `t2 = i a t1 + b n` with `n` Hermitian-orthogonal to `t1`; it is
//! curvature-closed iff `a b = 0`. No 3-dimensional subspace is closed.

use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::hermitian::{ProjPoint, Tolerance};
use crate::tangent::{curvature, riemannian_g, same_base, tangent_herm, TangentVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TangentClass {
    Line,
    ComplexGeodesicPlane,
    RealPlanePlane,
    NotClosed,
    Whole,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangentVerdict {
    pub class: TangentClass,
    /// `Im <t2, t1>` of the orthonormalized pair (2-planes only).
    pub a: Option<f64>,
    /// `|t2 - i a t1|` (2-planes only).
    pub b: Option<f64>,
    /// Largest distance of `R(x, y) z` from the span over basis triples.
    pub closure_residual: f64,
    /// `a` or `b` sits just above the snapping threshold; reported as not
    /// closed.
    pub near_miss: bool,
}

/// Gram-Schmidt for the Riemannian metric `g = Re <,>`.
fn g_orthonormalize(span: &[TangentVector], tol: &Tolerance) -> Result<Vec<TangentVector>> {
    let mut out: Vec<TangentVector> = Vec::with_capacity(span.len());
    for t in span {
        let len0 = t.length();
        if !(len0.is_finite() && len0 > 0.0) {
            return Err(GeometryError::DependentSpan);
        }
        let mut v = *t;
        for _ in 0..2 {
            for e in &out {
                v = v.minus(&e.scaled_real(riemannian_g(&v, e)?))?;
            }
        }
        if v.length() <= tol.eps_mem * len0 {
            return Err(GeometryError::DependentSpan);
        }
        out.push(v.normalized()?);
    }
    Ok(out)
}

fn distance_to_span(w: &TangentVector, basis: &[TangentVector]) -> Result<f64> {
    let mut r = *w;
    for e in basis {
        r = r.minus(&e.scaled_real(riemannian_g(w, e)?))?;
    }
    Ok(r.length())
}

/// Brute-force closure: the largest distance from the span of `R(x, y) z`
/// over all ordered triples of basis vectors.
pub fn closure_residual(basis: &[TangentVector]) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in basis {
        for y in basis {
            for z in basis {
                let w = curvature(x, y, z)?;
                worst = worst.max(distance_to_span(&w, basis)?);
            }
        }
    }
    Ok(worst)
}

/// Classifies the real span of tangent vectors at `p` by curvature closure.
///
/// The verdict for 2-planes comes from the `a`/`b` decomposition and is
/// checked against [`closure_residual`]; a disagreement outside the
/// near-miss band is reported as [`GeometryError::ClosureMismatch`].
pub fn classify_tangent_subspace(
    p: &ProjPoint,
    span: &[TangentVector],
    tol: &Tolerance,
) -> Result<TangentVerdict> {
    if !p.is_negative() {
        return Err(GeometryError::NotNegative);
    }
    if span.is_empty() || span.len() > 4 {
        return Err(GeometryError::DependentSpan);
    }
    if span.iter().any(|t| !same_base(p, t.base())) {
        return Err(GeometryError::BaseMismatch);
    }
    let basis = g_orthonormalize(span, tol)?;
    let closed_threshold = 10.0 * tol.eps_alg;
    let mut verdict = TangentVerdict {
        class: TangentClass::NotClosed,
        a: None,
        b: None,
        closure_residual: 0.0,
        near_miss: false,
    };
    match basis.len() {
        1 => verdict.class = TangentClass::Line,
        4 => verdict.class = TangentClass::Whole,
        3 => {
            verdict.closure_residual = closure_residual(&basis)?;
            if verdict.closure_residual < closed_threshold {
                return Err(GeometryError::ClosureMismatch(verdict.closure_residual));
            }
        }
        _ => {
            let (t1, t2) = (&basis[0], &basis[1]);
            let a = tangent_herm(t2, t1)?.im;
            let b = t2.minus(&t1.scaled(crate::hermitian::I * a))?.length();
            verdict.a = Some(a);
            verdict.b = Some(b);
            verdict.closure_residual = closure_residual(&basis)?;
            verdict.class = if b.abs() < tol.eps_alg {
                TangentClass::ComplexGeodesicPlane
            } else if a.abs() < tol.eps_alg {
                TangentClass::RealPlanePlane
            } else {
                TangentClass::NotClosed
            };
            verdict.near_miss = verdict.class == TangentClass::NotClosed
                && a.abs().min(b.abs()) < closed_threshold;
            let closed = verdict.class != TangentClass::NotClosed;
            if !verdict.near_miss && closed != (verdict.closure_residual < closed_threshold) {
                return Err(GeometryError::ClosureMismatch(verdict.closure_residual));
            }
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{HVector, I};

    fn origin() -> ProjPoint {
        ProjPoint::from_vector(&HVector::real(1.0, 0.0, 0.0)).unwrap()
    }

    fn tv(v: HVector) -> TangentVector {
        TangentVector::new(origin(), v, &Tolerance::default()).unwrap()
    }

    fn classify(span: &[TangentVector]) -> Result<TangentVerdict> {
        classify_tangent_subspace(&origin(), span, &Tolerance::default())
    }

    #[test]
    fn two_planes() {
        let t = tv(HVector::real(0.0, 1.0, 0.0));
        let n = tv(HVector::real(0.0, 0.0, 1.0));
        let v = classify(&[t, t.scaled(I)]).unwrap();
        assert_eq!(v.class, TangentClass::ComplexGeodesicPlane);
        assert!(v.closure_residual < 1e-14);
        assert_eq!(classify(&[t, n]).unwrap().class, TangentClass::RealPlanePlane);
        let mixed = t.scaled(I).plus(&n).unwrap().scaled_real(std::f64::consts::FRAC_1_SQRT_2);
        let v = classify(&[t, mixed]).unwrap();
        assert_eq!(v.class, TangentClass::NotClosed);
        assert!((v.a.unwrap().abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert!(v.closure_residual > 0.1);
        // a non-orthonormal spanning pair of the same real plane
        let skew = t.scaled_real(3.0).plus(&n.scaled_real(0.5)).unwrap();
        assert_eq!(classify(&[t, skew]).unwrap().class, TangentClass::RealPlanePlane);
    }

    #[test]
    fn other_dimensions() {
        let t = tv(HVector::real(0.0, 1.0, 0.0));
        let n = tv(HVector::real(0.0, 0.0, 1.0));
        assert_eq!(classify(&[t]).unwrap().class, TangentClass::Line);
        assert_eq!(classify(&[t, t.scaled(I), n]).unwrap().class, TangentClass::NotClosed);
        assert_eq!(
            classify(&[t, t.scaled(I), n, n.scaled(I)]).unwrap().class,
            TangentClass::Whole
        );
        assert_eq!(classify(&[t, t.scaled_real(2.0)]), Err(GeometryError::DependentSpan));
        assert_eq!(classify(&[]), Err(GeometryError::DependentSpan));
    }

    #[test]
    fn near_miss_is_reported_not_snapped() {
        let t = tv(HVector::real(0.0, 1.0, 0.0));
        let n = tv(HVector::real(0.0, 0.0, 1.0));
        let a = 5e-11;
        let t2 = t.scaled(I * a).plus(&n.scaled_real((1.0 - a * a).sqrt())).unwrap();
        let v = classify(&[t, t2]).unwrap();
        assert_eq!(v.class, TangentClass::NotClosed);
        assert!(v.near_miss);
        let a = 1e-13;
        let t2 = t.scaled(I * a).plus(&n).unwrap();
        assert_eq!(classify(&[t, t2]).unwrap().class, TangentClass::RealPlanePlane);
    }
}
