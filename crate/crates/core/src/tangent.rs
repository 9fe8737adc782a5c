//! Tangent vectors at points of the ball and the curvature tensor.
//!
//! A tangent vector at `p` is a linear map `Cp -> p^perp`; we store its value
//! `t(p)` at the canonical representative (`herm(p, p) = -1`). Scaling the
//! representative by `l` scales the stored image by `l` as well, so fixing
//! the representative fixes the image.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::hermitian::{herm, Complex, HVector, ProjPoint, Tolerance};

/// Relative distance between canonical representatives treated as the same base.
const BASE_MATCH: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentVector {
    base: ProjPoint,
    img: HVector,
}

/// Wire format `{ "base": HVector, "img": HVector }`.
#[derive(Serialize, Deserialize)]
struct TangentRepr {
    base: HVector,
    img: HVector,
}

impl Serialize for TangentVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TangentRepr {
            base: *self.base.rep(),
            img: self.img,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TangentVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TangentRepr::deserialize(d)?;
        let tol = Tolerance::default();
        let base = ProjPoint::negative(&r.base, &tol).map_err(serde::de::Error::custom)?;
        // the image is given at the supplied representative; move it to the canonical one
        let lambda = herm(base.rep(), &r.base) / herm(&r.base, &r.base);
        TangentVector::new(base, r.img.scale(lambda), &tol).map_err(serde::de::Error::custom)
    }
}

impl TangentVector {
    /// Wraps an image vector; `img` must be orthogonal to the canonical
    /// representative of a negative `base`.
    pub fn new(base: ProjPoint, img: HVector, tol: &Tolerance) -> Result<Self> {
        if !base.is_negative() {
            return Err(GeometryError::NotNegative);
        }
        let scale = img.norm() * base.rep().norm();
        if herm(&img, base.rep()).norm() > tol.eps_mem * scale.max(1.0) {
            return Err(GeometryError::NotTangent);
        }
        Ok(TangentVector { base, img })
    }

    /// Projects an arbitrary vector onto `p^perp`.
    pub fn project(base: ProjPoint, v: &HVector) -> Result<Self> {
        if !base.is_negative() {
            return Err(GeometryError::NotNegative);
        }
        let p = base.rep();
        // herm(p, p) = -1
        let img = *v + p.scale(herm(v, p));
        Ok(TangentVector { base, img })
    }

    pub(crate) fn from_parts_unchecked(base: ProjPoint, img: HVector) -> Self {
        TangentVector { base, img }
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn img(&self) -> &HVector {
        &self.img
    }

    pub fn scaled(&self, c: Complex) -> Self {
        TangentVector {
            base: self.base,
            img: self.img.scale(c),
        }
    }

    pub fn scaled_real(&self, s: f64) -> Self {
        TangentVector {
            base: self.base,
            img: self.img.scale_real(s),
        }
    }

    pub fn plus(&self, other: &TangentVector) -> Result<Self> {
        check_base(self, other)?;
        Ok(TangentVector {
            base: self.base,
            img: self.img + other.img,
        })
    }

    pub fn minus(&self, other: &TangentVector) -> Result<Self> {
        check_base(self, other)?;
        Ok(TangentVector {
            base: self.base,
            img: self.img - other.img,
        })
    }

    /// Length in the Riemannian metric.
    pub fn length(&self) -> f64 {
        herm_at(self.base.rep(), &self.img, &self.img).re.max(0.0).sqrt()
    }

    /// Rescales to unit length.
    pub fn normalized(&self) -> Result<Self> {
        let l = self.length();
        if l.is_nan() || l <= 0.0 {
            return Err(GeometryError::ZeroVector);
        }
        Ok(self.scaled_real(1.0 / l))
    }
}

pub(crate) fn same_base(a: &ProjPoint, b: &ProjPoint) -> bool {
    let d = (*a.rep() - *b.rep()).norm();
    d <= BASE_MATCH * a.rep().norm().max(1.0)
}

fn check_base(a: &TangentVector, b: &TangentVector) -> Result<()> {
    if same_base(&a.base, &b.base) {
        Ok(())
    } else {
        Err(GeometryError::BaseMismatch)
    }
}

#[inline]
fn herm_at(p: &HVector, x: &HVector, y: &HVector) -> Complex {
    -herm(x, y) / herm(p, p).re
}

/// The Hermitian metric `-herm(t1(p), t2(p)) / herm(p, p)`.
pub fn tangent_herm(t1: &TangentVector, t2: &TangentVector) -> Result<Complex> {
    check_base(t1, t2)?;
    Ok(herm_at(t1.base.rep(), &t1.img, &t2.img))
}

/// Riemannian metric `g = Re <., .>`.
pub fn riemannian_g(t1: &TangentVector, t2: &TangentVector) -> Result<f64> {
    tangent_herm(t1, t2).map(|h| h.re)
}

/// Symplectic form `w = Im <., .>`.
pub fn symplectic_w(t1: &TangentVector, t2: &TangentVector) -> Result<f64> {
    tangent_herm(t1, t2).map(|h| h.im)
}

/// `R(t1, t2) s = <t2,t1> s + <s,t1> t2 - <t1,t2> s - <s,t2> t1`.
pub fn curvature(t1: &TangentVector, t2: &TangentVector, s: &TangentVector) -> Result<TangentVector> {
    check_base(t1, t2)?;
    check_base(t1, s)?;
    let p = t1.base.rep();
    let h = |a: &HVector, b: &HVector| herm_at(p, a, b);
    let (a, b, c) = (&t1.img, &t2.img, &s.img);
    let img = c.scale(h(b, a) - h(a, b)) + b.scale(h(c, a)) - a.scale(h(c, b));
    Ok(TangentVector::from_parts_unchecked(t1.base, img))
}

/// Sectional curvature of the real plane spanned by `t1`, `t2`:
/// `g(R(t1,t2)t2, t1) / (g(t1,t1) g(t2,t2) - g(t1,t2)^2)`.
pub fn sectional_curvature(t1: &TangentVector, t2: &TangentVector) -> Result<f64> {
    let g11 = riemannian_g(t1, t1)?;
    let g22 = riemannian_g(t2, t2)?;
    let g12 = riemannian_g(t1, t2)?;
    let denom = g11 * g22 - g12 * g12;
    if denom <= Tolerance::default().eps_alg * g11 * g22 {
        return Err(GeometryError::DegeneratePlane);
    }
    let r = curvature(t1, t2, t2)?;
    Ok(riemannian_g(&r, t1)? / denom)
}
