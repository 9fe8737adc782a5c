//! Hermitian arithmetic on `C^3` with the signature `-++` form
//! `<x, y> = -x0 conj(y0) + x1 conj(y1) + x2 conj(y2)`.
//!
//! Points of the complex hyperbolic plane are the negative projective
//! classes; isotropic classes form its boundary sphere and positive classes
//! are polar to complex geodesics. Every projective class is stored through
//! a canonical representative (see [`canonicalize`]).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

pub type Complex = Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// Euclidean norms below this are treated as the zero vector.
const ZERO_NORM: f64 = 1e-200;

/// A coordinate triple `(x0, x1, x2)`; `e0` is the negative basis direction.
///
/// Serializes as `[[re, im], [re, im], [re, im]]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HVector(pub [Complex; 3]);

impl HVector {
    pub const fn new(x0: Complex, x1: Complex, x2: Complex) -> Self {
        HVector([x0, x1, x2])
    }

    pub const fn real(x0: f64, x1: f64, x2: f64) -> Self {
        HVector([
            Complex::new(x0, 0.0),
            Complex::new(x1, 0.0),
            Complex::new(x2, 0.0),
        ])
    }

    pub fn basis(k: usize) -> Self {
        let mut v = HVector::default();
        v.0[k] = ONE;
        v
    }

    pub fn coords(&self) -> &[Complex; 3] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Euclidean norm in the ambient `C^3`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, s: Complex) -> Self {
        HVector([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn scale_real(&self, s: f64) -> Self {
        HVector([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn conj(&self) -> Self {
        HVector([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }

    /// Euclidean inner product `sum x_k conj(y_k)`.
    pub fn dot(&self, other: &HVector) -> Complex {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    /// Complex-bilinear cross product.
    pub fn cross(&self, other: &HVector) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = other.0;
        HVector([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    /// Applies the Gram matrix `diag(-1, 1, 1)`.
    pub fn flip_first(&self) -> Self {
        HVector([-self.0[0], self.0[1], self.0[2]])
    }

    pub fn unit(&self) -> Result<Self> {
        let n = self.norm();
        if !(n.is_finite() && n > ZERO_NORM) {
            return Err(GeometryError::ZeroVector);
        }
        Ok(self.scale_real(1.0 / n))
    }

    fn lex_cmp(&self, other: &HVector) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl Index<usize> for HVector {
    type Output = Complex;
    fn index(&self, k: usize) -> &Complex {
        &self.0[k]
    }
}

impl Add for HVector {
    type Output = HVector;
    fn add(self, rhs: HVector) -> HVector {
        HVector([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl AddAssign for HVector {
    fn add_assign(&mut self, rhs: HVector) {
        *self = *self + rhs;
    }
}

impl Sub for HVector {
    type Output = HVector;
    fn sub(self, rhs: HVector) -> HVector {
        HVector([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl SubAssign for HVector {
    fn sub_assign(&mut self, rhs: HVector) {
        *self = *self - rhs;
    }
}

impl Neg for HVector {
    type Output = HVector;
    fn neg(self) -> HVector {
        self.scale_real(-1.0)
    }
}

impl Mul<HVector> for Complex {
    type Output = HVector;
    fn mul(self, rhs: HVector) -> HVector {
        rhs.scale(self)
    }
}

impl Mul<HVector> for f64 {
    type Output = HVector;
    fn mul(self, rhs: HVector) -> HVector {
        rhs.scale_real(self)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// The Hermitian form of signature `-++`; linear in `x`, antilinear in `y`.
#[inline]
pub fn herm(x: &HVector, y: &HVector) -> Complex {
    -x.0[0] * y.0[0].conj() + x.0[1] * y.0[1].conj() + x.0[2] * y.0[2].conj()
}

/// `herm(x, x)`, which is real.
#[inline]
pub fn herm_norm(x: &HVector) -> f64 {
    -x.0[0].norm_sqr() + x.0[1].norm_sqr() + x.0[2].norm_sqr()
}

/// A vector orthogonal (for the Hermitian form) to both `a` and `b`.
///
/// `herm(x, a) = dot(J x, a)`, and `conj(a x b)` is Euclidean-orthogonal to
/// `a` and `b`, so `x = J conj(a x b)`.
pub fn herm_orthogonal(a: &HVector, b: &HVector) -> HVector {
    a.cross(b).conj().flip_first()
}

/// Numerical thresholds used throughout the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Isotropy band on the unit-Euclidean rescaling of a vector.
    pub eps_iso: f64,
    /// Membership residual.
    pub eps_mem: f64,
    /// Algebraic identity checks.
    pub eps_alg: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_iso: 1e-8,
            eps_mem: 1e-9,
            eps_alg: 1e-11,
        }
    }
}

impl Tolerance {
    pub fn new(eps_iso: f64, eps_mem: f64, eps_alg: f64) -> Result<Self> {
        let tol = Tolerance {
            eps_iso,
            eps_mem,
            eps_alg,
        };
        tol.validate()?;
        Ok(tol)
    }

    /// Tolerance with the given membership threshold; the other two are the
    /// defaults widened or narrowed just enough to keep the ordering.
    pub fn with_membership(eps_mem: f64) -> Result<Self> {
        let d = Tolerance::default();
        Tolerance::new(d.eps_iso.max(eps_mem), eps_mem, d.eps_alg.min(eps_mem))
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.eps_iso, self.eps_mem, self.eps_alg]
            .iter()
            .all(|e| e.is_finite() && *e > 0.0)
            && self.eps_alg <= self.eps_mem
            && self.eps_mem <= self.eps_iso;
        if ok {
            Ok(())
        } else {
            Err(GeometryError::InvalidTolerance)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointKind {
    Negative,
    Isotropic,
    Positive,
}

/// Sign of `herm(x, x)` on the unit-Euclidean rescaling of `x`.
pub fn point_kind(x: &HVector, tol: &Tolerance) -> Result<PointKind> {
    let u = x.unit()?;
    let n = herm_norm(&u);
    Ok(if n.abs() < tol.eps_iso {
        PointKind::Isotropic
    } else if n < 0.0 {
        PointKind::Negative
    } else {
        PointKind::Positive
    })
}

/// A projective point, stored through its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProjPoint {
    rep: HVector,
    #[serde(skip)]
    kind: PointKind,
}

impl ProjPoint {
    pub fn rep(&self) -> &HVector {
        &self.rep
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn is_negative(&self) -> bool {
        self.kind == PointKind::Negative
    }

    pub fn from_vector(x: &HVector) -> Result<Self> {
        canonicalize(x, &Tolerance::default())
    }

    pub fn from_vector_with(x: &HVector, tol: &Tolerance) -> Result<Self> {
        canonicalize(x, tol)
    }

    /// Canonical point that must be negative.
    pub fn negative(x: &HVector, tol: &Tolerance) -> Result<Self> {
        let p = canonicalize(x, tol)?;
        if p.is_negative() {
            Ok(p)
        } else {
            Err(GeometryError::NotNegative)
        }
    }

    /// The representative rescaled to unit Euclidean norm.
    pub fn unit_rep(&self) -> HVector {
        self.rep.scale_real(1.0 / self.rep.norm())
    }

    pub(crate) fn lex_cmp(&self, other: &ProjPoint) -> Ordering {
        self.rep.lex_cmp(&other.rep)
    }
}

/// Rescales `x` to its canonical representative.
///
/// Negative and positive points get `herm(rep, rep) = -1` / `+1`,
/// isotropic points unit Euclidean norm. The global phase makes the first
/// coordinate that is not negligible (relative size above `eps_iso`) real
/// and positive.
pub fn canonicalize(x: &HVector, tol: &Tolerance) -> Result<ProjPoint> {
    if !x.is_finite() {
        return Err(GeometryError::ZeroVector);
    }
    let kind = point_kind(x, tol)?;
    canonicalize_as(x, kind, tol)
}

/// [`canonicalize`] with the kind supplied by the caller, for vectors known
/// to be of that kind whose numerical self-product is less accurate than
/// the isotropy band.
pub(crate) fn canonicalize_as(x: &HVector, kind: PointKind, tol: &Tolerance) -> Result<ProjPoint> {
    if !x.is_finite() {
        return Err(GeometryError::ZeroVector);
    }
    let scaled = match kind {
        PointKind::Isotropic => x.unit()?,
        PointKind::Negative | PointKind::Positive => {
            // rescale through the unit vector first to avoid overflow
            let u = x.unit()?;
            u.scale_real(1.0 / herm_norm(&u).abs().sqrt())
        }
    };
    let norm = scaled.norm();
    let pivot = scaled
        .0
        .iter()
        .find(|c| c.norm() > tol.eps_iso * norm)
        .copied()
        .unwrap_or(ONE);
    let phase = pivot.conj() / pivot.norm();
    let mut rep = scaled.scale(phase);
    // the pivot is real positive up to rounding; make it exact
    if let Some(c) = rep.0.iter_mut().find(|c| c.norm() > tol.eps_iso * norm) {
        c.im = 0.0;
    }
    Ok(ProjPoint { rep, kind })
}

/// Projective equality.
///
/// For non-isotropic `a` the residual of `b` after removing its
/// Hermitian projection on `a` must vanish; for isotropic `a` the
/// Euclidean Gram determinant of the two unit representatives must.
pub fn proj_equal(a: &ProjPoint, b: &ProjPoint, tol: &Tolerance) -> bool {
    if a.kind != b.kind {
        return false;
    }
    match a.kind {
        PointKind::Isotropic => {
            let ua = a.unit_rep();
            let ub = b.unit_rep();
            let resid = ub - ua.scale(ub.dot(&ua));
            resid.norm() < tol.eps_mem
        }
        _ => {
            let ar = a.rep();
            let br = b.rep();
            let coef = herm(br, ar) / herm_norm(ar);
            let resid = *br - ar.scale(coef);
            resid.norm() < tol.eps_mem * br.norm().max(1.0)
        }
    }
}

/// Gram-Schmidt for the indefinite form.
///
/// The output spans the same subspace as the input, is pairwise orthogonal
/// and each vector has `herm(v, v) = +-1`. Coefficients are Hermitian
/// projections, so when the form is real on the real span of the input the
/// output stays in that real span. Input order is kept except when the
/// current residual is isotropic: then a later non-isotropic residual is
/// promoted, or the current one is combined with a partner it pairs with.
pub fn orthonormalize(vectors: &[HVector], tol: &Tolerance) -> Result<Vec<HVector>> {
    let mut pending: Vec<(HVector, f64)> = vectors
        .iter()
        .map(|v| {
            if !v.is_finite() {
                return Err(GeometryError::ZeroVector);
            }
            Ok((*v, v.norm()))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<(HVector, f64)> = Vec::with_capacity(vectors.len());

    while !pending.is_empty() {
        for (w, scale) in &pending {
            if w.norm() <= tol.eps_mem * scale || *scale <= ZERO_NORM {
                return Err(GeometryError::LinearlyDependent);
            }
        }
        let iso = |w: &HVector| herm_norm(w).abs() / w.norm_sqr() < tol.eps_iso;

        if iso(&pending[0].0) {
            if let Some(k) = pending.iter().position(|(w, _)| !iso(w)) {
                let promoted = pending.remove(k);
                pending.insert(0, promoted);
            } else {
                let first = pending[0].0;
                let partner = pending
                    .iter()
                    .skip(1)
                    .map(|(w, _)| (herm(&first, w), *w))
                    .filter(|(h, w)| h.norm() > tol.eps_iso * first.norm() * w.norm())
                    .max_by(|a, b| a.0.norm().total_cmp(&b.0.norm()));
                match partner {
                    // herm(f + c w, f + c w) = 2 |herm(f, w)| for this unit c
                    Some((h, w)) => pending[0].0 = first + w.scale(h / h.norm()),
                    None => return Err(GeometryError::DegenerateSubspace),
                }
            }
        }

        let (mut v, _) = pending.remove(0);
        // second projection pass against the accepted vectors
        for (e, sign) in &out {
            v -= e.scale(herm(&v, e) * *sign);
        }
        let n = herm_norm(&v);
        if n.abs() / v.norm_sqr() < tol.eps_iso {
            return Err(GeometryError::DegenerateSubspace);
        }
        let sign = n.signum();
        let e = v.scale_real(1.0 / n.abs().sqrt());
        for (w, _) in pending.iter_mut() {
            *w -= e.scale(herm(w, &e) * sign);
        }
        out.push((e, sign));
    }

    if out.iter().filter(|(_, s)| *s < 0.0).count() > 1 {
        return Err(GeometryError::SignatureViolation);
    }
    Ok(out.into_iter().map(|(e, _)| e).collect())
}

/// A linear map preserving the Hermitian form, stored by the images of the
/// standard basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    cols: [HVector; 3],
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            cols: [HVector::basis(0), HVector::basis(1), HVector::basis(2)],
        }
    }

    /// Builds the map `e_k -> cols[k]`; the columns must have Gram matrix
    /// `diag(-1, 1, 1)`.
    pub fn from_columns(cols: [HVector; 3], tol: &Tolerance) -> Result<Self> {
        let signs = [-1.0, 1.0, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { signs[i] } else { 0.0 };
                let scale = cols[i].norm() * cols[j].norm();
                if (herm(&cols[i], &cols[j]) - want).norm() > tol.eps_mem * scale.max(1.0) {
                    return Err(GeometryError::SignatureViolation);
                }
            }
        }
        Ok(Isometry { cols })
    }

    /// Orthonormalizes arbitrary columns (first one negative) into a map.
    pub fn from_basis(vectors: [HVector; 3], tol: &Tolerance) -> Result<Self> {
        let e = orthonormalize(&vectors, tol)?;
        if herm_norm(&e[0]) > 0.0 {
            return Err(GeometryError::SignatureViolation);
        }
        Isometry::from_columns([e[0], e[1], e[2]], tol)
    }

    pub fn columns(&self) -> &[HVector; 3] {
        &self.cols
    }

    pub fn apply(&self, x: &HVector) -> HVector {
        self.cols[0].scale(x.0[0]) + self.cols[1].scale(x.0[1]) + self.cols[2].scale(x.0[2])
    }

    pub fn apply_point(&self, p: &ProjPoint, tol: &Tolerance) -> Result<ProjPoint> {
        canonicalize(&self.apply(p.rep()), tol)
    }
}
