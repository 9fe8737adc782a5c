//! Random points, tangents, isometries and flats for tests, oracles and
//! benchmarks.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::classifier::{HullClass, HullTag};
use crate::flats::{ComplexGeodesic, RealPlane};
use crate::geodesic::Geodesic;
use crate::hermitian::{canonicalize, Complex, HVector, Isometry, ProjPoint, Tolerance, ONE};
use crate::tangent::{tangent_herm, TangentVector};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(normal(rng), normal(rng))
}

/// A vector with independent standard complex Gaussian entries.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R) -> HVector {
    HVector::new(gaussian_complex(rng), gaussian_complex(rng), gaussian_complex(rng))
}

/// A unit complex number with uniform argument.
pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// A point at distance `d` from `(1,0,0)`, `d` uniform in `[0, max_dist]`,
/// in a uniformly random direction, with a random phase on the representative.
pub fn random_negative_point<R: Rng + ?Sized>(rng: &mut R, max_dist: f64) -> ProjPoint {
    let d = rng.random_range(0.0..=max_dist);
    let (a, b) = (gaussian_complex(rng), gaussian_complex(rng));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt().max(f64::MIN_POSITIVE);
    let s = d.tanh() / n;
    let x = HVector::new(ONE, a * s, b * s).scale(random_phase(rng));
    canonicalize(&x, &Tolerance::default()).expect("point inside the ball")
}

/// A tangent vector at `p` with Riemannian length one and uniformly random
/// direction.
pub fn random_unit_tangent<R: Rng + ?Sized>(rng: &mut R, p: &ProjPoint) -> TangentVector {
    loop {
        let t = TangentVector::project(*p, &gaussian_vector(rng)).expect("p is negative");
        if let Ok(t) = t.normalized() {
            if t.length() > 0.0 {
                return t;
            }
        }
    }
}

/// Unit tangents `t`, `n` at `p` with `<t, n> = 0` for the Hermitian metric.
pub fn random_hermitian_pair<R: Rng + ?Sized>(
    rng: &mut R,
    p: &ProjPoint,
) -> (TangentVector, TangentVector) {
    let t = random_unit_tangent(rng, p);
    loop {
        let s = random_unit_tangent(rng, p);
        let h = tangent_herm(&s, &t).expect("same base");
        let n = s.minus(&t.scaled(h)).expect("same base");
        if n.length() > 1e-3 {
            return (t, n.normalized().expect("nonzero"));
        }
    }
}

/// A form-preserving map obtained by orthonormalizing `I + spread * G`
/// for a Gaussian `G`, then multiplying each column by a random phase.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, spread: f64) -> Isometry {
    let tol = Tolerance::default();
    loop {
        let cols = [0, 1, 2].map(|k| HVector::basis(k) + gaussian_vector(rng).scale_real(spread));
        if let Ok(iso) = Isometry::from_basis(cols, &tol) {
            let c = *iso.columns();
            let phased = [0, 1, 2].map(|k| c[k].scale(random_phase(rng)));
            if let Ok(iso) = Isometry::from_columns(phased, &tol) {
                return iso;
            }
        }
    }
}

/// `n` random points of a random flat of the given kind, with the flat.
///
/// Points are drawn within distance `max_dist` of the base point of a
/// standard flat, which is then moved by a random isometry. `Whole` gives
/// unconstrained points and `Point` copies of one point with random
/// phases.
pub fn random_scene<R: Rng + ?Sized>(
    rng: &mut R,
    tag: HullTag,
    n: usize,
    max_dist: f64,
) -> (HullClass, Vec<ProjPoint>) {
    let tol = Tolerance::default();
    let f = random_isometry(rng, 0.3);
    let map = |x: HVector| canonicalize(&f.apply(&x), &tol).expect("nonzero");
    let cols = *f.columns();
    let radius = |rng: &mut R| rng.random_range(-max_dist..=max_dist).tanh();
    let standard: Vec<HVector> = (0..n)
        .map(|_| match tag {
            HullTag::Empty | HullTag::Point | HullTag::Whole => HVector::basis(0),
            HullTag::Geodesic => HVector::real(1.0, radius(rng), 0.0),
            HullTag::ComplexGeodesic => HVector::new(ONE, random_phase(rng) * radius(rng), 0.0.into()),
            HullTag::RealPlane => {
                let (r, phi) = (radius(rng), rng.random_range(0.0..std::f64::consts::TAU));
                HVector::real(1.0, r * phi.cos(), r * phi.sin())
            }
        })
        .collect();
    let points: Vec<ProjPoint> = match tag {
        HullTag::Empty => Vec::new(),
        HullTag::Whole => (0..n).map(|_| map(*random_negative_point(rng, max_dist).rep())).collect(),
        HullTag::Point => {
            let p = random_negative_point(rng, max_dist);
            (0..n)
                .map(|_| canonicalize(&p.rep().scale(random_phase(rng)), &tol).expect("nonzero"))
                .collect()
        }
        _ => standard.iter().map(|x| map(*x)).collect(),
    };
    let witness = match tag {
        HullTag::Empty => HullClass::Empty,
        HullTag::Whole => HullClass::Whole,
        HullTag::Point => HullClass::Point(points[0]),
        HullTag::Geodesic => HullClass::Geodesic(
            Geodesic::from_vertices(&(cols[0] + cols[1]), &(cols[0] - cols[1]), &tol)
                .expect("isotropic vertices"),
        ),
        HullTag::ComplexGeodesic => HullClass::ComplexGeodesic(
            ComplexGeodesic::from_polar(&cols[2], &tol).expect("positive polar"),
        ),
        HullTag::RealPlane => {
            HullClass::RealPlane(RealPlane::from_basis(&cols, &tol).expect("orthonormal basis"))
        }
    };
    (witness, points)
}
