//! The closed-form and sampled checks behind `h2c verify`.
//!
//! Each check reports what it expected, what it computed and a residual;
//! sampled checks draw from a generator seeded by the run seed and the
//! check's position, so a run is reproducible check by check.

use h2c_core::sampling::{
    random_hermitian_pair, random_isometry, random_negative_point, random_phase, random_scene,
    random_unit_tangent,
};
use h2c_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub expected: Value,
    pub computed: Value,
    pub residual: f64,
    pub pass: bool,
}

pub struct Settings {
    pub seed: u64,
    pub samples: usize,
    pub tol: Tolerance,
}

struct Measured {
    expected: Value,
    computed: Value,
    residual: f64,
    pass: bool,
}

impl Measured {
    fn value(expected: f64, computed: f64, bound: f64) -> Self {
        let residual = (computed - expected).abs();
        Measured {
            expected: json!(expected),
            computed: json!(computed),
            residual,
            pass: residual < bound,
        }
    }

    /// An identity `lhs = rhs` checked over many samples; `worst` is the
    /// largest `|lhs - rhs|` seen.
    fn identity(worst: f64, bound: f64) -> Self {
        Measured::value(0.0, worst, bound)
    }
}

type CheckFn = fn(&Settings, &mut ChaCha8Rng) -> Result<Measured>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("bisector_witness_grid", witness_grid),
    ("bisector_witness_q_norm", witness_q_norm),
    ("bisector_witness_residual", witness_residual),
    ("crossing_standard_bisector", crossing_example),
    ("distance_calibration", distance_calibration),
    ("distance_example", distance_example),
    ("hull_complex_geodesic", |s, r| hull_family(s, r, HullTag::ComplexGeodesic)),
    ("hull_generic_triples", generic_triples),
    ("hull_geodesic", |s, r| hull_family(s, r, HullTag::Geodesic)),
    ("hull_real_plane", |s, r| hull_family(s, r, HullTag::RealPlane)),
    ("mixed_plane_identity", mixed_plane_identity),
    ("projection_example", projection_example),
    ("sectional_curvature_complex", |s, r| sectional(s, r, true)),
    ("sectional_curvature_real", |s, r| sectional(s, r, false)),
    ("sign_opposite_sides", opposite_sides),
    ("sign_p", sign_p),
    ("sign_p_v4_product", sign_p_v4_product),
    ("sign_v4", sign_v4),
    ("three_space_closure", three_space_closure),
    ("three_space_curvature_values", three_space_values),
];

pub fn run(settings: &Settings) -> Vec<Check> {
    let mut checks: Vec<Check> = CHECKS
        .iter()
        .enumerate()
        .map(|(k, (name, f))| {
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(k as u64));
            match f(settings, &mut rng) {
                Ok(m) => Check {
                    name,
                    expected: m.expected,
                    computed: m.computed,
                    residual: m.residual,
                    pass: m.pass,
                },
                Err(e) => Check {
                    name,
                    expected: Value::Null,
                    computed: json!(e.to_string()),
                    residual: f64::INFINITY,
                    pass: false,
                },
            }
        })
        .collect();
    checks.sort_by_key(|c| c.name);
    checks
}

fn standard_spine(tol: &Tolerance) -> Result<Geodesic> {
    let a = ProjPoint::from_vector(&HVector::real(1.0, 0.0, 0.0))?;
    let b = ProjPoint::from_vector(&HVector::real(1.0, 0.5, 0.0))?;
    geodesic_through(&a, &b, tol)
}

fn witness_q_norm(_: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let w = non_tg_witness(2.0, 0.5, 0.5)?;
    Ok(Measured::value(-1.5 - 26f64.sqrt() / 2.0, w.q_norm, 1e-10))
}

fn witness_residual(_: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let w = non_tg_witness(2.0, 0.5, 0.5)?;
    Ok(Measured::value(0.75 / 26f64.sqrt(), w.residual, 1e-10))
}

/// The witness residual against `r s (a^2 - 1) / sqrt((a^2+1)^2 + 4 a^2 r^2 s^2)`
/// on a 10 x 10 x 10 grid avoiding `a = 1` and `r s = 0`; it must stay
/// nonzero everywhere.
fn witness_grid(_: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let mut smallest = f64::INFINITY;
    let mut worst = 0.0f64;
    for i in 0..10 {
        let a = 0.3 + 0.3 * i as f64;
        for j in 0..10 {
            let r = -0.9 + 0.2 * j as f64;
            for k in 0..10 {
                let s = -0.9 + 0.2 * k as f64;
                let w = non_tg_witness(a, r, s)?;
                let d = (a * a + 1.0).powi(2) + 4.0 * a * a * r * r * s * s;
                worst = worst.max((w.residual - r * s * (a * a - 1.0) / d.sqrt()).abs());
                smallest = smallest.min(w.residual.abs());
            }
        }
    }
    Ok(Measured {
        expected: json!("nonzero residual at all 1000 grid points"),
        computed: json!({ "min_abs_residual": smallest }),
        residual: worst,
        pass: smallest > 1e-6 && worst < 1e-10,
    })
}

fn sectional(s: &Settings, rng: &mut ChaCha8Rng, complex: bool) -> Result<Measured> {
    let expected = if complex { -4.0 } else { -1.0 };
    let mut farthest = expected;
    for _ in 0..s.samples {
        let p = random_negative_point(rng, 2.0);
        let (t, n) = random_hermitian_pair(rng, &p);
        let k = if complex {
            sectional_curvature(&t, &t.scaled(I))?
        } else {
            sectional_curvature(&t, &n)?
        };
        if (k - expected).abs() > (farthest - expected).abs() {
            farthest = k;
        }
    }
    Ok(Measured::value(expected, farthest, 1e-12))
}

/// `R(t, t2) t2 = -(1 + 3a^2) t + 3iab n` for `t2 = i a t + b n`.
fn mixed_plane_identity(s: &Settings, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    for _ in 0..s.samples {
        let p = random_negative_point(rng, 2.0);
        let (t, n) = random_hermitian_pair(rng, &p);
        let a: f64 = rng.random_range(-1.0..=1.0);
        let b = random_phase(rng) * (1.0 - a * a).sqrt();
        let t2 = t.scaled(I * a).plus(&n.scaled(b))?;
        let lhs = curvature(&t, &t2, &t2)?;
        let rhs = t.scaled_real(-(1.0 + 3.0 * a * a)).plus(&n.scaled(I * 3.0 * a * b))?;
        worst = worst.max(lhs.minus(&rhs)?.length());
    }
    Ok(Measured::identity(worst, 1e-10))
}

/// With `t3 = i(a t1 + b t2)`: `R(t1, t2) t3 = -ib t1 + ia t2` and
/// `R(t1, t3) t1 = 4ia t1 + ib t2`.
fn three_space_values(s: &Settings, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    for _ in 0..s.samples {
        let p = random_negative_point(rng, 2.0);
        let (t1, t2) = random_hermitian_pair(rng, &p);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let (a, b) = (phi.cos(), phi.sin());
        let t3 = t1.scaled(I * a).plus(&t2.scaled(I * b))?;
        let e1 = t1.scaled(-I * b).plus(&t2.scaled(I * a))?;
        let e2 = t1.scaled(I * 4.0 * a).plus(&t2.scaled(I * b))?;
        worst = worst
            .max(curvature(&t1, &t2, &t3)?.minus(&e1)?.length())
            .max(curvature(&t1, &t3, &t1)?.minus(&e2)?.length());
    }
    Ok(Measured::identity(worst, 1e-10))
}

fn three_space_closure(s: &Settings, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut not_closed = 0usize;
    for _ in 0..s.samples {
        let p = random_negative_point(rng, 2.0);
        let span: Vec<_> = (0..3).map(|_| random_unit_tangent(rng, &p)).collect();
        if classify_tangent_subspace(&p, &span, &s.tol)?.class == TangentClass::NotClosed {
            not_closed += 1;
        }
    }
    Ok(Measured {
        expected: json!({ "NotClosed": s.samples }),
        computed: json!({ "NotClosed": not_closed }),
        residual: (s.samples - not_closed) as f64,
        pass: not_closed == s.samples,
    })
}

/// The normal form on the standard spine: `v3 = e v1 - conj(e) v2 + r u`
/// with `r^2 = Re(e^2)`, and `p = a v3 - a^-1 e v2`.
fn normal_form(g: &Geodesic, eps: Complex, alpha: f64) -> HVector {
    let r = (eps * eps).re.sqrt();
    let v3 = g.v1().scale(eps) - g.v2().scale(eps.conj()) + g.polar().scale_real(r);
    v3.scale_real(alpha) - g.v2().scale(eps / alpha)
}

const EXAMPLE_THETA: f64 = std::f64::consts::PI / 8.0;
const EXAMPLE_ALPHA: f64 = 1.3;

fn example_trace(s: &Settings) -> Result<(WholeSpaceTrace, Complex)> {
    let g = standard_spine(&s.tol)?;
    let eps = Complex::from_polar(1.0, EXAMPLE_THETA);
    let p = ProjPoint::negative(&normal_form(&g, eps, EXAMPLE_ALPHA), &s.tol)?;
    Ok((whole_space_construction(&g, &p, &s.tol)?, eps))
}

fn sign_p(s: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let (t, eps) = example_trace(s)?;
    let expected = -0.25 * EXAMPLE_ALPHA * EXAMPLE_ALPHA * (eps * eps).im;
    Ok(Measured::value(expected, t.side_p, 1e-9))
}

fn sign_v4(s: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let (t, eps) = example_trace(s)?;
    Ok(Measured::value(0.25 * (eps * eps).im, t.side_v4, 1e-9))
}

/// `<p, v4> = -2a Re(e)^2 - e^2 / (2a)`, which is not real.
fn sign_p_v4_product(s: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let (t, eps) = example_trace(s)?;
    let a = EXAMPLE_ALPHA;
    let expected = -(eps * eps) / (2.0 * a) - 2.0 * a * eps.re * eps.re;
    let residual = (t.herm_p_v4 - expected).norm();
    Ok(Measured {
        expected: json!([expected.re, expected.im]),
        computed: json!([t.herm_p_v4.re, t.herm_p_v4.im]),
        residual,
        pass: residual < 1e-9 && t.herm_p_v4.im.abs() > 1e-6,
    })
}

/// Random normal-form configurations moved by random isometries: `p` and
/// `v4` must fall on opposite sides, and the crossing must miss the spine.
fn opposite_sides(s: &Settings, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let n = s.samples.min(200);
    let mut worst = 0.0f64;
    let mut bad = 0usize;
    for _ in 0..n {
        let f = random_isometry(rng, 0.3);
        let a = ProjPoint::from_vector(&f.apply(&HVector::real(1.0, 0.0, 0.0)))?;
        let b = ProjPoint::from_vector(&f.apply(&HVector::real(1.0, 0.5, 0.0)))?;
        let g = geodesic_through(&a, &b, &s.tol)?;
        let quarter = std::f64::consts::FRAC_PI_4;
        let theta = rng.random_range(0.05..quarter - 0.05) * if rng.random() { 1.0 } else { -1.0 };
        let eps = Complex::from_polar(1.0, theta);
        let alpha = rng.random_range(-1.5f64..1.5).exp();
        let p = ProjPoint::negative(&normal_form(&g, eps, alpha), &s.tol)?;
        let t = whole_space_construction(&g, &p, &s.tol)?;
        let e2 = (eps * eps).im;
        worst = worst
            .max((t.side_p + 0.25 * alpha * alpha * e2).abs())
            .max((t.side_v4 - 0.25 * e2).abs());
        if t.side_p * t.side_v4 >= 0.0 || t.crossing_on_spine || t.p_on_meridian {
            bad += 1;
        }
    }
    Ok(Measured {
        expected: json!({ "opposite_sides": n, "crossing_off_spine": n }),
        computed: json!({ "failures": bad }),
        residual: worst,
        pass: bad == 0 && worst < 1e-9,
    })
}

fn distance_example(s: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let p = ProjPoint::negative(&HVector::real(1.0, 0.0, 0.0), &s.tol)?;
    let q = ProjPoint::negative(&HVector::real(1.0, 0.5, 0.0), &s.tol)?;
    Ok(Measured::value(0.5 * 3f64.ln(), distance(&p, &q), 1e-12))
}

fn distance_calibration(s: &Settings, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    for _ in 0..s.samples {
        let p = random_negative_point(rng, 2.0);
        let t = random_unit_tangent(rng, &p);
        let g = Geodesic::from_vertices(&(*p.rep() + *t.img()), &(*p.rep() - *t.img()), &s.tol)?;
        let theta = rng.random_range(-5.0..=5.0);
        let x = point_at_arclength(&g, &p, &t, theta, &s.tol)?;
        worst = worst.max((distance(&p, &x) - f64::abs(theta)).abs());
    }
    Ok(Measured::identity(worst, 1e-9))
}

fn projection_example(s: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let g = standard_spine(&s.tol)?;
    let p = ProjPoint::negative(&HVector::real(1.0, 0.0, 0.5), &s.tol)?;
    let foot = project_to_geodesic(&g, &p, &s.tol)?;
    let expected = ProjPoint::negative(&HVector::real(1.0, 0.0, 0.0), &s.tol)?;
    let residual = (*foot.rep() - *expected.rep()).norm();
    Ok(Measured {
        expected: serde_json::to_value(expected.rep()).unwrap_or(Value::Null),
        computed: serde_json::to_value(foot.rep()).unwrap_or(Value::Null),
        residual,
        pass: residual < 1e-12,
    })
}

/// Crossing from `p` to its complex conjugate, which sits on the other
/// side of the standard bisector.
fn crossing_example(s: &Settings, _: &mut ChaCha8Rng) -> Result<Measured> {
    let b = bisector_from_spine(&standard_spine(&s.tol)?);
    let x = HVector::new(ONE, Complex::new(0.2, 0.3), Complex::new(0.1, 0.0));
    let p = ProjPoint::negative(&x, &s.tol)?;
    let q = ProjPoint::negative(&x.conj(), &s.tol)?;
    let c = bisector_crossing(&b, &p, &Endpoint::Point(q), &s.tol)?;
    let residual = bisector_residual(&b, &c).abs();
    Ok(Measured {
        expected: json!(0.0),
        computed: json!(residual),
        residual,
        pass: residual < 1e-9,
    })
}

/// Scenes drawn from a random flat of the given kind must classify to that
/// kind, and the closure oracle must not find a geodesic leaving it.
fn hull_family(s: &Settings, rng: &mut ChaCha8Rng, tag: HullTag) -> Result<Measured> {
    let scenes = 20;
    let mut mismatches = 0usize;
    let mut worst = 0.0f64;
    let mut refuted = 0usize;
    for _ in 0..scenes {
        let n = rng.random_range(3..=6);
        let (_, pts) = random_scene(rng, tag, n, 1.5);
        let class = hull_classify(&pts, &s.tol)?;
        if class.tag() != tag {
            mismatches += 1;
            continue;
        }
        let report = closure_oracle(&pts, &class, s.samples, rng.random(), &s.tol)?;
        worst = worst.max(report.max_residual);
        refuted += usize::from(report.refuted);
    }
    Ok(Measured {
        expected: json!({ "tag": tag.as_str(), "scenes": scenes }),
        computed: json!({ "mismatches": mismatches, "refuted": refuted }),
        residual: worst,
        pass: mismatches == 0 && refuted == 0 && worst < 1e-8,
    })
}

fn generic_triples(s: &Settings, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let n = 100;
    let mut whole = 0usize;
    for _ in 0..n {
        let pts: Vec<_> = (0..3).map(|_| random_negative_point(rng, 1.5)).collect();
        whole += usize::from(hull_classify(&pts, &s.tol)?.tag() == HullTag::Whole);
    }
    Ok(Measured {
        expected: json!({ "Whole": n }),
        computed: json!({ "Whole": whole }),
        residual: (n - whole) as f64,
        pass: whole == n,
    })
}
