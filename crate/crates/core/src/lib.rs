//! Numerical geometry of the complex hyperbolic plane in the projective
//! model: points are lines in `C^3` with the Hermitian form
//! `-x0 conj(y0) + x1 conj(y1) + x2 conj(y2)`, and the ball is the set of
//! negative lines.
//!
//! The crate covers the form and its linear algebra ([`hermitian`]),
//! tangent vectors and curvature ([`tangent`]), geodesics ([`geodesic`]),
//! complex geodesics and real planes ([`flats`]), bisectors
//! ([`bisector`]) and the classification of totally geodesic objects
//! ([`classifier`]).

pub mod bisector;
pub mod classifier;
pub mod error;
pub mod flats;
pub mod geodesic;
pub mod hermitian;
pub mod sampling;
pub mod tangent;

pub use bisector::{
    bisector_crossing, bisector_form, bisector_from_spine, bisector_residual, meridian_at,
    meridian_of_point, non_tg_witness, on_bisector, slice_at, slice_base_point, spine_side_value,
    standard_bisector, Bisector, BisectorWitness, Endpoint,
};
pub use classifier::{
    classify_tangent_subspace, closure_oracle, hull_classify, hull_classify_with_certificate,
    spine_decomposition, whole_space_construction, HullClass, HullTag, OracleReport,
    SpineDecomposition, TangentClass, TangentVerdict, WholeCertificate, WholeSpaceTrace,
};
pub use error::{GeometryError, Result};
pub use flats::{
    complex_geodesic_through, on_complex_geodesic, on_real_plane, real_plane_through,
    restrict_tangent, triple_product, ComplexGeodesic, Flat, RealPlane,
};
pub use geodesic::{
    distance, geodesic_through, geodesic_to_boundary, on_geodesic, point_at_arclength,
    point_at_vertex_param, project_to_geodesic, unit_tangent, Geodesic,
};
pub use hermitian::{
    canonicalize, herm, herm_norm, herm_orthogonal, orthonormalize, point_kind, proj_equal,
    Complex, HVector, Isometry, PointKind, ProjPoint, Tolerance, I, ONE, ZERO,
};
pub use tangent::{
    curvature, riemannian_g, sectional_curvature, symplectic_w, tangent_herm, TangentVector,
};
