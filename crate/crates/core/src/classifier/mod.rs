//! Classification of totally geodesic objects: curvature-closed tangent
//! subspaces, and hulls of finite point sets.

mod construction;
mod hull;
mod tangent;

pub use construction::{
    spine_decomposition, whole_space_construction, SpineDecomposition, WholeSpaceTrace,
};
pub use hull::{
    closure_oracle, hull_classify, hull_classify_with_certificate, HullClass, HullTag,
    OracleReport, WholeCertificate,
};
pub use tangent::{classify_tangent_subspace, closure_residual, TangentClass, TangentVerdict};
