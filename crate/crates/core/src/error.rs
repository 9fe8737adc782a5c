use thiserror::Error;

/// Everything that can go wrong in the kernel.
///
/// Variants mirror the failure modes of the individual operations; most of
/// them signal a violated precondition rather than a numerical accident.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vector is zero (or not finite)")]
    ZeroVector,
    #[error("tolerances must be positive and ordered eps_alg <= eps_mem <= eps_iso")]
    InvalidTolerance,
    #[error("the Hermitian form restricted to the span is degenerate")]
    DegenerateSubspace,
    #[error("span contains more than one negative direction")]
    SignatureViolation,
    #[error("input vectors are linearly dependent")]
    LinearlyDependent,
    #[error("point is not negative (not in the ball)")]
    NotNegative,
    #[error("point is not isotropic")]
    NotIsotropic,
    #[error("tangent vectors live at different base points")]
    BaseMismatch,
    #[error("vector is not orthogonal to the base point")]
    NotTangent,
    #[error("tangent vectors span no plane")]
    DegeneratePlane,
    #[error("points coincide projectively")]
    CoincidentPoints,
    #[error("point does not lie on the geodesic")]
    NotOnGeodesic,
    #[error("tangent vector does not have unit length")]
    NotUnitTangent,
    #[error("tangent vector is not tangent to the geodesic")]
    NotTangentToGeodesic,
    #[error("vertex parameter must be positive and finite, got {0}")]
    NonpositiveAlpha(f64),
    #[error("point is orthogonal to a vertex of the geodesic")]
    PolarPoint,
    #[error("point and boundary point are orthogonal")]
    OrthogonalPair,
    #[error("span does not meet the ball")]
    IndefiniteFailure,
    #[error("points do not lie on a common real plane")]
    NoCommonRealPlane,
    #[error("points lie on a common geodesic")]
    CollinearInput,
    #[error("point does not lie on the flat")]
    NotOnFlat,
    #[error("point is not on the real spine")]
    NotOnSpine,
    #[error("phase must have modulus one, got {0}")]
    NonUnitPhase(f64),
    #[error("point lies on the real spine, its meridian is not unique")]
    OnSpine,
    #[error("point is not on the bisector")]
    NotOnBisector,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(&'static str),
    #[error("bisector residual does not change sign along the path")]
    NoSignChange,
    #[error("tangent span is not independent over the reals")]
    DependentSpan,
    #[error("curvature closure disagrees with the a/b decomposition (residual {0:e})")]
    ClosureMismatch(f64),
    #[error("point is a vertex of the geodesic")]
    VertexInput,
    #[error("geodesic and point share a common {0}")]
    CommonFlatExists(&'static str),
    #[error("crossing point landed on the spine")]
    CrossingOnSpine,
}

pub type Result<T> = std::result::Result<T, GeometryError>;
