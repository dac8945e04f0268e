use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar: {0:?}")]
    ScalarParse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not contained in the ambient space given for the complement")]
    NotContained,
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("algebra fails validation:\n{0}")]
    InvalidAlgebra(String),
    #[error("module fails validation: {0}")]
    InvalidModule(String),
    #[error("builder constraint violated: {0}")]
    BadBuilder(String),
    #[error("algebra is not a simply connected finite-dimensional model (need A^{{<0}} = 0, A^0 = k, A^1 = 0)")]
    NotSimplyConnectedModel,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("degree cutoff {0} is too small: {1}")]
    CutoffTooSmall(i32, String),
    #[error("resolution did not make progress before the cutoff: {0}")]
    NoProgress(String),
    #[error("cohomology is unbounded below within the inspected window")]
    UnboundedBelow,
    #[error("operation requires a terminated resolution but the cutoff was reached")]
    Truncated,
    #[error("operation unsupported over {0}: {1}")]
    UnsupportedField(String, String),
    #[error("not Gorenstein: {0}")]
    NotGorenstein(String),
    #[error("construction plan violated: {0}")]
    PlanViolation(String),
    #[error("selected cohomology class is zero: {0}")]
    ZeroClass(String),
    #[error("expected identification failed: {0}")]
    IdentificationFailed(String),
    #[error("object is decomposable; operation needs an indecomposable input")]
    Decomposable,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
