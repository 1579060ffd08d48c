use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined resultant: {0}")]
    UndefinedResultant(String),
    #[error("discriminant undefined for constant polynomial")]
    ConstantDiscriminant,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("degenerate lattice (determinant 0)")]
    Degenerate,
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("twist must be a nonzero integer")]
    ZeroTwist,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("E8 labeling reconstruction failed: no labeling satisfies the Gram constraints")]
    LabelingFailed,
    #[error("all-zero parameter vector")]
    ZeroParams,
    #[error("not a K3 Weierstrass point: non-minimal fiber at {0}")]
    NonMinimal(String),
    #[error("not a K3 surface: {0}")]
    NotK3(String),
    #[error("d_84 undefined at resultant locus (compute disc directly)")]
    ResultantLocus,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
