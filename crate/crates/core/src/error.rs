use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar context mismatch: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent degrees: {0}")]
    InconsistentDegrees(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid curve presentation: {0}")]
    InvalidCurve(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("invalid point scheme: {0}")]
    InvalidPoints(String),
    #[error("singular interpolation system: {0}")]
    InterpolationSingular(String),
    #[error("insufficient samples: found {found} discriminant points, wanted {wanted}")]
    InsufficientSamples { found: usize, wanted: usize },
    #[error("not a Fano complete intersection: {0}")]
    NonFano(String),
    #[error("inconsistent numerics: {0}")]
    InconsistentNumerics(String),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
}
