use thiserror::Error;

/// Errors raised by constructors, generators, verification and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("bandwidth m = {m} too wide for n = {n} (need {need})")]
    BandTooWide { m: usize, n: usize, need: &'static str },

    #[error("coefficient array has {got} entries but bandwidth m = {m} allows at most {max}")]
    CoefficientCount { got: usize, m: usize, max: usize },

    #[error("dimension n = {n} must be even")]
    OddDimension { n: usize },

    #[error("dimension n = {n} too small (need n >= {min})")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("unsupported ansatz: {0}")]
    UnsupportedAnsatz(String),

    #[error("zero denominator in eigenvalue formula at j = {j} (|den| = {den:e})")]
    ZeroDenominator { j: usize, den: f64 },

    #[error("negative discriminant {disc:e} at j = {j}: complex eigenvalues are out of scope")]
    NegativeDiscriminant { j: usize, disc: f64 },

    #[error("degenerate eigenvector at j = {j}: |beta2*lambda - alpha2| = {den:e}")]
    DegenerateEigenvector { j: usize, den: f64 },

    #[error("zero leading coefficient: {0}")]
    ZeroCoefficient(String),

    #[error("sign condition violated: {0}")]
    SignCondition(String),

    #[error("ratio constraint violated: {0}")]
    RatioConstraintViolated(String),

    #[error("oracle found {found} of {expected} eigenvalues")]
    OracleIncomplete { found: usize, expected: usize },

    #[error("malformed Matrix Market header: {0}")]
    MalformedHeader(String),

    #[error("Matrix Market entry ({row}, {col}) out of range for n = {n}")]
    IndexOutOfRange { row: i64, col: i64, n: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for violations of a closed form's admissibility conditions.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::BandTooWide { .. }
                | Error::CoefficientCount { .. }
                | Error::OddDimension { .. }
                | Error::DimensionTooSmall { .. }
                | Error::UnsupportedAnsatz(_)
                | Error::ZeroDenominator { .. }
                | Error::NegativeDiscriminant { .. }
                | Error::DegenerateEigenvector { .. }
                | Error::ZeroCoefficient(_)
                | Error::SignCondition(_)
                | Error::RatioConstraintViolated(_)
                | Error::SingularMatrix
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
