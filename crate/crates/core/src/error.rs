use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building or transforming states and
/// channels. Inputs are rejected, never repaired: a matrix that fails
/// validation is returned to the caller with the measured defect so the
/// caller can see how far off it was.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{context}: expected dimension {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{context}: dimension {dim} is not supported")]
    UnsupportedDimension { context: &'static str, dim: usize },

    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {defect:.3e}")]
    NotHermitian { defect: f64 },

    #[error("trace is {trace} instead of 1")]
    NotUnitTrace { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("state vector has squared norm {norm_sqr} instead of 1")]
    NotNormalized { norm_sqr: f64 },

    #[error("empty state vector")]
    EmptyState,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("overlap matrix diagonal entry {index} is {value} instead of 1")]
    NotUnitDiagonal { index: usize, value: f64 },

    #[error("parameter {name} = {value} lies outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("channel has no Kraus operators")]
    EmptyKrausSet,

    #[error("Kraus completeness defect {defect:.3e} exceeds tolerance {tolerance:.0e}")]
    IncompleteKraus { defect: f64, tolerance: f64 },

    #[error("measure {name} = {value} lies outside [0, 1]")]
    MeasureOutOfRange { name: &'static str, value: f64 },
}
