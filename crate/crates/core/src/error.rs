use thiserror::Error;

use crate::saturation::ToricVerdict;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {message}")]
    Parse { input: String, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero input: {0}")]
    ZeroInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("trial division of {value} exceeded bound {bound}")]
    FactorBoundExceeded { value: String, bound: u64 },

    #[error("resource bound exceeded in {what} (limit {limit})")]
    ResourceExhausted { what: String, limit: u64 },

    #[error("lattice is not toric ({} saturation witness(es))", .0.witnesses.len())]
    NotToric(Box<ToricVerdict>),

    #[error("row {0} of the exponent matrix is zero")]
    ZeroRow(usize),

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("certificate check failed: {0}")]
    Verification(String),
}

impl Error {
    /// Whether the error reflects a violated mathematical precondition
    /// (as opposed to malformed input or an exhausted resource).
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::NotToric(_) | Error::ZeroRow(_) | Error::Precondition(_))
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::FactorBoundExceeded { .. } | Error::ResourceExhausted { .. })
    }

    /// Process exit code: 2 for bad input, 3 for a violated precondition,
    /// 4 for an exhausted resource bound, 1 for a failed self-check.
    pub fn exit_code(&self) -> i32 {
        if self.is_precondition() {
            3
        } else if self.is_resource() {
            4
        } else if matches!(self, Error::Verification(_)) {
            1
        } else {
            2
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::InvalidInput(_) => "invalid_input",
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroInput(_) => "zero_input",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::FactorBoundExceeded { .. } => "factor_bound_exceeded",
            Error::ResourceExhausted { .. } => "resource_exhausted",
            Error::NotToric(_) => "not_toric",
            Error::ZeroRow(_) => "zero_row",
            Error::NotSquare { .. } => "not_square",
            Error::Precondition(_) => "precondition",
            Error::Verification(_) => "verification",
        }
    }
}
