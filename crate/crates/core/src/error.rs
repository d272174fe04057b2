use thiserror::Error;

/// Errors raised by the library. Each variant maps to a stable CLI code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings: {0}")]
    DescriptorMismatch(String),
    #[error("division by zero or by a non-unit")]
    DivisionByZero,
    #[error("operation not supported over this ring: {0}")]
    UnsupportedRing(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis change matrix is not invertible")]
    SingularBasisChange,
    #[error("no canonical embedding from {from} into {to}")]
    NoCanonicalEmbedding { from: String, to: String },
    #[error("structure matrix is not invertible over the base ring")]
    NotUnit,
    #[error("subspace enumeration needs {needed} candidates, cap is {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u128 },
    #[error("no witness found for extension degrees up to {s_max}")]
    WitnessBoundExceeded { s_max: u32 },
    #[error("bound of {bound} Frobenius steps exceeded")]
    BoundExceeded { bound: u32 },
    #[error("polynomial degree {degree} exceeds the guard {guard}")]
    DegreeGuardExceeded { degree: u64, guard: u64 },
    #[error("submodule is not a root: {0}")]
    RootCheckFailed(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Rebases a single-line parse error onto a line of a larger document.
    pub(crate) fn at_line(self, line: usize, column_offset: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column: column + column_offset,
                message,
            },
            other => other,
        }
    }

    /// Short machine-friendly name used in structured reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DescriptorMismatch(_) => "descriptor_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::UnsupportedRing(_) => "unsupported_ring",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::SingularBasisChange => "singular_basis_change",
            Error::NoCanonicalEmbedding { .. } => "no_canonical_embedding",
            Error::NotUnit => "not_unit",
            Error::EnumerationCapExceeded { .. } => "enumeration_cap_exceeded",
            Error::WitnessBoundExceeded { .. } => "witness_bound_exceeded",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::DegreeGuardExceeded { .. } => "degree_guard_exceeded",
            Error::RootCheckFailed(_) => "root_check_failed",
            Error::Parse { .. } => "parse_error",
            Error::Validation(_) => "validation_error",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
