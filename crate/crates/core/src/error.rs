use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },

    #[error("could not parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("IdentityInConnectionSet: factor {factor} contains the identity")]
    IdentityInConnectionSet { factor: usize },

    #[error("NotInverseClosed: factor {factor} contains {element} but not its inverse")]
    NotInverseClosed { factor: usize, element: String },

    #[error("EmptyFactorSet: factor {factor} has an empty connection set")]
    EmptyFactorSet { factor: usize },

    #[error("element {element} does not belong to group {group}")]
    ElementOutsideGroup { element: String, group: String },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("TooLargeForDenseOracle: group order {order} exceeds the dense cap {cap}")]
    TooLargeForDenseOracle { order: usize, cap: usize },

    #[error("UnsupportedPowerIndex: power index {0} (only 1 and 2 are supported)")]
    UnsupportedPowerIndex(u32),

    #[error("UnsupportedDegree: product character of degree {0} has more than one degree-2 factor")]
    UnsupportedDegree(usize),

    #[error("unsupported group shape: {0}")]
    UnsupportedShape(String),

    #[error("InconsistentPowerSums: p1 = {p1}, p2 = {p2}, discriminant {discriminant}")]
    InconsistentPowerSums { p1: f64, p2: f64, discriminant: f64 },

    #[error("NotSymmetric: entry ({row}, {col}) differs from its transpose by {diff}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("ConvergenceFailure: Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// Errors caused by user-supplied values rather than numerical trouble or
    /// unsupported shapes.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::NotADivisor { .. }
                | Error::Parse { .. }
                | Error::IdentityInConnectionSet { .. }
                | Error::NotInverseClosed { .. }
                | Error::EmptyFactorSet { .. }
                | Error::ElementOutsideGroup { .. }
                | Error::GroupMismatch(_)
                | Error::UnsupportedPowerIndex(_)
        )
    }

    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::TooLargeForDenseOracle { .. }
                | Error::UnsupportedDegree(_)
                | Error::UnsupportedShape(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
