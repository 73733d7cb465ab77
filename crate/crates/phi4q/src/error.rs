use thiserror::Error;

/// Errors produced by grid construction, operator builders, solvers and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix dimension {dim} is not a power of two")]
    NonPowerOfTwoDim { dim: usize },

    #[error("total Hilbert-space dimension {dim} exceeds the dense-build limit {limit}")]
    DimensionOverflow { dim: usize, limit: usize },

    #[error("improvement order {0} is not supported (only 1 and 2)")]
    UnsupportedOrder(u32),

    #[error("truncation headroom {headroom} is too small for field power {power} (need >= {needed})")]
    InsufficientHeadroom {
        headroom: usize,
        power: u32,
        needed: usize,
    },

    #[error("eigensolver did not converge: worst residual {residual:.3e} (tolerance {tolerance:.1e})")]
    NonConvergence { residual: f64, tolerance: f64 },

    #[error("eigenvector for level {level} was not retained (kept {kept})")]
    LevelNotRetained { level: usize, kept: usize },

    #[error("reference energy is zero; relative error is undefined")]
    ZeroReference,

    #[error("need at least {needed} points for the fit, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("Pauli strings have inconsistent lengths: {0} vs {1}")]
    InconsistentStringLength(usize, usize),

    #[error("qubit index {qubit} out of range for circuit width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },

    #[error("circuit width {width} too large for dense unitary extraction (max {max})")]
    WidthTooLarge { width: usize, max: usize },

    #[error("state dimension {got} does not match circuit dimension {expected}")]
    StateDimensionMismatch { got: usize, expected: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
