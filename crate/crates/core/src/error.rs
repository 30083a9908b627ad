use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized: norm deviates from 1 by {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("invalid spin quantum number 2j = {0}")]
    InvalidSpin(i64),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid kernel sign vector: {0}")]
    InvalidSigns(String),

    #[error("fields live on different grids (band limits {left} and {right})")]
    GridMismatch { left: usize, right: usize },

    #[error("grid band limit {found} is below the required {required}")]
    InsufficientBandLimit { required: usize, found: usize },

    #[error("operator is not unitary: deviation {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("superposed amplitudes use different windows")]
    WindowMismatch,

    #[error("even lattice dimension {0} is not supported (only d = 2 and odd d)")]
    EvenDimension(usize),

    #[error("kernel axiom violated: {0}")]
    KernelAxiom(String),
}

pub type Result<T> = std::result::Result<T, Error>;
