use thiserror::Error;

/// Errors raised anywhere in the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode {mode}: occupation {occupation} exceeds cutoff {cutoff}")]
    Cutoff {
        mode: usize,
        occupation: u32,
        cutoff: u32,
    },

    #[error("reachable subspace exceeds the dimension cap of {cap}")]
    DimensionCap { cap: usize },

    #[error("invalid system specification: {0}")]
    Spec(String),

    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("ill-conditioned partition: condition number {condition:.3e} exceeds {bound:.3e}")]
    IllConditioned { condition: f64, bound: f64 },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NonHermitian { asymmetry: f64 },

    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    /// True for failures caused by the numerics rather than by the input description.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::IllConditioned { .. } | Error::Degenerate(_) | Error::NonHermitian { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
