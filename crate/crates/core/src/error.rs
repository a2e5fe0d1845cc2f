use thiserror::Error;

/// Everything that can go wrong in the numerical core.
///
/// Validation failures (bad input) and numerical failures (poles, collisions)
/// are separate variants so the binary can map them to distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("vanishing denominator: {0}")]
    DenominatorZero(String),

    #[error("box ({i}, {j}) lies outside the diagram")]
    OutOfBounds { i: usize, j: usize },

    #[error("zero argument: {0}")]
    ZeroArgument(String),

    #[error("finite-difference step {h} too large for t = {t}")]
    StepTooLarge { h: f64, t: f64 },

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("value too close to zero: {0}")]
    NearZero(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for errors caused by the caller's parameters rather than by the
    /// numerics hitting a singular point.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidInput(_) | Error::StepTooLarge { .. } | Error::OutOfBounds { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
