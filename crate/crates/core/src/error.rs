use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied arguments that do not fit together (orders, dimensions).
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition does not hold (normalization, feasibility).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gradient is singular at ({x}, {y}, {z}): radicand {radicand:e}")]
    SingularGradient {
        x: f64,
        y: f64,
        z: f64,
        radicand: f64,
    },
    #[error("no convergence: {0}")]
    NoConvergence(String),
    /// Malformed user input such as a coefficient file.
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
