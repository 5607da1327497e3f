//! Error type shared by every module of the crate.
//!
//! One enum keeps the failure vocabulary uniform across layers: a grid
//! problem surfacing through a solver is still a grid problem.

use thiserror::Error;

/// Crate-wide error enum.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed construction input or an argument outside an op's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Sampled values do not decay below the boundary tolerance at the
    /// outermost two samples of the axis being transformed.
    #[error("boundary error: {0}")]
    Boundary(String),

    /// An axis carries a sample at (or too close to) a coordinate where a
    /// negative-power multiplier is singular.
    #[error("singular grid error: {0}")]
    SingularGrid(String),

    /// Generator id is not in the model's alphabet.
    #[error("alphabet error: {0}")]
    Alphabet(String),

    /// A group action would move numerically relevant support outside the box.
    #[error("range error: {0}")]
    Range(String),

    /// A multiplier denominator vanishes on the support of the input.
    #[error("singular value error: {0}")]
    SingularValue(String),

    /// Mismatched matrix sizes or root-vector ranks.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Right-hand side fails the obstruction check required by a solver.
    #[error("obstruction error: {0}")]
    Obstruction(String),

    /// Fiber parameter z = 0 names the excluded representation.
    #[error("zero fiber error: {0}")]
    ZeroFiber(String),

    /// The requested generator is not diagonalized by the model's
    /// multiplication/translation structure.
    #[error("not diagonalized error: {0}")]
    NotDiagonalized(String),

    /// An ε-ladder rung falls below the resolvable scale of the grid.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Container or report serialization problem.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
