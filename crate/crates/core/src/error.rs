use thiserror::Error;

/// Errors raised by the sponge solvers, checkers and file formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpongeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point has a non-finite coordinate")]
    NonFinite,

    #[error("empty input: joins and meets are only defined for nonempty sets")]
    Empty,

    #[error("point {0:?} lies outside the domain of the sponge family: {1}")]
    OutsideDomain(Vec<f64>, String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("profile rejected: {0}")]
    InvalidProfile(String),

    #[error("set is not right-bounded, no join exists")]
    JoinUnavailable,

    #[error("pair has no left bound")]
    NoLeftBound,

    #[error("left-boundedness is numerically ambiguous (optimum {0:e} within tolerance band)")]
    BoundaryAmbiguous(f64),

    #[error("component {block} of the product is unbounded")]
    ComponentUnbounded { block: usize },

    #[error("no usable seeds: {0}")]
    NoSeeds(String),

    #[error("grid too coarse: no grid point is a bound although the family guarantees one")]
    GridTooCoarse,

    #[error("solver did not converge after {0} iterations")]
    NonConvergence(usize),

    #[error("window at pixel ({x}, {y}) has no {what}")]
    WindowUnbounded { x: usize, y: usize, what: &'static str },

    #[error("window at pixel ({x}, {y}) leaves the field")]
    OutOfBounds { x: usize, y: usize },

    #[error("operation not supported for this sponge family: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for SpongeError {
    fn from(e: std::io::Error) -> Self {
        SpongeError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, SpongeError>;
