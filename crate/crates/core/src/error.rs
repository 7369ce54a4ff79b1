use thiserror::Error;

/// Errors produced by the geometry, statistics and testing layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid dimension {0}, expected d >= 1")]
    InvalidDimension(i64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("empty input")]
    EmptyInput,
    #[error("point {index} ({x}, {y}) lies outside the region")]
    PointOutsideRegion { index: usize, x: f64, y: f64 },
    #[error("density estimate does not cover the hull")]
    DensityDomainMismatch,
    #[error("invalid bandwidth {0}")]
    InvalidBandwidth(f64),
    #[error("all points coincide, sample spread is zero")]
    ZeroSpread,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures caused by the geometry of otherwise valid input.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Error::DegenerateInput(_)
                | Error::Numerical(_)
                | Error::DensityDomainMismatch
                | Error::PointOutsideRegion { .. }
        )
    }
}
