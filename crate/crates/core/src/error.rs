use crate::flow::FlowTrajectory;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors are reserved for violated preconditions and lost invariants.
/// Inequality checks that merely fail report through `CheckEntry`, not here.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("closed curve needs at least {min} points, got {got}")]
    TooFewPoints { got: usize, min: usize },

    #[error("non-finite coordinate at point {0}")]
    NonFiniteCoordinate(usize),

    #[error("consecutive points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),

    #[error("degenerate curve: total length {0:e} is too small to resample")]
    DegenerateLength(f64),

    #[error(
        "edge spacing varies by {variation:.4} relative to the mean (limit {limit}); \
         resample to uniform arc length first"
    )]
    NonUniformSpacing { variation: f64, limit: f64 },

    #[error("enclosed area {0:e} is not positive; curve must be counterclockwise and non-degenerate")]
    NonPositiveArea(f64),

    #[error("curve is not embedded: edges {0} and {1} intersect")]
    NotEmbedded(usize, usize),

    #[error("flow lost embeddedness at t = {t:e}; partial trajectory retained")]
    EmbeddednessLost { t: f64, partial: Box<FlowTrajectory> },

    #[error("samples straddle a resampling event; vertex correspondence is broken")]
    ResampleEpochMismatch,

    #[error("samples are not ordered forward in time")]
    NonIncreasingSampleTimes,

    #[error("trajectory has fewer than two samples")]
    TooFewSamples,

    #[error("no interior grid point at resolution {0}; curve too thin for this grid")]
    NoInteriorPoint(usize),

    #[error("mean curvature is not positive; roundness statistic undefined")]
    NonPositiveMeanCurvature,

    #[error("curve generation exhausted {attempts} attempts for seed {seed}")]
    GenerationBudgetExhausted { seed: u64, attempts: u32 },

    #[error("invalid curve spec: {0}")]
    InvalidSpec(String),

    #[error("invalid flow config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed curve file: {0}")]
    MalformedCurveFile(#[from] serde_json::Error),
}
