use thiserror::Error;

/// Errors raised across the belief-function engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("frame of discernment must contain at least one hypothesis")]
    EmptyFrame,
    #[error("frame has {0} hypotheses, at most 64 are supported")]
    FrameTooLarge(usize),
    #[error("duplicate hypothesis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown hypothesis label `{0}`")]
    UnknownLabel(String),
    #[error("subset {0:#x} lies outside the frame")]
    SubsetOutsideFrame(u64),

    #[error("masses sum to {0}, expected 1")]
    SumNotOne(f64),
    #[error("mass {0} is outside [0, 1]")]
    NegativeMass(f64),
    #[error("focal element {0} assigned more than once")]
    DuplicateFocal(String),
    #[error("mass on the empty set requires an open-world mass function")]
    EmptySetInClosedWorld,
    #[error("source {0} is open-world; this rule needs closed-world inputs")]
    OpenWorldSource(usize),
    #[error("total conflict: nothing left to normalize")]
    TotalConflict,
    #[error("discount coefficient {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),

    #[error("sources are defined on different frames")]
    FrameMismatch,
    #[error("no sources to combine")]
    EmptySourceList,
    #[error("rule needs at least {needed} sources, got {got}")]
    TooFewSources { needed: usize, got: usize },
    #[error("redistribution weights sum to {0}, expected 1")]
    WeightsNotNormalized(f64),
    #[error("redistribution weight on the empty set must be zero")]
    WeightOnEmptySet,
    #[error("shaping function is not positive and non-decreasing on (0, 1]: {0}")]
    NonIncreasingShaper(String),
    #[error("unknown combination rule `{0}`")]
    UnknownRule(String),
    #[error("unknown decision criterion `{0}`")]
    UnknownCriterion(String),
    #[error("rule `{rule}` requires option `{option}`")]
    MissingOption { rule: String, option: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("training set is empty")]
    EmptyTraining,
    #[error("feature index {index} out of range ({count} features)")]
    InvalidFeature { index: usize, count: usize },
    #[error("class index {index} out of range ({count} classes)")]
    InvalidLabel { index: usize, count: usize },
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("histogram model is not fitted: {0}")]
    ModelNotFitted(String),

    #[error("patch is {height}x{width}, both sides must be at least 2")]
    PatchTooSmall { height: usize, width: usize },
    #[error("pixel value {value} is outside [0, {levels})")]
    PixelOutOfRange { value: u32, levels: usize },
    #[error("invalid patch: {0}")]
    InvalidPatch(String),

    #[error("interval grids have different supports")]
    GridMismatch,
    #[error("invalid interval grid: {0}")]
    InvalidGrid(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
