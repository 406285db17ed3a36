//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("weight sum {sum} is not divisible by order {order}")]
    WeightSum { order: u32, sum: i64 },

    #[error("linear sigma model weights invalid: {0}")]
    LsmWeights(String),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("representations live on different quivers")]
    QuiverMismatch,

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("projection onto the relation variety failed for seed {seed}")]
    ProjectionFailed { seed: u64 },

    #[error("representation violates {count} superpotential relations")]
    RelationsViolated { count: usize },

    #[error("total dimension {total} exceeds bound {bound}")]
    BoundExceeded { total: usize, bound: usize },

    #[error("zero rank")]
    ZeroRank,

    #[error("massless charge: |Z| = {mass:e} below tolerance at s = {at}")]
    MasslessCharge { mass: f64, at: f64 },

    #[error("phase lift refinement exhausted at depth {depth} near s = {at}")]
    RefinementExhausted { depth: u32, at: f64 },

    #[error("theta vector not normalized: theta . dims = {value}")]
    NormalizationError { value: String },

    #[error("path is not closed: endpoints differ by {gap:e}")]
    NotClosed { gap: f64 },

    #[error("monodromy shift {value} is not an even integer within tolerance")]
    NonIntegralMonodromy { value: f64 },

    #[error("decay constituents do not sum to the parent charge")]
    ChargeMismatch,

    #[error("moduli point outside the period model domain: {0}")]
    Domain(String),

    #[error("path does not start at the record's reference point (gap {gap:e})")]
    PathMismatch { gap: f64 },

    #[error("config error at {pointer}: {message}")]
    Config { pointer: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable code, stable across releases; used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::WeightSum { .. } => "E_WEIGHT_SUM",
            Error::LsmWeights(_) => "E_LSM_WEIGHTS",
            Error::ShapeMismatch(_) => "E_SHAPE",
            Error::QuiverMismatch => "E_QUIVER_MISMATCH",
            Error::LengthMismatch(_) => "E_LENGTH",
            Error::ProjectionFailed { .. } => "E_PROJECTION",
            Error::RelationsViolated { .. } => "E_RELATIONS",
            Error::BoundExceeded { .. } => "E_BOUND",
            Error::ZeroRank => "E_ZERO_RANK",
            Error::MasslessCharge { .. } => "E_MASSLESS",
            Error::RefinementExhausted { .. } => "E_REFINEMENT",
            Error::NormalizationError { .. } => "E_THETA_NORM",
            Error::NotClosed { .. } => "E_NOT_CLOSED",
            Error::NonIntegralMonodromy { .. } => "E_MONODROMY",
            Error::ChargeMismatch => "E_CHARGE_SUM",
            Error::Domain(_) => "E_DOMAIN",
            Error::PathMismatch { .. } => "E_PATH_START",
            Error::Config { .. } => "E_CONFIG",
            Error::Io(_) => "E_IO",
        }
    }

    pub(crate) fn config(pointer: &str, message: impl Into<String>) -> Self {
        Error::Config {
            pointer: pointer.to_string(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
