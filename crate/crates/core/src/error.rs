use std::fmt;

use crate::tables::{Outcome, Side};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what} is not finite ({value})")]
    NonFinite { what: String, value: f64 },

    #[error("entry {outcome} is negative ({value})")]
    NegativeEntry { outcome: Outcome, value: f64 },

    #[error("entry {outcome} exceeds one ({value})")]
    EntryAboveOne { outcome: Outcome, value: f64 },

    #[error("entries sum to {0}, expected 1")]
    SumNotOne(f64),

    #[error("context ({i},{j}): {source}")]
    InContext {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("no table for context ({i},{j})")]
    MissingContext { i: usize, j: usize },

    #[error("table key {key:?} does not name a context within the declared grid")]
    UnknownContext { key: String },

    #[error("grid must have at least one setting per side (m = {m}, n = {n})")]
    EmptyGrid { m: usize, n: usize },

    #[error("side {side}: expected {expected} entries, got {got}")]
    DimensionMismatch { side: Side, expected: usize, got: usize },

    #[error("family document: {0}")]
    ModelMismatch(String),

    #[error("side {side}: weight {index} is not positive ({value})")]
    WeightNotPositive { side: Side, index: usize, value: f64 },

    #[error("side {side}: weights sum to {sum}, expected 1")]
    WeightSumNotOne { side: Side, sum: f64 },

    #[error("setting index {index} on side {side} is outside 1..={max}")]
    IndexOutOfRange { side: Side, index: usize, max: usize },

    #[error("conditioning event has zero probability")]
    ConditionHasZeroProbability,

    #[error("CHSH requires a 2x2 grid, got {m}x{n}")]
    NotTwoByTwo { m: usize, n: usize },

    #[error("sign pattern {0:?} must contain only ±1 with an odd number of minus signs")]
    BadSignPattern([i8; 4]),

    #[error("context ({i},{j}) has no trials")]
    EmptyContext { i: usize, j: usize },

    #[error("simulation needs at least one trial")]
    NoTrials,

    #[error("row {row}: {reason}")]
    InvalidRecord { row: usize, reason: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable short name of the error kind, used in diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "NonFinite",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::EntryAboveOne { .. } => "EntryAboveOne",
            Error::SumNotOne(_) => "SumNotOne",
            Error::InContext { source, .. } => source.code(),
            Error::MissingContext { .. } => "MissingContext",
            Error::UnknownContext { .. } => "UnknownContext",
            Error::EmptyGrid { .. } => "EmptyGrid",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ModelMismatch(_) => "ModelMismatch",
            Error::WeightNotPositive { .. } => "WeightNotPositive",
            Error::WeightSumNotOne { .. } => "WeightSumNotOne",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::ConditionHasZeroProbability => "ConditionHasZeroProbability",
            Error::NotTwoByTwo { .. } => "NotTwoByTwo",
            Error::BadSignPattern(_) => "BadSignPattern",
            Error::EmptyContext { .. } => "EmptyContext",
            Error::NoTrials => "NoTrials",
            Error::InvalidRecord { .. } => "InvalidRecord",
            Error::Invariant(_) => "Invariant",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
            Error::Io(_) => "Io",
        }
    }

    /// True for failures of the library's own consistency checks rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }

    pub(crate) fn in_context(self, i: usize, j: usize) -> Self {
        Error::InContext {
            i,
            j,
            source: Box::new(self),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => f.write_str("A"),
            Side::B => f.write_str("B"),
        }
    }
}
