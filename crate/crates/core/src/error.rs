use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series too short: need more than {needed} observations, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    #[error("series has no differencing to invert")]
    NothingToInvert,

    #[error("degenerate split: train length {train}, test length {test}")]
    DegenerateSplit { train: usize, test: usize },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("series is constant; autocorrelation is undefined")]
    ConstantSeries,

    #[error("lag {lag} too large for series of length {len}")]
    LagTooLarge { lag: usize, len: usize },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("singular regression design matrix")]
    SingularRegression,

    #[error("AR parameters are not stationary")]
    NonStationaryParams,

    #[error("MA parameters are not invertible")]
    NonInvertibleParams,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("too few observations: need at least {needed}, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("index {index} out of range for series of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("link-scale predictor {eta} exceeds overflow guard at t={t}")]
    OverflowGuard { t: usize, eta: f64 },

    #[error("observation {value} at position {index} is not a non-negative integer count")]
    NonCountData { index: usize, value: f64 },

    #[error("degenerate Ljung-Box degrees of freedom: lags {lags}, fitted parameters {fitted}")]
    DegenerateDf { lags: usize, fitted: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),

    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("non-numeric value {value:?} at row {row}")]
    NonNumericValue { row: usize, value: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("differencing did not reach stationarity after {max_d} passes (last p-value {p_value})")]
    NotStationary { max_d: usize, p_value: f64 },

    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Outermost pipeline stage this error was raised in, if any.
    pub fn stage(&self) -> Option<&'static str> {
        match self {
            Error::Stage { stage, .. } => Some(stage),
            _ => None,
        }
    }

    /// The innermost error, with pipeline stage wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for failures caused by bad input or configuration rather than the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self.root(),
            Error::SeriesTooShort { .. }
                | Error::DegenerateSplit { .. }
                | Error::InvalidSeries(_)
                | Error::ConstantSeries
                | Error::LagTooLarge { .. }
                | Error::TooFewObservations { .. }
                | Error::NonCountData { .. }
                | Error::FileNotFound(_)
                | Error::Parse { .. }
                | Error::NonNumericValue { .. }
                | Error::Config(_)
                | Error::Io(_)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_wrapping_keeps_root() {
        let e = Error::TooFewObservations { needed: 30, got: 4 }.at_stage("fit");
        assert_eq!(e.stage(), Some("fit"));
        assert!(matches!(e.root(), Error::TooFewObservations { .. }));
        assert!(e.to_string().starts_with("stage fit:"));
    }

    #[test]
    fn input_versus_numerical() {
        assert!(Error::Config("x".into()).at_stage("config").is_input_error());
        assert!(Error::FileNotFound("a.csv".into()).is_input_error());
        assert!(!Error::SingularRegression.at_stage("stationarity").is_input_error());
        assert!(!Error::NotStationary { max_d: 2, p_value: 0.4 }.is_input_error());
        assert!(!Error::OverflowGuard { t: 3, eta: 701.0 }.is_input_error());
    }
}
