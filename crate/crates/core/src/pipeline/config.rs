use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub input_path: PathBuf,
    pub date_column: String,
    pub value_column: String,
    pub train_fraction: f64,
    pub alpha: f64,
    /// Candidate `(p, q)` orders fitted on the stationary training series.
    pub candidates: Vec<(usize, usize)>,
    /// Forecast steps from the end of the training window; never fewer than
    /// the test length.
    pub forecast_horizon: Option<usize>,
    pub garma_orders: (usize, usize),
    pub ljung_box_lags: usize,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            input_path: PathBuf::new(),
            date_column: "date".into(),
            value_column: "cases".into(),
            train_fraction: 0.9,
            alpha: 0.05,
            candidates: vec![(1, 1), (0, 5)],
            forecast_horizon: None,
            garma_orders: (1, 1),
            ljung_box_lags: 10,
            output_dir: PathBuf::from("out"),
            seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::Config(format!(
                "train fraction {} not in (0, 1)",
                self.train_fraction
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha {} not in (0, 1)", self.alpha)));
        }
        if self.candidates.is_empty() {
            return Err(Error::Config("at least one candidate order is required".into()));
        }
        if self.forecast_horizon == Some(0) {
            return Err(Error::Config("forecast horizon must be positive".into()));
        }
        Ok(())
    }
}

/// Parses `"p,q;p,q"`.
pub fn parse_orders(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_order)
        .collect()
}

/// Parses `"p,q"`.
pub fn parse_order(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("expected an order like \"1,1\", got {text:?}"));
    let (p, q) = text.split_once(',').ok_or_else(bad)?;
    let p = p.trim().parse().map_err(|_| bad())?;
    let q = q.trim().parse().map_err(|_| bad())?;
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(parse_orders("1,1;0,5").unwrap(), vec![(1, 1), (0, 5)]);
        assert_eq!(parse_orders(" 2, 0 ; ").unwrap(), vec![(2, 0)]);
        assert!(parse_orders("1;2").is_err());
        assert!(parse_order("a,1").is_err());
    }

    #[test]
    fn defaults_are_valid() {
        let c = PipelineConfig::default();
        c.validate().unwrap();
        assert_eq!(c.candidates, vec![(1, 1), (0, 5)]);
        let bad = PipelineConfig {
            candidates: vec![],
            ..PipelineConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
