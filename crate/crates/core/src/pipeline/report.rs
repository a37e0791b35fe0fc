use std::fmt::Write;
use std::path::PathBuf;

use chrono::NaiveDate;
use serde::Serialize;

use super::config::PipelineConfig;
use crate::arma::ArmaFit;
use crate::correlogram::{Correlogram, Pattern};
use crate::diagnostics::{EvalReport, LjungBoxResult};
use crate::garma::GarmaFit;
use crate::series::{SplitSpec, SummaryStats};
use crate::stationarity::AdfResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientRow {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Accuracy {
    pub mae: f64,
    pub rmse: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub label: String,
    pub p: usize,
    pub q: usize,
    pub include_mean: bool,
    pub coefficients: Vec<CoefficientRow>,
    pub sigma2: f64,
    pub loglik: f64,
    pub n_params: usize,
    pub aic: f64,
    pub converged: bool,
    /// Rolling one-step-ahead predictions over the test window.
    pub one_step: Accuracy,
    /// Multi-step forecasts from the end of the training window.
    pub h_step: Accuracy,
    pub ljung_box: LjungBoxResult,
    /// Ranking record; its accuracy fields are the one-step ones.
    pub eval: EvalReport,
}

impl ModelReport {
    pub fn coefficient_rows(fit: &ArmaFit) -> Vec<CoefficientRow> {
        let mut rows = Vec::new();
        for (i, (est, se)) in fit.phi.iter().zip(&fit.se.phi).enumerate() {
            rows.push(CoefficientRow {
                name: format!("ar{}", i + 1),
                estimate: *est,
                std_error: *se,
            });
        }
        for (i, (est, se)) in fit.theta.iter().zip(&fit.se.theta).enumerate() {
            rows.push(CoefficientRow {
                name: format!("ma{}", i + 1),
                estimate: *est,
                std_error: *se,
            });
        }
        if let Some(se) = fit.se.mean {
            rows.push(CoefficientRow {
                name: "mean".into(),
                estimate: fit.mean,
                std_error: se,
            });
        }
        rows
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GarmaTable {
    pub label: String,
    pub p: usize,
    pub q: usize,
    pub coefficients: Vec<CoefficientRow>,
    pub loglik: f64,
    pub aic: f64,
    pub converged: bool,
    pub n_obs: usize,
}

impl From<&GarmaFit> for GarmaTable {
    fn from(fit: &GarmaFit) -> Self {
        let mut coefficients = vec![CoefficientRow {
            name: "intercept".into(),
            estimate: fit.intercept,
            std_error: fit.se.intercept,
        }];
        for (i, (est, se)) in fit.phi.iter().zip(&fit.se.phi).enumerate() {
            coefficients.push(CoefficientRow {
                name: format!("ar{}", i + 1),
                estimate: *est,
                std_error: *se,
            });
        }
        for (i, (est, se)) in fit.theta.iter().zip(&fit.se.theta).enumerate() {
            coefficients.push(CoefficientRow {
                name: format!("ma{}", i + 1),
                estimate: *est,
                std_error: *se,
            });
        }
        Self {
            label: fit.spec.label(),
            p: fit.spec.p,
            q: fit.spec.q,
            coefficients,
            loglik: fit.loglik,
            aic: fit.aic(),
            converged: fit.converged,
            n_obs: fit.n_obs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Identification {
    pub max_lag: usize,
    pub acf_pattern: Pattern,
    pub pacf_pattern: Pattern,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub config: PipelineConfig,
    pub n_obs: usize,
    pub summary: SummaryStats,
    pub split: SplitSpec,
    pub adf_before: AdfResult,
    /// ADF result on the series finally used for fitting.
    pub adf_after: AdfResult,
    pub d_used: usize,
    pub identification: Identification,
    pub models: Vec<ModelReport>,
    /// Model labels in ranked order.
    pub ranking: Vec<String>,
    pub selected: String,
    pub garma: Vec<GarmaTable>,
    pub artifact_paths: Vec<PathBuf>,
    #[serde(skip)]
    pub plot: PlotData,
}

impl RunReport {
    pub fn model(&self, label: &str) -> Option<&ModelReport> {
        self.models.iter().find(|m| m.label == label)
    }

    pub fn selected_model(&self) -> &ModelReport {
        self.model(&self.selected).expect("selected model is among the reports")
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let st = &self.summary;
        let _ = writeln!(s, "observations: {} (train {}, test {})", self.n_obs, self.split.train_len, self.split.test_len);
        let _ = writeln!(
            s,
            "summary: min {} q1 {} median {} mean {:.2} q3 {} max {} sd {:.2} var {:.0}",
            st.min, st.q1, st.median, st.mean, st.q3, st.max, st.sd, st.var
        );
        let _ = writeln!(
            s,
            "ADF before differencing: stat {:.4} lag {} p {:.4}",
            self.adf_before.statistic, self.adf_before.lag_order, self.adf_before.p_value
        );
        let _ = writeln!(
            s,
            "ADF after {} difference(s): stat {:.4} lag {} p {:.4}",
            self.d_used, self.adf_after.statistic, self.adf_after.lag_order, self.adf_after.p_value
        );
        let _ = writeln!(
            s,
            "identification (max lag {}): ACF {:?}, PACF {:?}",
            self.identification.max_lag, self.identification.acf_pattern, self.identification.pacf_pattern
        );
        for m in &self.models {
            let _ = writeln!(
                s,
                "{}: loglik {:.3} AIC {:.3} | one-step RMSE {:.3} MAE {:.3} | h-step RMSE {:.3} MAE {:.3} | Ljung-Box Q {:.3} df {} p {:.5}{}",
                m.label,
                m.loglik,
                m.aic,
                m.one_step.rmse,
                m.one_step.mae,
                m.h_step.rmse,
                m.h_step.mae,
                m.ljung_box.q_stat,
                m.ljung_box.df,
                m.ljung_box.p_value,
                if m.converged { "" } else { " [not converged]" }
            );
            for c in &m.coefficients {
                let _ = writeln!(s, "    {:<10} {:>14.6} (se {:.6})", c.name, c.estimate, c.std_error);
            }
        }
        let _ = writeln!(s, "selected by AIC: {}", self.selected);
        for g in &self.garma {
            let _ = writeln!(
                s,
                "{}: loglik {:.3} AIC {:.3}{}",
                g.label,
                g.loglik,
                g.aic,
                if g.converged { "" } else { " [not converged]" }
            );
            for c in &g.coefficients {
                let _ = writeln!(s, "    {:<10} {:>14.6} (se {:.6})", c.name, c.estimate, c.std_error);
            }
        }
        for p in &self.artifact_paths {
            let _ = writeln!(s, "wrote {}", p.display());
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForecastRow {
    /// 1-based position in the full series.
    pub t: usize,
    pub date: Option<NaiveDate>,
    pub actual: Option<f64>,
    pub forecast: f64,
    pub se: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRow {
    pub t: usize,
    pub date: Option<NaiveDate>,
    pub actual: f64,
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelPlot {
    pub label: String,
    pub forecast: Vec<ForecastRow>,
    pub prediction: Vec<PredictionRow>,
    pub residuals: Vec<f64>,
}

/// Everything the figure files are drawn from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlotData {
    pub values: Vec<f64>,
    pub dates: Option<Vec<NaiveDate>>,
    /// Stationary training series, with its offset into the full series.
    pub stationary: Vec<f64>,
    pub stationary_offset: usize,
    /// `(normal quantile, sorted sample value)` pairs.
    pub qq: Vec<(f64, f64)>,
    pub acf: Option<Correlogram>,
    pub pacf: Option<Correlogram>,
    pub models: Vec<ModelPlot>,
    pub selected: usize,
}

impl PlotData {
    pub fn date(&self, i: usize) -> Option<NaiveDate> {
        self.dates.as_ref().and_then(|d| d.get(i).copied())
    }
}
