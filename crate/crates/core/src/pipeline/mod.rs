//! End-to-end run: ingest, split, difference until stationary, identify,
//! fit and evaluate the candidate ARMA orders, fit the count model, and
//! write the report and figure data.

mod config;
mod ingest;
mod plot;
mod report;
mod svg;

use std::path::PathBuf;

use statrs::distribution::{ContinuousCDF, Normal};

use crate::arma::{self, ArmaFit, ArmaSpec};
use crate::correlogram::{acf, classify_pattern, default_max_lag, pacf};
use crate::diagnostics::{self, ljung_box, rank_models, EvalReport};
use crate::error::{Error, Result};
use crate::garma::{self, GarmaSpec};
use crate::series::{SplitSpec, TimeSeries};
use crate::stationarity::{adf_test, is_stationary};

pub use config::{parse_order, parse_orders, PipelineConfig};
pub use ingest::{ingest_csv, ingest_reader};
pub use plot::emit_plot_data;
pub use report::{
    Accuracy, CoefficientRow, ForecastRow, GarmaTable, Identification, ModelPlot, ModelReport,
    PlotData, PredictionRow, RunReport, SCHEMA_VERSION,
};
pub use svg::{Chart, Style};

/// Most differencing passes tried before giving up on stationarity.
pub const MAX_DIFFERENCES: usize = 2;

pub const REPORT_FILE: &str = "report.json";

/// Reads the input file, runs every stage, and writes the report and figure
/// data into the configured output directory.
pub fn run_pipeline(config: &PipelineConfig) -> Result<RunReport> {
    config.validate().map_err(|e| e.at_stage("config"))?;
    let series = ingest_csv(&config.input_path, Some(&config.date_column), &config.value_column)
        .map_err(|e| e.at_stage("ingest"))?;
    let mut report = analyze(&series, config)?;
    write_outputs(&mut report, config)?;
    Ok(report)
}

/// Writes the figure files and `report.json`, recording their paths.
pub fn write_outputs(report: &mut RunReport, config: &PipelineConfig) -> Result<()> {
    let wrap = |e: Error| e.at_stage("output");
    std::fs::create_dir_all(&config.output_dir).map_err(|e| wrap(e.into()))?;
    let mut paths = emit_plot_data(report, &config.output_dir).map_err(wrap)?;
    let report_path = config.output_dir.join(REPORT_FILE);
    paths.push(report_path.clone());
    report.artifact_paths = paths;
    let json = report.to_json().map_err(|e| wrap(e.into()))?;
    std::fs::write(&report_path, json + "\n").map_err(|e| wrap(e.into()))?;
    Ok(())
}

/// Runs every numerical stage on an in-memory series. Nothing is written.
pub fn analyze(series: &TimeSeries, config: &PipelineConfig) -> Result<RunReport> {
    config.validate().map_err(|e| e.at_stage("config"))?;
    let summary = series.summarize().map_err(|e| e.at_stage("summarize"))?;
    let (train, test) = series
        .split(config.train_fraction)
        .map_err(|e| e.at_stage("split"))?;
    let split = SplitSpec::new(config.train_fraction, series.len()).map_err(|e| e.at_stage("split"))?;

    let needed = config
        .candidates
        .iter()
        .map(|&(p, q)| ArmaSpec::new(p, q, true).n_coefficients() * 5)
        .max()
        .unwrap_or(0);
    if train.len() < needed {
        return Err(Error::TooFewObservations {
            needed,
            got: train.len(),
        }
        .at_stage("fit"));
    }

    // stationarity
    let stage = |e: Error| e.at_stage("stationarity");
    let adf_before = adf_test(train.values(), None).map_err(stage)?;
    let mut stationary = train.clone();
    let mut adf_after = adf_before;
    while !is_stationary(&adf_after, config.alpha) {
        if stationary.d_applied() == MAX_DIFFERENCES {
            return Err(stage(Error::NotStationary {
                max_d: MAX_DIFFERENCES,
                p_value: adf_after.p_value,
            }));
        }
        stationary = stationary.difference(1).map_err(stage)?;
        adf_after = adf_test(stationary.values(), None).map_err(stage)?;
    }
    let d = stationary.d_applied();

    // identification
    let stage = |e: Error| e.at_stage("identify");
    let max_lag = default_max_lag(stationary.len());
    let acf_c = acf(stationary.values(), max_lag).map_err(stage)?;
    let pacf_c = pacf(stationary.values(), max_lag).map_err(stage)?;
    let identification = Identification {
        max_lag,
        acf_pattern: classify_pattern(&acf_c),
        pacf_pattern: classify_pattern(&pacf_c),
    };

    // fitting, one thread per candidate
    let specs: Vec<ArmaSpec> = config
        .candidates
        .iter()
        .map(|&(p, q)| ArmaSpec::new(p, q, true))
        .collect();
    let fits: Vec<Result<ArmaFit>> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| scope.spawn(|| arma::fit(stationary.values(), spec)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fit thread panicked"))
            .collect()
    });

    // evaluation
    let full_stationary = series.difference(d).map_err(|e| e.at_stage("evaluate"))?;
    let horizon = config.forecast_horizon.unwrap_or(0).max(test.len());
    let mut models = Vec::with_capacity(fits.len());
    let mut model_plots = Vec::with_capacity(fits.len());
    for fit in fits {
        let fit = fit.map_err(|e| e.at_stage("fit"))?;
        let (model, plot) = evaluate(&fit, series, &train, &stationary, &full_stationary, horizon, config)?;
        models.push(model);
        model_plots.push(plot);
    }
    let evals: Vec<EvalReport> = models.iter().map(|m| m.eval.clone()).collect();
    let ranked = rank_models(&evals).map_err(|e| e.at_stage("rank"))?;
    let ranking: Vec<String> = ranked.iter().map(|r| r.model_label.clone()).collect();
    let selected = ranking[0].clone();
    let selected_idx = models.iter().position(|m| m.label == selected).unwrap_or(0);

    // count model on the raw training counts
    let mut garma_orders = vec![config.garma_orders];
    if config.garma_orders != (1, 0) {
        garma_orders.push((1, 0));
    }
    let mut garma_tables = Vec::new();
    for (p, q) in garma_orders {
        let fit = garma::fit(train.values(), &GarmaSpec::new(p, q)).map_err(|e| e.at_stage("garma"))?;
        garma_tables.push(GarmaTable::from(&fit));
    }

    let plot = PlotData {
        values: series.values().to_vec(),
        dates: series.index().map(<[_]>::to_vec),
        stationary: stationary.values().to_vec(),
        stationary_offset: d,
        qq: normal_qq(stationary.values()),
        acf: Some(acf_c),
        pacf: Some(pacf_c),
        models: model_plots,
        selected: selected_idx,
    };

    Ok(RunReport {
        schema: SCHEMA_VERSION,
        config: config.clone(),
        n_obs: series.len(),
        summary,
        split,
        adf_before,
        adf_after,
        d_used: d,
        identification,
        models,
        ranking,
        selected,
        garma: garma_tables,
        artifact_paths: Vec::<PathBuf>::new(),
        plot,
    })
}

fn evaluate(
    fit: &ArmaFit,
    series: &TimeSeries,
    train: &TimeSeries,
    stationary: &TimeSeries,
    full_stationary: &TimeSeries,
    horizon: usize,
    config: &PipelineConfig,
) -> Result<(ModelReport, ModelPlot)> {
    let stage = |e: Error| e.at_stage("evaluate");
    let d = stationary.d_applied();
    let n_train = train.len();
    let levels = series.values();
    let w = full_stationary.values();
    let actual = &levels[n_train..];

    // rolling one-step predictions, mapped back to levels: x̂_t = ŵ_t + x_t - w_t
    let w_hat = arma::predict_one_step(fit, w, n_train - d).map_err(stage)?;
    let one_step_pred: Vec<f64> = w_hat
        .iter()
        .enumerate()
        .map(|(i, wh)| {
            let t = n_train + i;
            wh + levels[t] - w[t - d]
        })
        .collect();

    // multi-step forecasts integrated from the end of the training window
    let fc = arma::forecast(fit, stationary.values(), horizon).map_err(stage)?;
    let mut fc_levels: Vec<f64> = fc.iter().map(|f| f.point).collect();
    let mut tails = vec![train.values().to_vec()];
    for k in 1..d {
        let prev = &tails[k - 1];
        tails.push(prev.windows(2).map(|p| p[1] - p[0]).collect());
    }
    for k in (0..d).rev() {
        let mut acc = *tails[k].last().expect("non-empty training series");
        for v in fc_levels.iter_mut() {
            acc += *v;
            *v = acc;
        }
    }
    let fc_se = integrated_se(fit, d, horizon);
    let n_test = actual.len();

    let one_step = Accuracy {
        mae: diagnostics::mae(&one_step_pred, actual).map_err(stage)?,
        rmse: diagnostics::rmse(&one_step_pred, actual).map_err(stage)?,
    };
    let h_step = Accuracy {
        mae: diagnostics::mae(&fc_levels[..n_test], actual).map_err(stage)?,
        rmse: diagnostics::rmse(&fc_levels[..n_test], actual).map_err(stage)?,
    };

    let resid = arma::residuals(fit, stationary.values()).map_err(stage)?;
    let lb = ljung_box(&resid, config.ljung_box_lags, fit.spec.p + fit.spec.q)
        .map_err(|e| e.at_stage("diagnose"))?;

    let label = fit.label();
    let aic = fit.aic();
    let eval = EvalReport {
        model_label: label.clone(),
        mae: one_step.mae,
        rmse: one_step.rmse,
        aic,
        ljung_box: lb,
    };
    let model = ModelReport {
        label: label.clone(),
        p: fit.spec.p,
        q: fit.spec.q,
        include_mean: fit.spec.include_mean,
        coefficients: ModelReport::coefficient_rows(fit),
        sigma2: fit.sigma2,
        loglik: fit.loglik,
        n_params: fit.spec.n_params(),
        aic,
        converged: fit.converged,
        one_step,
        h_step,
        ljung_box: lb,
        eval,
    };

    let date = |i: usize| series.index().and_then(|idx| idx.get(i).copied());
    let forecast = fc_levels
        .iter()
        .zip(&fc_se)
        .enumerate()
        .map(|(i, (&f, &se))| {
            let pos = n_train + i;
            ForecastRow {
                t: pos + 1,
                date: date(pos),
                actual: levels.get(pos).copied(),
                forecast: f,
                se,
            }
        })
        .collect();
    let prediction = one_step_pred
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let pos = n_train + i;
            PredictionRow {
                t: pos + 1,
                date: date(pos),
                actual: levels[pos],
                predicted: p,
            }
        })
        .collect();
    let plot = ModelPlot {
        label,
        forecast,
        prediction,
        residuals: resid,
    };
    Ok((model, plot))
}

/// Forecast standard errors on the level scale after `d` integrations:
/// the ψ-weights are cumulatively summed `d` times.
fn integrated_se(fit: &ArmaFit, d: usize, h: usize) -> Vec<f64> {
    let mut psi = arma::psi_weights(&fit.phi, &fit.theta, h);
    for _ in 0..d {
        let mut acc = 0.0;
        for v in psi.iter_mut() {
            acc += *v;
            *v = acc;
        }
    }
    let mut cum = 0.0;
    psi.iter()
        .take(h)
        .map(|p| {
            cum += p * p;
            (fit.sigma2 * cum).sqrt()
        })
        .collect()
}

/// Normal quantiles at `(i - 0.5) / n` against the sorted sample.
pub fn normal_qq(values: &[f64]) -> Vec<(f64, f64)> {
    let normal = Normal::standard();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, v)| (normal.inverse_cdf((i as f64 + 0.5) / n), v))
        .collect()
}
