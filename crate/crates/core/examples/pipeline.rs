//! Full pipeline on a synthetic daily case series: writes the input CSV,
//! runs every stage, and leaves the report and figure files on disk.
//!
//! Run with: cargo run --example pipeline [output-dir]

use std::fmt::Write as _;
use std::path::PathBuf;

use chrono::{Days, NaiveDate};
use countcast::arma::{self, ArmaParams, ArmaSpec};
use countcast::pipeline::{run_pipeline, PipelineConfig};

fn synthetic_cases(n: usize) -> countcast::Result<Vec<f64>> {
    // integrated ARMA(1,1) increments on top of a rising then flattening curve
    let spec = ArmaSpec::new(1, 1, false);
    let params = ArmaParams::new(vec![0.5], vec![0.3], 0.0, 150.0 * 150.0);
    let shocks = arma::simulate(&spec, &params, n, 2020)?;
    let mut walk = 0.0;
    Ok(shocks
        .values()
        .iter()
        .enumerate()
        .map(|(t, e)| {
            walk += e;
            let curve = 6000.0 / (1.0 + (-(t as f64 - 250.0) / 40.0).exp());
            (curve + walk).max(0.0).round()
        })
        .collect())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("countcast-example"));
    std::fs::create_dir_all(&out)?;

    let start = NaiveDate::from_ymd_opt(2020, 3, 2).expect("valid date");
    let mut csv = String::from("date,cases\n");
    for (i, v) in synthetic_cases(425)?.iter().enumerate() {
        writeln!(csv, "{},{v}", start + Days::new(i as u64))?;
    }
    let input = out.join("cases.csv");
    std::fs::write(&input, csv)?;

    let config = PipelineConfig {
        input_path: input,
        output_dir: out.clone(),
        forecast_horizon: Some(60),
        ..PipelineConfig::default()
    };
    let report = run_pipeline(&config)?;
    print!("{}", report.to_text());
    println!("\nselected {} with AIC {:.2}", report.selected, report.selected_model().aic);
    Ok(())
}
