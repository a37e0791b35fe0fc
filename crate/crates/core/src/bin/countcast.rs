use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use countcast::pipeline::{parse_order, parse_orders, run_pipeline, PipelineConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Box-Jenkins ARMA and Poisson GARMA forecasting for daily count series.
#[derive(Debug, Parser)]
#[command(name = "countcast", version)]
struct Cli {
    /// CSV file with a header row.
    #[arg(long)]
    input: PathBuf,
    /// Date column (YYYY-MM-DD). Pass an empty string to ignore dates.
    #[arg(long, default_value = "date")]
    date_col: String,
    #[arg(long, default_value = "cases")]
    value_col: String,
    #[arg(long, default_value_t = 0.9)]
    train_frac: f64,
    /// Significance level for the unit-root test.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Candidate ARMA orders, e.g. "1,1;0,5".
    #[arg(long, default_value = "1,1;0,5")]
    candidates: String,
    /// Forecast steps past the end of the training window (at least the test length).
    #[arg(long)]
    horizon: Option<usize>,
    /// GARMA order "p,q".
    #[arg(long, default_value = "1,1")]
    garma: String,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();

    let config = parse_orders(&cli.candidates)
        .and_then(|candidates| Ok((candidates, parse_order(&cli.garma)?)))
        .map(|(candidates, garma_orders)| PipelineConfig {
            input_path: cli.input,
            date_column: cli.date_col,
            value_column: cli.value_col,
            train_fraction: cli.train_frac,
            alpha: cli.alpha,
            candidates,
            forecast_horizon: cli.horizon,
            garma_orders,
            output_dir: cli.out,
            seed: cli.seed,
            ..PipelineConfig::default()
        });

    match config.and_then(|c| run_pipeline(&c)) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => match report.to_json() {
                    Ok(json) => json + "\n",
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
                Format::Text => report.to_text(),
            };
            // a closed pipe downstream is not a failure of the run
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
