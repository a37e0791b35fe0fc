#![allow(dead_code)]

use std::fmt::Write;
use std::path::{Path, PathBuf};

use chrono::{Days, NaiveDate};
use countcast::arma::{self, ArmaParams, ArmaSpec};
use countcast::garma::{self, GarmaParams, GarmaSpec};

/// Integrated ARMA(1,1) shocks on a logistic curve, rounded to counts.
pub fn epidemic_counts(n: usize, seed: u64) -> Vec<f64> {
    let params = ArmaParams::new(vec![0.5], vec![0.3], 0.0, 120.0 * 120.0);
    let shocks = arma::simulate(&ArmaSpec::new(1, 1, false), &params, n, seed).unwrap();
    let mut walk = 0.0;
    shocks
        .values()
        .iter()
        .enumerate()
        .map(|(t, e)| {
            walk += e;
            let curve = 5000.0 / (1.0 + (-(t as f64 - 0.6 * n as f64) / 30.0).exp());
            (curve + walk).max(0.0).round()
        })
        .collect()
}

/// iid Poisson counts with the given mean.
pub fn poisson_counts(n: usize, mean: f64, seed: u64) -> Vec<f64> {
    let params = GarmaParams::new(mean.ln(), vec![], vec![]);
    garma::simulate(&GarmaSpec::new(0, 0), &params, n, seed)
        .unwrap()
        .values()
        .to_vec()
}

pub fn write_csv(dir: &Path, name: &str, values: &[f64]) -> PathBuf {
    let start = NaiveDate::from_ymd_opt(2020, 3, 2).unwrap();
    let mut text = String::from("date,cases\n");
    for (i, v) in values.iter().enumerate() {
        writeln!(text, "{},{v}", start + Days::new(i as u64)).unwrap();
    }
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}
