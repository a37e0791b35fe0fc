//! Augmented Dickey-Fuller test on a random walk, its first difference and a
//! trend-stationary series.
//!
//! Run with: cargo run --example unit_root

use countcast::arma::{self, ArmaParams, ArmaSpec};
use countcast::stationarity::{adf_test, is_stationary};
use countcast::TimeSeries;

fn main() -> countcast::Result<()> {
    let noise = arma::simulate(&ArmaSpec::new(0, 0, false), &ArmaParams::new(vec![], vec![], 0.0, 1.0), 500, 3)?;
    let mut level = 0.0;
    let walk: Vec<f64> = noise
        .values()
        .iter()
        .map(|e| {
            level += e;
            level
        })
        .collect();
    let walk = TimeSeries::new(walk)?;
    let trend: Vec<f64> = noise.values().iter().enumerate().map(|(t, e)| 0.05 * t as f64 + e).collect();

    let rows = [
        ("random walk", walk.values().to_vec()),
        ("differenced walk", walk.difference(1)?.values().to_vec()),
        ("trend + noise", trend),
    ];
    println!("{:<18} {:>10} {:>4} {:>8} {:>8}", "series", "statistic", "lag", "p", "clamped");
    for (name, x) in rows {
        let r = adf_test(&x, None)?;
        println!(
            "{name:<18} {:>10.4} {:>4} {:>8.4} {:>8?}  stationary at 5%: {}",
            r.statistic,
            r.lag_order,
            r.p_value,
            r.clamped,
            is_stationary(&r, 0.05)
        );
    }
    Ok(())
}
