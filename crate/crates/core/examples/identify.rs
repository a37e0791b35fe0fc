//! Model identification from the sample ACF and PACF of simulated AR(2) and
//! MA(2) processes.
//!
//! Run with: cargo run --example identify

use countcast::arma::{self, ArmaParams, ArmaSpec};
use countcast::correlogram::{acf, classify_pattern, pacf, Correlogram};

fn show(name: &str, c: &Correlogram) {
    let row: Vec<String> = c.lags().take(8).map(|(lag, v)| format!("{lag}:{v:+.2}")).collect();
    println!("  {name:<4} {}  -> {:?}", row.join(" "), classify_pattern(c));
}

fn main() -> countcast::Result<()> {
    let n = 2000;
    let cases = [
        ("AR(2) φ = (0.5, 0.3)", ArmaSpec::new(2, 0, false), ArmaParams::new(vec![0.5, 0.3], vec![], 0.0, 1.0)),
        ("MA(2) θ = (-0.6, -0.4)", ArmaSpec::new(0, 2, false), ArmaParams::new(vec![], vec![-0.6, -0.4], 0.0, 1.0)),
    ];
    for (name, spec, params) in cases {
        let x = arma::simulate(&spec, &params, n, 11)?;
        // a short window: with many lags a stray 5% exceedance far out moves the cut-off
        let max_lag = 8;
        let a = acf(x.values(), max_lag)?;
        let p = pacf(x.values(), max_lag)?;
        println!("{name}, n = {n}, band ±{:.3}", a.band);
        show("ACF", &a);
        show("PACF", &p);
    }
    println!("\nAn AR(p) shows a PACF cut-off at p; an MA(q) shows an ACF cut-off at q.");
    println!("The cut-off is the last lag outside the band, so spurious exceedances count too.");
    Ok(())
}
