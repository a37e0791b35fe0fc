//! Poisson GARMA with log link: simulate counts, fit, compare orders.
//!
//! Run with: cargo run --example garma_counts

use countcast::garma::{self, GarmaParams, GarmaSpec};

fn main() -> countcast::Result<()> {
    let truth_spec = GarmaSpec::new(1, 0);
    let truth = GarmaParams::new(2.0, vec![0.4], vec![]);
    let y = garma::simulate(&truth_spec, &truth, 3000, 5)?;
    println!("simulated {} counts, mean {:.2}", y.len(), y.mean());

    for spec in [GarmaSpec::new(0, 0), GarmaSpec::new(1, 0), GarmaSpec::new(1, 1)] {
        let fit = garma::fit(y.values(), &spec)?;
        print!("{:<11} loglik {:>10.2}  AIC {:>9.2}  intercept {:.4} ({:.4})", spec.label(), fit.loglik, fit.aic(), fit.intercept, fit.se.intercept);
        for (c, se) in fit.phi.iter().zip(&fit.se.phi) {
            print!("  ar {c:.4} ({se:.4})");
        }
        for (c, se) in fit.theta.iter().zip(&fit.se.theta) {
            print!("  ma {c:.4} ({se:.4})");
        }
        println!();
    }
    println!("\nintercept-only MLE is ln(mean) = {:.4}", y.mean().ln());
    println!("true GARMA(1,0): intercept 2, ar 0.4");
    Ok(())
}
