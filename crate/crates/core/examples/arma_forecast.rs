//! Fit an ARMA(1,1) by exact maximum likelihood, then forecast.
//!
//! Run with: cargo run --example arma_forecast

use countcast::arma::{self, ArmaParams, ArmaSpec};

fn main() -> countcast::Result<()> {
    let spec = ArmaSpec::new(1, 1, true);
    let truth = ArmaParams::new(vec![0.6], vec![-0.3], 10.0, 4.0);
    let x = arma::simulate(&spec, &truth, 1500, 7)?;

    let fit = arma::fit(x.values(), &spec)?;
    println!("{} fitted on {} observations (converged: {}, {} iterations)", fit.label(), fit.n_obs, fit.converged, fit.iterations);
    println!("  ar1   {:>8.4}  se {:.4}   (true 0.6)", fit.phi[0], fit.se.phi[0]);
    println!("  ma1   {:>8.4}  se {:.4}   (true -0.3, subtractive sign)", fit.theta[0], fit.se.theta[0]);
    println!("  mean  {:>8.4}  se {:.4}   (true 10)", fit.mean, fit.se.mean.unwrap_or(f64::NAN));
    println!("  σ²    {:>8.4}  se {:.4}   (true 4)", fit.sigma2, fit.se.sigma2);
    println!("  loglik {:.3}, AIC {:.3}", fit.loglik, fit.aic());
    println!("  additive-sign MA: {:?}", fit.theta_additive());

    println!("\nforecasts from the end of the series:");
    for (h, f) in arma::forecast(&fit, x.values(), 8)?.iter().enumerate() {
        println!("  h={:<2} {:>8.3} ± {:.3}", h + 1, f.point, 1.96 * f.se);
    }

    let one_step = arma::predict_one_step(&fit, x.values(), x.len() - 5)?;
    let tail = &x.values()[x.len() - 5..];
    println!("\none-step predictions over the last five points:");
    for (p, a) in one_step.iter().zip(tail) {
        println!("  predicted {p:>8.3}  actual {a:>8.3}");
    }
    Ok(())
}
