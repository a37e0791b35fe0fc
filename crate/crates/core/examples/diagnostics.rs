//! Residual checks and model ranking: Ljung-Box, MAE/RMSE and AIC.
//!
//! Run with: cargo run --example diagnostics

use countcast::arma::{self, ArmaParams, ArmaSpec};
use countcast::diagnostics::{ljung_box, mae, rank_models, rmse, EvalReport};

fn main() -> countcast::Result<()> {
    let truth = ArmaParams::new(vec![0.7], vec![], 0.0, 1.0);
    let x = arma::simulate(&ArmaSpec::new(1, 0, false), &truth, 600, 21)?;
    let (train, test) = x.values().split_at(500);

    let mut reports = Vec::new();
    for spec in [ArmaSpec::new(0, 1, true), ArmaSpec::new(1, 0, true), ArmaSpec::new(2, 1, true)] {
        let fit = arma::fit(train, &spec)?;
        let resid = arma::residuals(&fit, train)?;
        let lb = ljung_box(&resid, 10, spec.p + spec.q)?;
        let pred = arma::predict_one_step(&fit, x.values(), 500)?;
        let report = EvalReport {
            model_label: fit.label(),
            mae: mae(&pred, test)?,
            rmse: rmse(&pred, test)?,
            aic: fit.aic(),
            ljung_box: lb,
        };
        println!(
            "{:<10} AIC {:>8.2}  MAE {:.3}  RMSE {:.3}  Ljung-Box Q {:>6.2} df {} p {:.4}",
            report.model_label, report.aic, report.mae, report.rmse, report.ljung_box.q_stat, report.ljung_box.df, report.ljung_box.p_value
        );
        reports.push(report);
    }

    let ranked = rank_models(&reports)?;
    let order: Vec<&str> = ranked.iter().map(|r| r.model_label.as_str()).collect();
    println!("\nranked by AIC: {}", order.join(" < "));
    println!("the MA(1) residuals keep the AR structure, so its Ljung-Box p is tiny");
    Ok(())
}
