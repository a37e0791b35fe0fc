//! Residual portmanteau test, information criterion, accuracy measures and
//! model ranking.

use std::cmp::Ordering;

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::correlogram::acf;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LjungBoxResult {
    pub q_stat: f64,
    pub df: usize,
    pub p_value: f64,
    pub lags_used: usize,
    pub fitted_params_adjustment: usize,
}

/// Ljung-Box `Q = n(n+2) Σ_{k=1..lags} ρ̂_k² / (n-k)` against χ² with
/// `lags - fitted_params` degrees of freedom.
pub fn ljung_box(residuals: &[f64], lags: usize, fitted_params: usize) -> Result<LjungBoxResult> {
    if lags <= fitted_params {
        return Err(Error::DegenerateDf {
            lags,
            fitted: fitted_params,
        });
    }
    let n = residuals.len();
    if n <= lags + 1 {
        return Err(Error::SeriesTooShort {
            needed: lags + 1,
            got: n,
        });
    }
    let rho = acf(residuals, lags)?.coefficients;
    let nf = n as f64;
    let q_stat = nf
        * (nf + 2.0)
        * (1..=lags)
            .map(|k| rho[k] * rho[k] / (nf - k as f64))
            .sum::<f64>();
    let df = lags - fitted_params;
    let chi2 = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    Ok(LjungBoxResult {
        q_stat,
        df,
        p_value: chi2.sf(q_stat).clamp(0.0, 1.0),
        lags_used: lags,
        fitted_params_adjustment: fitted_params,
    })
}

/// `2k - 2 ln L`.
pub fn aic(loglik: f64, k: usize) -> f64 {
    2.0 * k as f64 - 2.0 * loglik
}

fn check_pair(predicted: &[f64], actual: &[f64]) -> Result<()> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch {
            left: predicted.len(),
            right: actual.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

pub fn mae(predicted: &[f64], actual: &[f64]) -> Result<f64> {
    check_pair(predicted, actual)?;
    Ok(predicted
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a).abs())
        .sum::<f64>()
        / predicted.len() as f64)
}

/// Square root of the mean squared error.
pub fn rmse(predicted: &[f64], actual: &[f64]) -> Result<f64> {
    check_pair(predicted, actual)?;
    let mse = predicted
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a).powi(2))
        .sum::<f64>()
        / predicted.len() as f64;
    Ok(mse.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub model_label: String,
    pub mae: f64,
    pub rmse: f64,
    pub aic: f64,
    pub ljung_box: LjungBoxResult,
}

fn compare(a: &EvalReport, b: &EvalReport) -> Ordering {
    a.aic
        .total_cmp(&b.aic)
        .then(a.rmse.total_cmp(&b.rmse))
        .then(a.mae.total_cmp(&b.mae))
        .then_with(|| a.model_label.cmp(&b.model_label))
}

/// Ascending AIC; ties go to lower RMSE, then lower MAE, then label.
pub fn rank_models(reports: &[EvalReport]) -> Result<Vec<EvalReport>> {
    if reports.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = reports.to_vec();
    out.sort_by(compare);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn report(label: &str, aic: f64, rmse: f64, mae: f64) -> EvalReport {
        EvalReport {
            model_label: label.into(),
            mae,
            rmse,
            aic,
            ljung_box: LjungBoxResult {
                q_stat: 0.0,
                df: 1,
                p_value: 1.0,
                lags_used: 1,
                fitted_params_adjustment: 0,
            },
        }
    }

    #[test]
    fn aic_arithmetic() {
        assert_eq!(aic(0.0, 0), 0.0);
        assert_eq!(aic(-10.0, 2), 24.0);
    }

    #[test]
    fn accuracy_examples() {
        let zero = [0.0; 3];
        assert!((mae(&[1.0, -1.0, 2.0], &zero).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(mae(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(rmse(&[1.0, -1.0], &[0.0, 0.0]).unwrap(), 1.0);
        assert!((rmse(&[3.0, 4.0], &[0.0, 0.0]).unwrap() - 12.5f64.sqrt()).abs() < 1e-15);
        assert!(matches!(mae(&[1.0], &[]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(rmse(&[], &[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn ljung_box_on_uncorrelated_residuals() {
        // zero mean and every lag-1 product vanishes
        let lb = ljung_box(&[1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0], 1, 0)
            .unwrap();
        assert_eq!(lb.q_stat, 0.0);
        assert_eq!(lb.p_value, 1.0);
    }

    #[test]
    fn ljung_box_errors() {
        assert!(matches!(ljung_box(&[1.0, 2.0, 0.0, 3.0], 2, 2), Err(Error::DegenerateDf { .. })));
        assert!(matches!(ljung_box(&[1.0, 2.0, 0.0], 2, 0), Err(Error::SeriesTooShort { .. })));
    }

    #[test]
    fn ljung_box_chi_square_tail() {
        // Q = n(n+2)[ρ1²/(n-1)] for a single lag
        let r = [2.0, -1.0, 0.5, 1.5, -2.0, 0.3, 0.9, -0.4, 1.1, -1.3];
        let lb = ljung_box(&r, 1, 0).unwrap();
        let rho1 = acf(&r, 1).unwrap().coefficients[1];
        let q = 10.0 * 12.0 * rho1 * rho1 / 9.0;
        assert!((lb.q_stat - q).abs() < 1e-12);
        // χ²_1 survival = erfc(sqrt(q/2))
        let sf = statrs::function::erf::erfc((q / 2.0).sqrt());
        assert!((lb.p_value - sf).abs() < 1e-10);
    }

    #[test]
    fn ranking() {
        let ranked = rank_models(&[report("MA(5)", 6512.66, 1.0, 1.0), report("ARMA(1,1)", 6249.0, 2.0, 2.0)])
            .unwrap();
        assert_eq!(ranked[0].model_label, "ARMA(1,1)");

        let ranked = rank_models(&[report("b", 10.0, 2.0, 0.0), report("a", 10.0, 1.0, 5.0)]).unwrap();
        assert_eq!(ranked[0].model_label, "a");

        let single = rank_models(&[report("x", 1.0, 1.0, 1.0)]).unwrap();
        assert_eq!(single.len(), 1);
        assert!(matches!(rank_models(&[]), Err(Error::EmptyInput)));
    }

    proptest! {
        #[test]
        fn rmse_dominates_mae(e in prop::collection::vec(-1e3f64..1e3, 1..50)) {
            let zero = vec![0.0; e.len()];
            prop_assert!(rmse(&e, &zero).unwrap() >= mae(&e, &zero).unwrap() - 1e-9);
        }

        #[test]
        fn symmetric_and_shift_invariant(
            pairs in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 1..30),
            shift in -1e3f64..1e3,
        ) {
            let (p, a): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            let ps: Vec<f64> = p.iter().map(|v| v + shift).collect();
            let as_: Vec<f64> = a.iter().map(|v| v + shift).collect();
            prop_assert!((mae(&p, &a).unwrap() - mae(&a, &p).unwrap()).abs() < 1e-9);
            prop_assert!((rmse(&p, &a).unwrap() - rmse(&ps, &as_).unwrap()).abs() < 1e-6);
        }

        #[test]
        fn ljung_box_scale_invariant(r in prop::collection::vec(-10.0f64..10.0, 20..60), a in 0.1f64..50.0) {
            prop_assume!(r.iter().any(|v| (v - r[0]).abs() > 1e-3));
            let scaled: Vec<f64> = r.iter().map(|v| v * a).collect();
            let x = ljung_box(&r, 5, 1).unwrap().q_stat;
            let y = ljung_box(&scaled, 5, 1).unwrap().q_stat;
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x));
        }

        #[test]
        fn aic_monotone(ll in -1e4f64..1e4, d in 0.001f64..100.0, k in 0usize..20) {
            prop_assert!(aic(ll + d, k) < aic(ll, k));
            prop_assert!(aic(ll, k + 1) > aic(ll, k));
        }
    }
}
