//! Augmented Dickey-Fuller unit-root test (constant + linear trend) with
//! p-values interpolated from the tabulated Dickey-Fuller τ distribution.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

/// Sample sizes of the quantile table rows; the last row stands for n = ∞.
const TABLE_N: [f64; 6] = [25.0, 50.0, 100.0, 250.0, 500.0, 100_000.0];
const TABLE_P: [f64; 8] = [0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99];
/// Quantiles of τ for the regression with constant and trend, one column per
/// entry of `TABLE_P`.
const TABLE_TAU: [[f64; 8]; 6] = [
    [-4.38, -3.95, -3.60, -3.24, -1.14, -0.80, -0.50, -0.15],
    [-4.15, -3.80, -3.50, -3.18, -1.19, -0.87, -0.58, -0.24],
    [-4.04, -3.73, -3.45, -3.15, -1.22, -0.90, -0.62, -0.28],
    [-3.99, -3.69, -3.43, -3.13, -1.23, -0.92, -0.64, -0.31],
    [-3.98, -3.68, -3.42, -3.13, -1.24, -0.93, -0.65, -0.32],
    [-3.96, -3.66, -3.41, -3.12, -1.25, -0.94, -0.66, -0.33],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clamp {
    None,
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdfRegression {
    ConstantTrend,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdfResult {
    pub statistic: f64,
    pub lag_order: usize,
    /// Interpolated p-value, clamped to the table range `[0.01, 0.99]`.
    pub p_value: f64,
    pub clamped: Clamp,
    pub regression: AdfRegression,
}

/// `floor((n - 1)^(1/3))`.
pub fn default_lag(n: usize) -> usize {
    ((n.saturating_sub(1)) as f64).cbrt().floor() as usize
}

/// Runs the ADF regression
/// `Δx_t = α + β t + γ x_{t-1} + Σ δ_i Δx_{t-i} + ε_t` and returns the
/// t-ratio of `γ` with its table p-value.
pub fn adf_test(values: &[f64], lag_order: Option<usize>) -> Result<AdfResult> {
    let n = values.len();
    let k = lag_order.unwrap_or_else(|| default_lag(n));
    if n < k + 10 {
        return Err(Error::SeriesTooShort {
            needed: k + 9,
            got: n,
        });
    }
    let dx: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let m = dx.len();
    let rows = m - k;
    let cols = 3 + k;
    // row r regresses dx[t] on (1, t, x[t], dx[t-1..t-k]) with t = r + k
    let design = DMatrix::from_fn(rows, cols, |r, c| {
        let t = r + k;
        match c {
            0 => 1.0,
            1 => (t + 1) as f64,
            2 => values[t],
            _ => dx[t - (c - 2)],
        }
    });
    let response = DVector::from_fn(rows, |r, _| dx[r + k]);
    let (coef, se) = ols(design, response)?;
    let statistic = coef[2] / se[2];
    let (p_value, clamped) = p_value(statistic, m);
    Ok(AdfResult {
        statistic,
        lag_order: k,
        p_value,
        clamped,
        regression: AdfRegression::ConstantTrend,
    })
}

/// True iff the unit root is rejected, `p_value < alpha`.
pub fn is_stationary(result: &AdfResult, alpha: f64) -> bool {
    result.p_value < alpha
}

/// Coefficients and their standard errors.
fn ols(x: DMatrix<f64>, y: DVector<f64>) -> Result<(DVector<f64>, DVector<f64>)> {
    let (rows, cols) = x.shape();
    if rows <= cols {
        return Err(Error::SingularRegression);
    }
    let qr = x.clone().qr();
    let r = qr.r();
    let scale = (0..cols).map(|i| r[(i, i)].abs()).fold(0.0, f64::max);
    if (0..cols).any(|i| r[(i, i)].abs() <= 1e-10 * scale) {
        return Err(Error::SingularRegression);
    }
    let qty = qr.q().transpose() * &y;
    let coef = r
        .solve_upper_triangular(&qty)
        .ok_or(Error::SingularRegression)?;
    let resid = &y - &x * &coef;
    let sigma2 = resid.norm_squared() / (rows - cols) as f64;
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(cols, cols))
        .ok_or(Error::SingularRegression)?;
    let xtx_inv = &r_inv * r_inv.transpose();
    let se = DVector::from_fn(cols, |i, _| (sigma2 * xtx_inv[(i, i)]).sqrt());
    Ok((coef, se))
}

/// Piecewise-linear interpolation with flat extrapolation; `xs` ascending.
fn interpolate(xs: &[f64], ys: &[f64], at: f64) -> f64 {
    if at <= xs[0] {
        return ys[0];
    }
    let last = xs.len() - 1;
    if at >= xs[last] {
        return ys[last];
    }
    let i = xs.windows(2).position(|w| at < w[1]).unwrap_or(last - 1);
    let w = (at - xs[i]) / (xs[i + 1] - xs[i]);
    ys[i] + w * (ys[i + 1] - ys[i])
}

/// Interpolates the τ quantiles at sample size `n`, then the probability at
/// `statistic`.
fn p_value(statistic: f64, n: usize) -> (f64, Clamp) {
    let quantiles: Vec<f64> = (0..TABLE_P.len())
        .map(|j| {
            let column: Vec<f64> = TABLE_TAU.iter().map(|row| row[j]).collect();
            interpolate(&TABLE_N, &column, n as f64)
        })
        .collect();
    let clamped = if statistic < quantiles[0] {
        Clamp::Low
    } else if statistic > quantiles[quantiles.len() - 1] {
        Clamp::High
    } else {
        Clamp::None
    };
    (interpolate(&quantiles, &TABLE_P, statistic), clamped)
}
