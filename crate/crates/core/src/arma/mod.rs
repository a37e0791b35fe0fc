//! AR(p), MA(q) and ARMA(p, q): simulation, exact Gaussian likelihood,
//! maximum-likelihood fitting, forecasting and residuals.
//!
//! The MA coefficients follow the subtractive convention
//!
//! ```text
//! X_t - μ = φ_1 (X_{t-1} - μ) + ... + φ_p (X_{t-p} - μ) + e_t - θ_1 e_{t-1} - ... - θ_q e_{t-q}
//! ```
//!
//! Packages that write the MA part as `e_t + θ_1 e_{t-1} + ...` use the
//! negated coefficients; see [`ArmaFit::theta_additive`].

mod kalman;
mod transform;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::optim::{self, BfgsOptions};
use crate::series::TimeSeries;
use kalman::StateSpace;

pub use transform::is_stable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArmaSpec {
    pub p: usize,
    pub q: usize,
    pub include_mean: bool,
}

impl ArmaSpec {
    pub const fn new(p: usize, q: usize, include_mean: bool) -> Self {
        Self { p, q, include_mean }
    }

    /// Estimated coefficients, excluding the innovation variance.
    pub fn n_coefficients(&self) -> usize {
        self.p + self.q + usize::from(self.include_mean)
    }

    /// Parameter count for AIC: coefficients, the mean if present, and σ².
    pub fn n_params(&self) -> usize {
        self.n_coefficients() + 1
    }

    pub fn label(&self) -> String {
        match (self.p, self.q) {
            (0, q) if q > 0 => format!("MA({q})"),
            (p, 0) if p > 0 => format!("AR({p})"),
            (p, q) => format!("ARMA({p},{q})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArmaParams {
    pub phi: Vec<f64>,
    /// Subtractive-convention MA coefficients.
    pub theta: Vec<f64>,
    pub mean: f64,
    pub sigma2: f64,
}

impl ArmaParams {
    pub fn new(phi: Vec<f64>, theta: Vec<f64>, mean: f64, sigma2: f64) -> Self {
        Self {
            phi,
            theta,
            mean,
            sigma2,
        }
    }

    fn check(&self, spec: &ArmaSpec) -> Result<()> {
        if self.phi.len() != spec.p || self.theta.len() != spec.q {
            return Err(Error::InvalidParams(format!(
                "{} expects {} AR and {} MA coefficients, got {} and {}",
                spec.label(),
                spec.p,
                spec.q,
                self.phi.len(),
                self.theta.len()
            )));
        }
        if !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "innovation variance must be positive, got {}",
                self.sigma2
            )));
        }
        if !is_stable(&self.phi) {
            return Err(Error::NonStationaryParams);
        }
        if !is_stable(&self.theta) {
            return Err(Error::NonInvertibleParams);
        }
        Ok(())
    }

    fn effective_mean(&self, spec: &ArmaSpec) -> f64 {
        if spec.include_mean {
            self.mean
        } else {
            0.0
        }
    }

    fn state_space(&self) -> Result<StateSpace> {
        let additive: Vec<f64> = self.theta.iter().map(|t| -t).collect();
        StateSpace::new(&self.phi, &additive).ok_or(Error::NonStationaryParams)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArmaStdErrors {
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
    pub mean: Option<f64>,
    pub sigma2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArmaFit {
    pub spec: ArmaSpec,
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
    pub mean: f64,
    pub sigma2: f64,
    pub loglik: f64,
    pub se: ArmaStdErrors,
    pub n_obs: usize,
    pub converged: bool,
    pub iterations: usize,
}

impl ArmaFit {
    pub fn params(&self) -> ArmaParams {
        ArmaParams::new(self.phi.clone(), self.theta.clone(), self.mean, self.sigma2)
    }

    /// MA coefficients in the additive convention `e_t + θ_1 e_{t-1} + ...`.
    pub fn theta_additive(&self) -> Vec<f64> {
        self.theta.iter().map(|t| -t).collect()
    }

    pub fn aic(&self) -> f64 {
        crate::diagnostics::aic(self.loglik, self.spec.n_params())
    }

    pub fn label(&self) -> String {
        self.spec.label()
    }

    /// Builds a fit record from known parameters, e.g. to forecast with
    /// the true model.
    pub fn from_params(values: &[f64], spec: ArmaSpec, params: ArmaParams) -> Result<Self> {
        let ll = loglik(values, &spec, &params)?;
        Ok(Self {
            spec,
            se: ArmaStdErrors {
                phi: vec![f64::NAN; spec.p],
                theta: vec![f64::NAN; spec.q],
                mean: spec.include_mean.then_some(f64::NAN),
                sigma2: f64::NAN,
            },
            phi: params.phi,
            theta: params.theta,
            mean: params.mean,
            sigma2: params.sigma2,
            loglik: ll,
            n_obs: values.len(),
            converged: true,
            iterations: 0,
        })
    }
}

/// Draws `n` observations after a burn-in of `10 (p + q + 1)` discarded samples.
pub fn simulate(spec: &ArmaSpec, params: &ArmaParams, n: usize, seed: u64) -> Result<TimeSeries> {
    params.check(spec)?;
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let mean = params.effective_mean(spec);
    let burn = 10 * (spec.p + spec.q + 1);
    let total = burn + n;
    let sd = params.sigma2.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e: Vec<f64> = (0..total)
        .map(|_| sd * Distribution::<f64>::sample(&StandardNormal, &mut rng))
        .collect();
    let mut y = vec![0.0; total];
    for t in 0..total {
        let mut v = e[t];
        for (i, phi) in params.phi.iter().enumerate() {
            if t > i {
                v += phi * y[t - i - 1];
            }
        }
        for (j, theta) in params.theta.iter().enumerate() {
            if t > j {
                v -= theta * e[t - j - 1];
            }
        }
        y[t] = v;
    }
    TimeSeries::new(y[burn..].iter().map(|v| v + mean).collect())
}

/// Exact Gaussian log-likelihood of `values` under the given parameters.
pub fn loglik(values: &[f64], spec: &ArmaSpec, params: &ArmaParams) -> Result<f64> {
    params.check(spec)?;
    let need = spec.p + spec.q + 1;
    if values.len() < need {
        return Err(Error::TooFewObservations {
            needed: need,
            got: values.len(),
        });
    }
    let ss = params.state_space()?;
    let mean = params.effective_mean(spec);
    let y: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let out = ss.filter(&y);
    let n = y.len() as f64;
    Ok(-0.5
        * (n * (2.0 * std::f64::consts::PI * params.sigma2).ln()
            + out.sumlog
            + out.ssq / params.sigma2))
}

/// Profile log-likelihood with σ² concentrated out; also returns σ̂².
fn profile_loglik(y: &[f64], phi: &[f64], theta: &[f64], mean: f64) -> Option<(f64, f64)> {
    let additive: Vec<f64> = theta.iter().map(|t| -t).collect();
    let ss = StateSpace::new(phi, &additive)?;
    let demeaned: Vec<f64> = y.iter().map(|v| v - mean).collect();
    let out = ss.filter(&demeaned);
    let n = y.len() as f64;
    let sigma2 = out.ssq / n;
    if !(sigma2 > 0.0 && sigma2.is_finite() && out.sumlog.is_finite()) {
        return None;
    }
    let ll = -0.5 * (n * (2.0 * std::f64::consts::PI * sigma2).ln() + out.sumlog + n);
    Some((ll, sigma2))
}

/// Conditional sum of squares objective, `0.5 ln(σ̂²_css)`, conditioning on the first `p` values.
fn css_objective(y: &[f64], phi: &[f64], theta: &[f64], mean: f64) -> f64 {
    let p = phi.len();
    let mut e = vec![0.0; y.len()];
    let mut ssq = 0.0;
    for t in p..y.len() {
        let mut v = y[t] - mean;
        for (i, a) in phi.iter().enumerate() {
            v -= a * (y[t - i - 1] - mean);
        }
        for (j, b) in theta.iter().enumerate() {
            if t > j {
                v += b * e[t - j - 1];
            }
        }
        e[t] = v;
        ssq += v * v;
    }
    let count = (y.len() - p) as f64;
    0.5 * (ssq / count).ln()
}

/// Layout of the unconstrained optimization vector:
/// `[u_phi (p), u_theta (q), m]`, with `mean = center + scale * m`.
struct Layout {
    p: usize,
    q: usize,
    include_mean: bool,
    center: f64,
    scale: f64,
}

impl Layout {
    fn unpack(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>, f64) {
        let phi = transform::from_unconstrained(&x[..self.p]);
        let theta = transform::from_unconstrained(&x[self.p..self.p + self.q]);
        let mean = if self.include_mean {
            self.center + self.scale * x[self.p + self.q]
        } else {
            0.0
        };
        (phi, theta, mean)
    }
}

/// Maximum-likelihood fit.
///
/// Starts from a conditional-sum-of-squares fit, then maximizes the exact
/// likelihood over the stationary and invertible region (parameterized by
/// partial autocorrelations). σ² is concentrated out of the likelihood and
/// reported at its closed-form optimum. Standard errors come from the
/// numerical Hessian in the natural parameters.
pub fn fit(values: &[f64], spec: &ArmaSpec) -> Result<ArmaFit> {
    fit_with(values, spec, &BfgsOptions::default())
}

pub fn fit_with(values: &[f64], spec: &ArmaSpec, opts: &BfgsOptions) -> Result<ArmaFit> {
    let n = values.len();
    let need = 5 * (spec.p + spec.q + 1);
    if n < need {
        return Err(Error::TooFewObservations { needed: need, got: n });
    }
    let center = values.iter().sum::<f64>() / n as f64;
    let sd = (values.iter().map(|v| (v - center).powi(2)).sum::<f64>() / n as f64).sqrt();
    if sd.is_nan() || sd <= 0.0 {
        return Err(Error::ConstantSeries);
    }
    let layout = Layout {
        p: spec.p,
        q: spec.q,
        include_mean: spec.include_mean,
        center,
        scale: sd,
    };
    let dim = spec.n_coefficients();

    let css = |x: &[f64]| {
        let (phi, theta, mean) = layout.unpack(x);
        css_objective(values, &phi, &theta, mean)
    };
    let start = optim::minimize(css, &vec![0.0; dim], opts);

    let neg_ll = |x: &[f64]| {
        let (phi, theta, mean) = layout.unpack(x);
        match profile_loglik(values, &phi, &theta, mean) {
            Some((ll, _)) => -ll,
            None => f64::INFINITY,
        }
    };
    // CSS can land on an MA unit root, which the exact likelihood rejects.
    let init = if neg_ll(&start.x).is_finite() {
        start.x
    } else {
        vec![0.0; dim]
    };
    let ml = optim::minimize(neg_ll, &init, opts);

    let (phi, theta, mean) = layout.unpack(&ml.x);
    let (ll, sigma2) = profile_loglik(values, &phi, &theta, mean)
        .ok_or_else(|| Error::NumericalDegeneracy("likelihood not finite at optimum".into()))?;

    let natural = |x: &[f64]| {
        let phi = &x[..spec.p];
        let theta = &x[spec.p..spec.p + spec.q];
        let mean = if spec.include_mean { x[spec.p + spec.q] } else { 0.0 };
        if !is_stable(phi) || !is_stable(theta) {
            return f64::NAN;
        }
        profile_loglik(values, phi, theta, mean).map_or(f64::NAN, |(l, _)| -l)
    };
    let mut at: Vec<f64> = phi.iter().chain(&theta).copied().collect();
    if spec.include_mean {
        at.push(mean);
    }
    let se = if dim > 0 {
        optim::standard_errors(&optim::hessian(&natural, &at))
    } else {
        Vec::new()
    };

    Ok(ArmaFit {
        spec: *spec,
        se: ArmaStdErrors {
            phi: se[..spec.p].to_vec(),
            theta: se[spec.p..spec.p + spec.q].to_vec(),
            mean: spec.include_mean.then(|| se[spec.p + spec.q]),
            sigma2: sigma2 * (2.0 / n as f64).sqrt(),
        },
        phi,
        theta,
        mean,
        sigma2,
        loglik: ll,
        n_obs: n,
        converged: ml.converged,
        iterations: start.iterations + ml.iterations,
    })
}

/// ψ-weights `ψ_0..ψ_{h-1}` of the MA(∞) representation.
pub fn psi_weights(phi: &[f64], theta: &[f64], h: usize) -> Vec<f64> {
    let mut psi = Vec::with_capacity(h);
    for j in 0..h {
        let mut v = if j == 0 {
            1.0
        } else if j <= theta.len() {
            -theta[j - 1]
        } else {
            0.0
        };
        for (i, a) in phi.iter().enumerate() {
            if j > i {
                v += a * psi[j - i - 1];
            }
        }
        psi.push(v);
    }
    psi
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForecastPoint {
    pub point: f64,
    pub se: f64,
}

/// Minimum-MSE forecasts for horizons `1..=h` from the end of `values`.
///
/// Point forecasts propagate the filtered state with future innovations set
/// to zero; standard errors use `σ² Σ_{j<h} ψ_j²`.
pub fn forecast(fit: &ArmaFit, values: &[f64], h: usize) -> Result<Vec<ForecastPoint>> {
    let params = fit.params();
    params.check(&fit.spec)?;
    let ss = params.state_space()?;
    let mean = params.effective_mean(&fit.spec);
    let y: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let mut state = ss.filter(&y).next_state;
    let psi = psi_weights(&fit.phi, &fit.theta, h);
    let mut cum = 0.0;
    let mut out = Vec::with_capacity(h);
    for psi_j in psi.iter().take(h) {
        cum += psi_j * psi_j;
        out.push(ForecastPoint {
            point: mean + state[0],
            se: (fit.sigma2 * cum).sqrt(),
        });
        state = ss.transition(&state);
    }
    debug_assert_eq!(state.len(), ss.dim());
    Ok(out)
}

/// One-step-ahead predictions `x̂_{t|t-1}` for positions `from..n`, each
/// conditioned on the observed values before it.
pub fn predict_one_step(fit: &ArmaFit, values: &[f64], from: usize) -> Result<Vec<f64>> {
    let n = values.len();
    if from < fit.spec.p + fit.spec.q || from > n {
        return Err(Error::IndexOutOfRange { index: from, len: n });
    }
    let all = one_step_all(fit, values)?;
    Ok(all[from..].to_vec())
}

/// Innovation residuals `x_t - x̂_{t|t-1}` over the whole series.
pub fn residuals(fit: &ArmaFit, values: &[f64]) -> Result<Vec<f64>> {
    let pred = one_step_all(fit, values)?;
    Ok(values.iter().zip(&pred).map(|(x, p)| x - p).collect())
}

fn one_step_all(fit: &ArmaFit, values: &[f64]) -> Result<Vec<f64>> {
    let params = fit.params();
    params.check(&fit.spec)?;
    let ss = params.state_space()?;
    let mean = params.effective_mean(&fit.spec);
    let y: Vec<f64> = values.iter().map(|v| v - mean).collect();
    Ok(ss
        .filter(&y)
        .predictions
        .into_iter()
        .map(|p| p + mean)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlogram::acf;
    use nalgebra::{DMatrix, DVector};
    use proptest::prelude::*;

    fn sim(spec: ArmaSpec, phi: &[f64], theta: &[f64], mean: f64, n: usize, seed: u64) -> Vec<f64> {
        let params = ArmaParams::new(phi.to_vec(), theta.to_vec(), mean, 1.0);
        simulate(&spec, &params, n, seed).unwrap().values().to_vec()
    }

    fn sample_var(x: &[f64]) -> f64 {
        let m = x.iter().sum::<f64>() / x.len() as f64;
        x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() - 1) as f64
    }

    /// Autocovariances from a long ψ-weight sum, independent of the filter.
    fn autocov(phi: &[f64], theta: &[f64], sigma2: f64, lags: usize) -> Vec<f64> {
        let psi = psi_weights(phi, theta, 6000);
        (0..lags)
            .map(|h| sigma2 * psi.iter().zip(&psi[h..]).map(|(a, b)| a * b).sum::<f64>())
            .collect()
    }

    fn dense_loglik(x: &[f64], phi: &[f64], theta: &[f64], mean: f64, sigma2: f64) -> f64 {
        let n = x.len();
        let g = autocov(phi, theta, sigma2, n);
        let cov = DMatrix::from_fn(n, n, |i, j| g[i.abs_diff(j)]);
        let chol = cov.cholesky().unwrap();
        let d = DVector::from_fn(n, |i, _| x[i] - mean);
        let z = chol.l().solve_lower_triangular(&d).unwrap();
        let logdet: f64 = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>();
        -0.5 * (n as f64 * (2.0 * std::f64::consts::PI).ln() + logdet + z.norm_squared())
    }

    #[test]
    fn white_noise_simulation() {
        let x = sim(ArmaSpec::new(0, 0, true), &[], &[], 0.0, 10_000, 1);
        assert!((sample_var(&x) - 1.0).abs() < 0.1);
    }

    #[test]
    fn ar1_simulated_variance() {
        let x = sim(ArmaSpec::new(1, 0, false), &[0.5], &[], 0.0, 10_000, 2);
        assert!((sample_var(&x) - 4.0 / 3.0).abs() < 0.1 * 4.0 / 3.0);
    }

    #[test]
    fn ma1_simulated_acf_sign() {
        let x = sim(ArmaSpec::new(0, 1, false), &[], &[0.5], 0.0, 10_000, 3);
        let r1 = acf(&x, 1).unwrap().coefficients[1];
        assert!((r1 + 0.4).abs() < 0.05, "{r1}");
    }

    #[test]
    fn simulate_rejects_bad_params() {
        let spec = ArmaSpec::new(1, 1, false);
        let bad_ar = ArmaParams::new(vec![1.1], vec![0.0], 0.0, 1.0);
        let bad_ma = ArmaParams::new(vec![0.1], vec![-1.5], 0.0, 1.0);
        assert!(matches!(simulate(&spec, &bad_ar, 10, 0), Err(Error::NonStationaryParams)));
        assert!(matches!(simulate(&spec, &bad_ma, 10, 0), Err(Error::NonInvertibleParams)));
    }

    #[test]
    fn simulate_is_deterministic() {
        let a = sim(ArmaSpec::new(1, 1, true), &[0.3], &[0.2], 4.0, 50, 9);
        let b = sim(ArmaSpec::new(1, 1, true), &[0.3], &[0.2], 4.0, 50, 9);
        assert_eq!(a, b);
    }

    #[test]
    fn loglik_of_zeros_under_standard_normal() {
        let spec = ArmaSpec::new(0, 0, true);
        let params = ArmaParams::new(vec![], vec![], 0.0, 1.0);
        let n = 7;
        let ll = loglik(&vec![0.0; n], &spec, &params).unwrap();
        assert!((ll + 0.5 * n as f64 * (2.0 * std::f64::consts::PI).ln()).abs() < 1e-12);
    }

    #[test]
    fn loglik_ar1_dense_oracle() {
        let x = [0.3, -1.2, 0.8, 2.0, -0.4];
        let (phi, sigma2, mean) = (0.6, 1.7, 0.2);
        let spec = ArmaSpec::new(1, 0, true);
        let ll = loglik(&x, &spec, &ArmaParams::new(vec![phi], vec![], mean, sigma2)).unwrap();
        // closed-form covariance σ² φ^|i-j| / (1 - φ²)
        let cov = DMatrix::from_fn(5, 5, |i, j| {
            sigma2 * phi.powi(i.abs_diff(j) as i32) / (1.0 - phi * phi)
        });
        let chol = cov.clone().cholesky().unwrap();
        let d = DVector::from_fn(5, |i, _| x[i] - mean);
        let quad = d.dot(&(cov.try_inverse().unwrap() * &d));
        let logdet = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>();
        let oracle = -0.5 * (5.0 * (2.0 * std::f64::consts::PI).ln() + logdet + quad);
        assert!((ll - oracle).abs() < 1e-8);
    }

    #[test]
    fn loglik_ma1_dense_oracle() {
        let x = [1.0, 0.5, -0.7, 0.2, 1.4, -2.0];
        let (theta, sigma2) = (0.45, 0.8);
        let spec = ArmaSpec::new(0, 1, false);
        let ll = loglik(&x, &spec, &ArmaParams::new(vec![], vec![theta], 0.0, sigma2)).unwrap();
        // γ0 = σ²(1 + θ²), γ1 = -σ²θ
        let cov = DMatrix::from_fn(6, 6, |i, j| match i.abs_diff(j) {
            0 => sigma2 * (1.0 + theta * theta),
            1 => -sigma2 * theta,
            _ => 0.0,
        });
        let chol = cov.clone().cholesky().unwrap();
        let d = DVector::from_column_slice(&x);
        let quad = d.dot(&(cov.try_inverse().unwrap() * &d));
        let logdet = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>();
        let oracle = -0.5 * (6.0 * (2.0 * std::f64::consts::PI).ln() + logdet + quad);
        assert!((ll - oracle).abs() < 1e-8);
    }

    #[test]
    fn white_noise_fit_is_closed_form() {
        let x = sim(ArmaSpec::new(0, 0, true), &[], &[], 3.0, 400, 4);
        let f = fit(&x, &ArmaSpec::new(0, 0, true)).unwrap();
        let n = x.len() as f64;
        let m = x.iter().sum::<f64>() / n;
        assert!((f.mean - m).abs() < 1e-6);
        assert!((f.sigma2 - sample_var(&x) * (n - 1.0) / n).abs() < 1e-6);
        assert_eq!(f.spec.n_params(), 2);
    }

    #[test]
    fn fit_recovers_ar1() {
        let x = sim(ArmaSpec::new(1, 0, true), &[0.7], &[], 1.0, 5000, 5);
        let f = fit(&x, &ArmaSpec::new(1, 0, true)).unwrap();
        assert!(f.converged);
        assert!((f.phi[0] - 0.7).abs() < 0.05, "{f:?}");
        assert!(f.se.phi[0] > 0.0 && f.se.phi[0] < 0.05);
    }

    #[test]
    fn fit_recovers_arma11() {
        let x = sim(ArmaSpec::new(1, 1, false), &[0.6], &[0.3], 0.0, 5000, 6);
        let f = fit(&x, &ArmaSpec::new(1, 1, false)).unwrap();
        assert!((f.phi[0] - 0.6).abs() < 0.06 && (f.theta[0] - 0.3).abs() < 0.06, "{f:?}");
        assert!(is_stable(&f.phi) && is_stable(&f.theta));
    }

    #[test]
    fn fit_requires_observations() {
        assert!(matches!(
            fit(&[1.0, 2.0, 3.0, 4.0, 5.0], &ArmaSpec::new(1, 1, true)),
            Err(Error::TooFewObservations { .. })
        ));
    }

    #[test]
    fn white_noise_forecast() {
        let x = sim(ArmaSpec::new(0, 0, true), &[], &[], 2.0, 200, 7);
        let f = fit(&x, &ArmaSpec::new(0, 0, true)).unwrap();
        for pt in forecast(&f, &x, 5).unwrap() {
            assert!((pt.point - f.mean).abs() < 1e-12);
            assert!((pt.se - f.sigma2.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn ar1_forecast_closed_form() {
        let spec = ArmaSpec::new(1, 0, true);
        let x = sim(spec, &[0.8], &[], 5.0, 100, 8);
        let f = ArmaFit::from_params(&x, spec, ArmaParams::new(vec![0.8], vec![], 5.0, 1.0)).unwrap();
        let last = x[x.len() - 1];
        for (h, pt) in forecast(&f, &x, 10).unwrap().iter().enumerate() {
            let expected = 5.0 + 0.8f64.powi(h as i32 + 1) * (last - 5.0);
            assert!((pt.point - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn ma_forecast_reverts_after_q() {
        let spec = ArmaSpec::new(0, 2, true);
        let x = sim(spec, &[], &[0.4, -0.3], -1.0, 300, 9);
        let f = fit(&x, &spec).unwrap();
        let fc = forecast(&f, &x, 6).unwrap();
        for pt in &fc[2..] {
            assert_eq!(pt.point, f.mean);
        }
        assert!(fc.windows(2).all(|w| w[1].se >= w[0].se));
    }

    #[test]
    fn one_step_predictions() {
        let spec = ArmaSpec::new(1, 0, true);
        let x = sim(spec, &[0.5], &[], 2.0, 60, 10);
        let f = ArmaFit::from_params(&x, spec, ArmaParams::new(vec![0.5], vec![], 2.0, 1.0)).unwrap();
        let pred = predict_one_step(&f, &x, 1).unwrap();
        for (i, p) in pred.iter().enumerate() {
            let t = i + 1;
            assert!((p - (2.0 + 0.5 * (x[t - 1] - 2.0))).abs() < 1e-12);
        }
        assert!(matches!(
            predict_one_step(&f, &x, 61),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn one_step_agrees_with_iterated_forecast() {
        let spec = ArmaSpec::new(1, 2, true);
        let x = sim(spec, &[0.5], &[0.3, 0.2], 1.0, 120, 11);
        let f = fit(&x, &spec).unwrap();
        let pred = predict_one_step(&f, &x, 100).unwrap();
        for (i, p) in pred.iter().enumerate() {
            let t = 100 + i;
            let h1 = forecast(&f, &x[..t], 1).unwrap()[0].point;
            assert!((p - h1).abs() < 1e-10);
        }
    }

    #[test]
    fn residuals_of_white_noise_are_centered() {
        let spec = ArmaSpec::new(0, 0, true);
        let x = sim(spec, &[], &[], 4.0, 50, 12);
        let f = fit(&x, &spec).unwrap();
        let r = residuals(&f, &x).unwrap();
        assert_eq!(r.len(), x.len());
        for (e, v) in r.iter().zip(&x) {
            assert!((e - (v - f.mean)).abs() < 1e-12);
        }
    }

    #[test]
    fn true_model_residuals_are_white() {
        let spec = ArmaSpec::new(1, 0, false);
        let x = sim(spec, &[0.7], &[], 0.0, 3000, 13);
        let f = ArmaFit::from_params(&x, spec, ArmaParams::new(vec![0.7], vec![], 0.0, 1.0)).unwrap();
        let r = residuals(&f, &x).unwrap();
        let r1 = acf(&r, 1).unwrap().coefficients[1];
        assert!(r1.abs() < 2.0 / (x.len() as f64).sqrt());
    }

    #[test]
    fn psi_weights_ar1_and_ma1() {
        let psi = psi_weights(&[0.5], &[], 4);
        assert_eq!(psi, vec![1.0, 0.5, 0.25, 0.125]);
        assert_eq!(psi_weights(&[], &[0.3], 3), vec![1.0, -0.3, 0.0]);
    }

    fn stable_coefs(k: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-0.9f64..0.9, k).prop_map(|r| transform::from_partials(&r))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn loglik_matches_dense_oracle(
            phi in (0usize..3).prop_flat_map(stable_coefs),
            theta in (0usize..3).prop_flat_map(stable_coefs),
            x in prop::collection::vec(-3.0f64..3.0, 5..11),
            mean in -2.0f64..2.0,
            sigma2 in 0.2f64..3.0,
        ) {
            let spec = ArmaSpec::new(phi.len(), theta.len(), true);
            let params = ArmaParams::new(phi.clone(), theta.clone(), mean, sigma2);
            let ll = loglik(&x, &spec, &params).unwrap();
            let oracle = dense_loglik(&x, &phi, &theta, mean, sigma2);
            prop_assert!((ll - oracle).abs() < 1e-8, "{ll} vs {oracle}");
        }
    }
}
