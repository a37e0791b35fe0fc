//! Poisson GARMA(p, q) with log link.
//!
//! The conditional mean follows
//!
//! ```text
//! ln μ_t = β_0 + Σ_j φ_j (ln y*_{t-j} - β_0) + Σ_j θ_j (ln y*_{t-j} - ln μ_{t-j})
//! ```
//!
//! with `y* = max(y, c)` so that zero counts have a finite logarithm. Only an
//! intercept enters the regression part.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::optim::{self, BfgsOptions};
use crate::series::TimeSeries;

/// Largest admissible link-scale predictor.
pub const ETA_LIMIT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Poisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Link {
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GarmaSpec {
    pub p: usize,
    pub q: usize,
    pub family: Family,
    pub link: Link,
    /// Floor applied to counts before taking logs.
    pub clamp_c: f64,
}

impl GarmaSpec {
    pub fn new(p: usize, q: usize) -> Self {
        Self {
            p,
            q,
            family: Family::Poisson,
            link: Link::Log,
            clamp_c: 0.1,
        }
    }

    pub fn with_clamp(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Config(format!("clamp constant {c} not in (0, 1)")));
        }
        self.clamp_c = c;
        Ok(self)
    }

    /// Number of conditioning observations, `max(p, q)`.
    pub fn order(&self) -> usize {
        self.p.max(self.q)
    }

    pub fn n_params(&self) -> usize {
        1 + self.p + self.q
    }

    pub fn label(&self) -> String {
        format!("GARMA({},{})", self.p, self.q)
    }

    fn ystar(&self, y: f64) -> f64 {
        y.max(self.clamp_c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GarmaParams {
    pub intercept: f64,
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
}

impl GarmaParams {
    pub fn new(intercept: f64, phi: Vec<f64>, theta: Vec<f64>) -> Self {
        Self {
            intercept,
            phi,
            theta,
        }
    }

    fn check(&self, spec: &GarmaSpec) -> Result<()> {
        if self.phi.len() != spec.p || self.theta.len() != spec.q {
            return Err(Error::InvalidParams(format!(
                "{} expects {} AR and {} MA coefficients",
                spec.label(),
                spec.p,
                spec.q
            )));
        }
        let all_finite = std::iter::once(&self.intercept)
            .chain(&self.phi)
            .chain(&self.theta)
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams("non-finite GARMA coefficient".into()));
        }
        Ok(())
    }

    fn from_vec(spec: &GarmaSpec, x: &[f64]) -> Self {
        Self {
            intercept: x[0],
            phi: x[1..1 + spec.p].to_vec(),
            theta: x[1 + spec.p..1 + spec.p + spec.q].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GarmaStdErrors {
    pub intercept: f64,
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GarmaFit {
    pub spec: GarmaSpec,
    pub intercept: f64,
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
    pub se: GarmaStdErrors,
    /// Conditional means for every observation; the first `max(p, q)` are
    /// the conditioning values.
    #[serde(skip)]
    pub mu: Vec<f64>,
    pub loglik: f64,
    pub n_obs: usize,
    pub converged: bool,
    pub iterations: usize,
}

impl GarmaFit {
    pub fn params(&self) -> GarmaParams {
        GarmaParams::new(self.intercept, self.phi.clone(), self.theta.clone())
    }

    pub fn aic(&self) -> f64 {
        crate::diagnostics::aic(self.loglik, self.spec.n_params())
    }
}

/// Conditional mean at time `t` given `y_past` and `mu_past`, both ordered
/// oldest first with the most recent value last. Each must hold at least `p`
/// (resp. `q`) values.
pub fn mean_recursion(
    spec: &GarmaSpec,
    params: &GarmaParams,
    y_past: &[f64],
    mu_past: &[f64],
    t: usize,
) -> Result<f64> {
    let beta = params.intercept;
    let mut eta = beta;
    for (j, phi) in params.phi.iter().enumerate() {
        let y = y_past[y_past.len() - 1 - j];
        eta += phi * (spec.ystar(y).ln() - beta);
    }
    for (j, theta) in params.theta.iter().enumerate() {
        let y = y_past[y_past.len() - 1 - j];
        let mu = mu_past[mu_past.len() - 1 - j];
        eta += theta * (spec.ystar(y).ln() - mu.ln());
    }
    if eta > ETA_LIMIT || eta.is_nan() {
        return Err(Error::OverflowGuard { t, eta });
    }
    Ok(eta.exp())
}

/// Conditional means for every observation. Conditioning positions carry
/// `μ_t = y*_t`, so their MA terms start at zero.
pub fn conditional_means(spec: &GarmaSpec, params: &GarmaParams, y: &[f64]) -> Result<Vec<f64>> {
    params.check(spec)?;
    let m = spec.order();
    let mut mu: Vec<f64> = y[..m.min(y.len())].iter().map(|&v| spec.ystar(v)).collect();
    for t in m..y.len() {
        let next = mean_recursion(spec, params, &y[..t], &mu, t)?;
        mu.push(next);
    }
    Ok(mu)
}

fn check_counts(y: &[f64]) -> Result<()> {
    match y
        .iter()
        .position(|&v| !(v >= 0.0 && v.fract() == 0.0 && v.is_finite()))
    {
        Some(index) => Err(Error::NonCountData {
            index,
            value: y[index],
        }),
        None => Ok(()),
    }
}

/// `ln P(Y = y)` for `Y ~ Poisson(mu)`.
pub fn poisson_log_pmf(y: f64, mu: f64) -> f64 {
    if y == 0.0 {
        -mu
    } else {
        y * mu.ln() - mu - ln_gamma(y + 1.0)
    }
}

/// Conditional Poisson log-likelihood over `t >= max(p, q)`.
pub fn loglik(counts: &[f64], spec: &GarmaSpec, params: &GarmaParams) -> Result<f64> {
    check_counts(counts)?;
    let m = spec.order();
    if counts.len() <= m {
        return Err(Error::TooFewObservations {
            needed: m + 1,
            got: counts.len(),
        });
    }
    let mu = conditional_means(spec, params, counts)?;
    Ok(counts[m..]
        .iter()
        .zip(&mu[m..])
        .map(|(&y, &mu)| poisson_log_pmf(y, mu))
        .sum())
}

/// Maximum conditional-likelihood fit by BFGS from `β_0 = ln(mean y*)`,
/// `φ = θ = 0`.
pub fn fit(counts: &[f64], spec: &GarmaSpec) -> Result<GarmaFit> {
    check_counts(counts)?;
    let n = counts.len();
    let need = 10 * (spec.p + spec.q + 1);
    if n < need {
        return Err(Error::TooFewObservations { needed: need, got: n });
    }
    let clamped_mean = counts.iter().map(|&v| spec.ystar(v)).sum::<f64>() / n as f64;
    let mut start = vec![0.0; spec.n_params()];
    start[0] = clamped_mean.ln();

    let objective = |x: &[f64]| {
        let params = GarmaParams::from_vec(spec, x);
        loglik(counts, spec, &params).map_or(f64::INFINITY, |ll| -ll)
    };
    let best = optim::minimize(objective, &start, &BfgsOptions::default());
    let params = GarmaParams::from_vec(spec, &best.x);
    let ll = loglik(counts, spec, &params)?;
    let se = optim::standard_errors(&optim::hessian(&objective, &best.x));
    let mu = conditional_means(spec, &params, counts)?;

    Ok(GarmaFit {
        spec: *spec,
        se: GarmaStdErrors {
            intercept: se[0],
            phi: se[1..1 + spec.p].to_vec(),
            theta: se[1 + spec.p..].to_vec(),
        },
        intercept: params.intercept,
        phi: params.phi,
        theta: params.theta,
        mu,
        loglik: ll,
        n_obs: n,
        converged: best.converged,
        iterations: best.iterations,
    })
}

/// Draws counts sequentially, `y_t ~ Poisson(μ_t)`, discarding a burn-in of
/// `10 (p + q + 1)` draws. Pre-sample means are `exp(β_0)`.
pub fn simulate(spec: &GarmaSpec, params: &GarmaParams, n: usize, seed: u64) -> Result<TimeSeries> {
    params.check(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let burn = 10 * (spec.p + spec.q + 1);
    let m = spec.order();
    let total = m + burn + n;
    let mut y = Vec::with_capacity(total);
    let mut mu = Vec::with_capacity(total);
    for t in 0..total {
        let mean = if t < m {
            params.intercept.exp()
        } else {
            mean_recursion(spec, params, &y, &mu, t)?
        };
        let draw = Poisson::new(mean)
            .map_err(|_| Error::OverflowGuard {
                t,
                eta: mean.ln(),
            })?
            .sample(&mut rng);
        y.push(draw);
        mu.push(mean);
    }
    TimeSeries::new(y.split_off(m + burn))
}
