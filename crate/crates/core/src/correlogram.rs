//! Sample ACF/PACF and the cut-off / dies-down reading used for order
//! identification.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelogramKind {
    Acf,
    Pacf,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correlogram {
    pub kind: CorrelogramKind,
    /// ACF: lags `0..=max_lag`. PACF: lags `1..=max_lag`.
    pub coefficients: Vec<f64>,
    pub n: usize,
    /// White-noise band half-width, `1.96 / sqrt(n)`.
    pub band: f64,
}

impl Correlogram {
    fn first_lag(&self) -> usize {
        match self.kind {
            CorrelogramKind::Acf => 0,
            CorrelogramKind::Pacf => 1,
        }
    }

    /// `(lag, coefficient)` pairs.
    pub fn lags(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let first = self.first_lag();
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i + first, c))
    }

    pub fn at(&self, lag: usize) -> Option<f64> {
        lag.checked_sub(self.first_lag())
            .and_then(|i| self.coefficients.get(i).copied())
    }

    pub fn max_lag(&self) -> usize {
        self.coefficients.len() + self.first_lag() - 1
    }
}

/// Shape of a correlogram beyond lag 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", content = "lag", rename_all = "snake_case")]
pub enum Pattern {
    CutOff(usize),
    DiesDown,
}

/// `min(floor(10 log10 n), n - 1)`.
pub fn default_max_lag(n: usize) -> usize {
    let l = (10.0 * (n as f64).log10()).floor() as usize;
    l.min(n.saturating_sub(1)).max(1)
}

fn white_noise_band(n: usize) -> f64 {
    1.96 / (n as f64).sqrt()
}

fn check(values: &[f64], max_lag: usize) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::SeriesTooShort {
            needed: 1,
            got: values.len(),
        });
    }
    if max_lag >= values.len() {
        return Err(Error::LagTooLarge {
            lag: max_lag,
            len: values.len(),
        });
    }
    Ok(())
}

/// Sample autocorrelations for lags `0..=max_lag`.
///
/// The denominator sums squared deviations over all `n` observations, which
/// keeps the implied autocovariance sequence positive semidefinite.
pub fn acf(values: &[f64], max_lag: usize) -> Result<Correlogram> {
    check(values, max_lag)?;
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let dev: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let denom: f64 = dev.iter().map(|d| d * d).sum();
    if denom <= f64::EPSILON * mean.abs().max(1.0) * n as f64 {
        return Err(Error::ConstantSeries);
    }
    let mut coefficients = Vec::with_capacity(max_lag + 1);
    coefficients.push(1.0);
    for k in 1..=max_lag {
        let num: f64 = dev[..n - k].iter().zip(&dev[k..]).map(|(a, b)| a * b).sum();
        coefficients.push(num / denom);
    }
    Ok(Correlogram {
        kind: CorrelogramKind::Acf,
        coefficients,
        n,
        band: white_noise_band(n),
    })
}

/// Sample partial autocorrelations for lags `1..=max_lag` by the
/// Durbin-Levinson recursion on the sample ACF.
pub fn pacf(values: &[f64], max_lag: usize) -> Result<Correlogram> {
    if max_lag == 0 {
        return Err(Error::LagTooLarge {
            lag: 0,
            len: values.len(),
        });
    }
    let r = acf(values, max_lag)?.coefficients;
    let coefficients = durbin_levinson(&r, max_lag)?;
    Ok(Correlogram {
        kind: CorrelogramKind::Pacf,
        coefficients,
        n: values.len(),
        band: white_noise_band(values.len()),
    })
}

/// Partial autocorrelations from autocorrelations `r[0..=max_lag]` (r[0] = 1).
pub(crate) fn durbin_levinson(r: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(max_lag);
    let mut prev: Vec<f64> = Vec::with_capacity(max_lag);
    for k in 1..=max_lag {
        let num = r[k] - (1..k).map(|j| prev[j - 1] * r[k - j]).sum::<f64>();
        let den = 1.0 - (1..k).map(|j| prev[j - 1] * r[j]).sum::<f64>();
        if den.abs() < 1e-12 {
            return Err(Error::NumericalDegeneracy(format!(
                "Durbin-Levinson denominator {den:e} at lag {k}"
            )));
        }
        let phi_kk = num / den;
        let mut next = Vec::with_capacity(k);
        for j in 1..k {
            next.push(prev[j - 1] - phi_kk * prev[k - j - 1]);
        }
        next.push(phi_kk);
        out.push(phi_kk);
        prev = next;
    }
    Ok(out)
}

/// Minimum run of leading significant lags for a pattern to count as dying down.
pub const DIES_DOWN_MIN_LAG: usize = 3;

/// Reads the correlogram shape beyond lag 0.
///
/// With `L` the last lag whose coefficient lies outside the band, the pattern
/// is `CutOff(L)` when the coefficients drop into the band abruptly, and
/// `DiesDown` when at least [`DIES_DOWN_MIN_LAG`] leading lags are
/// significant and either the last significant coefficient sits within twice
/// the band (the sequence faded into the band rather than dropping) or every
/// lag in the window is significant. No significant lag gives `CutOff(0)`.
pub fn classify_pattern(c: &Correlogram) -> Pattern {
    let outside = |v: f64| v.abs() > c.band;
    let last = c
        .lags()
        .filter(|&(lag, v)| lag >= 1 && outside(v))
        .map(|(lag, _)| lag)
        .last();
    let Some(last) = last else {
        return Pattern::CutOff(0);
    };
    let leading_run = (1..=c.max_lag())
        .take_while(|&lag| c.at(lag).is_some_and(outside))
        .count();
    let faded = c.at(last).is_some_and(|v| v.abs() <= 2.0 * c.band);
    let never_enters = leading_run == c.max_lag();
    if leading_run >= DIES_DOWN_MIN_LAG && (faded || never_enters) {
        Pattern::DiesDown
    } else {
        Pattern::CutOff(last)
    }
}
