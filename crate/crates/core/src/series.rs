//! Time-series container, differencing, descriptive statistics and
//! chronological train/test partitioning.

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{Error, Result};

/// Ordered real-valued observations with an optional date index.
///
/// Differencing is recorded: every pass stores the first value of the series
/// it was applied to, so [`TimeSeries::undifference`] can rebuild the source.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    index: Option<Vec<NaiveDate>>,
    d_applied: usize,
    origin_head: Vec<f64>,
    head_dates: Vec<NaiveDate>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        validate_values(&values)?;
        Ok(Self {
            values,
            index: None,
            d_applied: 0,
            origin_head: Vec::new(),
            head_dates: Vec::new(),
        })
    }

    pub fn with_index(values: Vec<f64>, index: Vec<NaiveDate>) -> Result<Self> {
        validate_values(&values)?;
        if index.len() != values.len() {
            return Err(Error::InvalidSeries(format!(
                "index length {} does not match {} values",
                index.len(),
                values.len()
            )));
        }
        if let Some(w) = index.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSeries(format!(
                "dates not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(Self {
            values,
            index: Some(index),
            d_applied: 0,
            origin_head: Vec::new(),
            head_dates: Vec::new(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn index(&self) -> Option<&[NaiveDate]> {
        self.index.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of first-difference passes applied to reach this series.
    pub fn d_applied(&self) -> usize {
        self.d_applied
    }

    /// Values removed by each differencing pass, outermost pass first.
    pub fn origin_head(&self) -> &[f64] {
        &self.origin_head
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Applies `d` first-difference passes.
    pub fn difference(&self, d: usize) -> Result<TimeSeries> {
        if self.len() <= d {
            return Err(Error::SeriesTooShort {
                needed: d,
                got: self.len(),
            });
        }
        let mut out = self.clone();
        for _ in 0..d {
            out.origin_head.push(out.values[0]);
            out.values = out.values.windows(2).map(|w| w[1] - w[0]).collect();
            if let Some(index) = out.index.as_mut() {
                out.head_dates.push(index.remove(0));
            }
            out.d_applied += 1;
        }
        Ok(out)
    }

    /// Inverts every recorded differencing pass, returning the source series.
    pub fn undifference(&self) -> Result<TimeSeries> {
        if self.d_applied == 0 {
            return Err(Error::NothingToInvert);
        }
        let mut out = self.clone();
        while out.d_applied > 0 {
            let head = out.origin_head.pop().expect("head recorded per pass");
            let mut level = Vec::with_capacity(out.values.len() + 1);
            level.push(head);
            let mut acc = head;
            for &dx in &out.values {
                acc += dx;
                level.push(acc);
            }
            out.values = level;
            if let (Some(index), Some(date)) = (out.index.as_mut(), out.head_dates.pop()) {
                index.insert(0, date);
            }
            out.d_applied -= 1;
        }
        Ok(out)
    }

    /// Chronological prefix/suffix split at `floor(train_fraction * n)`.
    ///
    /// The prefix keeps the differencing record; the suffix is returned as a
    /// plain series.
    pub fn split(&self, train_fraction: f64) -> Result<(TimeSeries, TimeSeries)> {
        let spec = SplitSpec::new(train_fraction, self.len())?;
        let (train_vals, test_vals) = self.values.split_at(spec.train_len);
        let (train_idx, test_idx) = match &self.index {
            Some(index) => {
                let (a, b) = index.split_at(spec.train_len);
                (Some(a.to_vec()), Some(b.to_vec()))
            }
            None => (None, None),
        };
        let train = TimeSeries {
            values: train_vals.to_vec(),
            index: train_idx,
            d_applied: self.d_applied,
            origin_head: self.origin_head.clone(),
            head_dates: self.head_dates.clone(),
        };
        let test = TimeSeries {
            values: test_vals.to_vec(),
            index: test_idx,
            d_applied: 0,
            origin_head: Vec::new(),
            head_dates: Vec::new(),
        };
        Ok((train, test))
    }

    pub fn summarize(&self) -> Result<SummaryStats> {
        summarize(&self.values)
    }
}

fn validate_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidSeries("series must have at least one value".into()));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidSeries(format!(
            "non-finite value {} at position {i}",
            values[i]
        )));
    }
    Ok(())
}

/// Train/test partition sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub train_len: usize,
    pub test_len: usize,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, n: usize) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::Config(format!(
                "train fraction {train_fraction} not in (0, 1)"
            )));
        }
        let train_len = (train_fraction * n as f64).floor() as usize;
        let test_len = n.saturating_sub(train_len);
        if train_len < 2 || test_len < 1 {
            return Err(Error::DegenerateSplit {
                train: train_len,
                test: test_len,
            });
        }
        Ok(Self {
            train_fraction,
            train_len,
            test_len,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
    pub sd: f64,
    pub var: f64,
}

/// Descriptive statistics; quartiles interpolate linearly at position `(n-1)p`
/// of the sorted sample and the variance uses the `n-1` denominator.
pub fn summarize(values: &[f64]) -> Result<SummaryStats> {
    let n = values.len();
    if n < 2 {
        return Err(Error::SeriesTooShort { needed: 1, got: n });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let var = sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok(SummaryStats {
        min: sorted[0],
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        mean,
        q3: quantile_sorted(&sorted, 0.75),
        max: sorted[n - 1],
        sd: var.sqrt(),
        var,
    })
}

/// Linear-interpolation quantile of an ascending sample.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn first_differences() {
        let d = ts(&[1.0, 3.0, 6.0, 10.0]).difference(1).unwrap();
        assert_eq!(d.values(), &[2.0, 3.0, 4.0]);
        assert_eq!(d.d_applied(), 1);
        assert_eq!(d.origin_head(), &[1.0]);

        let c = ts(&[7.5; 4]).difference(1).unwrap();
        assert_eq!(c.values(), &[0.0, 0.0, 0.0]);

        let long = ts(&vec![1.0; 425]).difference(1).unwrap();
        assert_eq!(long.len(), 424);
    }

    #[test]
    fn difference_too_short() {
        assert!(matches!(
            ts(&[1.0, 2.0]).difference(2),
            Err(Error::SeriesTooShort { .. })
        ));
    }

    #[test]
    fn undifference_round_trip() {
        let s = ts(&[1.0, 3.0, 6.0, 10.0]);
        assert_eq!(s.difference(1).unwrap().undifference().unwrap(), s);
        assert_eq!(s.difference(2).unwrap().undifference().unwrap(), s);
    }

    #[test]
    fn undifference_constant_head() {
        let s = ts(&[5.0, 5.0, 5.0, 5.0]).difference(1).unwrap();
        assert_eq!(s.values(), &[0.0, 0.0, 0.0]);
        assert_eq!(s.undifference().unwrap().values(), &[5.0, 5.0, 5.0, 5.0]);
    }

    #[test]
    fn undifference_requires_record() {
        assert!(matches!(
            ts(&[1.0, 2.0]).undifference(),
            Err(Error::NothingToInvert)
        ));
    }

    #[test]
    fn dates_follow_differencing() {
        let d0 = NaiveDate::from_ymd_opt(2020, 3, 2).unwrap();
        let dates: Vec<_> = (0..4).map(|i| d0 + chrono::Days::new(i)).collect();
        let s = TimeSeries::with_index(vec![2.0, 0.0, 2.0, 5.0], dates.clone()).unwrap();
        let d = s.difference(1).unwrap();
        assert_eq!(d.index().unwrap(), &dates[1..]);
        assert_eq!(d.undifference().unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(TimeSeries::new(vec![]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::NAN]).is_err());
        let d0 = NaiveDate::from_ymd_opt(2020, 3, 2).unwrap();
        assert!(TimeSeries::with_index(vec![1.0, 2.0], vec![d0, d0]).is_err());
        assert!(TimeSeries::with_index(vec![1.0, 2.0], vec![d0]).is_err());
    }

    #[test]
    fn summary_constant() {
        let s = summarize(&[5.0, 5.0, 5.0]).unwrap();
        assert_eq!((s.mean, s.sd, s.min, s.max), (5.0, 0.0, 5.0, 5.0));
    }

    #[test]
    fn summary_one_to_five() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (2.0, 3.0, 4.0));
        assert_eq!(s.var, 2.5);
    }

    #[test]
    fn summary_interpolates_between_order_statistics() {
        // positions (n-1)p = 0.75, 1.5, 2.25 on [1, 2, 4, 8]
        let s = summarize(&[8.0, 1.0, 4.0, 2.0]).unwrap();
        assert_eq!(s.q1, 1.75);
        assert_eq!(s.median, 3.0);
        assert_eq!(s.q3, 5.0);
    }

    #[test]
    fn summary_needs_two_values() {
        assert!(matches!(summarize(&[1.0]), Err(Error::SeriesTooShort { .. })));
    }

    #[test]
    fn split_lengths() {
        let s = ts(&[0.0; 10]);
        let (a, b) = s.split(0.9).unwrap();
        assert_eq!((a.len(), b.len()), (9, 1));

        let s = ts(&vec![0.0; 425]);
        let (a, b) = s.split(0.9).unwrap();
        assert_eq!((a.len(), b.len()), (382, 43));

        let s = ts(&[1.0, 2.0, 3.0]);
        let (a, b) = s.split(0.9).unwrap();
        assert_eq!((a.len(), b.len()), (2, 1));
        assert!(matches!(s.split(0.5), Err(Error::DegenerateSplit { .. })));
    }

    proptest! {
        #[test]
        fn difference_is_linear(
            x in prop::collection::vec(-1e3f64..1e3, 3..40),
            a in -5.0f64..5.0,
            b in -5.0f64..5.0,
        ) {
            let y: Vec<f64> = x.iter().map(|v| v.sin() * 10.0).collect();
            let combo: Vec<f64> = x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect();
            let lhs = ts(&combo).difference(1).unwrap();
            let dx = ts(&x).difference(1).unwrap();
            let dy = ts(&y).difference(1).unwrap();
            for i in 0..lhs.len() {
                let rhs = a * dx.values()[i] + b * dy.values()[i];
                prop_assert!((lhs.values()[i] - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
            }
        }

        #[test]
        fn undifference_inverts_exactly(
            counts in prop::collection::vec(0u32..20_000, 3..60),
            d in 1usize..3,
        ) {
            let s = ts(&counts.iter().map(|&c| c as f64).collect::<Vec<_>>());
            prop_assert_eq!(s.difference(d).unwrap().undifference().unwrap(), s);
        }

        #[test]
        fn summary_ignores_order(mut x in prop::collection::vec(-1e4f64..1e4, 2..50)) {
            let a = summarize(&x).unwrap();
            x.sort_by(f64::total_cmp);
            let b = summarize(&x).unwrap();
            prop_assert_eq!((a.min, a.q1, a.median, a.q3, a.max), (b.min, b.q1, b.median, b.q3, b.max));
            prop_assert!((a.mean - b.mean).abs() <= 1e-9 * (1.0 + a.mean.abs()));
            prop_assert!((a.var - b.var).abs() <= 1e-9 * (1.0 + a.var));
            prop_assert!(a.min <= a.q1 && a.q1 <= a.median && a.median <= a.q3 && a.q3 <= a.max);
        }

        #[test]
        fn split_concatenates(x in prop::collection::vec(-1e4f64..1e4, 4..80), f in 0.5f64..0.95) {
            let s = ts(&x);
            if let Ok((a, b)) = s.split(f) {
                let joined: Vec<f64> = a.values().iter().chain(b.values()).copied().collect();
                prop_assert_eq!(joined, x);
            }
        }
    }
}
