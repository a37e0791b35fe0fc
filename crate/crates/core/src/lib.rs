//! Box-Jenkins ARMA modeling and Poisson GARMA estimation for daily count
//! series.
//!
//! The crate covers the whole identification-to-validation workflow:
//!
//! - [`series`]: the [`TimeSeries`] container, differencing, summaries and splits
//! - [`correlogram`]: sample ACF/PACF and cut-off / dies-down reading
//! - [`stationarity`]: augmented Dickey-Fuller test with tabulated p-values
//! - [`arma`]: simulation, exact likelihood, ML fitting and forecasting
//! - [`garma`]: Poisson log-link GARMA likelihood, fitting and simulation
//! - [`diagnostics`]: Ljung-Box, AIC, MAE, RMSE and model ranking
//! - [`pipeline`]: CSV ingestion, the end-to-end run and report/plot output
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod arma;
pub mod correlogram;
pub mod diagnostics;
pub mod error;
pub mod garma;
pub mod optim;
pub mod pipeline;
pub mod series;
pub mod stationarity;

pub use error::{Error, Result};
pub use series::TimeSeries;
