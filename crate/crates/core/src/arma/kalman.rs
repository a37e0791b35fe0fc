//! Exact Gaussian filtering of a zero-mean ARMA process in the state-space
//! form `y_t = Z α_t`, `α_{t+1} = T α_t + R ε_{t+1}`, with `Z = e_1`, the AR
//! coefficients in the first column of `T`, ones on its superdiagonal, and
//! `R = (1, b_1, ..., b_{r-1})` holding the additive-sign MA coefficients.
//!
//! Everything runs with unit innovation variance; callers rescale.

use nalgebra::{DMatrix, DVector};

pub(crate) struct StateSpace {
    r: usize,
    phi: Vec<f64>,
    rvec: Vec<f64>,
    p0: Vec<f64>,
}

pub(crate) struct FilterOutput {
    /// Sum of squared innovations, each scaled by its variance factor.
    pub ssq: f64,
    /// Sum of log variance factors.
    pub sumlog: f64,
    /// One-step predictions of `y_t` given `y_1..y_{t-1}`.
    pub predictions: Vec<f64>,
    /// Predicted state `a_{n+1|n}`.
    pub next_state: Vec<f64>,
}

impl StateSpace {
    /// `phi` are AR coefficients, `ma_additive` the MA coefficients with the
    /// sign convention `y_t = ... + ε_t + b_1 ε_{t-1} + ...`.
    pub fn new(phi: &[f64], ma_additive: &[f64]) -> Option<Self> {
        let r = phi.len().max(ma_additive.len() + 1);
        let mut phi_pad = phi.to_vec();
        phi_pad.resize(r, 0.0);
        let mut rvec = vec![1.0];
        rvec.extend_from_slice(ma_additive);
        rvec.resize(r, 0.0);
        let p0 = stationary_covariance(r, &phi_pad, &rvec)?;
        Some(Self {
            r,
            phi: phi_pad,
            rvec,
            p0,
        })
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    /// `T x` for a state vector.
    pub fn transition(&self, x: &[f64]) -> Vec<f64> {
        let r = self.r;
        (0..r)
            .map(|i| {
                let next = if i + 1 < r { x[i + 1] } else { 0.0 };
                self.phi[i] * x[0] + next
            })
            .collect()
    }

    /// Runs the filter over `y` (already demeaned).
    pub fn filter(&self, y: &[f64]) -> FilterOutput {
        let r = self.r;
        let mut a = vec![0.0; r];
        let mut p = self.p0.clone();
        let mut ssq = 0.0;
        let mut sumlog = 0.0;
        let mut predictions = Vec::with_capacity(y.len());
        let mut steady = false;
        let mut tmp = vec![0.0; r * r];

        for &obs in y {
            predictions.push(a[0]);
            let v = obs - a[0];
            let f = p[0];
            if f <= 0.0 || !f.is_finite() {
                // degenerate variance factor; caller sees a non-finite loglik
                sumlog = f64::NAN;
                ssq = f64::NAN;
                a = self.transition(&a);
                continue;
            }
            sumlog += f.ln();
            ssq += v * v / f;

            // a_{t|t} = a + P e1 v / f
            let pcol: Vec<f64> = (0..r).map(|i| p[i * r]).collect();
            for i in 0..r {
                a[i] += pcol[i] * v / f;
            }
            a = self.transition(&a);

            if steady {
                continue;
            }
            // P_{t|t} = P - P e1 e1' P / f
            for i in 0..r {
                for j in 0..r {
                    p[i * r + j] -= pcol[i] * pcol[j] / f;
                }
            }
            // P_{t+1} = T P_{t|t} T' + R R'
            self.propagate(&p, &mut tmp);
            let change = p
                .iter()
                .zip(&tmp)
                .map(|(x, z)| (x - z).abs())
                .fold(0.0, f64::max);
            std::mem::swap(&mut p, &mut tmp);
            if change < 1e-14 {
                steady = true;
            }
        }

        FilterOutput {
            ssq,
            sumlog,
            predictions,
            next_state: a,
        }
    }

    fn propagate(&self, p: &[f64], out: &mut [f64]) {
        let r = self.r;
        // (T P)_{ij} = phi_i P_{0j} + P_{i+1,j}
        let mut tp = vec![0.0; r * r];
        for i in 0..r {
            for j in 0..r {
                let next = if i + 1 < r { p[(i + 1) * r + j] } else { 0.0 };
                tp[i * r + j] = self.phi[i] * p[j] + next;
            }
        }
        // (T P T')_{ij} = phi_j (TP)_{i0} + (TP)_{i,j+1}
        for i in 0..r {
            for j in 0..r {
                let next = if j + 1 < r { tp[i * r + j + 1] } else { 0.0 };
                out[i * r + j] = self.phi[j] * tp[i * r] + next + self.rvec[i] * self.rvec[j];
            }
        }
    }
}

/// Solves `P = T P T' + R R'` through the vectorized linear system.
fn stationary_covariance(r: usize, phi: &[f64], rvec: &[f64]) -> Option<Vec<f64>> {
    let mut t = DMatrix::<f64>::zeros(r, r);
    for i in 0..r {
        t[(i, 0)] = phi[i];
        if i + 1 < r {
            t[(i, i + 1)] = 1.0;
        }
    }
    let kron = t.kronecker(&t);
    let lhs = DMatrix::<f64>::identity(r * r, r * r) - kron;
    // column-major vec of R R'
    let rhs = DVector::from_fn(r * r, |k, _| rvec[k % r] * rvec[k / r]);
    let sol = lhs.lu().solve(&rhs)?;
    let mut p = vec![0.0; r * r];
    for i in 0..r {
        for j in 0..r {
            p[i * r + j] = sol[j * r + i];
        }
    }
    if p.iter().all(|v| v.is_finite()) {
        Some(p)
    } else {
        None
    }
}
