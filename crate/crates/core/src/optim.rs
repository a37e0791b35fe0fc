//! Quasi-Newton minimization with finite-difference gradients, plus the
//! numerical Hessian used for standard errors.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy)]
pub struct BfgsOptions {
    /// Stop when `|f_old - f_new| < rel_tol * (|f_old| + rel_tol)`.
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for BfgsOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            max_iter: 500,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn eval<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64]) -> f64 {
    let v = f(x);
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Central-difference gradient. Falls back to a one-sided difference in any
/// coordinate where one side is infinite.
pub fn gradient<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], fx: f64) -> Vec<f64> {
    let mut xp = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = 6e-6 * x[i].abs().max(1.0);
            xp[i] = x[i] + h;
            let up = eval(f, &xp);
            xp[i] = x[i] - h;
            let down = eval(f, &xp);
            xp[i] = x[i];
            match (up.is_finite(), down.is_finite()) {
                (true, true) => (up - down) / (2.0 * h),
                (true, false) => (up - fx) / h,
                (false, true) => (fx - down) / h,
                (false, false) => 0.0,
            }
        })
        .collect()
}

/// Minimizes `f` from `x0` by BFGS with a backtracking Armijo line search.
///
/// Non-finite objective values are treated as `+inf`, so the line search
/// backs away from infeasible regions.
pub fn minimize<F: Fn(&[f64]) -> f64>(f: F, x0: &[f64], opts: &BfgsOptions) -> Minimum {
    let n = x0.len();
    let mut x = DVector::from_column_slice(x0);
    let mut fx = eval(&f, x.as_slice());
    if n == 0 || !fx.is_finite() {
        return Minimum {
            x: x0.to_vec(),
            value: fx,
            iterations: 0,
            converged: n == 0 && fx.is_finite(),
        };
    }
    let mut g = DVector::from_vec(gradient(&f, x.as_slice(), fx));
    let mut h_inv = DMatrix::<f64>::identity(n, n);
    let mut converged = false;
    let mut iterations = 0;
    let mut restarted = false;

    while iterations < opts.max_iter {
        iterations += 1;
        let mut dir = -(&h_inv * &g);
        let mut slope = g.dot(&dir);
        if slope.is_nan() || slope >= 0.0 {
            h_inv = DMatrix::identity(n, n);
            dir = -g.clone();
            slope = -g.norm_squared();
        }
        if slope == 0.0 {
            converged = true;
            break;
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial = &x + &dir * step;
            let ft = eval(&f, trial.as_slice());
            if ft <= fx + 1e-4 * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }

        let Some((x_new, f_new)) = accepted else {
            if restarted {
                // no descent even along the gradient: stationary to FD precision
                let gmax = g.amax();
                converged = gmax <= 1e-3 * (1.0 + fx.abs()).sqrt();
                break;
            }
            restarted = true;
            h_inv = DMatrix::identity(n, n);
            continue;
        };
        restarted = false;

        let g_new = DVector::from_vec(gradient(&f, x_new.as_slice(), f_new));
        let s = &x_new - &x;
        let y = &g_new - &g;
        let improvement = fx - f_new;
        x = x_new;
        g = g_new;
        let f_old = fx;
        fx = f_new;

        if improvement.abs() < opts.rel_tol * (f_old.abs() + opts.rel_tol) {
            converged = true;
            break;
        }

        let sy = s.dot(&y);
        if sy > 1e-12 * s.norm() * y.norm() {
            let rho = 1.0 / sy;
            let hy = &h_inv * &y;
            let yhy = y.dot(&hy);
            // H+ = H - rho (s hy' + hy s') + (rho^2 y'Hy + rho) s s'
            h_inv -= (&s * hy.transpose() + &hy * s.transpose()) * rho;
            h_inv += (&s * s.transpose()) * (rho * rho * yhy + rho);
        }
    }

    Minimum {
        x: x.as_slice().to_vec(),
        value: fx,
        iterations,
        converged,
    }
}

/// Central-difference Hessian of `f` at `x`.
pub fn hessian<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64]) -> DMatrix<f64> {
    let n = x.len();
    let h: Vec<f64> = x.iter().map(|v| 1e-4 * v.abs().max(1.0)).collect();
    let f0 = f(x);
    let mut m = DMatrix::zeros(n, n);
    let mut p = x.to_vec();
    for i in 0..n {
        p[i] = x[i] + h[i];
        let up = f(&p);
        p[i] = x[i] - h[i];
        let down = f(&p);
        p[i] = x[i];
        m[(i, i)] = (up - 2.0 * f0 + down) / (h[i] * h[i]);
        for j in 0..i {
            let mut corner = |si: f64, sj: f64| {
                p[i] = x[i] + si * h[i];
                p[j] = x[j] + sj * h[j];
                let v = f(&p);
                p[i] = x[i];
                p[j] = x[j];
                v
            };
            let v = (corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0)
                + corner(-1.0, -1.0))
                / (4.0 * h[i] * h[j]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Square roots of the diagonal of the inverse of `h`; `NaN` where the
/// inverse is unavailable or its diagonal is not positive.
pub fn standard_errors(h: &DMatrix<f64>) -> Vec<f64> {
    let n = h.nrows();
    match h.clone().try_inverse() {
        Some(inv) => (0..n)
            .map(|i| {
                let v = inv[(i, i)];
                if v > 0.0 && v.is_finite() {
                    v.sqrt()
                } else {
                    f64::NAN
                }
            })
            .collect(),
        None => vec![f64::NAN; n],
    }
}
