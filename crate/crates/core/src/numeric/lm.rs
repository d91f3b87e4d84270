use nalgebra::{DMatrix, DVector};

/// Levenberg–Marquardt settings.
#[derive(Clone, Copy, Debug)]
pub struct LmOptions {
    pub max_iter: usize,
    /// Stop once the residual norm drops below this.
    pub target: f64,
    /// Largest accepted step norm.
    pub max_step: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        LmOptions { max_iter: 200, target: 1e-13, max_step: 1.0 }
    }
}

/// Minimizes `‖r(s)‖` over a state updated by `step(s, δ)`, with the
/// Jacobian of `r` in the increment `δ` at `δ = 0`. Returns the best state
/// and its residual norm.
pub fn levenberg_marquardt<S: Clone>(
    start: S,
    residual: impl Fn(&S) -> Option<DVector<f64>>,
    jacobian: impl Fn(&S) -> Option<DMatrix<f64>>,
    step: impl Fn(&S, &DVector<f64>) -> Option<S>,
    opts: LmOptions,
) -> (S, f64) {
    let mut s = start;
    let Some(mut r) = residual(&s) else { return (s, f64::INFINITY) };
    let mut cost = r.norm();
    let mut mu = -1.0;
    for _ in 0..opts.max_iter {
        if cost < opts.target || !cost.is_finite() {
            break;
        }
        let Some(j) = jacobian(&s) else { break };
        let a = j.transpose() * &j;
        let g = j.transpose() * &r;
        if mu < 0.0 {
            mu = 1e-3 * a.diagonal().iter().cloned().fold(1e-12, f64::max);
        }
        let mut accepted = false;
        while mu < 1e20 {
            let mut damped = a.clone();
            for k in 0..damped.nrows() {
                damped[(k, k)] += mu;
            }
            let Some(chol) = damped.cholesky() else {
                mu *= 4.0;
                continue;
            };
            let mut delta = -chol.solve(&g);
            let n = delta.norm();
            if n > opts.max_step {
                delta *= opts.max_step / n;
            }
            if delta.norm() < 1e-300 {
                break;
            }
            if let Some(s2) = step(&s, &delta) {
                if let Some(r2) = residual(&s2) {
                    let c2 = r2.norm();
                    if c2.is_finite() && c2 < cost {
                        s = s2;
                        r = r2;
                        cost = c2;
                        mu = (mu / 3.0).max(1e-15);
                        accepted = true;
                        break;
                    }
                }
            }
            mu *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    (s, cost)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let res = |x: &DVector<f64>| Some(DVector::from_vec(vec![1.0 - x[0], 10.0 * (x[1] - x[0] * x[0])]));
        let jac = |x: &DVector<f64>| Some(DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, -20.0 * x[0], 10.0]));
        let (x, c) =
            levenberg_marquardt(DVector::from_vec(vec![-1.2, 1.0]), res, jac, |x, d| Some(x + d), LmOptions::default());
        assert!(c < 1e-12);
        assert!((x[0] - 1.0).abs() < 1e-10 && (x[1] - 1.0).abs() < 1e-10);
    }
}
