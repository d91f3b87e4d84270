use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

use super::action::ActionSetup;
use super::linalg::{combine, expm, flatten_real, frobenius, inverse, CMat};
use super::lm::{levenberg_marquardt, LmOptions};

/// `P(g) = g·Θ(g)⁻¹`
pub fn point(s: &ActionSetup, g: &CMat) -> Result<CMat> {
    Ok(g * s.theta.apply_group_inverse(g)?)
}

/// `h·P·Θ(h)⁻¹`, the action of `h` on a point.
pub fn act(s: &ActionSetup, h: &CMat, p: &CMat) -> Result<CMat> {
    Ok(h * p * s.theta.apply_group_inverse(h)?)
}

/// `exp(Σ tⱼ Aⱼ)`
pub fn torus_element(s: &ActionSetup, t: &[f64]) -> CMat {
    expm(&combine(&s.a, t, s.m))
}

/// `exp(Σ cᵢ Yᵢ)` over a basis.
pub fn exp_of(basis: &[CMat], c: &[f64], m: usize) -> CMat {
    expm(&combine(basis, c, m))
}

/// Jacobian columns `Y·Q − Q·θ(Y)` of `h ↦ h·Q·Θ(h)⁻¹` at `h = e`.
fn orbit_columns(s: &ActionSetup, q: &CMat) -> Vec<DVector<f64>> {
    s.h.iter().map(|y| flatten_real(&(y * q - q * s.theta.apply_algebra(y)))).collect()
}

fn random_coeffs<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect()
}

/// A factorization `x = h·exp(Σ tⱼAⱼ)·o` and its residual in `P`.
#[derive(Clone, Debug)]
pub struct SliceFit {
    pub h: CMat,
    pub t: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone)]
struct SliceState {
    h: CMat,
    t: DVector<f64>,
}

fn slice_value(s: &ActionSetup, st: &SliceState) -> Option<CMat> {
    let e = expm(&combine(&s.a, st.t.as_slice(), s.m).scale(2.0));
    act(s, &st.h, &e).ok()
}

fn fit_slice_once(s: &ActionSetup, target: &CMat, h0: CMat, t0: Vec<f64>, opts: LmOptions) -> SliceFit {
    let r = s.a.len();
    let res = |st: &SliceState| slice_value(s, st).map(|v| flatten_real(&(v - target)));
    let jac = |st: &SliceState| {
        let e = expm(&combine(&s.a, st.t.as_slice(), s.m).scale(2.0));
        let right = s.theta.apply_group_inverse(&st.h).ok()?;
        let q = &st.h * &e * &right;
        let mut cols = orbit_columns(s, &q);
        for a in &s.a {
            cols.push(flatten_real(&(&st.h * (a.scale(2.0) * &e) * &right)));
        }
        Some(DMatrix::from_columns(&cols))
    };
    let step = |st: &SliceState, d: &DVector<f64>| {
        let nh = s.h.len();
        let dh = exp_of(&s.h, &d.as_slice()[..nh], s.m);
        Some(SliceState { h: dh * &st.h, t: &st.t + d.rows(nh, r) })
    };
    let start = SliceState { h: h0, t: DVector::from_vec(t0) };
    let (st, residual) = levenberg_marquardt(start, res, jac, step, opts);
    SliceFit { h: st.h, t: st.t.as_slice().to_vec(), residual }
}

/// Multi-restart search for `x = h·a·o`. Restart 0 starts at `(e, 0)`;
/// later restarts draw random starts from `rng`. Stops once the residual
/// is below `stop`.
pub fn slice_search<R: Rng>(s: &ActionSetup, target: &CMat, restarts: usize, stop: f64, rng: &mut R) -> SliceFit {
    let opts = LmOptions { target: stop * 1e-3, ..LmOptions::default() };
    let mut best: Option<SliceFit> = None;
    for k in 0..restarts.max(1) {
        let (h0, t0) = if k == 0 {
            (CMat::identity(s.m, s.m), vec![0.0; s.a.len()])
        } else {
            let c = random_coeffs(rng, s.h.len(), 1.0);
            (exp_of(&s.h, &c, s.m), random_coeffs(rng, s.a.len(), 1.0))
        };
        let fit = fit_slice_once(s, target, h0, t0, opts);
        if best.as_ref().is_none_or(|b| fit.residual < b.residual) {
            best = Some(fit);
        }
        if best.as_ref().is_some_and(|b| b.residual < stop) {
            break;
        }
    }
    best.expect("at least one restart")
}

/// Smallest `‖h·x − y‖` found over `h ∈ H` by multi-restart descent, with
/// the minimizing `h`. Restart 0 starts from `hint` (or `e`). A small
/// residual certifies `y ∈ H·x`; a large one is inconclusive.
pub fn orbit_residual<R: Rng>(
    s: &ActionSetup,
    x: &CMat,
    y: &CMat,
    hint: Option<&CMat>,
    restarts: usize,
    stop: f64,
    rng: &mut R,
) -> (CMat, f64) {
    let opts = LmOptions { target: stop * 1e-3, ..LmOptions::default() };
    let res = |h: &CMat| act(s, h, x).ok().map(|v| flatten_real(&(v - y)));
    let jac = |h: &CMat| {
        let q = act(s, h, x).ok()?;
        Some(DMatrix::from_columns(&orbit_columns(s, &q)))
    };
    let step = |h: &CMat, d: &DVector<f64>| Some(exp_of(&s.h, d.as_slice(), s.m) * h);
    let mut best: Option<(CMat, f64)> = None;
    for k in 0..restarts.max(1) {
        let h0 = match (k, hint) {
            (0, Some(h)) => h.clone(),
            (0, None) => CMat::identity(s.m, s.m),
            _ => exp_of(&s.h, &random_coeffs(rng, s.h.len(), 1.0), s.m),
        };
        let out = if s.h.is_empty() {
            let r = res(&h0).map(|v| v.norm()).unwrap_or(f64::INFINITY);
            (h0, r)
        } else {
            levenberg_marquardt(h0, res, jac, step, opts)
        };
        if best.as_ref().is_none_or(|b| out.1 < b.1) {
            best = Some(out);
        }
        if best.as_ref().is_some_and(|b| b.1 < stop) {
            break;
        }
    }
    best.expect("at least one restart")
}

/// `g = n·a·k` with `n ∈ N₊`, `a ∈ A`, `k ∈ K`.
#[derive(Clone, Debug)]
pub struct Iwasawa {
    pub n: CMat,
    pub a: CMat,
    pub k: CMat,
    /// Torus coordinates of `a`.
    pub t: Vec<f64>,
    /// `max(‖n·a·k − g‖, ‖Θ(k) − k‖)`
    pub residual: f64,
}

/// Iwasawa decomposition for a unipotent action setup: solves
/// `n·a²·Θ(n)⁻¹ = P(g)` by Levenberg–Marquardt from `(e, 0)` and sets
/// `k = (n·a)⁻¹·g`.
pub fn iwasawa(s: &ActionSetup, g: &CMat, tol: f64) -> Result<Iwasawa> {
    let target = point(s, g)?;
    let opts = LmOptions { target: 1e-15, max_iter: 400, ..LmOptions::default() };
    let fit = fit_slice_once(s, &target, CMat::identity(s.m, s.m), vec![0.0; s.a.len()], opts);
    let a = torus_element(s, &fit.t);
    let k = inverse(&(&fit.h * &a))? * g;
    let in_k = frobenius(&(s.theta.apply_group(&k)? - &k));
    let residual = frobenius(&(&fit.h * &a * &k - g)).max(in_k).max(fit.residual);
    if residual.is_nan() || residual >= tol {
        return Err(Error::Numeric(format!("Iwasawa decomposition did not converge: residual {residual:.3e}")));
    }
    Ok(Iwasawa { n: fit.h, a, k, t: fit.t, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::action::action_setup;
    use crate::numeric::certificate::stream_rng;

    #[test]
    fn iwasawa_of_identity() {
        let s = action_setup("sl2R:N").unwrap();
        let e = CMat::identity(s.m, s.m);
        let iw = iwasawa(&s, &e, 1e-12).unwrap();
        for f in [&iw.n, &iw.a, &iw.k] {
            assert!(frobenius(&(f - &e)) < 1e-12);
        }
        assert!(iw.t.iter().all(|t| t.abs() < 1e-12));
    }

    #[test]
    fn slice_search_finds_torus_points() {
        let s = action_setup("su2:SO2").unwrap();
        let x = point(&s, &torus_element(&s, &[0.4])).unwrap();
        let fit = slice_search(&s, &x, 4, 1e-12, &mut stream_rng(0, 0));
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn orbit_residual_of_point_with_itself() {
        let s = action_setup("sp2R:GL2R").unwrap();
        let x = point(&s, &exp_of(&s.p, &[0.3, -0.2, 0.1, 0.5, -0.4, 0.2], s.m)).unwrap();
        let (_, r) = orbit_residual(&s, &x, &x, None, 1, 1e-12, &mut stream_rng(0, 1));
        assert!(r < 1e-12);
    }
}
