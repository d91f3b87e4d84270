use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational, RealSpan};
use crate::lie::{LinearAlgebraMap, RealFormAlgebra};
use crate::realizations::CharacteristicElement;

use super::action::{ActionKind, ActionSetup};
use super::linalg::{containment_defect, flatten_real, frobenius, inverse, orthonormal_span, to_cmat};
use super::search::{act, exp_of, iwasawa, orbit_residual, point, slice_search, torus_element};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

/// Residual of a planted factorization counted as recovered.
pub const PLANTED_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { samples: 100, tol: 1e-6, seed: 0, restarts: 32 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStatus {
    Pass,
    Inconclusive,
}

/// Largest residual of each condition over all samples.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Residuals {
    pub slice_meets_orbit: f64,
    pub sigma_fixes_slice: f64,
    pub sigma_preserves_orbits: f64,
    pub j_transversality: f64,
}

impl Residuals {
    fn max(&self, o: &Residuals) -> Residuals {
        Residuals {
            slice_meets_orbit: self.slice_meets_orbit.max(o.slice_meets_orbit),
            sigma_fixes_slice: self.sigma_fixes_slice.max(o.sigma_fixes_slice),
            sigma_preserves_orbits: self.sigma_preserves_orbits.max(o.sigma_preserves_orbits),
            j_transversality: self.j_transversality.max(o.j_transversality),
        }
    }

    fn below(&self, tol: f64) -> bool {
        [self.slice_meets_orbit, self.sigma_fixes_slice, self.sigma_preserves_orbits, self.j_transversality]
            .iter()
            .all(|r| *r < tol)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VisibilityCertificate {
    pub schema_version: u32,
    pub action: String,
    pub kind: String,
    pub group: String,
    pub subgroup: String,
    pub space: String,
    pub seed: u64,
    pub tolerance: f64,
    pub samples: usize,
    pub restarts: usize,
    pub slice_dim: usize,
    pub exact_preconditions: bool,
    pub residuals: Residuals,
    /// Samples with some residual at or above the tolerance.
    pub inconclusive_samples: Vec<usize>,
    pub status: CertificateStatus,
}

impl VisibilityCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn uniform<R: Rng>(rng: &mut R, n: usize, half_width: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-half_width..half_width)).collect()
}

/// Checks `σ(Σ tⱼAⱼ) = Σ tⱼAⱼ` exactly at rational `t` nearest to the float
/// slice coordinates; returns 0 when the identity holds.
fn sigma_slice_residual(s: &ActionSetup, t: &[f64]) -> f64 {
    const DEN: i64 = 1 << 20;
    let mut x = ExactMatrix::zeros(s.m, s.m);
    for (a, ti) in s.a_exact.iter().zip(t) {
        let q = Rational::new((ti * DEN as f64).round() as i64, DEN);
        x = x.add(&a.scale_real(&q));
    }
    let d = s.sigma_exact.apply(&x).sub(&x);
    if d.is_zero() {
        0.0
    } else {
        frobenius(&to_cmat(&d))
    }
}

/// Sine of the largest angle between `J_x(T_x S)` and `T_x(H·x)` at the
/// slice point `x = exp(Σ tⱼAⱼ)·o`, computed after translating back to `o`.
pub fn j_transversality_defect(s: &ActionSetup, t: &[f64]) -> Result<f64> {
    let a = torus_element(s, t);
    let a_inv = inverse(&a)?;
    let orbit: Vec<DVector<f64>> =
        s.h.iter()
            .map(|y| {
                let w = &a_inv * y * &a;
                flatten_real(&(&w - s.theta.apply_algebra(&w)).scale(0.5))
            })
            .collect();
    let j: Vec<DVector<f64>> = s.a.iter().map(|v| flatten_real(&(&s.z * v - v * &s.z))).collect();
    Ok(containment_defect(&orthonormal_span(&j, 1e-12), &orthonormal_span(&orbit, 1e-8)))
}

struct SampleOutcome {
    residuals: Residuals,
}

fn certify_sample(s: &ActionSetup, opts: &CertifyOptions, index: usize) -> Result<SampleOutcome> {
    let mut rng = stream_rng(opts.seed, 2 * index as u64);
    let mut orbit_rng = stream_rng(opts.seed, 2 * index as u64 + 1);
    let stop = (opts.tol * 1e-3).min(1e-10);
    let c = uniform(&mut rng, s.p.len(), 1.0);
    let g = exp_of(&s.p, &c, s.m);
    let x = point(s, &g)?;
    let (h, t, slice_res) = if s.kind == ActionKind::Unipotent {
        let iw = iwasawa(s, &g, f64::INFINITY)?;
        let res = frobenius(&(act(s, &iw.n, &point(s, &iw.a)?)? - &x));
        (iw.n, iw.t, res)
    } else {
        let fit = slice_search(s, &x, opts.restarts, stop, &mut rng);
        (fit.h, fit.t, fit.residual)
    };
    let sigma_fixes_slice = sigma_slice_residual(s, &t);
    // σ(h·a·o) = σ(h)·a·o, so σ(h)·h⁻¹ is the candidate in H.
    let y = s.sigma.apply_group(&x)?;
    let hint = s.sigma.apply_group(&h)? * inverse(&h)?;
    let (_, orbit_res) = orbit_residual(s, &x, &y, Some(&hint), opts.restarts, stop, &mut orbit_rng);
    let j = j_transversality_defect(s, &t)?;
    Ok(SampleOutcome {
        residuals: Residuals {
            slice_meets_orbit: slice_res,
            sigma_fixes_slice,
            sigma_preserves_orbits: orbit_res,
            j_transversality: j,
        },
    })
}

/// Runs the four checks on `opts.samples` random points `x = exp(X)·o`,
/// `X ∈ p`. Samples are independent and evaluated in parallel; the result
/// depends only on the setup and options.
pub fn certify(s: &ActionSetup, opts: &CertifyOptions) -> Result<VisibilityCertificate> {
    if !s.exact_preconditions {
        return Err(Error::ConditionFailed(format!("exact preconditions fail for `{}`", s.id)));
    }
    let outcomes: Vec<Result<SampleOutcome>> =
        (0..opts.samples).into_par_iter().map(|i| certify_sample(s, opts, i)).collect();
    let mut residuals = Residuals::default();
    let mut inconclusive = Vec::new();
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(o) => {
                if !o.residuals.below(opts.tol) {
                    inconclusive.push(i);
                }
                residuals = residuals.max(&o.residuals);
            }
            Err(_) => {
                inconclusive.push(i);
                residuals.slice_meets_orbit = f64::INFINITY;
            }
        }
    }
    let status = if inconclusive.is_empty() { CertificateStatus::Pass } else { CertificateStatus::Inconclusive };
    Ok(VisibilityCertificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        action: s.id.clone(),
        kind: s.kind.to_string(),
        group: s.group.clone(),
        subgroup: s.subgroup.clone(),
        space: s.space.clone(),
        seed: opts.seed,
        tolerance: opts.tol,
        samples: opts.samples,
        restarts: opts.restarts,
        slice_dim: s.a.len(),
        exact_preconditions: s.exact_preconditions,
        residuals,
        inconclusive_samples: inconclusive,
        status,
    })
}

/// Outcome of recovering planted factorizations `x = h·a·o`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlantedReport {
    pub action: String,
    pub trials: usize,
    pub recovered: usize,
    pub threshold: f64,
    pub worst: f64,
}

impl PlantedReport {
    pub fn rate(&self) -> f64 {
        self.recovered as f64 / self.trials.max(1) as f64
    }
}

/// Plants `x = h·exp(Σ tⱼAⱼ)·o` with random `h ∈ exp(h)` and `t`, and
/// checks that the slice search finds a factorization with residual below
/// [`PLANTED_THRESHOLD`].
pub fn planted_recovery(s: &ActionSetup, trials: usize, seed: u64, restarts: usize) -> Result<PlantedReport> {
    let residuals: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let mut rng = stream_rng(seed, i as u64);
            let h = exp_of(&s.h, &uniform(&mut rng, s.h.len(), 1.0), s.m);
            let t = uniform(&mut rng, s.a.len(), 1.0);
            let x = act(s, &h, &point(s, &torus_element(s, &t))?)?;
            if s.kind == ActionKind::Unipotent {
                let g = &h * torus_element(s, &t);
                return Ok(match iwasawa(s, &g, f64::INFINITY) {
                    Ok(iw) => frobenius(&(act(s, &iw.n, &point(s, &iw.a)?)? - &x)),
                    Err(_) => f64::INFINITY,
                });
            }
            Ok(slice_search(s, &x, restarts, PLANTED_THRESHOLD * 1e-3, &mut rng).residual)
        })
        .collect::<Result<_>>()?;
    Ok(PlantedReport {
        action: s.id.clone(),
        trials,
        recovered: residuals.iter().filter(|r| **r < PLANTED_THRESHOLD).count(),
        threshold: PLANTED_THRESHOLD,
        worst: residuals.iter().cloned().fold(0.0, f64::max),
    })
}

/// Largest factor error when decomposing `g = n₀·a₀·k₀` built from random
/// known factors.
pub fn iwasawa_round_trip(s: &ActionSetup, trials: usize, seed: u64) -> Result<f64> {
    if s.kind != ActionKind::Unipotent {
        return Err(Error::UnsupportedAction(format!("{} has no Iwasawa factors", s.id)));
    }
    let errs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let mut rng = stream_rng(seed, i as u64);
            let n0 = exp_of(&s.h, &uniform(&mut rng, s.h.len(), 1.0), s.m);
            let a0 = torus_element(s, &uniform(&mut rng, s.a.len(), 1.0));
            let k0 = exp_of(&s.k, &uniform(&mut rng, s.k.len(), 1.0), s.m);
            let g = &n0 * &a0 * &k0;
            let iw = iwasawa(s, &g, f64::INFINITY)?;
            Ok([frobenius(&(&iw.n - &n0)), frobenius(&(&iw.a - &a0)), frobenius(&(&iw.k - &k0)), iw.residual]
                .into_iter()
                .fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

/// Exact check `σ∘ad(Z) = −ad(Z)∘σ` on `p`.
pub fn antiholomorphy_exact(
    g: &RealFormAlgebra,
    sigma: &LinearAlgebraMap,
    z: &CharacteristicElement,
    p: &RealSpan,
) -> bool {
    p.basis().iter().all(|v| {
        let lhs = sigma.apply(&g.bracket_coords(&z.coords, v));
        let rhs: Vec<Rational> = g.bracket_coords(&z.coords, &sigma.apply(v)).iter().map(|x| -x).collect();
        lhs == rhs
    })
}
