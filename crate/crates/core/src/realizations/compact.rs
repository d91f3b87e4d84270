//! Compact symmetric triples whose involutions `τ`, `θ` cannot be made to
//! commute, together with a large subalgebra on which they do.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, RealSpan};
use crate::lie::{multi_fixed, AlgebraLabel, LinearAlgebraMap, RealFormAlgebra};

use super::catalog::jmat;
use super::families::{ipq, preserves_bilinear, preserves_hermitian, real_entries, trace_free};
use super::recipe::{InvolutionRecipe, MatrixOp};

/// Ambient bound for the compact constructions.
pub const COMPACT_MAX_AMBIENT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeIIVariant {
    /// `(su(2n), sp(n), s(u(2p'+1)+u(2q'+1)))`
    #[serde(rename = "II-1")]
    SuSp,
    /// `(so(2n), so(2p'+1)+so(2q'+1), u(n))`
    #[serde(rename = "II-2")]
    SoU,
}

impl fmt::Display for TypeIIVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeIIVariant::SuSp => "II-1",
            TypeIIVariant::SoU => "II-2",
        })
    }
}

impl FromStr for TypeIIVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "II-1" | "ii-1" | "1" => Ok(TypeIIVariant::SuSp),
            "II-2" | "ii-2" | "2" => Ok(TypeIIVariant::SoU),
            _ => Err(Error::Dataset(format!("unknown variant `{s}`"))),
        }
    }
}

/// The compact triple with its commuting subalgebra `g_U′`.
#[derive(Clone, Debug)]
pub struct CompactTypeII {
    pub variant: TypeIIVariant,
    pub p: usize,
    pub q: usize,
    pub algebra: RealFormAlgebra,
    pub tau: LinearAlgebraMap,
    pub theta: LinearAlgebraMap,
    pub sigma: LinearAlgebraMap,
    /// `g_U′`, supported away from coordinates `p'` and `n+p'`.
    pub sub: RealFormAlgebra,
    pub sub_tau: LinearAlgebraMap,
    pub sub_theta: LinearAlgebraMap,
    /// `g_U^{−τ,−θ}`
    pub anti: RealSpan,
    /// `g_U′^{−τ,−θ}` in coordinates of `g_U`.
    pub sub_anti: RealSpan,
}

/// `diag(1^{p'}, −1^{q'+1}, 1^{p'+1}, −1^{q'})`
pub fn g0(p: usize, q: usize) -> ExactMatrix {
    let d: Vec<i64> =
        [(p, 1), (q + 1, -1), (p + 1, 1), (q, -1)].iter().flat_map(|&(k, s)| std::iter::repeat_n(s, k)).collect();
    ExactMatrix::diag_int(&d)
}

/// Expected dimensions of `g_U^{τ,θ}`, `g_U^{−τ,−θ}` and `g_U^{σ,−τ,−θ}`.
pub fn expected_dims(variant: TypeIIVariant, p: usize, q: usize) -> (usize, usize, usize) {
    match variant {
        TypeIIVariant::SuSp => (p * (2 * p + 1) + q * (2 * q + 1) + 1, 4 * p * q, 2 * p * q),
        TypeIIVariant::SoU => (p * p + q * q, 2 * p * q, p * q),
    }
}

fn restrict(sub: &RealFormAlgebra, map: &LinearAlgebraMap, condition: &str) -> Result<LinearAlgebraMap> {
    let recipe = map.recipe().expect("compact maps carry recipes");
    LinearAlgebraMap::from_recipe(sub, recipe).map_err(|e| match e {
        Error::NotStabilized { map, index } => {
            Error::ConditionFailed(format!("{condition}: `{map}` moves basis element {index} of g_U′ out"))
        }
        e => e,
    })
}

fn embed(from: &RealFormAlgebra, to: &RealFormAlgebra, span: &RealSpan) -> Result<RealSpan> {
    let coords: Vec<_> = span
        .basis()
        .iter()
        .map(|v| {
            to.coordinates(&from.to_matrix(v))
                .ok_or_else(|| Error::ConditionFailed("g_U′ is not contained in g_U".into()))
        })
        .collect::<Result<_>>()?;
    Ok(RealSpan::span_of(to.dim(), &coords))
}

/// Builds the triple `(g_U, τ, θ, σ)` and `g_U′`, certifying exactly that
/// `τ`, `θ` stabilize `g_U′`, commute there, and that
/// `g_U^{−τ,−θ} = g_U′^{−τ,−θ}`.
pub fn compact_type_ii_data(variant: TypeIIVariant, p: usize, q: usize) -> Result<CompactTypeII> {
    if p == 0 || q == 0 {
        return Err(Error::ParameterOutOfRange(format!("p' = {p}, q' = {q}; both must be ≥ 1")));
    }
    let n = p + q + 1;
    let m = 2 * n;
    if m > COMPACT_MAX_AMBIENT {
        return Err(Error::ParameterOutOfRange(format!("ambient size {m} > {COMPACT_MAX_AMBIENT}")));
    }
    let id = ExactMatrix::identity(m);
    let mut proj = id.clone();
    proj.set(p, p, Default::default());
    proj.set(n + p, n + p, Default::default());
    let support = move |x: &ExactMatrix| x.sub(&proj.mul(x).mul(&proj));
    let (herm, bil) = (preserves_hermitian(&id), preserves_bilinear(&id));
    let (tau_r, theta_r, label, sub_label) = match variant {
        TypeIIVariant::SuSp => (
            InvolutionRecipe::new("τ", jmat(n), MatrixOp::Conjugate)?,
            InvolutionRecipe::ad("θ", g0(p, q))?,
            AlgebraLabel::new("su", &[m as i64]),
            AlgebraLabel::new("su", &[m as i64 - 2]),
        ),
        TypeIIVariant::SoU => (
            InvolutionRecipe::ad("τ", g0(p, q))?,
            InvolutionRecipe::ad("θ", jmat(n))?,
            AlgebraLabel::new("so", &[m as i64]),
            AlgebraLabel::new("so", &[m as i64 - 2]),
        ),
    };
    let sigma_r = InvolutionRecipe::new("σ", ipq(n, n), MatrixOp::Conjugate)?;
    let (algebra, sub) = match variant {
        TypeIIVariant::SuSp => (
            RealFormAlgebra::from_constraints(m, &[&herm, &trace_free], label)?,
            RealFormAlgebra::from_constraints(m, &[&herm, &trace_free, &support], sub_label)?,
        ),
        TypeIIVariant::SoU => (
            RealFormAlgebra::from_constraints(m, &[&real_entries, &bil], label)?,
            RealFormAlgebra::from_constraints(m, &[&real_entries, &bil, &support], sub_label)?,
        ),
    };
    let tau = LinearAlgebraMap::from_recipe(&algebra, &tau_r)?;
    let theta = LinearAlgebraMap::from_recipe(&algebra, &theta_r)?;
    let sigma = LinearAlgebraMap::from_recipe(&algebra, &sigma_r)?;
    for map in [&tau, &theta, &sigma] {
        map.check_involution()?;
        map.check_automorphism(&algebra)?;
    }

    let stabilize = "τ and θ stabilize g_U′";
    let sub_tau = restrict(&sub, &tau, stabilize)?;
    let sub_theta = restrict(&sub, &theta, stabilize)?;
    if !sub_tau.commutes_with(&sub_theta) {
        return Err(Error::ConditionFailed("τ and θ commute on g_U′".into()));
    }
    let anti = multi_fixed(&algebra, &[(&tau, -1), (&theta, -1)])?;
    let sub_anti = embed(&sub, &algebra, &multi_fixed(&sub, &[(&sub_tau, -1), (&sub_theta, -1)])?)?;
    if anti != sub_anti {
        return Err(Error::ConditionFailed(format!(
            "g_U^{{−τ,−θ}} = g_U′^{{−τ,−θ}}: dimensions {} and {}",
            anti.dim(),
            sub_anti.dim()
        )));
    }
    Ok(CompactTypeII { variant, p, q, algebra, tau, theta, sigma, sub, sub_tau, sub_theta, anti, sub_anti })
}

impl CompactTypeII {
    /// Embeds a span of `g_U′` into coordinates of `g_U`.
    pub fn embed_sub(&self, span: &RealSpan) -> Result<RealSpan> {
        embed(&self.sub, &self.algebra, span)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{fingerprint, LinearAlgebraMap};
    use crate::realizations::expected_fingerprint;

    #[test]
    fn su6_dimensions_and_fixed_algebras() {
        let d = compact_type_ii_data(TypeIIVariant::SuSp, 1, 1).unwrap();
        assert_eq!(d.algebra.dim(), 35);
        assert_eq!(d.sub.dim(), 15);
        assert!(!d.tau.commutes_with(&d.theta));
        assert!(d.sigma.commutes_with(&d.tau) && d.sigma.commutes_with(&d.theta));
        let id = LinearAlgebraMap::identity(&d.algebra);
        let fixed = multi_fixed(&d.algebra, &[(&d.tau, 1), (&d.theta, 1)]).unwrap();
        let fp = fingerprint(&d.algebra, &fixed, &id).unwrap();
        assert_eq!(fp, expected_fingerprint("sp(1)+sp(1)+u(1)", &Default::default()).unwrap());
        assert_eq!(d.anti.dim(), 4);
        let sa = multi_fixed(&d.algebra, &[(&d.sigma, 1), (&d.tau, -1), (&d.theta, -1)]).unwrap();
        assert_eq!(sa.dim(), 2);
        let gs = multi_fixed(&d.algebra, &[(&d.sigma, 1)]).unwrap();
        let fp = fingerprint(&d.algebra, &gs, &id).unwrap();
        assert_eq!(fp, expected_fingerprint("so(6)", &Default::default()).unwrap());
    }

    #[test]
    fn so6_variant() {
        let d = compact_type_ii_data(TypeIIVariant::SoU, 1, 1).unwrap();
        assert_eq!(d.algebra.dim(), 15);
        let (a, b, c) = expected_dims(TypeIIVariant::SoU, 1, 1);
        let fixed = multi_fixed(&d.algebra, &[(&d.tau, 1), (&d.theta, 1)]).unwrap();
        let sa = multi_fixed(&d.algebra, &[(&d.sigma, 1), (&d.tau, -1), (&d.theta, -1)]).unwrap();
        assert_eq!((fixed.dim(), d.anti.dim(), sa.dim()), (a, b, c));
    }

    #[test]
    fn bounds() {
        assert!(compact_type_ii_data(TypeIIVariant::SuSp, 0, 1).is_err());
        assert!(compact_type_ii_data(TypeIIVariant::SuSp, 3, 2).is_err());
    }
}
