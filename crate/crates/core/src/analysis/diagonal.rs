//! Diagonal actions on products `D × D`, `D × D̄` and products of compact
//! Hermitian symmetric spaces.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, RealSpan};
use crate::lie::{fingerprint, maximal_abelian, multi_fixed, AlgebraLabel, LinearAlgebraMap, RealFormAlgebra};
use crate::realizations::{
    characteristic_element, characteristic_element_of, kmat, CharacteristicElement, InvolutionRecipe, Realization,
};

use super::triple::{check_triple, is_maximal_abelian_in, TripleReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiagonalVariant {
    /// `D × D`, `σ = (σ′, σ′)`
    #[serde(rename = "DxD")]
    Same,
    /// `D × D̄`, `σ = τθ`
    #[serde(rename = "DxDbar")]
    Conjugate,
}

impl fmt::Display for DiagonalVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagonalVariant::Same => "D×D",
            DiagonalVariant::Conjugate => "D×D̄",
        })
    }
}

/// `g ⊕ g` realized block-diagonally in `gl(2m)`.
pub fn direct_sum(g: &RealFormAlgebra) -> Result<RealFormAlgebra> {
    let m = g.ambient_size();
    let zero = ExactMatrix::zeros(m, m);
    let mut basis = Vec::with_capacity(2 * g.dim());
    for b in g.basis() {
        basis.push(ExactMatrix::block_diag(&[b, &zero]));
        basis.push(ExactMatrix::block_diag(&[&zero, b]));
    }
    let l = g.label();
    RealFormAlgebra::make(&basis, AlgebraLabel::new(format!("{}+{}", l.family, l.family), &l.params))
}

/// `X ↦ (r₁ ⊕ r₂)(X)` for recipes with the same outer op.
pub fn block_recipe(name: &str, r1: &InvolutionRecipe, r2: &InvolutionRecipe) -> Result<InvolutionRecipe> {
    if r1.op() != r2.op() {
        return Err(Error::ShapeMismatch(format!("`{}` and `{}` have different outer parts", r1.name, r2.name)));
    }
    InvolutionRecipe::new(name, ExactMatrix::block_diag(&[r1.g(), r2.g()]), r1.op())
}

/// `(X, Y) ↦ (Y, X)`
pub fn swap_recipe(m: usize) -> Result<InvolutionRecipe> {
    InvolutionRecipe::ad("τ", kmat(m, 1))
}

#[derive(Clone, Debug)]
pub struct DiagonalSetup {
    pub variant: DiagonalVariant,
    pub algebra: RealFormAlgebra,
    pub tau: LinearAlgebraMap,
    pub theta: LinearAlgebraMap,
    pub sigma: LinearAlgebraMap,
    /// `(Z, Z)` or `(Z, −Z)`.
    pub z: CharacteristicElement,
}

/// The triple for the diagonal action of `G` on `D × D` or `D × D̄`.
pub fn diagonal_setup(
    r: &Realization,
    sigma_base: &InvolutionRecipe,
    variant: DiagonalVariant,
) -> Result<DiagonalSetup> {
    let m = r.algebra.ambient_size();
    let algebra = direct_sum(&r.algebra)?;
    let tau = LinearAlgebraMap::from_recipe(&algebra, &swap_recipe(m)?)?;
    let theta = LinearAlgebraMap::from_recipe(&algebra, &block_recipe("θ", &r.theta_recipe, &r.theta_recipe)?)?;
    let sigma = match variant {
        DiagonalVariant::Same => LinearAlgebraMap::from_recipe(&algebra, &block_recipe("σ", sigma_base, sigma_base)?)?,
        DiagonalVariant::Conjugate => tau.compose(&theta)?.with_name("τθ"),
    };
    let z0 = characteristic_element(&r.algebra, &r.theta)?;
    let second = match variant {
        DiagonalVariant::Same => z0.matrix.clone(),
        DiagonalVariant::Conjugate => z0.matrix.neg(),
    };
    let matrix = ExactMatrix::block_diag(&[&z0.matrix, &second]);
    let coords = algebra
        .coordinates(&matrix)
        .ok_or_else(|| Error::ConditionFailed("characteristic element leaves g ⊕ g".into()))?;
    Ok(DiagonalSetup { variant, algebra, tau, theta, sigma, z: CharacteristicElement { coords, matrix } })
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalReport {
    pub variant: DiagonalVariant,
    pub triple: TripleReport,
    /// Real rank of `g`, the rank of `(g ⊕ g)^{τθ} ≅ g`.
    pub rank_g: usize,
    /// Real rank of `g^{σ′}` (for `D × D`) or of `g` (for `D × D̄`).
    pub rank_sigma_side: usize,
    /// The slice has the form `{(X, −X)}`.
    pub slice_antidiagonal: bool,
    pub slice_dim: usize,
    pub pass: bool,
}

/// Checks the triple and certifies the rank equality through the
/// isomorphisms `(g⊕g)^{τθ} ≅ g` and `(g⊕g)^{σ,τθ} ≅ g^{σ′}`.
pub fn verify_diagonal(
    r: &Realization,
    sigma_base: &InvolutionRecipe,
    variant: DiagonalVariant,
) -> Result<DiagonalReport> {
    let s = diagonal_setup(r, sigma_base, variant)?;
    s.theta.check_automorphism(&s.algebra)?;
    s.sigma.check_automorphism(&s.algebra)?;
    let triple = check_triple(&s.algebra, &s.tau, &s.theta, &s.sigma, &s.z.coords)?;
    let rank_g = maximal_abelian(&r.algebra, &r.p).dim();
    let rank_sigma_side = match variant {
        DiagonalVariant::Same => {
            let sb = LinearAlgebraMap::from_recipe(&r.algebra, sigma_base)?;
            let h = multi_fixed(&r.algebra, &[(&sb, 1)])?;
            fingerprint(&r.algebra, &h, &r.theta)?.real_rank
        }
        DiagonalVariant::Conjugate => rank_g,
    };
    let part = multi_fixed(&s.algebra, &[(&s.theta, -1), (&s.sigma, 1), (&s.tau, -1)])?;
    let a = maximal_abelian(&s.algebra, &part);
    let m = r.algebra.ambient_size();
    let slice_antidiagonal = a.basis().iter().all(|v| {
        let x = s.algebra.to_matrix(v);
        (0..m).all(|i| (0..m).all(|j| *x.get(i, j) == -x.get(m + i, m + j).clone()))
    });
    let pass = triple.pass && triple.rank_pair == rank_g && triple.rank_sigma == rank_sigma_side && slice_antidiagonal;
    Ok(DiagonalReport { variant, triple, rank_g, rank_sigma_side, slice_antidiagonal, slice_dim: a.dim(), pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompactDiagReport {
    /// `σ′θᵢ = θᵢσ′` for both factors.
    pub sigma_commutes: bool,
    /// `σ′Zᵢ = −Zᵢ` for both factors.
    pub sigma_anti: bool,
    /// `dim (g_U ⊕ g_U)^{−τ,−θ}` and its maximal abelian dimension.
    pub anti_dim: usize,
    pub anti_rank: usize,
    /// `dim (g_U ⊕ g_U)^{σ,−τ,−θ}`, its slice dimension, and the dimension
    /// of `g_U^{σ′,−θ₁,−θ₂}`.
    pub sigma_anti_dim: usize,
    pub slice_dim: usize,
    pub base_sigma_anti_dim: usize,
    /// The slice is maximal abelian in `(g_U ⊕ g_U)^{−τ,−θ}`.
    pub slice_maximal: bool,
    pub pass: bool,
}

/// The triple `(τ = swap, θ = (θ₁, θ₂), σ = (σ′, σ′))` on `g_U ⊕ g_U`.
pub fn compact_diag_setup(
    g: &RealFormAlgebra,
    theta1: &InvolutionRecipe,
    theta2: &InvolutionRecipe,
    sigma_base: &InvolutionRecipe,
) -> Result<(RealFormAlgebra, LinearAlgebraMap, LinearAlgebraMap, LinearAlgebraMap)> {
    let m = g.ambient_size();
    let sum = direct_sum(g)?;
    let tau = LinearAlgebraMap::from_recipe(&sum, &swap_recipe(m)?)?;
    let theta = LinearAlgebraMap::from_recipe(&sum, &block_recipe("θ", theta1, theta2)?)?;
    let sigma = LinearAlgebraMap::from_recipe(&sum, &block_recipe("σ", sigma_base, sigma_base)?)?;
    Ok((sum, tau, theta, sigma))
}

fn characteristic_of(g: &RealFormAlgebra, theta: &LinearAlgebraMap) -> Result<CharacteristicElement> {
    let k = multi_fixed(g, &[(theta, 1)])?;
    let p = multi_fixed(g, &[(theta, -1)])?;
    characteristic_element_of(g, &k, &p)
}

/// Certifies the conditions for the diagonal action of `G_U` on a product of
/// two compact Hermitian symmetric spaces.
pub fn verify_compact_diag(
    g: &RealFormAlgebra,
    theta1: &InvolutionRecipe,
    theta2: &InvolutionRecipe,
    sigma_base: &InvolutionRecipe,
) -> Result<CompactDiagReport> {
    let t1 = LinearAlgebraMap::from_recipe(g, theta1)?;
    let t2 = LinearAlgebraMap::from_recipe(g, theta2)?;
    let sb = LinearAlgebraMap::from_recipe(g, sigma_base)?;
    for m in [&t1, &t2, &sb] {
        m.check_involution()?;
        m.check_automorphism(g)?;
    }
    let sigma_commutes = sb.commutes_with(&t1) && sb.commutes_with(&t2);
    let mut sigma_anti = true;
    for t in [&t1, &t2] {
        let z = characteristic_of(g, t)?;
        let neg: Vec<_> = z.coords.iter().map(|x| -x).collect();
        sigma_anti &= sb.apply(&z.coords) == neg;
    }
    let (sum, tau, theta, sigma) = compact_diag_setup(g, theta1, theta2, sigma_base)?;
    let anti = multi_fixed(&sum, &[(&tau, -1), (&theta, -1)])?;
    let part = multi_fixed(&sum, &[(&sigma, 1), (&tau, -1), (&theta, -1)])?;
    let a = maximal_abelian(&sum, &part);
    let slice_maximal = is_maximal_abelian_in(&sum, &a, &anti);
    let base: RealSpan = multi_fixed(g, &[(&sb, 1), (&t1, -1), (&t2, -1)])?;
    let anti_rank = maximal_abelian(&sum, &anti).dim();
    Ok(CompactDiagReport {
        sigma_commutes,
        sigma_anti,
        anti_dim: anti.dim(),
        anti_rank,
        sigma_anti_dim: part.dim(),
        slice_dim: a.dim(),
        base_sigma_anti_dim: base.dim(),
        slice_maximal,
        pass: sigma_commutes && sigma_anti && slice_maximal && part.dim() == base.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{build, ipq, table3_sigma, Family, MatrixOp};

    #[test]
    fn su11_products() {
        let r = build(&Family::Su { p: 1, q: 1 }, 8).unwrap();
        let s = table3_sigma(&r.family).unwrap();
        for v in [DiagonalVariant::Same, DiagonalVariant::Conjugate] {
            let rep = verify_diagonal(&r, &s, v).unwrap();
            assert!(rep.pass, "{v}: {rep:?}");
            assert_eq!(rep.triple.rank_sigma, 1);
        }
    }

    #[test]
    fn sp2_product_slice() {
        let r = build(&Family::SpR { n: 2 }, 8).unwrap();
        let s = table3_sigma(&r.family).unwrap();
        let rep = verify_diagonal(&r, &s, DiagonalVariant::Same).unwrap();
        assert!(rep.pass && rep.slice_antidiagonal);
        assert_eq!(rep.slice_dim, 2);
    }

    #[test]
    fn compact_products() {
        for m in [2usize, 3] {
            let g = build(&Family::SuCompact { m }, 8).unwrap().algebra;
            let t = InvolutionRecipe::ad("θ", ipq(1, m - 1)).unwrap();
            let s = InvolutionRecipe::op_only("conj", m, MatrixOp::Conjugate);
            let rep = verify_compact_diag(&g, &t, &t, &s).unwrap();
            assert!(rep.pass, "su({m}): {rep:?}");
            if m == 2 {
                assert_eq!((rep.anti_rank, rep.slice_dim), (1, 1));
            }
        }
    }
}
