use std::fmt;

use serde::Serialize;

use crate::analysis::{
    check_triple, compact_diag_setup, diagonal_setup, is_maximal_abelian_in, row_involutions, slice_subspace,
    verify_compact_diag, verify_compact_type_ii, DiagonalVariant,
};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational, RealSpan};
use crate::lie::{maximal_abelian, multi_fixed, LinearAlgebraMap, RealFormAlgebra};
use crate::realizations::expr::Params;
use crate::realizations::{
    build, build_algebra, characteristic_element, characteristic_element_of, compact_type_ii_data, ipq, table3_sigma,
    Dataset, Family, InvolutionRecipe, MatrixOp, TypeIIVariant,
};
use crate::roots::{lexicographic_functional, nilpotent_part, positive_system, rational_torus, root_decomposition};

use super::linalg::{frobenius, scale, to_cmat, CMat, NumRecipe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionKind {
    SymmetricSubgroup,
    Diagonal,
    DiagonalConjugate,
    Unipotent,
    Compact,
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionKind::SymmetricSubgroup => "symmetric-subgroup",
            ActionKind::Diagonal => "diagonal",
            ActionKind::DiagonalConjugate => "diagonal-conjugate",
            ActionKind::Unipotent => "unipotent",
            ActionKind::Compact => "compact",
        })
    }
}

/// Everything the certifier needs about an action `H ↷ D = G/K`, with `D`
/// modeled by `P(g) = g·Θ(g)⁻¹`.
#[derive(Clone, Debug)]
pub struct ActionSetup {
    pub id: String,
    pub kind: ActionKind,
    pub group: String,
    pub subgroup: String,
    pub space: String,
    /// Size of the ambient matrices.
    pub m: usize,
    pub theta: NumRecipe,
    pub sigma: NumRecipe,
    pub sigma_exact: InvolutionRecipe,
    /// Basis of `h`, each of unit Frobenius norm.
    pub h: Vec<CMat>,
    /// Basis of the slice torus `a`, exact and in floating point.
    pub a_exact: Vec<ExactMatrix>,
    pub a: Vec<CMat>,
    /// Normalized bases of `k` and `p`.
    pub k: Vec<CMat>,
    pub p: Vec<CMat>,
    /// Characteristic element; `ad(Z)|p` is the complex structure at `o`.
    pub z: CMat,
    /// The exact conditions the action relies on hold.
    pub exact_preconditions: bool,
}

fn matrices(g: &RealFormAlgebra, s: &RealSpan) -> Vec<ExactMatrix> {
    s.basis().iter().map(|v| g.to_matrix(v)).collect()
}

fn normalized(ms: &[ExactMatrix]) -> Vec<CMat> {
    ms.iter()
        .map(|x| {
            let c = to_cmat(x);
            let n = frobenius(&c);
            scale(&c, 1.0 / n)
        })
        .collect()
}

fn recipe_of(m: &LinearAlgebraMap) -> Result<InvolutionRecipe> {
    m.recipe().cloned().ok_or_else(|| Error::Numeric(format!("map `{}` has no matrix recipe", m.name)))
}

/// Inputs shared by every action kind.
struct Parts<'a> {
    g: &'a RealFormAlgebra,
    theta: &'a LinearAlgebraMap,
    sigma: &'a LinearAlgebraMap,
    h: &'a RealSpan,
    a: &'a RealSpan,
    z: ExactMatrix,
    exact_preconditions: bool,
}

fn assemble(id: &str, kind: ActionKind, names: [&str; 3], parts: Parts) -> Result<ActionSetup> {
    let Parts { g, theta, sigma, h, a, z, exact_preconditions } = parts;
    let k = multi_fixed(g, &[(theta, 1)])?;
    let p = multi_fixed(g, &[(theta, -1)])?;
    let sigma_exact = recipe_of(sigma)?;
    let a_exact = matrices(g, a);
    Ok(ActionSetup {
        id: id.to_string(),
        kind,
        group: names[0].to_string(),
        subgroup: names[1].to_string(),
        space: names[2].to_string(),
        m: g.ambient_size(),
        theta: NumRecipe::new(&recipe_of(theta)?)?,
        sigma: NumRecipe::new(&sigma_exact)?,
        sigma_exact,
        h: normalized(&matrices(g, h)),
        a: a_exact.iter().map(to_cmat).collect(),
        a_exact,
        k: normalized(&matrices(g, &k)),
        p: normalized(&matrices(g, &p)),
        z: to_cmat(&z),
        exact_preconditions,
    })
}

/// `H = G^τ` acting on `D`, sliced by a maximal abelian subspace of
/// `g^{−θ,σ,−τ}`; requires the exact triple conditions.
pub fn symmetric_action(
    id: &str,
    names: [&str; 3],
    family: &Family,
    tau: &LinearAlgebraMap,
    sigma: &LinearAlgebraMap,
) -> Result<ActionSetup> {
    let r = build(family, family.ambient_size())?;
    let g = &r.algebra;
    let z = characteristic_element(g, &r.theta)?;
    let triple = check_triple(g, tau, &r.theta, sigma, &z.coords)?;
    let h = multi_fixed(g, &[(tau, 1)])?;
    let a = slice_subspace(g, tau, &r.theta, sigma)?;
    let parts = Parts {
        g,
        theta: &r.theta,
        sigma,
        h: &h,
        a: &a,
        z: z.matrix,
        exact_preconditions: triple.pass && triple.slice_maximal,
    };
    assemble(id, ActionKind::SymmetricSubgroup, names, parts)
}

fn symmetric_from_row(id: &str, names: [&str; 3], label: &str, params: &[(&str, i64)]) -> Result<ActionSetup> {
    let ds = Dataset::embedded()?;
    let row = ds
        .rows
        .iter()
        .find(|r| r.label == label && r.table != 4)
        .ok_or_else(|| Error::Dataset(format!("no row `{label}`")))?;
    let params: Params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let family = row.family(&params)?;
    let r = build(&family, family.ambient_size())?;
    let (tau, sigma) = row_involutions(row, &params, &r)?;
    symmetric_action(id, names, &family, &tau, &sigma)
}

fn cartan_action(id: &str, names: [&str; 3], family: Family) -> Result<ActionSetup> {
    let r = build(&family, family.ambient_size())?;
    let sigma = LinearAlgebraMap::from_recipe(&r.algebra, &table3_sigma(&family)?)?;
    symmetric_action(id, names, &family, &r.theta, &sigma)
}

/// The diagonal action of `G` on `D × D` or `D × D̄`.
pub fn diagonal_action(id: &str, names: [&str; 3], family: &Family, variant: DiagonalVariant) -> Result<ActionSetup> {
    let r = build(family, family.ambient_size())?;
    let s = diagonal_setup(&r, &table3_sigma(family)?, variant)?;
    let g = &s.algebra;
    let triple = check_triple(g, &s.tau, &s.theta, &s.sigma, &s.z.coords)?;
    let h = multi_fixed(g, &[(&s.tau, 1)])?;
    let a = slice_subspace(g, &s.tau, &s.theta, &s.sigma)?;
    let kind = match variant {
        DiagonalVariant::Same => ActionKind::Diagonal,
        DiagonalVariant::Conjugate => ActionKind::DiagonalConjugate,
    };
    let parts = Parts {
        g,
        theta: &s.theta,
        sigma: &s.sigma,
        h: &h,
        a: &a,
        z: s.z.matrix,
        exact_preconditions: triple.pass && triple.slice_maximal,
    };
    assemble(id, kind, names, parts)
}

/// `N₊` from a positive system of the restricted roots of a `σ`-fixed
/// torus in `p`, acting on `D`; the slice is `A·o`.
pub fn unipotent_action(id: &str, names: [&str; 3], family: &Family, sigma: &LinearAlgebraMap) -> Result<ActionSetup> {
    let r = build(family, family.ambient_size())?;
    let g = &r.algebra;
    let z = characteristic_element(g, &r.theta)?;
    let a = rational_torus(g, &multi_fixed(g, &[(sigma, 1), (&r.theta, -1)])?)?;
    let datum = root_decomposition(g, &a)?;
    let pos = positive_system(&datum, &lexicographic_functional(&datum))?;
    let n = nilpotent_part(g, &datum, &pos)?;
    let neg_z: Vec<Rational> = z.coords.iter().map(|x| -x).collect();
    let ok = sigma.commutes_with(&r.theta)
        && sigma.apply(&z.coords) == neg_z
        && is_maximal_abelian_in(g, &a, &r.p)
        && n.basis().iter().all(|v| n.contains(&sigma.apply(v)));
    let parts = Parts { g, theta: &r.theta, sigma, h: &n, a: &a, z: z.matrix, exact_preconditions: ok };
    assemble(id, ActionKind::Unipotent, names, parts)
}

/// `SO(2) ⊂ SU(2)` acting on `SU(2)/U(1) ≅ CP¹`, sliced by a meridian.
fn cp1_action(id: &str, names: [&str; 3]) -> Result<ActionSetup> {
    let g = build_algebra(&Family::SuCompact { m: 2 })?;
    let theta = LinearAlgebraMap::from_recipe(&g, &InvolutionRecipe::ad("θ", ipq(1, 1))?)?;
    let tau = LinearAlgebraMap::from_recipe(&g, &InvolutionRecipe::op_only("conj", 2, MatrixOp::Conjugate))?;
    let w = ExactMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
    let sigma = LinearAlgebraMap::from_recipe(&g, &InvolutionRecipe::ad("Ad(w)", w)?)?;
    let z = characteristic_element(&g, &theta)?;
    let triple = check_triple(&g, &tau, &theta, &sigma, &z.coords)?;
    let h = multi_fixed(&g, &[(&tau, 1)])?;
    let a = slice_subspace(&g, &tau, &theta, &sigma)?;
    let parts = Parts {
        g: &g,
        theta: &theta,
        sigma: &sigma,
        h: &h,
        a: &a,
        z: z.matrix,
        exact_preconditions: triple.pass && triple.slice_maximal,
    };
    assemble(id, ActionKind::Compact, names, parts)
}

/// Diagonal `SU(2)` on `Gr₁(C²) × Gr₁(C²)`.
fn compact_diagonal_action(id: &str, names: [&str; 3]) -> Result<ActionSetup> {
    let su2 = build_algebra(&Family::SuCompact { m: 2 })?;
    let t = InvolutionRecipe::ad("θ", ipq(1, 1))?;
    let conj = InvolutionRecipe::op_only("conj", 2, MatrixOp::Conjugate);
    let report = verify_compact_diag(&su2, &t, &t, &conj)?;
    let (g, tau, theta, sigma) = compact_diag_setup(&su2, &t, &t, &conj)?;
    let z1 = characteristic_element(&su2, &LinearAlgebraMap::from_recipe(&su2, &t)?)?;
    let z = ExactMatrix::block_diag(&[&z1.matrix, &z1.matrix]);
    let h = multi_fixed(&g, &[(&tau, 1)])?;
    let a = maximal_abelian(&g, &multi_fixed(&g, &[(&theta, -1), (&sigma, 1), (&tau, -1)])?);
    let parts = Parts { g: &g, theta: &theta, sigma: &sigma, h: &h, a: &a, z, exact_preconditions: report.pass };
    assemble(id, ActionKind::Compact, names, parts)
}

/// `H_U = G_U^τ` for the compact type II triple, sliced by the torus from
/// the σ-restricted subalgebra.
pub fn compact_type_ii_action(
    id: &str,
    names: [&str; 3],
    variant: TypeIIVariant,
    p: usize,
    q: usize,
) -> Result<ActionSetup> {
    let d = compact_type_ii_data(variant, p, q)?;
    let report = verify_compact_type_ii(&d)?;
    let g = &d.algebra;
    let k = multi_fixed(g, &[(&d.theta, 1)])?;
    let pp = multi_fixed(g, &[(&d.theta, -1)])?;
    let z = characteristic_element_of(g, &k, &pp)?;
    let h = multi_fixed(g, &[(&d.tau, 1)])?;
    let sub_sigma = LinearAlgebraMap::from_recipe(&d.sub, &recipe_of(&d.sigma)?)?;
    let sub_part = multi_fixed(&d.sub, &[(&sub_sigma, 1), (&d.sub_tau, -1), (&d.sub_theta, -1)])?;
    let a = d.embed_sub(&maximal_abelian(&d.sub, &sub_part))?;
    let parts =
        Parts { g, theta: &d.theta, sigma: &d.sigma, h: &h, a: &a, z: z.matrix, exact_preconditions: report.pass };
    assemble(id, ActionKind::Compact, names, parts)
}

/// Identifiers accepted by [`action_setup`].
pub const ACTIONS: &[&str] = &[
    "sl2R:K",
    "sl2R:A",
    "sl2R:N",
    "sp2R:GL2R",
    "sp2R:U11",
    "sp2R:Sp1R2",
    "sp2R:Sp1C",
    "su21:K",
    "sl2R:DxD",
    "sl2R:DxDbar",
    "su2:SO2",
    "su2:GrxGr",
    "su6:II-1",
];

/// Builds a named action from the registry.
pub fn action_setup(id: &str) -> Result<ActionSetup> {
    let sl2 = Family::SpR { n: 1 };
    match id {
        "sl2R:K" => cartan_action(id, ["SL(2,R)", "SO(2)", "SL(2,R)/SO(2)"], sl2),
        "sl2R:A" => symmetric_from_row(id, ["SL(2,R)", "SO(1,1)", "SL(2,R)/SO(2)"], "26", &[("n", 1)]),
        "sl2R:N" => {
            let r = build(&sl2, 2)?;
            let sigma = LinearAlgebraMap::from_recipe(&r.algebra, &table3_sigma(&sl2)?)?;
            unipotent_action(id, ["SL(2,R)", "N", "SL(2,R)/SO(2)"], &sl2, &sigma)
        }
        "sp2R:GL2R" => symmetric_from_row(id, ["Sp(2,R)", "GL(2,R)", "Sp(2,R)/U(2)"], "26", &[("n", 2)]),
        "sp2R:U11" => symmetric_from_row(id, ["Sp(2,R)", "U(1,1)", "Sp(2,R)/U(2)"], "8", &[("n", 2), ("p", 1)]),
        "sp2R:Sp1R2" => {
            symmetric_from_row(id, ["Sp(2,R)", "Sp(1,R)×Sp(1,R)", "Sp(2,R)/U(2)"], "9", &[("n", 2), ("p", 1)])
        }
        "sp2R:Sp1C" => symmetric_from_row(id, ["Sp(2,R)", "Sp(1,C)", "Sp(2,R)/U(2)"], "27", &[("n", 1)]),
        "su21:K" => cartan_action(id, ["SU(2,1)", "S(U(2)×U(1))", "SU(2,1)/S(U(2)×U(1))"], Family::Su { p: 2, q: 1 }),
        "sl2R:DxD" => diagonal_action(id, ["SL(2,R)×SL(2,R)", "diag SL(2,R)", "D×D"], &sl2, DiagonalVariant::Same),
        "sl2R:DxDbar" => {
            diagonal_action(id, ["SL(2,R)×SL(2,R)", "diag SL(2,R)", "D×D̄"], &sl2, DiagonalVariant::Conjugate)
        }
        "su2:SO2" => cp1_action(id, ["SU(2)", "SO(2)", "SU(2)/U(1)"]),
        "su2:GrxGr" => compact_diagonal_action(id, ["SU(2)×SU(2)", "diag SU(2)", "Gr₁(C²)×Gr₁(C²)"]),
        "su6:II-1" => compact_type_ii_action(id, ["SU(6)", "Sp(3)", "SU(6)/S(U(3)×U(3))"], TypeIIVariant::SuSp, 1, 1),
        _ => Err(Error::UnsupportedAction(id.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_preconditions_hold() {
        for id in ACTIONS {
            let s = action_setup(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(s.exact_preconditions, "{id}");
            assert!(!s.a.is_empty(), "{id}: empty slice");
        }
    }

    #[test]
    fn unknown_action() {
        assert!(matches!(action_setup("e6:anything"), Err(Error::UnsupportedAction(_))));
    }
}
