//! Standard involution recipes for the classical table rows.

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;

use super::expr::Params;
use super::families::{ipq, kmat, Family};
use super::recipe::{InvolutionRecipe, MatrixOp};

/// How σ is obtained for a row.
#[derive(Clone, Debug)]
pub enum SigmaChoice {
    /// An explicit recipe.
    Recipe(InvolutionRecipe),
    /// `σ := τθ`
    TauTheta,
}

/// The recipes for one table row at fixed parameters.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub tau: InvolutionRecipe,
    pub sigma: SigmaChoice,
}

fn param(params: &Params, name: &str) -> Result<usize> {
    let v = *params.get(name).ok_or_else(|| Error::Dataset(format!("missing parameter `{name}`")))?;
    usize::try_from(v).map_err(|_| Error::ParameterOutOfRange(format!("{name} = {v}")))
}

fn sub(a: usize, b: usize, what: &str) -> Result<usize> {
    a.checked_sub(b).ok_or_else(|| Error::ParameterOutOfRange(what.to_string()))
}

/// `diag(±1, …)` from a sign list given as `(count, sign)` runs.
fn signs(runs: &[(usize, i64)]) -> ExactMatrix {
    let d: Vec<i64> = runs.iter().flat_map(|&(n, s)| std::iter::repeat_n(s, n)).collect();
    ExactMatrix::diag_int(&d)
}

fn conj(m: usize) -> InvolutionRecipe {
    InvolutionRecipe::op_only("conj", m, MatrixOp::Conjugate)
}

/// `[[0, −I_n], [I_n, 0]]`
pub(super) fn jmat(n: usize) -> ExactMatrix {
    kmat(n, -1).neg()
}

/// The σ of the table of compatible involutions for `τ = θ`, one per family.
pub fn table3_sigma(family: &Family) -> Result<InvolutionRecipe> {
    let m = family.ambient_size();
    match *family {
        Family::Su { .. } | Family::SoStar { .. } => Ok(conj(m)),
        Family::SpR { n } => InvolutionRecipe::ad("Ad(K)", kmat(n, 1)),
        Family::So2 { n } if n >= 1 => {
            InvolutionRecipe::ad("Ad(diag(1,-1,1,-I))", signs(&[(1, 1), (1, -1), (1, 1), (n - 1, -1)]))
        }
        _ => Err(Error::UnsupportedFamily(family.to_string())),
    }
}

/// Recipes for the classical rows of the holomorphic (1–9) and
/// anti-holomorphic (20–27) tables.
pub fn catalog_entry(label: &str, params: &Params) -> Result<CatalogEntry> {
    let p = |name| param(params, name);
    let unsupported = || Error::UnsupportedRow {
        table: if label.parse::<u32>().is_ok_and(|l| l >= 20) { 2 } else { 1 },
        row: label.to_string(),
    };
    let entry =
        |tau: InvolutionRecipe, sigma: InvolutionRecipe| CatalogEntry { tau, sigma: SigmaChoice::Recipe(sigma) };
    let case1 = |tau: InvolutionRecipe| CatalogEntry { tau, sigma: SigmaChoice::TauTheta };
    Ok(match label {
        "1" => {
            let (pp, q, i, j) = (p("p")?, p("q")?, p("i")?, p("j")?);
            let g = signs(&[(i, 1), (sub(pp, i, "i > p")?, -1), (j, 1), (sub(q, j, "j > q")?, -1)]);
            entry(InvolutionRecipe::ad("τ", g)?, conj(pp + q))
        }
        "2" => {
            let n = p("n")?;
            entry(InvolutionRecipe::new("τ", kmat(n, 1), MatrixOp::NegTranspose)?, conj(2 * n))
        }
        "3" => {
            let n = p("n")?;
            entry(
                InvolutionRecipe::new("τ", kmat(n, -1), MatrixOp::NegTranspose)?,
                InvolutionRecipe::ad("Ad(K)", kmat(n, 1))?,
            )
        }
        "4" | "5" => {
            let (n, k) = (p("n")?, p("p")?);
            let d1 = ipq(k, sub(n, k, "p > n")?);
            let d2 = if label == "4" { d1.clone() } else { d1.neg() };
            entry(InvolutionRecipe::ad("τ", ExactMatrix::block_diag(&[&d1, &d2]))?, conj(2 * n))
        }
        "6" => {
            let (n, k) = (p("n")?, p("p")?);
            let rest = sub(n, k, "p > n")?;
            let tau = signs(&[(2, 1), (k, 1), (rest, -1)]);
            let sigma = signs(&[(1, 1), (1, -1), (k, -1), (1, 1), (sub(rest, 1, "p = n")?, -1)]);
            entry(InvolutionRecipe::ad("τ", tau)?, InvolutionRecipe::ad("σ", sigma)?)
        }
        "7" => {
            let n = p("n")?;
            let e2 = ExactMatrix::from_int_rows(&[vec![0, 1], vec![-1, 0]]);
            let blocks: Vec<&ExactMatrix> = std::iter::repeat_n(&e2, n + 1).collect();
            let alt: Vec<(usize, i64)> = (0..2 * n + 2).map(|k| (1, if k % 2 == 0 { 1 } else { -1 })).collect();
            entry(InvolutionRecipe::ad("τ", ExactMatrix::block_diag(&blocks))?, InvolutionRecipe::ad("σ", signs(&alt))?)
        }
        "8" | "9" => {
            let (n, k) = (p("n")?, p("p")?);
            let d1 = ipq(k, sub(n, k, "p > n")?);
            let d2 = if label == "9" { d1.clone() } else { d1.neg() };
            entry(
                InvolutionRecipe::ad("τ", ExactMatrix::block_diag(&[&d1, &d2]))?,
                InvolutionRecipe::ad("Ad(K)", kmat(n, 1))?,
            )
        }
        "20" => {
            let (pp, q) = (p("p")?, p("q")?);
            case1(conj(pp + q).renamed("τ"))
        }
        "21" => case1(InvolutionRecipe::ad("τ", kmat(p("n")?, 1))?),
        "22" => {
            let (pp, q) = (p("p")?, p("q")?);
            let g = ExactMatrix::block_diag(&[&jmat(pp), &jmat(q)]);
            case1(InvolutionRecipe::new("τ", g, MatrixOp::Conjugate)?)
        }
        "23" => case1(conj(2 * p("n")?).renamed("τ")),
        "24" => {
            let n = p("n")?;
            let g = ExactMatrix::block_diag(&[&jmat(n), &jmat(n)]);
            case1(InvolutionRecipe::new("τ", g, MatrixOp::Conjugate)?)
        }
        "25" => {
            let (n, k) = (p("n")?, p("p")?);
            let g = signs(&[(1, 1), (1, -1), (k, 1), (sub(n, k, "p > n")?, -1)]);
            case1(InvolutionRecipe::ad("τ", g)?)
        }
        "26" => case1(InvolutionRecipe::ad("τ", kmat(p("n")?, 1))?),
        "27" => {
            let n = p("n")?;
            let j = ExactMatrix::block_diag(&[&jmat(n), &jmat(n)]);
            case1(InvolutionRecipe::ad("τ", j.mul(&kmat(2 * n, 1)))?)
        }
        _ => return Err(unsupported()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{fingerprint, multi_fixed, LinearAlgebraMap};
    use crate::realizations::expected::expected_fingerprint;
    use crate::realizations::{build, characteristic_element, holomorphic_type, HolomorphicType};

    fn params(kv: &[(&str, i64)]) -> Params {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn check(label: &str, family: Family, kv: &[(&str, i64)], tau_fixed: &str, ty: HolomorphicType) {
        let ps = params(kv);
        let r = build(&family, 8).unwrap();
        let e = catalog_entry(label, &ps).unwrap();
        let tau = LinearAlgebraMap::from_recipe(&r.algebra, &e.tau).unwrap();
        tau.check_involution().unwrap();
        tau.check_automorphism(&r.algebra).unwrap();
        assert!(tau.commutes_with(&r.theta));
        let h = multi_fixed(&r.algebra, &[(&tau, 1)]).unwrap();
        let fp = fingerprint(&r.algebra, &h, &r.theta).unwrap();
        assert_eq!(fp, expected_fingerprint(tau_fixed, &ps).unwrap(), "row {label}");
        let z = characteristic_element(&r.algebra, &r.theta).unwrap();
        assert_eq!(holomorphic_type(&tau, &z).unwrap(), ty, "row {label}");
    }

    #[test]
    fn spot_rows() {
        use HolomorphicType::*;
        check("20", Family::Su { p: 2, q: 1 }, &[("p", 2), ("q", 1)], "so(p,q)", AntiHolomorphic);
        check("26", Family::SpR { n: 2 }, &[("n", 2)], "gl(n,R)", AntiHolomorphic);
        check("8", Family::SpR { n: 2 }, &[("n", 2), ("p", 1)], "u(p,n-p)", Holomorphic);
        check("9", Family::SpR { n: 2 }, &[("n", 2), ("p", 1)], "sp(p,R)+sp(n-p,R)", Holomorphic);
        check("27", Family::SpR { n: 2 }, &[("n", 1)], "sp(n,C)", AntiHolomorphic);
    }
}
