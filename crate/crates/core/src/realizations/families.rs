use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational, RealSpan};
use crate::lie::{certify_cartan, AlgebraLabel, LinearAlgebraMap, RealFormAlgebra};

use super::recipe::{InvolutionRecipe, MatrixOp};

/// Default bound on the ambient matrix size for parameter sweeps.
pub const DEFAULT_MAX_AMBIENT: usize = 8;

/// The matrix families that can be realized exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// su(p,q) in gl(p+q, C)
    Su { p: usize, q: usize },
    /// so*(2n) in gl(2n, C)
    SoStar { n: usize },
    /// sp(n,R) in gl(2n, C)
    SpR { n: usize },
    /// so(2,n) in gl(n+2, R)
    So2 { n: usize },
    /// su(m)
    SuCompact { m: usize },
    /// so(m)
    SoCompact { m: usize },
    /// sp(n) in gl(2n, C)
    SpCompact { n: usize },
    /// sl(n,R) with Cartan involution X ↦ −Xᵀ
    SlR { n: usize },
}

impl Family {
    pub fn ambient_size(&self) -> usize {
        match *self {
            Family::Su { p, q } => p + q,
            Family::SoStar { n } | Family::SpR { n } | Family::SpCompact { n } => 2 * n,
            Family::So2 { n } => n + 2,
            Family::SuCompact { m } | Family::SoCompact { m } => m,
            Family::SlR { n } => n,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Family::Su { p, q } => (p + q) * (p + q) - 1,
            Family::SoStar { n } => n * (2 * n - 1),
            Family::SpR { n } | Family::SpCompact { n } => n * (2 * n + 1),
            Family::So2 { n } => (n + 2) * (n + 1) / 2,
            Family::SuCompact { m } => m * m - 1,
            Family::SoCompact { m } => m * (m - 1) / 2,
            Family::SlR { n } => n * n - 1,
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, Family::SuCompact { .. } | Family::SoCompact { .. } | Family::SpCompact { .. })
    }

    fn label(&self) -> AlgebraLabel {
        let (key, ps): (&str, Vec<usize>) = match *self {
            Family::Su { p, q } => ("su", vec![p, q]),
            Family::SoStar { n } => ("so_star", vec![n]),
            Family::SpR { n } => ("sp_R", vec![n]),
            Family::So2 { n } => ("so_2", vec![n]),
            Family::SuCompact { m } => ("su", vec![m]),
            Family::SoCompact { m } => ("so", vec![m]),
            Family::SpCompact { n } => ("sp", vec![n]),
            Family::SlR { n } => ("sl_R", vec![n]),
        };
        let ps: Vec<i64> = ps.into_iter().map(|x| x as i64).collect();
        AlgebraLabel::new(key, &ps)
    }

    fn check_params(&self) -> Result<()> {
        let ok = match *self {
            Family::Su { p, q } => p >= 1 && q >= 1,
            Family::SoStar { n } => n >= 2,
            Family::SpR { n } | Family::SpCompact { n } => n >= 1,
            Family::So2 { n } => n >= 1,
            Family::SuCompact { m } => m >= 2,
            Family::SoCompact { m } => m >= 3,
            Family::SlR { n } => n >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParameterOutOfRange(format!("{self}")))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Su { p, q } => write!(f, "su({p},{q})"),
            Family::SoStar { n } => write!(f, "so*({})", 2 * n),
            Family::SpR { n } => write!(f, "sp({n},R)"),
            Family::So2 { n } => write!(f, "so(2,{n})"),
            Family::SuCompact { m } => write!(f, "su({m})"),
            Family::SoCompact { m } => write!(f, "so({m})"),
            Family::SpCompact { n } => write!(f, "sp({n})"),
            Family::SlR { n } => write!(f, "sl({n},R)"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses names such as `su(2,1)`, `so*(6)`, `sp(2,R)`, `so(2,3)`,
    /// `su(3)`, `so(4)`, `sp(2)` or `sl(3,R)`.
    fn from_str(s: &str) -> Result<Self> {
        let comps =
            super::expr::parse_algebra(s, &Default::default()).map_err(|_| Error::UnsupportedFamily(s.to_string()))?;
        match comps.as_slice() {
            [c] => family_of_component(c),
            _ => Err(Error::UnsupportedFamily(s.to_string())),
        }
    }
}

/// Interprets a parsed algebra component as a realizable family.
pub(crate) fn family_of_component(c: &super::expr::Component) -> Result<Family> {
    use super::expr::Arg::*;
    let u = |v: i64| -> Result<usize> {
        usize::try_from(v).map_err(|_| Error::ParameterOutOfRange(format!("negative parameter in `{}`", c.name)))
    };
    let unsupported = || Error::UnsupportedFamily(format!("{}{:?}", c.name, c.args));
    Ok(match (c.name.as_str(), c.args.as_slice()) {
        ("su", [Int(p), Int(q)]) => Family::Su { p: u(*p)?, q: u(*q)? },
        ("su", [Int(m)]) => Family::SuCompact { m: u(*m)? },
        ("so*", [Int(m)]) if m % 2 == 0 => Family::SoStar { n: u(m / 2)? },
        ("sp", [Int(n), Real]) => Family::SpR { n: u(*n)? },
        ("sp", [Int(n)]) => Family::SpCompact { n: u(*n)? },
        ("so", [Int(2), Int(n)]) => Family::So2 { n: u(*n)? },
        ("so", [Int(m)]) => Family::SoCompact { m: u(*m)? },
        ("sl", [Int(n), Real]) => Family::SlR { n: u(*n)? },
        _ => return Err(unsupported()),
    })
}

/// `diag(±1)` with `p` leading ones and `q` minus ones.
pub fn ipq(p: usize, q: usize) -> ExactMatrix {
    let d: Vec<i64> = std::iter::repeat_n(1, p).chain(std::iter::repeat_n(-1, q)).collect();
    ExactMatrix::diag_int(&d)
}

/// `[[0, I_n], [s·I_n, 0]]`.
pub fn kmat(n: usize, s: i64) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        m.set(k, n + k, GaussianRational::one());
        m.set(n + k, k, GaussianRational::from_int(s));
    }
    m
}

/// `Xᵀ·F + F·X`
pub(super) fn preserves_bilinear(f: &ExactMatrix) -> impl Fn(&ExactMatrix) -> ExactMatrix + '_ {
    move |x| x.transpose().mul(f).add(&f.mul(x))
}

/// `X*·F + F·X`
pub(super) fn preserves_hermitian(f: &ExactMatrix) -> impl Fn(&ExactMatrix) -> ExactMatrix + '_ {
    move |x| x.adjoint().mul(f).add(&f.mul(x))
}

pub(super) fn trace_free(x: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_entries(1, 1, vec![x.trace()])
}

pub(super) fn real_entries(x: &ExactMatrix) -> ExactMatrix {
    x.sub(&x.conj())
}

/// A family realized as an exact matrix algebra with its Cartan involution
/// and certified Cartan decomposition.
#[derive(Clone, Debug)]
pub struct Realization {
    pub family: Family,
    pub algebra: RealFormAlgebra,
    pub theta_recipe: InvolutionRecipe,
    pub theta: LinearAlgebraMap,
    pub k: RealSpan,
    pub p: RealSpan,
}

/// The standard Cartan involution recipe of a family.
pub fn cartan_recipe(family: &Family) -> Result<InvolutionRecipe> {
    let m = family.ambient_size();
    match *family {
        Family::Su { p, q } => InvolutionRecipe::ad("θ", ipq(p, q)),
        Family::SoStar { n } | Family::SpR { n } => InvolutionRecipe::ad("θ", ipq(n, n)),
        Family::So2 { n } => InvolutionRecipe::ad("θ", ipq(2, n)),
        Family::SuCompact { .. } | Family::SoCompact { .. } | Family::SpCompact { .. } => {
            Ok(InvolutionRecipe::op_only("θ", m, MatrixOp::Identity))
        }
        Family::SlR { .. } => Ok(InvolutionRecipe::op_only("θ", m, MatrixOp::NegTranspose)),
    }
}

/// The bare algebra of a family (no Cartan certification).
pub fn build_algebra(family: &Family) -> Result<RealFormAlgebra> {
    family.check_params()?;
    let m = family.ambient_size();
    let label = family.label();
    match *family {
        Family::Su { p, q } => {
            let i = ipq(p, q);
            let h = preserves_hermitian(&i);
            RealFormAlgebra::from_constraints(m, &[&h, &trace_free], label)
        }
        Family::SoStar { n } => {
            let i = ipq(n, n);
            let k = kmat(n, 1);
            let (h, b) = (preserves_hermitian(&i), preserves_bilinear(&k));
            RealFormAlgebra::from_constraints(m, &[&h, &trace_free, &b], label)
        }
        Family::SpR { n } => {
            let i = ipq(n, n);
            let k = kmat(n, -1);
            let (h, b) = (preserves_hermitian(&i), preserves_bilinear(&k));
            RealFormAlgebra::from_constraints(m, &[&h, &trace_free, &b], label)
        }
        Family::So2 { n } => {
            let i = ipq(2, n);
            let b = preserves_bilinear(&i);
            RealFormAlgebra::from_constraints(m, &[&real_entries, &b], label)
        }
        Family::SuCompact { m } => {
            let i = ExactMatrix::identity(m);
            let h = preserves_hermitian(&i);
            RealFormAlgebra::from_constraints(m, &[&h, &trace_free], label)
        }
        Family::SoCompact { m } => {
            let i = ExactMatrix::identity(m);
            let b = preserves_bilinear(&i);
            RealFormAlgebra::from_constraints(m, &[&real_entries, &b], label)
        }
        Family::SpCompact { n } => {
            let i = ExactMatrix::identity(2 * n);
            let j = kmat(n, -1);
            let (h, b) = (preserves_hermitian(&i), preserves_bilinear(&j));
            RealFormAlgebra::from_constraints(m, &[&h, &trace_free, &b], label)
        }
        Family::SlR { .. } => RealFormAlgebra::from_constraints(m, &[&real_entries, &trace_free], label),
    }
}

/// Builds a family within the ambient bound and certifies its Cartan
/// involution by Killing-form signs.
pub fn build(family: &Family, max_ambient: usize) -> Result<Realization> {
    if family.ambient_size() > max_ambient {
        return Err(Error::ParameterOutOfRange(format!(
            "{family} needs ambient size {} > {max_ambient}",
            family.ambient_size()
        )));
    }
    let algebra = build_algebra(family)?;
    debug_assert_eq!(algebra.dim(), family.dim());
    let theta_recipe = cartan_recipe(family)?;
    let theta = LinearAlgebraMap::from_recipe(&algebra, &theta_recipe)?;
    let (k, p) = certify_cartan(&algebra, &theta)?;
    Ok(Realization { family: *family, algebra, theta_recipe, theta, k, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{fixed_subspace, real_rank};

    #[test]
    fn dimensions() {
        for (f, d) in [
            (Family::Su { p: 2, q: 1 }, 8),
            (Family::SpR { n: 2 }, 10),
            (Family::SoStar { n: 2 }, 6),
            (Family::So2 { n: 3 }, 10),
            (Family::SuCompact { m: 3 }, 8),
            (Family::SoCompact { m: 4 }, 6),
            (Family::SpCompact { n: 2 }, 10),
            (Family::SlR { n: 3 }, 8),
        ] {
            let r = build(&f, DEFAULT_MAX_AMBIENT).unwrap();
            assert_eq!(r.algebra.dim(), d, "{f}");
        }
    }

    #[test]
    fn su21_cartan_split() {
        let r = build(&Family::Su { p: 2, q: 1 }, 8).unwrap();
        assert_eq!(r.k.dim(), 4);
        assert_eq!(r.p.dim(), 4);
        assert_eq!(fixed_subspace(&r.algebra, &r.theta, 1).unwrap(), r.k);
    }

    #[test]
    fn real_ranks() {
        for (f, rank) in [
            (Family::Su { p: 3, q: 1 }, 1),
            (Family::SoStar { n: 3 }, 1),
            (Family::SpR { n: 2 }, 2),
            (Family::So2 { n: 3 }, 2),
            (Family::SlR { n: 3 }, 2),
        ] {
            let r = build(&f, 8).unwrap();
            assert_eq!(real_rank(&r.algebra, &r.theta).unwrap(), rank, "{f}");
        }
    }

    #[test]
    fn parsing_round_trip() {
        for s in ["su(2,1)", "so*(6)", "sp(2,R)", "so(2,3)", "su(3)", "so(4)", "sp(2)", "sl(3,R)"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!(matches!("e6(-14)".parse::<Family>(), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(build(&Family::Su { p: 5, q: 4 }, 8), Err(Error::ParameterOutOfRange(_))));
    }
}
