use crate::error::{Error, Result};
use crate::exact::{rational_eigenspaces, to_sparse, QMatrix, Rational, RealSpan};
use crate::lie::{is_abelian, maximal_abelian_filtered, restrict_form, RealFormAlgebra};

/// A restricted root: its values on the ordered basis of `a` and its root
/// space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub values: Vec<Rational>,
    pub space: RealSpan,
}

impl Root {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Simultaneous eigenspace decomposition of `g` under `ad(a)`.
#[derive(Clone, Debug)]
pub struct RestrictedRootDatum {
    pub a: RealSpan,
    /// Roots sorted by their value vectors.
    pub roots: Vec<Root>,
    pub zero_space: RealSpan,
}

impl RestrictedRootDatum {
    pub fn rank(&self) -> usize {
        self.a.dim()
    }

    /// Index of the root with the given values.
    pub fn find(&self, values: &[Rational]) -> Option<usize> {
        self.roots.binary_search_by(|r| r.values.as_slice().cmp(values)).ok()
    }

    /// Dimensions of root spaces and zero space add up to `dim g`.
    pub fn is_complete(&self, dim: usize) -> bool {
        self.roots.iter().map(Root::dim).sum::<usize>() + self.zero_space.dim() == dim
    }

    /// `λ ∈ Σ ⇒ −λ ∈ Σ` with equal multiplicities.
    pub fn is_symmetric(&self) -> bool {
        self.roots.iter().all(|r| {
            let neg: Vec<Rational> = r.values.iter().map(|x| -x).collect();
            self.find(&neg).is_some_and(|k| self.roots[k].dim() == r.dim())
        })
    }

    /// Whether every Cartan pairing `2⟨α,β⟩/⟨β,β⟩` is an integer, for the
    /// inner product on `a*` induced by the Killing form.
    pub fn has_integral_pairings(&self, g: &RealFormAlgebra) -> bool {
        let k = restrict_form(g.killing_matrix(), &self.a);
        let Ok(kinv) = k.inverse() else { return false };
        let ip = |x: &[Rational], y: &[Rational]| -> Rational {
            let kx = kinv.mul_vec(x);
            kx.iter().zip(y).map(|(a, b)| a * b).sum()
        };
        self.roots.iter().all(|a| {
            self.roots.iter().all(|b| {
                let bb = ip(&b.values, &b.values);
                let q = &(&Rational::from_integer(2) * &ip(&a.values, &b.values)) / &bb;
                q.is_integer()
            })
        })
    }

    /// A basis matrix whose columns are the root-space bases in root order
    /// followed by the zero space, with the block sizes.
    pub fn adapted_basis(&self, d: usize) -> (QMatrix, Vec<usize>) {
        let mut cols = Vec::with_capacity(d);
        let mut sizes = Vec::with_capacity(self.roots.len() + 1);
        for r in &self.roots {
            cols.extend(r.space.basis().iter().cloned());
            sizes.push(r.dim());
        }
        cols.extend(self.zero_space.basis().iter().cloned());
        sizes.push(self.zero_space.dim());
        (QMatrix::from_columns(&cols, d), sizes)
    }
}

/// Matrix of `l` on an invariant subspace, in the subspace's basis.
fn restrict_to(l: &QMatrix, s: &RealSpan) -> Result<QMatrix> {
    let cols: Vec<Vec<Rational>> = s
        .basis()
        .iter()
        .map(|v| {
            s.coordinates(&l.mul_vec(v)).ok_or_else(|| Error::ConditionFailed("subspace is not ad(a)-invariant".into()))
        })
        .collect::<Result<_>>()?;
    Ok(QMatrix::from_columns(&cols, s.dim()))
}

/// Decomposes `g` under `ad(H₁), …, ad(H_r)` for the basis of `a`.
pub fn root_decomposition(g: &RealFormAlgebra, a: &RealSpan) -> Result<RestrictedRootDatum> {
    if !is_abelian(g, a) {
        return Err(Error::ConditionFailed("torus is not abelian".into()));
    }
    let d = g.dim();
    let mut parts: Vec<(Vec<Rational>, RealSpan)> = vec![(Vec::new(), RealSpan::full(d))];
    for h in a.basis() {
        let l = g.ad_matrix(h);
        let mut next = Vec::new();
        for (vals, s) in parts {
            let m = restrict_to(&l, &s)?;
            for (ev, sub) in rational_eigenspaces(&m)? {
                let vecs: Vec<Vec<Rational>> = sub.basis().iter().map(|c| s.combine(c)).collect();
                let mut v = vals.clone();
                v.push(ev);
                next.push((v, RealSpan::span_of(d, &vecs)));
            }
        }
        parts = next;
    }
    let mut zero_space = RealSpan::zero(d);
    let mut roots = Vec::new();
    for (values, space) in parts {
        if values.iter().all(Rational::is_zero) {
            zero_space = space;
        } else {
            roots.push(Root { values, space });
        }
    }
    roots.sort_by(|x, y| x.values.cmp(&y.values));
    Ok(RestrictedRootDatum { a: a.clone(), roots, zero_space })
}

/// `ad(v)` is diagonalizable over `Q`.
pub fn has_rational_spectrum(g: &RealFormAlgebra, v: &[Rational]) -> bool {
    rational_eigenspaces(&g.ad_matrix(v)).is_ok()
}

/// A maximal abelian subspace of `v` spanned by elements with rational
/// `ad`-spectrum, so that its root decomposition is defined over `Q`.
pub fn rational_torus(g: &RealFormAlgebra, v: &RealSpan) -> Result<RealSpan> {
    maximal_abelian_filtered(g, v.basis(), &|x| has_rational_spectrum(g, x))
        .ok_or_else(|| Error::ConditionFailed("no maximal abelian subspace with rational spectrum found".into()))
}

/// Roots positive for the functional `f` on `a` (`f` given in the dual
/// basis, `λ ↦ Σ λᵢ fᵢ`).
pub fn positive_system(datum: &RestrictedRootDatum, f: &[Rational]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (k, r) in datum.roots.iter().enumerate() {
        let s: Rational = r.values.iter().zip(f).map(|(a, b)| a * b).sum();
        match s.signum() {
            0 => return Err(Error::DegenerateFunctional),
            1 => out.push(k),
            _ => {}
        }
    }
    Ok(out)
}

/// A lexicographic functional `(1, 1/N, 1/N², …)` with `N` exceeding the
/// root coordinate range, so no root is annihilated.
pub fn lexicographic_functional(datum: &RestrictedRootDatum) -> Vec<Rational> {
    let mut bound = Rational::one();
    let mut den = num_bigint::BigInt::from(1);
    for r in &datum.roots {
        for x in &r.values {
            if x.abs() > bound {
                bound = x.abs();
            }
            den = num_integer::Integer::lcm(&den, &x.denom());
        }
    }
    // N > 2·max|λᵢ|·den keeps earlier coordinates dominant.
    let n = &(&bound * &Rational::from_bigint(den)) * &Rational::from_integer(2 * datum.rank().max(1) as i64 + 1);
    let step = (&n + &Rational::one()).recip();
    let mut out = Vec::with_capacity(datum.rank());
    let mut cur = Rational::one();
    for _ in 0..datum.rank() {
        out.push(cur.clone());
        cur = &cur * &step;
    }
    out
}

/// `n₊ = Σ_{λ ∈ Σ⁺} g(a; λ)`, certified to be a nilpotent subalgebra.
pub fn nilpotent_part(g: &RealFormAlgebra, datum: &RestrictedRootDatum, positive: &[usize]) -> Result<RealSpan> {
    let d = g.dim();
    let vecs: Vec<Vec<Rational>> =
        positive.iter().flat_map(|&k| datum.roots[k].space.basis().iter().cloned()).collect();
    let n = RealSpan::span_of(d, &vecs);
    let nb: Vec<_> = n.basis().iter().map(|v| to_sparse(v)).collect();
    let mut term = n.clone();
    for _ in 0..=d {
        if term.dim() == 0 {
            return Ok(n);
        }
        let mut next = Vec::new();
        for x in &nb {
            for y in term.basis() {
                let br = g.bracket_sparse(x, &to_sparse(y));
                if !n.contains(&br) {
                    return Err(Error::ConditionFailed("positive root spaces are not closed under the bracket".into()));
                }
                next.push(br);
            }
        }
        term = RealSpan::span_of(d, &next);
    }
    Err(Error::ConditionFailed("lower central series of n₊ does not terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::maximal_abelian;
    use crate::realizations::{build, Family};

    #[test]
    fn sp2_is_c2() {
        let r = build(&Family::SpR { n: 2 }, 8).unwrap();
        let a = rational_torus(&r.algebra, &r.p).unwrap();
        let datum = root_decomposition(&r.algebra, &a).unwrap();
        assert_eq!(datum.roots.len(), 8);
        assert!(datum.roots.iter().all(|x| x.dim() == 1));
        assert!(datum.is_complete(10) && datum.is_symmetric());
        assert!(datum.has_integral_pairings(&r.algebra));
        let f = lexicographic_functional(&datum);
        let pos = positive_system(&datum, &f).unwrap();
        assert_eq!(pos.len(), 4);
        assert_eq!(nilpotent_part(&r.algebra, &datum, &pos).unwrap().dim(), 4);
    }

    #[test]
    fn su21_is_bc1() {
        let r = build(&Family::Su { p: 2, q: 1 }, 8).unwrap();
        let a = rational_torus(&r.algebra, &r.p).unwrap();
        let datum = root_decomposition(&r.algebra, &a).unwrap();
        let mut dims: Vec<usize> = datum.roots.iter().map(Root::dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2, 2]);
        assert_eq!(maximal_abelian(&r.algebra, &r.p).dim(), 1);
    }

    #[test]
    fn zero_torus() {
        let r = build(&Family::Su { p: 1, q: 1 }, 8).unwrap();
        let datum = root_decomposition(&r.algebra, &RealSpan::zero(3)).unwrap();
        assert!(datum.roots.is_empty());
        assert_eq!(datum.zero_space.dim(), 3);
    }

    #[test]
    fn degenerate_functional() {
        let r = build(&Family::SpR { n: 2 }, 8).unwrap();
        let a = rational_torus(&r.algebra, &r.p).unwrap();
        let datum = root_decomposition(&r.algebra, &a).unwrap();
        let f = vec![Rational::one(), Rational::one()];
        assert!(matches!(positive_system(&datum, &f), Err(Error::DegenerateFunctional)));
    }
}
