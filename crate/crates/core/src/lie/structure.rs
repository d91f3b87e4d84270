use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{to_sparse, QMatrix, Rational, RealSpan, SparseVec};

use super::map::{fixed_subspace, multi_fixed};
use super::{LinearAlgebraMap, RealFormAlgebra};

/// Sylvester inertia `(n₊, n₋, n₀)` of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pos, self.neg, self.zero)
    }
}

/// Inertia of a symmetric rational matrix by congruence elimination.
pub fn inertia(sym: &QMatrix) -> Inertia {
    assert_eq!(sym.rows(), sym.cols());
    let mut a = sym.to_rows();
    let mut active: Vec<usize> = (0..a.len()).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = active.iter().position(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal: fold a row with an off-diagonal nonzero into
                // its partner so the diagonal becomes 2·a_ij.
                let pair = active
                    .iter()
                    .enumerate()
                    .find_map(|(pi, &i)| active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (pi, i, j)));
                let Some((pi, i, j)) = pair else { break };
                for &k in &active {
                    let v = a[j][k].clone();
                    a[i][k] += &v;
                }
                for &k in &active {
                    let v = a[k][j].clone();
                    a[k][i] += &v;
                }
                pi
            }
        };
        let i = active.remove(p);
        let d = a[i][i].clone();
        if d.signum() > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
        for &j in &active {
            if a[j][i].is_zero() {
                continue;
            }
            let l = &a[j][i] / &d;
            for &k in &active {
                if !a[i][k].is_zero() {
                    let t = &l * &a[i][k];
                    a[j][k] -= &t;
                }
            }
        }
        for &j in &active {
            a[j][i] = Rational::zero();
            a[i][j] = Rational::zero();
        }
    }
    Inertia { pos, neg, zero: active.len() }
}

/// The Gram matrix `V·K·Vᵀ` of a form `K` restricted to the span `V`.
pub fn restrict_form(form: &QMatrix, v: &RealSpan) -> QMatrix {
    let kv: Vec<Vec<Rational>> = v.basis().iter().map(|b| form.mul_vec(b)).collect();
    let n = v.dim();
    let mut out = QMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let s: Rational = v.basis()[a].iter().zip(&kv[b]).map(|(x, y)| x * y).sum();
            out.set(a, b, s);
        }
    }
    out
}

/// Coefficient vectors `c` (relative to `list`) with `[Σ c_a list_a, s] = 0`
/// for every `s` in `set`, returned as vectors in algebra coordinates.
///
/// The order of `list` determines which kernel basis is produced.
fn centralizer_vectors(g: &RealFormAlgebra, set: &[Vec<Rational>], list: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = g.dim();
    if list.is_empty() {
        return Vec::new();
    }
    let sl: Vec<SparseVec> = list.iter().map(|v| to_sparse(v)).collect();
    let ss: Vec<SparseVec> = set.iter().map(|v| to_sparse(v)).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for s in &ss {
        let cols: Vec<Vec<Rational>> = sl.iter().map(|l| g.bracket_sparse(l, s)).collect();
        for r in 0..d {
            let row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let coeffs =
        if rows.is_empty() { RealSpan::full(list.len()).basis().to_vec() } else { QMatrix::from_rows(&rows).kernel() };
    coeffs.iter().map(|c| combine(list, c, d)).collect()
}

fn combine(list: &[Vec<Rational>], c: &[Rational], d: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); d];
    for (v, x) in list.iter().zip(c) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(v) {
            if !y.is_zero() {
                *o += &(x * y);
            }
        }
    }
    out
}

/// `{x ∈ V : [x, s] = 0 for all s ∈ set}`.
pub fn centralizer_in(g: &RealFormAlgebra, set: &[Vec<Rational>], v: &RealSpan) -> RealSpan {
    RealSpan::span_of(g.dim(), &centralizer_vectors(g, set, v.basis()))
}

/// Center of a subalgebra.
pub fn center(g: &RealFormAlgebra, h: &RealSpan) -> RealSpan {
    centralizer_in(g, h.basis(), h)
}

pub fn is_subalgebra(g: &RealFormAlgebra, h: &RealSpan) -> bool {
    let b: Vec<SparseVec> = h.basis().iter().map(|v| to_sparse(v)).collect();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| h.contains(&g.bracket_sparse(&b[i], &b[j]))))
}

pub fn is_abelian(g: &RealFormAlgebra, h: &RealSpan) -> bool {
    let b: Vec<SparseVec> = h.basis().iter().map(|v| to_sparse(v)).collect();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| g.bracket_sparse(&b[i], &b[j]).iter().all(|x| x.is_zero())))
}

/// Greedy maximal abelian subspace of the span of `list`.
///
/// Seeds with the first nonzero vector and repeatedly adjoins the first
/// vector of the centralizer basis that is not yet in the current span. The
/// result is maximal: its centralizer in `span(list)` is itself.
pub fn maximal_abelian_ordered(g: &RealFormAlgebra, list: &[Vec<Rational>]) -> RealSpan {
    maximal_abelian_filtered(g, list, &|_| true).expect("unfiltered greedy always succeeds")
}

pub fn maximal_abelian(g: &RealFormAlgebra, v: &RealSpan) -> RealSpan {
    maximal_abelian_ordered(g, v.basis())
}

/// Greedy maximal abelian subspace whose chosen generators all satisfy
/// `accept`. Candidates at each step are the centralizer basis vectors and
/// their pairwise sums and differences. Returns the span reached and whether
/// it is maximal (no centralizer vector outside it remains).
pub fn maximal_abelian_filtered(
    g: &RealFormAlgebra,
    list: &[Vec<Rational>],
    accept: &dyn Fn(&[Rational]) -> bool,
) -> Option<RealSpan> {
    let d = g.dim();
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    let mut current = RealSpan::zero(d);
    loop {
        let cands = if chosen.is_empty() {
            list.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect()
        } else {
            centralizer_vectors(g, &chosen, list)
        };
        let outside: Vec<&Vec<Rational>> = cands.iter().filter(|c| !current.contains(c)).collect();
        if outside.is_empty() {
            return Some(current);
        }
        let mut pick = outside.iter().find(|c| accept(c)).map(|c| (*c).clone());
        if pick.is_none() {
            'pairs: for (a, x) in outside.iter().enumerate() {
                for y in &outside[a + 1..] {
                    for s in [1i64, -1] {
                        let s = Rational::from_integer(s);
                        let z: Vec<Rational> = x.iter().zip(y.iter()).map(|(p, q)| p + &(&s * q)).collect();
                        if !current.contains(&z) && accept(&z) {
                            pick = Some(z);
                            break 'pairs;
                        }
                    }
                }
            }
        }
        let z = pick?;
        chosen.push(z);
        current = RealSpan::span_of(d, &chosen);
    }
}

/// Gram matrix of a subalgebra's own Killing form, in its span basis.
pub fn own_killing(g: &RealFormAlgebra, h: &RealSpan) -> Result<QMatrix> {
    let n = h.dim();
    let b: Vec<SparseVec> = h.basis().iter().map(|v| to_sparse(v)).collect();
    // c[a][l] = coordinates of [h_a, h_l] in the basis of h.
    let mut c = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for l in a..n {
            let br = g.bracket_sparse(&b[a], &b[l]);
            let coords =
                h.coordinates(&br).ok_or_else(|| Error::ConditionFailed("subspace is not a subalgebra".into()))?;
            c[l][a] = coords.iter().map(|x| -x).collect();
            c[a][l] = coords;
        }
    }
    let mut out = QMatrix::zeros(n, n);
    for a in 0..n {
        for bb in a..n {
            let mut acc = Rational::zero();
            for l in 0..n {
                for k in 0..n {
                    let x = &c[a][l][k];
                    if x.is_zero() {
                        continue;
                    }
                    let y = &c[bb][k][l];
                    if !y.is_zero() {
                        acc += &(x * y);
                    }
                }
            }
            out.set(a, bb, acc.clone());
            out.set(bb, a, acc);
        }
    }
    Ok(out)
}

/// Invariants compared against a table entry: dimension, center dimension,
/// real rank and the inertia of the algebra's own Killing form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub center_dim: usize,
    pub real_rank: usize,
    pub killing: Inertia,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} center {} rank {} killing {}", self.dim, self.center_dim, self.real_rank, self.killing)
    }
}

/// Fingerprint of a θ-stable subalgebra `h`, using `θ|h` as its Cartan
/// involution.
pub fn fingerprint(g: &RealFormAlgebra, h: &RealSpan, theta: &LinearAlgebraMap) -> Result<Fingerprint> {
    for v in h.basis() {
        if !h.contains(&theta.apply(v)) {
            return Err(Error::ConditionFailed(format!("`{}` does not preserve the subalgebra", theta.name)));
        }
    }
    let p = h.intersect(&fixed_subspace(g, theta, -1)?);
    Ok(Fingerprint {
        dim: h.dim(),
        center_dim: center(g, h).dim(),
        real_rank: maximal_abelian(g, &p).dim(),
        killing: inertia(&own_killing(g, h)?),
    })
}

/// Cartan decomposition `(k, p)` of `θ`, certified by the Killing form being
/// negative definite on `k` and positive definite on `p`.
pub fn certify_cartan(g: &RealFormAlgebra, theta: &LinearAlgebraMap) -> Result<(RealSpan, RealSpan)> {
    theta.check_involution()?;
    theta.check_automorphism(g)?;
    let k = fixed_subspace(g, theta, 1)?;
    let p = fixed_subspace(g, theta, -1)?;
    let form = g.killing_matrix();
    let ik = inertia(&restrict_form(form, &k));
    if ik.neg != k.dim() {
        return Err(Error::NotCartan(format!("Killing form on the +1 space has inertia {ik}")));
    }
    let ip = inertia(&restrict_form(form, &p));
    if ip.pos != p.dim() {
        return Err(Error::NotCartan(format!("Killing form on the −1 space has inertia {ip}")));
    }
    Ok((k, p))
}

/// Real rank: dimension of a maximal abelian subspace of `p`.
pub fn real_rank(g: &RealFormAlgebra, theta: &LinearAlgebraMap) -> Result<usize> {
    let (_, p) = certify_cartan(g, theta)?;
    Ok(maximal_abelian(g, &p).dim())
}

/// Rank of the pair `(g, g^τ)`: dimension of a maximal abelian subspace of
/// `g^{−τ,−θ}` for a Cartan involution `θ` commuting with `τ`.
pub fn real_rank_of_pair(g: &RealFormAlgebra, tau: &LinearAlgebraMap, theta: &LinearAlgebraMap) -> Result<usize> {
    certify_cartan(g, theta)?;
    tau.check_involution()?;
    if !tau.commutes_with(theta) {
        return Err(Error::ConditionFailed(format!("`{}` and `{}` do not commute", tau.name, theta.name)));
    }
    let q = multi_fixed(g, &[(tau, -1), (theta, -1)])?;
    Ok(maximal_abelian(g, &q).dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_int_rows(rows)
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia(&q(&[vec![1, 0], vec![0, -1]])), Inertia { pos: 1, neg: 1, zero: 0 });
        assert_eq!(inertia(&q(&[vec![0, 1], vec![1, 0]])), Inertia { pos: 1, neg: 1, zero: 0 });
        assert_eq!(inertia(&q(&[vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 0]])), Inertia { pos: 2, neg: 0, zero: 1 });
        assert_eq!(inertia(&q(&[vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]])), Inertia { pos: 1, neg: 1, zero: 1 });
    }
}
