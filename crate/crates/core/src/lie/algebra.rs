use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{flatten, to_sparse, unflatten, ExactMatrix, QMatrix, Rational, RealSpan, SparseVec};

/// Structured name of an algebra: a family key and integer parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraLabel {
    pub family: String,
    pub params: Vec<i64>,
}

impl AlgebraLabel {
    pub fn new(family: impl Into<String>, params: &[i64]) -> Self {
        AlgebraLabel { family: family.into(), params: params.to_vec() }
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.family, ps.join(","))
    }
}

/// A real Lie algebra spanned by exact matrices in gl(m, C).
///
/// The stored basis is the canonical echelon basis of the span of the input
/// matrices (flattened to real coordinates), so the coordinates of an element
/// are its entries at the pivot positions. Structure constants are computed
/// once at construction, which also certifies bracket closure.
#[derive(Clone, Debug)]
pub struct RealFormAlgebra {
    label: AlgebraLabel,
    m: usize,
    basis: Vec<ExactMatrix>,
    span: RealSpan,
    /// `structure[i * dim + j]` holds the coordinates of `[e_i, e_j]`.
    structure: Vec<SparseVec>,
    killing: OnceLock<QMatrix>,
}

impl RealFormAlgebra {
    /// Builds the algebra spanned by `basis`, certifying closure.
    pub fn make(basis: &[ExactMatrix], label: AlgebraLabel) -> Result<Self> {
        let m = basis.first().map_or(0, |b| b.rows());
        for b in basis {
            if b.rows() != m || b.cols() != m {
                return Err(Error::ShapeMismatch("basis matrices must be m×m".into()));
            }
        }
        let span = RealSpan::span_of_matrices(basis);
        if span.dim() != basis.len() {
            return Err(Error::LinearlyDependent);
        }
        Self::from_span(span, m, label)
    }

    /// Builds the algebra from an already canonical flattened span.
    pub fn from_span(span: RealSpan, m: usize, label: AlgebraLabel) -> Result<Self> {
        let basis: Vec<ExactMatrix> = span.basis().iter().map(|v| unflatten(v, m, m)).collect();
        let d = basis.len();
        let mut structure = vec![SparseVec::new(); d * d];
        for i in 0..d {
            for j in i + 1..d {
                let br = basis[i].bracket(&basis[j]);
                let coords = span.coordinates(&flatten(&br)).ok_or_else(|| Error::NotClosedUnderBracket {
                    left: basis[i].clone(),
                    right: basis[j].clone(),
                    bracket: br.clone(),
                })?;
                let sv = to_sparse(&coords);
                structure[j * d + i] = sv.iter().map(|(k, c)| (*k, -c)).collect();
                structure[i * d + j] = sv;
            }
        }
        Ok(RealFormAlgebra { label, m, basis, span, structure, killing: OnceLock::new() })
    }

    /// The solution space of real-linear constraints `f(X) = 0` inside
    /// gl(m, C), as an algebra.
    pub fn from_constraints(
        m: usize,
        constraints: &[&dyn Fn(&ExactMatrix) -> ExactMatrix],
        label: AlgebraLabel,
    ) -> Result<Self> {
        let span = constraint_kernel(m, constraints);
        Self::from_span(span, m, label)
    }

    pub fn label(&self) -> &AlgebraLabel {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix size m of the ambient gl(m, C).
    pub fn ambient_size(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        &self.basis
    }

    pub fn span(&self) -> &RealSpan {
        &self.span
    }

    pub fn structure(&self, i: usize, j: usize) -> &SparseVec {
        &self.structure[i * self.dim() + j]
    }

    pub fn contains(&self, x: &ExactMatrix) -> bool {
        x.rows() == self.m && x.cols() == self.m && self.span.contains(&flatten(x))
    }

    /// Coordinates of a matrix in the stored basis, if it lies in the algebra.
    pub fn coordinates(&self, x: &ExactMatrix) -> Option<Vec<Rational>> {
        if x.rows() != self.m || x.cols() != self.m {
            return None;
        }
        self.span.coordinates(&flatten(x))
    }

    /// The matrix with the given coordinates.
    pub fn to_matrix(&self, coords: &[Rational]) -> ExactMatrix {
        unflatten(&self.span.combine(coords), self.m, self.m)
    }

    /// `[u, v]` in coordinates, for sparse coordinate vectors.
    pub fn bracket_sparse(&self, u: &[(usize, Rational)], v: &[(usize, Rational)]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, a) in u {
            for (j, b) in v {
                if i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.structure(*i, *j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    pub fn bracket_coords(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        self.bracket_sparse(&to_sparse(u), &to_sparse(v))
    }

    /// Matrix of ad(x) on the basis (columns are images of basis vectors).
    pub fn ad_matrix(&self, x: &[Rational]) -> QMatrix {
        let d = self.dim();
        let xs = to_sparse(x);
        let mut out = QMatrix::zeros(d, d);
        for l in 0..d {
            let col = self.bracket_sparse(&xs, &[(l, Rational::one())]);
            for (k, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(k, l, v);
                }
            }
        }
        out
    }

    /// The Killing form `tr(ad e_i ∘ ad e_j)` on basis vectors.
    pub fn killing_matrix(&self) -> &QMatrix {
        self.killing.get_or_init(|| self.compute_killing())
    }

    fn compute_killing(&self) -> QMatrix {
        let d = self.dim();
        let mut out = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let mut acc = Rational::zero();
                for l in 0..d {
                    // (ad e_i)[k][l] = structure(i,l)[k]; need (ad e_j)[l][k].
                    for (k, a) in self.structure(i, l) {
                        if let Some(b) = lookup(self.structure(j, *k), l) {
                            acc += &(a * b);
                        }
                    }
                }
                out.set(i, j, acc.clone());
                out.set(j, i, acc);
            }
        }
        out
    }

    /// `B(x, y)` for coordinate vectors.
    pub fn killing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let ky = self.killing_matrix().mul_vec(y);
        x.iter().zip(&ky).map(|(a, b)| a * b).sum()
    }
}

fn lookup(v: &[(usize, Rational)], idx: usize) -> Option<&Rational> {
    v.binary_search_by_key(&idx, |(i, _)| *i).ok().map(|p| &v[p].1)
}

/// Kernel of real-linear constraints on gl(m, C), as a span of flattened
/// matrices.
pub fn constraint_kernel(m: usize, constraints: &[&dyn Fn(&ExactMatrix) -> ExactMatrix]) -> RealSpan {
    let n = 2 * m * m;
    // Column c of the constraint matrix is the image of the c-th real
    // coordinate generator (E_kl, then i·E_kl).
    let generators: Vec<ExactMatrix> = (0..n)
        .map(|c| {
            let mut v = vec![Rational::zero(); n];
            v[c] = Rational::one();
            unflatten(&v, m, m)
        })
        .collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for f in constraints {
        let images: Vec<Vec<Rational>> = generators.iter().map(|g| flatten(&f(g))).collect();
        let out_len = images.first().map_or(0, |v| v.len());
        for r in 0..out_len {
            let row: Vec<Rational> = images.iter().map(|v| v[r].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return RealSpan::full(n);
    }
    RealSpan::kernel_of(&QMatrix::from_rows(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;

    fn su2_basis() -> Vec<ExactMatrix> {
        let i = GaussianRational::i();
        let mut a = ExactMatrix::zeros(2, 2);
        a.set(0, 0, i.clone());
        a.set(1, 1, -&i);
        let b = ExactMatrix::from_int_rows(&[vec![0, 1], vec![-1, 0]]);
        let mut c = ExactMatrix::zeros(2, 2);
        c.set(0, 1, i.clone());
        c.set(1, 0, i);
        vec![a, b, c]
    }

    #[test]
    fn su2_is_closed() {
        let g = RealFormAlgebra::make(&su2_basis(), AlgebraLabel::new("su", &[2])).unwrap();
        assert_eq!(g.dim(), 3);
        let k = g.killing_matrix();
        for i in 0..3 {
            assert!(k.get(i, i).signum() < 0);
        }
    }

    #[test]
    fn single_nilpotent_is_abelian() {
        let g = RealFormAlgebra::make(&[ExactMatrix::unit(2, 0, 1)], AlgebraLabel::new("n", &[])).unwrap();
        assert_eq!(g.dim(), 1);
    }

    #[test]
    fn e12_e21_not_closed() {
        let r = RealFormAlgebra::make(
            &[ExactMatrix::unit(2, 0, 1), ExactMatrix::unit(2, 1, 0)],
            AlgebraLabel::new("bad", &[]),
        );
        match r {
            Err(Error::NotClosedUnderBracket { bracket, .. }) => {
                assert_eq!(bracket, ExactMatrix::diag_int(&[1, -1]));
            }
            other => panic!("expected closure failure, got {other:?}"),
        }
    }
}
