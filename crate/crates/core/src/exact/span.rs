use super::qmatrix::{kernel_from_rref, rref_in_place};
use super::{ExactMatrix, GaussianRational, QMatrix, Rational};

/// Flattens a complex matrix to its real coordinate vector: all real parts
/// in row-major order, then all imaginary parts.
pub fn flatten(m: &ExactMatrix) -> Vec<Rational> {
    let n = m.rows() * m.cols();
    let mut v = Vec::with_capacity(2 * n);
    v.extend(m.entries().iter().map(|z| z.re.clone()));
    v.extend(m.entries().iter().map(|z| z.im.clone()));
    v
}

/// Left inverse of [`flatten`] for a `rows × cols` shape.
pub fn unflatten(v: &[Rational], rows: usize, cols: usize) -> ExactMatrix {
    let n = rows * cols;
    assert_eq!(v.len(), 2 * n, "vector length does not match shape");
    let data = (0..n).map(|k| GaussianRational::new(v[k].clone(), v[n + k].clone())).collect();
    ExactMatrix::from_entries(rows, cols, data)
}

/// A subspace of Q^d stored by its reduced row echelon basis.
///
/// Two spans are equal exactly when their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RealSpan {
    ambient_real_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RealSpan {
    pub fn zero(ambient_real_dim: usize) -> Self {
        RealSpan { ambient_real_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_real_dim: usize) -> Self {
        let basis = (0..ambient_real_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_real_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        RealSpan { ambient_real_dim, basis, pivots: (0..ambient_real_dim).collect() }
    }

    /// The span of `vectors` inside Q^`ambient_real_dim`.
    pub fn span_of(ambient_real_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let mut rows: Vec<Vec<Rational>> = vectors
            .iter()
            .filter(|v| {
                assert_eq!(v.len(), ambient_real_dim, "vector length mismatch");
                v.iter().any(|x| !x.is_zero())
            })
            .cloned()
            .collect();
        let pivots = rref_in_place(&mut rows, ambient_real_dim);
        rows.truncate(pivots.len());
        RealSpan { ambient_real_dim, basis: rows, pivots }
    }

    /// The span of flattened matrices.
    pub fn span_of_matrices(matrices: &[ExactMatrix]) -> Self {
        let d = matrices.first().map_or(0, |m| 2 * m.rows() * m.cols());
        let vs: Vec<_> = matrices.iter().map(flatten).collect();
        Self::span_of(d, &vs)
    }

    pub fn ambient_real_dim(&self) -> usize {
        self.ambient_real_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` with respect to the stored basis, or `None` when
    /// `v` is not in the span. Decided exactly.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_real_dim, "vector length mismatch");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= &(c * x);
                }
            }
        }
        residual.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// The vector `Σ coords[i] · basis[i]`.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Rational::zero(); self.ambient_real_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &RealSpan) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &RealSpan) -> RealSpan {
        assert_eq!(self.ambient_real_dim, other.ambient_real_dim);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        RealSpan::span_of(self.ambient_real_dim, &vs)
    }

    /// Exact intersection via the kernel of `[Aᵀ | −Bᵀ]`.
    pub fn intersect(&self, other: &RealSpan) -> RealSpan {
        assert_eq!(self.ambient_real_dim, other.ambient_real_dim);
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return RealSpan::zero(self.ambient_real_dim);
        }
        let d = self.ambient_real_dim;
        let mut m = QMatrix::zeros(d, a + b);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, a + j, -x);
                }
            }
        }
        let (r, piv) = m.rref();
        let ker = kernel_from_rref(&r, &piv, a + b);
        let vs: Vec<Vec<Rational>> = ker.iter().map(|k| self.combine(&k[..a])).collect();
        RealSpan::span_of(d, &vs)
    }

    /// Kernel-based solution set `{x : M·x = 0}` as a span.
    pub fn kernel_of(m: &QMatrix) -> RealSpan {
        RealSpan::span_of(m.cols(), &m.kernel())
    }
}
