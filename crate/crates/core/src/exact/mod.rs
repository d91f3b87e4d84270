//! Exact scalars and linear algebra over Q and Q(i).

mod eigen;
mod gaussian;
mod hnf;
mod matrix;
mod qmatrix;
mod rational;
mod span;

pub use eigen::{poly_eval, rational_eigenspaces, rational_roots, synthetic_division};
pub use gaussian::GaussianRational;
pub use hnf::{hermite_normal_form, lattice_coordinates};
pub use matrix::ExactMatrix;
pub use qmatrix::QMatrix;
pub use rational::{common_denominator, ParseRationalError, Rational};
pub use span::{flatten, unflatten, RealSpan};

/// A sparse rational vector as sorted `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn from_sparse(v: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}
