use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::realizations::{InvolutionRecipe, MatrixOp};

pub type CMat = DMatrix<Complex64>;

pub fn to_cmat(x: &ExactMatrix) -> CMat {
    let v: Vec<Complex64> = x.to_f64_pairs().into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
    CMat::from_row_slice(x.rows(), x.cols(), &v)
}

pub fn frobenius(x: &CMat) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Real coordinates `(Re, Im)` of all entries, column-major.
pub fn flatten_real(x: &CMat) -> DVector<f64> {
    let mut out = DVector::zeros(2 * x.len());
    for (k, z) in x.iter().enumerate() {
        out[2 * k] = z.re;
        out[2 * k + 1] = z.im;
    }
    out
}

pub fn scale(x: &CMat, s: f64) -> CMat {
    x.map(|z| z * s)
}

/// `Σ cᵢ Xᵢ`
pub fn combine(basis: &[CMat], coeffs: &[f64], m: usize) -> CMat {
    let mut out = CMat::zeros(m, m);
    for (b, c) in basis.iter().zip(coeffs) {
        out += scale(b, *c);
    }
    out
}

pub fn expm(x: &CMat) -> CMat {
    x.exp()
}

pub fn inverse(x: &CMat) -> Result<CMat> {
    x.clone().try_inverse().ok_or_else(|| Error::Numeric("singular group element".into()))
}

/// Orthonormal basis (columns) of the span of `vectors` by column-pivoted
/// QR, dropping pivots with `|rᵢᵢ|` below `rel · |r₀₀|`.
pub fn orthonormal_span(vectors: &[DVector<f64>], rel: f64) -> DMatrix<f64> {
    let Some(n) = vectors.first().map(|v| v.len()) else {
        return DMatrix::zeros(0, 0);
    };
    let qr = DMatrix::from_columns(vectors).col_piv_qr();
    let r = qr.r();
    let q = qr.q();
    let d = r.nrows().min(r.ncols());
    let lead = if d > 0 { r[(0, 0)].abs() } else { 0.0 };
    let keep = (0..d).take_while(|&k| lead > 0.0 && r[(k, k)].abs() > rel * lead).count();
    if keep == 0 {
        DMatrix::zeros(n, 0)
    } else {
        q.columns(0, keep).into_owned()
    }
}

/// Sine of the largest principal angle between `span(q_from)` and
/// `span(q_to)`, both given by orthonormal columns.
pub fn containment_defect(q_from: &DMatrix<f64>, q_to: &DMatrix<f64>) -> f64 {
    if q_from.ncols() == 0 {
        return 0.0;
    }
    let proj = if q_to.ncols() == 0 {
        DMatrix::zeros(q_from.nrows(), q_from.ncols())
    } else {
        q_to * (q_to.transpose() * q_from)
    };
    let rest = q_from - proj;
    let gram = rest.transpose() * &rest;
    gram.symmetric_eigenvalues().iter().cloned().fold(0.0, f64::max).max(0.0).sqrt()
}

/// An involution recipe `X ↦ g·op(X)·g⁻¹` in floating point, acting on the
/// Lie algebra and on the group.
#[derive(Clone, Debug)]
pub struct NumRecipe {
    g: CMat,
    g_inv: CMat,
    op: MatrixOp,
}

impl NumRecipe {
    pub fn new(r: &InvolutionRecipe) -> Result<Self> {
        let g = to_cmat(r.g());
        let g_inv = inverse(&g)?;
        Ok(NumRecipe { g, g_inv, op: r.op() })
    }

    fn sandwich(&self, x: &CMat) -> CMat {
        &self.g * x * &self.g_inv
    }

    pub fn apply_algebra(&self, x: &CMat) -> CMat {
        let inner = match self.op {
            MatrixOp::Identity => x.clone(),
            MatrixOp::Conjugate => x.map(|z| z.conj()),
            MatrixOp::NegTranspose => -x.transpose(),
            MatrixOp::NegAdjoint => -x.adjoint(),
        };
        self.sandwich(&inner)
    }

    pub fn apply_group(&self, h: &CMat) -> Result<CMat> {
        let inner = match self.op {
            MatrixOp::Identity => h.clone(),
            MatrixOp::Conjugate => h.map(|z| z.conj()),
            MatrixOp::NegTranspose => inverse(h)?.transpose(),
            MatrixOp::NegAdjoint => inverse(h)?.adjoint(),
        };
        Ok(self.sandwich(&inner))
    }

    /// `Θ(h)⁻¹`
    pub fn apply_group_inverse(&self, h: &CMat) -> Result<CMat> {
        let inner = match self.op {
            MatrixOp::Identity => inverse(h)?,
            MatrixOp::Conjugate => inverse(&h.map(|z| z.conj()))?,
            MatrixOp::NegTranspose => h.transpose(),
            MatrixOp::NegAdjoint => h.adjoint(),
        };
        Ok(self.sandwich(&inner))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_and_algebra_agree() {
        let g = ExactMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        for op in [MatrixOp::Identity, MatrixOp::Conjugate, MatrixOp::NegTranspose, MatrixOp::NegAdjoint] {
            let r = NumRecipe::new(&InvolutionRecipe::new("r", g.clone(), op).unwrap()).unwrap();
            let x = CMat::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.3, 0.1),
                    Complex64::new(-0.2, 0.4),
                    Complex64::new(0.5, -0.3),
                    Complex64::new(0.1, 0.2),
                ],
            );
            let lhs = r.apply_group(&expm(&x)).unwrap();
            let rhs = expm(&r.apply_algebra(&x));
            assert!(frobenius(&(lhs - rhs)) < 1e-12, "{op:?}");
            let h = expm(&x);
            let inv = r.apply_group_inverse(&h).unwrap();
            assert!(frobenius(&(inv * r.apply_group(&h).unwrap() - CMat::identity(2, 2))) < 1e-12);
        }
    }

    #[test]
    fn defect_of_contained_span() {
        let e = |i: usize| DVector::from_fn(3, |k, _| if k == i { 1.0 } else { 0.0 });
        let to = orthonormal_span(&[e(0), e(1)], 1e-9);
        let from = orthonormal_span(&[&e(0) + &e(1) * 2.0], 1e-9);
        assert!(containment_defect(&from, &to) < 1e-14);
        let out = orthonormal_span(&[e(2)], 1e-9);
        assert!((containment_defect(&out, &to) - 1.0).abs() < 1e-14);
    }
}
