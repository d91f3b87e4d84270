use std::fmt;

use crate::error::Result;
use crate::exact::ExactMatrix;

/// The outer part of an involution recipe, acting on matrices.
///
/// These four maps form a Klein four-group under composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixOp {
    /// `X ↦ X`
    Identity,
    /// `X ↦ X̄`
    Conjugate,
    /// `X ↦ −Xᵀ`
    NegTranspose,
    /// `X ↦ −X*`
    NegAdjoint,
}

impl MatrixOp {
    pub fn apply(self, x: &ExactMatrix) -> ExactMatrix {
        match self {
            MatrixOp::Identity => x.clone(),
            MatrixOp::Conjugate => x.conj(),
            MatrixOp::NegTranspose => x.transpose().neg(),
            MatrixOp::NegAdjoint => x.adjoint().neg(),
        }
    }

    /// The induced map on the group: `h ↦ h`, `h̄`, `h⁻ᵀ` or `h⁻*`.
    pub fn apply_group(self, h: &ExactMatrix) -> Result<ExactMatrix> {
        Ok(match self {
            MatrixOp::Identity => h.clone(),
            MatrixOp::Conjugate => h.conj(),
            MatrixOp::NegTranspose => h.inverse()?.transpose(),
            MatrixOp::NegAdjoint => h.inverse()?.adjoint(),
        })
    }

    pub fn compose(self, other: MatrixOp) -> MatrixOp {
        use MatrixOp::*;
        match (self, other) {
            (Identity, o) | (o, Identity) => o,
            (a, b) if a == b => Identity,
            (Conjugate, NegTranspose) | (NegTranspose, Conjugate) => NegAdjoint,
            (Conjugate, NegAdjoint) | (NegAdjoint, Conjugate) => NegTranspose,
            _ => Conjugate,
        }
    }

    /// Whether the op is complex-antilinear.
    pub fn is_antilinear(self) -> bool {
        matches!(self, MatrixOp::Conjugate | MatrixOp::NegAdjoint)
    }
}

/// A matrix involution candidate `X ↦ g · op(X) · g⁻¹`.
#[derive(Clone, PartialEq, Eq)]
pub struct InvolutionRecipe {
    pub name: String,
    g: ExactMatrix,
    g_inv: ExactMatrix,
    op: MatrixOp,
}

impl InvolutionRecipe {
    pub fn new(name: impl Into<String>, g: ExactMatrix, op: MatrixOp) -> Result<Self> {
        let g_inv = g.inverse()?;
        Ok(InvolutionRecipe { name: name.into(), g, g_inv, op })
    }

    /// `Ad(g)`
    pub fn ad(name: impl Into<String>, g: ExactMatrix) -> Result<Self> {
        Self::new(name, g, MatrixOp::Identity)
    }

    pub fn op_only(name: impl Into<String>, m: usize, op: MatrixOp) -> Self {
        InvolutionRecipe { name: name.into(), g: ExactMatrix::identity(m), g_inv: ExactMatrix::identity(m), op }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `Ad(h) ∘ self ∘ Ad(h)⁻¹`, a conjugate recipe.
    pub fn conjugate_by(&self, h: &ExactMatrix) -> Result<InvolutionRecipe> {
        let ad_h = InvolutionRecipe::ad("Ad(h)", h.clone())?;
        let ad_hinv = InvolutionRecipe::ad("Ad(h⁻¹)", h.inverse()?)?;
        Ok(ad_h.compose(self)?.compose(&ad_hinv)?.renamed(format!("{}^h", self.name)))
    }

    pub fn g(&self) -> &ExactMatrix {
        &self.g
    }

    pub fn op(&self) -> MatrixOp {
        self.op
    }

    pub fn size(&self) -> usize {
        self.g.rows()
    }

    pub fn apply(&self, x: &ExactMatrix) -> ExactMatrix {
        self.g.mul(&self.op.apply(x)).mul(&self.g_inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &InvolutionRecipe) -> Result<InvolutionRecipe> {
        // g1·op1(g2·op2(X)·g2⁻¹)·g1⁻¹ = (g1·op1_G(g2))·(op1∘op2)(X)·(…)⁻¹
        let g = self.g.mul(&self.op.apply_group(&other.g)?);
        let name = format!("{}∘{}", self.name, other.name);
        Self::new(name, g, self.op.compose(other.op))
    }

    /// The corresponding automorphism of the matrix group.
    pub fn apply_group(&self, h: &ExactMatrix) -> Result<ExactMatrix> {
        Ok(self.g.mul(&self.op.apply_group(h)?).mul(&self.g_inv))
    }
}

impl fmt::Debug for InvolutionRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = Ad({:?})∘{:?}", self.name, self.g, self.op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;

    fn sample() -> ExactMatrix {
        let mut x = ExactMatrix::from_int_rows(&[vec![1, 2, 0], vec![-1, 3, 4], vec![5, 0, 2]]);
        x.set(0, 2, GaussianRational::new(1.into(), 3.into()));
        x.set(2, 1, GaussianRational::new((-2).into(), 1.into()));
        x
    }

    #[test]
    fn composition_matches_sequential_application() {
        let g1 = ExactMatrix::from_int_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        let mut g2 = ExactMatrix::diag_int(&[1, -1, 2]);
        g2.set(0, 1, GaussianRational::i());
        let ops = [MatrixOp::Identity, MatrixOp::Conjugate, MatrixOp::NegTranspose, MatrixOp::NegAdjoint];
        let x = sample();
        for a in ops {
            for b in ops {
                let r1 = InvolutionRecipe::new("a", g1.clone(), a).unwrap();
                let r2 = InvolutionRecipe::new("b", g2.clone(), b).unwrap();
                let c = r1.compose(&r2).unwrap();
                assert_eq!(c.apply(&x), r1.apply(&r2.apply(&x)), "{a:?} ∘ {b:?}");
            }
        }
    }
}
