use thiserror::Error;

use crate::exact::ExactMatrix;

/// Failures of the exact linear-algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error(
        "characteristic polynomial does not split over Q (degree {leftover_degree} left after removing rational roots)"
    )]
    NonRationalSpectrum { leftover_degree: usize },
    #[error("eigenspaces have total dimension {eigenspace_total}, expected {dim}")]
    NotDiagonalizable { eigenspace_total: usize, dim: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("rational root search exceeds the candidate limit")]
    SearchLimit,
}

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("basis is not closed under the bracket: [{left:?}, {right:?}] = {bracket:?} lies outside the span")]
    NotClosedUnderBracket { left: ExactMatrix, right: ExactMatrix, bracket: ExactMatrix },
    #[error("basis matrices are linearly dependent over R")]
    LinearlyDependent,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("`{map}` does not map basis element {index} into the algebra")]
    NotStabilized { map: String, index: usize },
    #[error("`{0}` is not an involution")]
    NotInvolution(String),
    #[error("`{map}` does not preserve the bracket of basis elements {i} and {j}")]
    NotAutomorphism { map: String, i: usize, j: usize },
    #[error("not a Cartan involution: {0}")]
    NotCartan(String),
    #[error("not of Hermitian type: {0}")]
    NotHermitianType(String),
    #[error("involution does not send Z to ±Z: {0}")]
    NotTypeStable(String),
    #[error("unsupported family `{0}`")]
    UnsupportedFamily(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("table {table} row {row} is not implementable (data only)")]
    UnsupportedRow { table: u8, row: String },
    #[error("fingerprint mismatch for {what}: expected {expected}, computed {computed}")]
    FingerprintMismatch { what: String, expected: String, computed: String },
    #[error("rank mismatch: expected {expected}, computed {computed}")]
    RankMismatch { expected: i64, computed: i64 },
    #[error("condition failed: {0}")]
    ConditionFailed(String),
    #[error("functional vanishes on a root")]
    DegenerateFunctional,
    #[error("dataset error: {0}")]
    Dataset(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("unsupported action `{0}`")]
    UnsupportedAction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
