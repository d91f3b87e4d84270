//! Real Lie algebras of matrices, involutions and their invariants.

mod algebra;
mod map;
mod structure;

pub use algebra::{constraint_kernel, AlgebraLabel, RealFormAlgebra};
pub use map::{fixed_subspace, multi_fixed, LinearAlgebraMap};
pub use structure::{
    center, centralizer_in, certify_cartan, fingerprint, inertia, is_abelian, is_subalgebra, maximal_abelian,
    maximal_abelian_filtered, maximal_abelian_ordered, own_killing, real_rank, real_rank_of_pair, restrict_form,
    Fingerprint, Inertia,
};
