//! Restricted root systems, signatures and the twisted involutions `τ_ε`.

mod datum;
mod signature;

pub use datum::{
    has_rational_spectrum, lexicographic_functional, nilpotent_part, positive_system, rational_torus,
    root_decomposition, RestrictedRootDatum, Root,
};
pub use signature::{
    epsilon_datum, k_epsilon_family, root_lattice, sign_operator, signatures, tau_epsilon, verify_epsilon_family,
    verify_twist, EpsilonFamilyReport, EpsilonReport, KEpsilonMember, Signature,
};
