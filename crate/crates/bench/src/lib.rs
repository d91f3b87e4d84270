//! Benchmark fixtures shared by the criterion targets.

use visibility_core::numeric::{action_setup, ActionSetup};
use visibility_core::realizations::{build, Family, Realization};

/// `sp(n,R)` with its Cartan involution.
pub fn symplectic(n: usize) -> Realization {
    build(&Family::SpR { n }, 2 * n).expect("sp(n,R) builds")
}

/// A registered action for the certifier benches.
pub fn action(id: &str) -> ActionSetup {
    action_setup(id).expect("registered action")
}
