//! Exact Lie-algebra engine and numerical certifier for strongly visible
//! actions on Hermitian symmetric spaces.

pub mod analysis;
pub mod error;
pub mod exact;
pub mod lie;
pub mod numeric;
pub mod realizations;
pub mod roots;

pub use error::{Error, ExactError, Result};
