//! Concrete matrix realizations of the classical families, their
//! characteristic elements and catalogued involutions.

mod catalog;
mod characteristic;
mod compact;
mod dataset;
pub mod expected;
pub mod expr;
mod families;
mod recipe;

pub use catalog::{catalog_entry, table3_sigma, CatalogEntry, SigmaChoice};
pub use characteristic::{
    characteristic_element, characteristic_element_of, holomorphic_type, CharacteristicElement, HolomorphicType,
};
pub use compact::{compact_type_ii_data, expected_dims, g0, CompactTypeII, TypeIIVariant, COMPACT_MAX_AMBIENT};
pub use dataset::{Dataset, RowFilter, TableRow};
pub use expected::expected_fingerprint;
pub use families::{build, build_algebra, cartan_recipe, ipq, kmat, Family, Realization, DEFAULT_MAX_AMBIENT};
pub use recipe::{InvolutionRecipe, MatrixOp};
