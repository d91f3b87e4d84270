//! Row-by-row verification of compatible involution triples.

mod compact;
mod diagonal;
mod epsilon;
mod report;
mod sweep;
mod triple;

pub use compact::{verify_compact_type_ii, CompactTypeIIReport, FingerprintCheck};
pub use diagonal::{
    block_recipe, compact_diag_setup, diagonal_setup, direct_sum, swap_recipe, verify_compact_diag, verify_diagonal,
    CompactDiagReport, DiagonalReport, DiagonalSetup, DiagonalVariant,
};
pub use epsilon::{row_epsilon_family, run_epsilon_suite, EpsilonRecord, EpsilonSuiteReport};
pub use report::{Check, RowReport, Status, Summary, SweepReport, REPORT_SCHEMA_VERSION};
pub use sweep::{check_instance, instance_counts, run_sweep, Built, InstanceChecks};
pub use triple::{
    check_triple, is_maximal_abelian_in, row_involutions, slice_subspace, verify_rank_formula, verify_triple,
    RankReport, TripleReport,
};
