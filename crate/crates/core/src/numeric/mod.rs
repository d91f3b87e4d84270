//! Floating-point certificates for strongly visible actions: slice search,
//! orbit membership, `σ` on the slice and `J`-transversality.

mod action;
mod certificate;
mod linalg;
mod lm;
mod search;

pub use action::{
    action_setup, compact_type_ii_action, diagonal_action, symmetric_action, unipotent_action, ActionKind, ActionSetup,
    ACTIONS,
};
pub use certificate::{
    antiholomorphy_exact, certify, iwasawa_round_trip, j_transversality_defect, planted_recovery, stream_rng,
    CertificateStatus, CertifyOptions, PlantedReport, Residuals, VisibilityCertificate, CERTIFICATE_SCHEMA_VERSION,
    PLANTED_THRESHOLD,
};
pub use linalg::{
    containment_defect, expm, flatten_real, frobenius, inverse, orthonormal_span, to_cmat, CMat, NumRecipe,
};
pub use lm::{levenberg_marquardt, LmOptions};
pub use search::{act, iwasawa, orbit_residual, point, slice_search, torus_element, Iwasawa, SliceFit};
