//! Brute-force models over `F_p((t))`: orbit labels by valuations, Hecke
//! operators by coset sums, and comparisons with the unramified engine.

pub mod checks;
pub mod hecke;
pub mod matrix;
pub mod models;
pub mod series;

pub use checks::{
    box_labels, gj_check, gj_oracle, hecke_relation_check, interpolate, interpolated_convolution, orbit_invariance_check,
    pp_gl3_check, pp_gl3_oracle, run_named, satake_compatibility_check, CheckReport, Mismatch, CHECK_NAMES,
};
pub use hecke::{coset_reps, hecke_convolve, HeckeOp};
pub use matrix::Mat;
pub use models::{orbit_invariant, precision_for, LatticePoint, Space};
pub use series::TruncSeries;
