//! Unramified computations: the dual radical and its graded pieces, basic
//! functions, the Satake transform, local L-factors and growth bounds.

pub mod basic;
pub mod growth;
pub mod lfactor;
pub mod radical;
pub mod satake;

pub use basic::{borel_value, plan, pp_value, table, BasicFunctionTable, Case, Plan};
pub use growth::{distance_bound_exponent, distance_exponent, growth_certificate, toric_distance};
pub use lfactor::{local_lfactor, lfactor_ffixed, lfactor_radical, sym_series, LFactor, PointValue, RatLaurent};
pub use radical::{basic_function_graded, dual_radical, f_fixed, DualRadicalRep, FFixedEntry, FFixedRep, RadicalWeight};
pub use satake::{godement_jacquet_coefficient, hecke_on_strata, satake, satake_basis, satake_inverse, satake_inverse_irrep, torus_action, HeckeElement};
