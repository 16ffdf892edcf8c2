//! Global sign conventions.

/// Sign in the evaluation of a dual-radical weight at the shifted point
/// `e^{-rho_M} z`: the weight contributes `q^{KAPPA * <rho_M, beta>}`.
/// Pinned by the acceptance suite (smooth normalization, Borel/parabolic
/// agreement and the GL3 coset oracle); the other sign fails the oracle.
pub const KAPPA: i32 = 1;

/// Environment variable holding the default specialization of `q`.
pub const Q_DEFAULT_ENV: &str = "SPH_Q_DEFAULT";
