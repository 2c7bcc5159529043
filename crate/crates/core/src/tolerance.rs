//! Numerical tolerances shared by the library and its tests.
//!
//! All comparisons are absolute, componentwise maximum deviations.

/// Dense-transform comparisons, unitarity and norm checks for `|G| <= 2^12`.
pub const DENSE: f64 = 1e-10;

/// Fast transforms and compiled networks against the dense oracle.
pub const FAST: f64 = 1e-9;

/// Strided gate kernels against explicit Kronecker products.
pub const KERNEL: f64 = 1e-12;

/// Unitarity check on user supplied gate matrices.
pub const UNITARY: f64 = 1e-10;

/// Deciding `chi_l(k) = 1` from floating point values.
pub const CHARACTER: f64 = 1e-9;
