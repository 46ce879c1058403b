//! Numerical tolerances used across the crate.
//!
//! All values assume `f64` headroom for dimensions up to a few dozen; the
//! `f32` instantiation of the library compiles but these thresholds are far
//! tighter than single-precision rounding, so validation there needs looser
//! explicit tolerances.

/// Relative Hermiticity tolerance: max |M - M†| entry against 1 + max |M| entry.
pub const HERMITICITY_REL: f64 = 1e-10;

/// Absolute tolerance on ket normalization and density-matrix trace.
pub const NORM_ABS: f64 = 1e-10;

/// Density-matrix eigenvalues in `[PSD_FLOOR, 0)` are clamped to zero;
/// anything below is rejected.
pub const PSD_FLOOR: f64 = -1e-10;

/// Frobenius tolerance for `sqrt_rho * sqrt_rho` reproducing `rho`.
pub const SQRT_FROBENIUS: f64 = 1e-8;

/// Variances and squared norms in `[NORM_SQ_FLOOR, 0)` are clamped to zero.
pub const NORM_SQ_FLOOR: f64 = -1e-12;

/// Absolute bound on the imaginary residue of an expectation value, and on
/// the real residue of a commutator expectation.
pub const IMAG_RESIDUE: f64 = 1e-9;

/// Quadratic forms in `[QUAD_FORM_FLOOR, 0)` are clamped to zero; anything
/// below signals inconsistent inputs.
pub const QUAD_FORM_FLOOR: f64 = -1e-10;

/// Relative tolerance on decomposition constraint residues, scaled by
/// `1 + |x| + |y|`.
pub const CONSTRAINT_REL: f64 = 1e-10;

/// Relative tolerance for lower <= weighted sum of variances <= upper.
pub const SANDWICH_REL: f64 = 1e-9;

/// Relative tolerance for the exact collapse of both bounds onto the
/// weighted sum of variances when a = 0 or b = 0.
pub const SATURATION_REL: f64 = 1e-10;

/// Relative tolerance on the norm-expansion identity residuals.
pub const IDENTITY_REL: f64 = 1e-10;

/// Orthogonality and normalization tolerance for an explicit perp ket.
pub const PERP_ABS: f64 = 1e-10;
