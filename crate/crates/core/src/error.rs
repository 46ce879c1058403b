//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while validating inputs or evaluating bounds.
///
/// Diagnostic payloads are reported as `f64` regardless of the scalar type
/// the computation ran at.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square with dimension >= 2, got {rows}x{cols}")]
    BadDimension { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M^dag| entry {deviation:.3e} exceeds tolerance")]
    NotHermitian { deviation: f64 },

    #[error("ket is not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("not a density matrix: {detail}")]
    NotDensityMatrix { detail: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expectation value has imaginary residue {imag:.3e} beyond tolerance")]
    NonRealExpectation { imag: f64 },

    #[error("commutator expectation has real residue {real:.3e} beyond tolerance")]
    NonImaginaryCommutator { real: f64 },

    #[error("deviation vectors of different kinds cannot be combined")]
    KindMismatch,

    #[error("empty input")]
    EmptyInput,

    #[error("expected {expected} elements, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("operation is defined for pure states only")]
    MixedStateUnsupported,

    #[error("invalid perp ket: {detail}")]
    InvalidPerp { detail: String },

    #[error("operation requires a 2-dimensional system, got dimension {dim}")]
    NotQubit { dim: usize },

    #[error("quadratic form evaluated to {value:.3e}, below the clamping floor")]
    NegativeNormSquare { value: f64 },

    #[error("constraint solve is singular: the required divisor is zero")]
    SingularSolve,

    #[error("decomposition violates its constraints: residue {residue:.3e} beyond tolerance")]
    ConstraintViolated { residue: f64 },

    #[error("weights must not be all zero")]
    ZeroWeights,

    #[error("pair indices must satisfy 1 <= i < j <= n, got i={i}, j={j}, n={n}")]
    BadIndices { i: usize, j: usize, n: usize },

    #[error("matchings require an even number of observables, got {count}")]
    OddCount { count: usize },

    #[error("fixture has the wrong shape: expected {expected}")]
    BadFixtureShape { expected: &'static str },

    #[error("bad parameters: {detail}")]
    BadParams { detail: String },

    #[error("input document does not match the expected schema: {detail}")]
    InputSchema { detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
