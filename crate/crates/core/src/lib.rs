//! Variance-based uncertainty bounds for Hermitian observables.
//!
//! The crate evaluates two-sided bounds on weighted sums of variances whose
//! tightness is steered by constrained free complex parameters: shrinking
//! the split magnitude `|a|` (or `|b|`) pulls both bounds arbitrarily close
//! to the variance sum itself, and setting it to zero collapses them onto it
//! exactly. Alongside the parameterized bounds it provides the classical
//! product-form bounds (commutator and commutator-plus-anticommutator), the
//! sum-form pair bound built from an orthogonal auxiliary ket, pair-sum
//! bounds for four or more observables, and composite bounds over pairwise
//! matchings.
//!
//! Everything works for pure kets and for density matrices; the mixed-state
//! path replaces the state by the PSD square root of its density matrix and
//! the ket inner product by the Hilbert-Schmidt one, which preserves every
//! norm identity the bounds rest on.
//!
//! The numerical core is generic over the real scalar (`f32` or `f64`)
//! through [`Scalar`]; the `f64` aliases below are the concrete types most
//! callers want. Embedded fixtures (`fig1`, `fig2`) drive the two bundled
//! sweep scenarios, and [`ensemble`] generates seeded random instances for
//! the verification suites.

pub mod classic;
pub mod ensemble;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod multi_bounds;
pub mod pair_bounds;
pub mod pauli;
pub mod quantum;
pub mod report;
mod scalar;
pub mod sweep;
pub mod tol;

pub use error::{Error, Result};
pub use scalar::{Cx, Scalar};

pub use classic::{
    fb_bound, mp_bound, mp_l1, mp_l2, pb_bound, qubit_l1_identity_gap, robertson, schrodinger,
    MpConfig, MpPerp, MpSign,
};
pub use ensemble::{
    random_instance, random_mixed_instance, random_pair_case, random_pair_case_tilde,
};
pub use fixtures::{
    fixture_fig1, fixture_fig2, Fixture, FourObservableFixture, TwoObservableFixture,
};
pub use linalg::CMat;
pub use multi_bounds::{
    composite_bound, matching_bound, multi_bounds, multi_identity_residual, multi_quadratic_form,
    pair_index, CompositeBound, Matching, MatchingParams, MultiDecomposition, PairCase, PairSpecs,
    WeightVector,
};
pub use pair_bounds::{
    pair_bounds, quadratic_form, sum_identity_residual, Bounds, FreePair, PairDecomposition,
    WeightPair,
};
pub use quantum::{
    combine, commutator_expectation, deviation_vector, expectation, variance, DeviationVector,
    Observable, State,
};
pub use report::{compare_bounds, BoundEntry, BoundKind, BoundsReport};
pub use sweep::{sweep_abs_a, sweep_theta, uniform_grid, SweepResult};

/// Complex number over `f64`.
pub type C64 = Cx<f64>;
/// Complex number over `f32`.
pub type C32 = Cx<f32>;

pub type Observable64 = Observable<f64>;
pub type State64 = State<f64>;
pub type DeviationVector64 = DeviationVector<f64>;
pub type WeightPair64 = WeightPair<f64>;
pub type WeightVector64 = WeightVector<f64>;
pub type PairDecomposition64 = PairDecomposition<f64>;
pub type Bounds64 = Bounds<f64>;
pub type Fixture64 = Fixture<f64>;
pub type BoundsReport64 = BoundsReport<f64>;

// single-precision variants; validation tolerances are f64-calibrated, so
// these suit exact inputs and custom-tolerance workflows
pub type Observable32 = Observable<f32>;
pub type State32 = State<f32>;
pub type WeightPair32 = WeightPair<f32>;
pub type WeightVector32 = WeightVector<f32>;
pub type Bounds32 = Bounds<f32>;
