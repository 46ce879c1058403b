//! Embedded example fixtures behind the `fig1` and `fig2` reproduction
//! commands.
//!
//! All matrix entries, kets, weights, and parameter vectors are stored
//! exactly as printed in the source data (4 decimals). The printed ket of
//! the two-observable fixture and the printed phase of the four-observable
//! fixture are not unit-normalized at that precision, so states are
//! renormalized on construction while the raw values are kept for
//! serialization.

use crate::error::{Error, Result};
use crate::linalg::{vec_norm_sq, CMat};
use crate::multi_bounds::{Matching, MatchingParams, PairCase, PairSpecs, WeightVector};
use crate::pair_bounds::{FreePair, WeightPair};
use crate::pauli::{pauli_x, pauli_y, pauli_z};
use crate::quantum::{Observable, State};
use crate::scalar::{cx, lit, Cx, Scalar};

const FIG1_A1: [[f64; 4]; 4] = [
    [5.2528, 4.1553, 1.2229, 3.0871],
    [4.1553, 5.0443, 1.1295, 3.0669],
    [1.2229, 1.1295, 0.8441, 1.2898],
    [3.0871, 3.0669, 1.2898, 3.6033],
];
const FIG1_A2: [[f64; 4]; 4] = [
    [0.0, -1.6562, -0.2396, -0.3176],
    [1.6562, 0.0, -0.1069, 0.1638],
    [0.2396, 0.1069, 0.0, 0.3284],
    [0.3176, -0.1638, -0.3284, 0.0],
];
const FIG1_B1: [[f64; 4]; 4] = [
    [0.9238, 1.0856, 0.6217, 0.3696],
    [1.0856, 2.1550, 1.1369, 0.5446],
    [0.6217, 1.1369, 0.6471, 0.2780],
    [0.3696, 0.5446, 0.2780, 0.1765],
];
const FIG1_B2: [[f64; 4]; 4] = [
    [0.0, -1.0209, -0.0365, 0.8770],
    [1.0209, 0.0, 1.0103, 1.0176],
    [0.0365, -1.0103, 0.0, 0.3580],
    [-0.8770, -1.0176, -0.3580, 0.0],
];

/// Printed ket, slightly off unit norm at 4-decimal precision.
const FIG1_KET_RAW: [[f64; 2]; 4] = [
    [0.1452, 0.3194],
    [0.4672, 0.3066],
    [0.3373, 0.5010],
    [0.2174, 0.3905],
];

const FIG1_X: [f64; 2] = [0.267, 0.769];
const FIG1_Y: [f64; 2] = [-0.234, 0.158];

/// Case 1 free parameters (`mt`, `nt` derived at each split point).
const FIG1_M: [f64; 2] = [1.231, -0.317];
const FIG1_N: [f64; 2] = [1.920, 0.701];
/// Case 2 free parameters (`m`, `n` derived at each split point).
const FIG1_MT: [f64; 2] = [0.501, 0.213];
const FIG1_NT: [f64; 2] = [-1.027, 0.104];

const FIG2_A4: [[[f64; 2]; 2]; 2] = [
    [[0.8811, 0.0], [0.3876, -0.2000]],
    [[0.3876, 0.2000], [0.2403, 0.0]],
];

/// Fixed state phase, |phase| = 1 only to printed precision.
const FIG2_PHASE: [f64; 2] = [0.6607, -0.7507];

/// Per-pair parameter vectors for the band bounds, indexed k = 1..6 over the
/// pairs (1,2), (1,3), (1,4), (2,3), (2,4), (3,4); all `a_k` are 0.03.
const FIG2_A: f64 = 0.03;
const FIG2_B: [[f64; 2]; 6] = [
    [0.1419, -0.7572],
    [0.4064, -0.1821],
    [0.5931, -0.6196],
    [0.8094, -0.7699],
    [0.4706, -0.4211],
    [0.6741, -0.4390],
];
const FIG2_M: [[f64; 2]; 6] = [
    [0.4888, 0.8208],
    [0.2168, 0.1228],
    [0.8329, 0.6494],
    [0.5015, 0.7366],
    [0.1027, 0.7107],
    [0.3644, 0.1053],
];
const FIG2_N: [[f64; 2]; 6] = [
    [0.9586, 0.3085],
    [0.4237, 0.1309],
    [0.5601, 0.3435],
    [0.0988, 0.6631],
    [0.4831, 0.5162],
    [0.1536, 0.7967],
];

/// Two fixed observables, a fixed state, and two free-parameter cases swept
/// over the split `|a|^2 + |b|^2 = 1`.
#[derive(Clone, Debug)]
pub struct TwoObservableFixture<T> {
    pub name: &'static str,
    pub observables: [Observable<T>; 2],
    pub state: State<T>,
    /// Printed ket entries before renormalization, `[re, im]` pairs.
    pub raw_ket: [[f64; 2]; 4],
    pub weights: WeightPair<T>,
    pub cases: [FreePair<T>; 2],
    pub case_names: [&'static str; 2],
}

/// Four fixed observables and a one-parameter state family over `theta`.
#[derive(Clone, Debug)]
pub struct FourObservableFixture<T> {
    pub name: &'static str,
    pub observables: [Observable<T>; 4],
    /// Printed phase factor before renormalization, `[re, im]`.
    pub raw_phase: [f64; 2],
    pub weights: WeightVector<T>,
    /// Per-pair parameters for the two-sided band, lexicographic pair order.
    pub band_params: PairSpecs<T>,
    pub matchings: [Matching; 3],
    /// Parameter cases for the matching-average and matching-max bounds.
    pub tb_params: MatchingParams<T>,
    /// Re-tightened parameter cases for the second matching-average bound.
    pub tb2_params: MatchingParams<T>,
}

impl<T: Scalar> FourObservableFixture<T> {
    /// State `[cos(theta/2) * phase, sin(theta/2)]`, renormalized.
    pub fn state_at(&self, theta: T) -> State<T> {
        let half = theta * lit::<T>(0.5);
        let phase = cx::<T>(self.raw_phase[0], self.raw_phase[1]);
        let mut ket = vec![phase.scale(half.cos()), Cx::new(half.sin(), T::zero())];
        let norm = vec_norm_sq(&ket).sqrt();
        for z in &mut ket {
            *z = z.unscale(norm);
        }
        State::pure(ket).expect("renormalized fixture state is valid")
    }
}

/// An embedded sweep scenario of either shape.
#[derive(Clone, Debug)]
pub enum Fixture<T> {
    TwoObservable(TwoObservableFixture<T>),
    FourObservable(FourObservableFixture<T>),
}

impl<T: Scalar> Fixture<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Self::TwoObservable(f) => f.name,
            Self::FourObservable(f) => f.name,
        }
    }

    pub fn as_two_observable(&self) -> Result<&TwoObservableFixture<T>> {
        match self {
            Self::TwoObservable(f) => Ok(f),
            Self::FourObservable(_) => Err(Error::BadFixtureShape {
                expected: "two observables with a fixed state",
            }),
        }
    }

    pub fn as_four_observable(&self) -> Result<&FourObservableFixture<T>> {
        match self {
            Self::FourObservable(f) => Ok(f),
            Self::TwoObservable(_) => Err(Error::BadFixtureShape {
                expected: "four observables with a theta state family",
            }),
        }
    }
}

fn herm_from_parts<T: Scalar>(re_sign: f64, re: &[[f64; 4]; 4], im: &[[f64; 4]; 4]) -> CMat<T> {
    CMat::from_fn(4, |i, j| cx::<T>(re_sign * re[i][j], im[i][j]))
}

/// The embedded two-observable fixture: A = A1 + i A2, B = -B1 + i B2 on a
/// fixed 4-dimensional state.
pub fn fixture_fig1<T: Scalar>() -> Fixture<T> {
    let a = Observable::new(herm_from_parts(1.0, &FIG1_A1, &FIG1_A2))
        .expect("embedded matrix A is Hermitian");
    let b = Observable::new(herm_from_parts(-1.0, &FIG1_B1, &FIG1_B2))
        .expect("embedded matrix B is Hermitian");

    let mut ket: Vec<Cx<T>> = FIG1_KET_RAW.iter().map(|&[re, im]| cx(re, im)).collect();
    let norm = vec_norm_sq(&ket).sqrt();
    for z in &mut ket {
        *z = z.unscale(norm);
    }
    let state = State::pure(ket).expect("renormalized fixture ket is valid");

    let weights = WeightPair::new(cx(FIG1_X[0], FIG1_X[1]), cx(FIG1_Y[0], FIG1_Y[1]))
        .expect("fixture weights are nonzero");

    Fixture::TwoObservable(TwoObservableFixture {
        name: "fig1",
        observables: [a, b],
        state,
        raw_ket: FIG1_KET_RAW,
        weights,
        cases: [
            FreePair::Mn {
                m: cx(FIG1_M[0], FIG1_M[1]),
                n: cx(FIG1_N[0], FIG1_N[1]),
            },
            FreePair::Tilde {
                m_tilde: cx(FIG1_MT[0], FIG1_MT[1]),
                n_tilde: cx(FIG1_NT[0], FIG1_NT[1]),
            },
        ],
        case_names: ["free-mn", "free-tilde"],
    })
}

/// The embedded four-observable fixture: the three Pauli matrices plus a
/// fixed fourth observable, on the `theta` state family.
pub fn fixture_fig2<T: Scalar>() -> Fixture<T> {
    let a4 = Observable::new(CMat::from_fn(2, |i, j| {
        cx::<T>(FIG2_A4[i][j][0], FIG2_A4[i][j][1])
    }))
    .expect("embedded fourth observable is Hermitian");
    let observables = [
        Observable::new(pauli_x()).expect("Pauli x"),
        Observable::new(pauli_y()).expect("Pauli y"),
        Observable::new(pauli_z()).expect("Pauli z"),
        a4,
    ];

    let band_cases: Vec<PairCase<T>> = (0..6)
        .map(|k| PairCase {
            a: cx(FIG2_A, 0.0),
            b: cx(FIG2_B[k][0], FIG2_B[k][1]),
            free: FreePair::Mn {
                m: cx(FIG2_M[k][0], FIG2_M[k][1]),
                n: cx(FIG2_N[k][0], FIG2_N[k][1]),
            },
        })
        .collect();

    let matchings = [
        Matching::new(&[(1, 2), (3, 4)], 4).expect("matching"),
        Matching::new(&[(1, 3), (2, 4)], 4).expect("matching"),
        Matching::new(&[(1, 4), (2, 3)], 4).expect("matching"),
    ];

    let tb_cases = |a: f64, b: f64| MatchingParams {
        cases: vec![
            PairCase {
                a: cx(a, 0.0),
                b: cx(b, 0.0),
                free: FreePair::Mn {
                    m: cx(2.0, 0.0),
                    n: cx(1.0, 0.0),
                },
            },
            PairCase {
                a: cx(a, 0.0),
                b: cx(b, 0.0),
                free: FreePair::Tilde {
                    m_tilde: cx(1.0, 0.0),
                    n_tilde: cx(1.0, 0.0),
                },
            },
        ],
    };

    Fixture::FourObservable(FourObservableFixture {
        name: "fig2",
        observables,
        raw_phase: FIG2_PHASE,
        weights: WeightVector::ones(4).expect("weights"),
        band_params: PairSpecs::PerPair(band_cases),
        matchings,
        tb_params: tb_cases(0.5, 5.0),
        tb2_params: tb_cases(0.01, 1.0),
    })
}
