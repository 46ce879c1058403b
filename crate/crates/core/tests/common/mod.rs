//! Shared helpers for the integration suites: an independent evaluation
//! route for every bound, built purely from deviation vectors and norm
//! expansions, plus deterministic parameter draws.
#![allow(dead_code)] // each test target uses a different subset
//!
//! The library computes its quadratic forms through the variance/commutator
//! formula; these oracles go through `deviation_vector` + `combine` +
//! `norm_sq` instead, so agreement between the two is a real check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use varbound_core::{
    combine, deviation_vector, pair_index, Bounds, FreePair, MultiDecomposition, Observable,
    PairCase, PairDecomposition, State, WeightPair, WeightVector,
};

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Squared norm of `alpha v_A + beta v_B` through the vector route.
pub fn oracle_quadratic_form(
    alpha: C,
    beta: C,
    a: &Observable<f64>,
    b: &Observable<f64>,
    s: &State<f64>,
) -> f64 {
    let va = deviation_vector(a, s).unwrap();
    let vb = deviation_vector(b, s).unwrap();
    combine(&[alpha, beta], &[va, vb]).unwrap().norm_sq()
}

/// Pair bounds evaluated from explicit norm expansions.
pub fn oracle_pair_bounds(
    a: &Observable<f64>,
    b: &Observable<f64>,
    s: &State<f64>,
    w: &WeightPair<f64>,
    d: &PairDecomposition<f64>,
) -> Bounds<f64> {
    let q_xy = oracle_quadratic_form(w.x, w.y, a, b, s);
    let am = d.a.norm() * oracle_quadratic_form(d.m, d.n, a, b, s).sqrt();
    let bt = d.b.norm() * oracle_quadratic_form(d.m_tilde, d.n_tilde, a, b, s).sqrt();
    Bounds {
        lower: 0.5 * (q_xy + (am - bt) * (am - bt)),
        upper: 0.5 * (q_xy + (am + bt) * (am + bt)),
    }
}

/// N-observable bounds evaluated from explicit norm expansions.
pub fn oracle_multi_bounds(
    obs: &[Observable<f64>],
    s: &State<f64>,
    w: &WeightVector<f64>,
    d: &MultiDecomposition<f64>,
) -> Bounds<f64> {
    let n = obs.len();
    let vs: Vec<_> = obs
        .iter()
        .map(|o| deviation_vector(o, s).unwrap())
        .collect();
    let q = combine(w.as_slice(), &vs).unwrap().norm_sq();
    let mut lo_sum = 0.0;
    let mut hi_sum = 0.0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            let _ = pair_index(i, j, n).unwrap();
            let dk = d.pair(i, j).unwrap();
            let am =
                dk.a.norm() * oracle_quadratic_form(dk.m, dk.n, &obs[i - 1], &obs[j - 1], s).sqrt();
            let bt = dk.b.norm()
                * oracle_quadratic_form(dk.m_tilde, dk.n_tilde, &obs[i - 1], &obs[j - 1], s).sqrt();
            lo_sum += (am - bt) * (am - bt);
            hi_sum += (am + bt) * (am + bt);
        }
    }
    Bounds {
        lower: (q + lo_sum) / n as f64,
        upper: (q + hi_sum) / n as f64,
    }
}

/// Variance of `A_i + A_j` through the deviation-vector route.
pub fn oracle_pair_sum_variance(a: &Observable<f64>, b: &Observable<f64>, s: &State<f64>) -> f64 {
    deviation_vector(&a.add(b).unwrap(), s).unwrap().norm_sq()
}

/// Pair-sum bounds from the deviation-vector route.
pub fn oracle_fb_pb(obs: &[Observable<f64>], s: &State<f64>) -> (f64, f64) {
    let n = obs.len();
    let mut var_sum = 0.0;
    let mut std_sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = oracle_pair_sum_variance(&obs[i], &obs[j], s);
            var_sum += v;
            std_sum += v.max(0.0).sqrt();
        }
    }
    let fb = (var_sum - std_sum * std_sum / ((n - 1) * (n - 1)) as f64) / (n - 2) as f64;
    let pb = var_sum / (2 * (n - 1)) as f64;
    (fb, pb)
}

/// Deterministic complex normal draw.
pub fn draw_c(rng: &mut ChaCha8Rng) -> C {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

/// Deterministic complex normal with magnitude at least `floor`, keeping the
/// constraint solves well-conditioned.
pub fn draw_c_away_from_zero(rng: &mut ChaCha8Rng, floor: f64) -> C {
    loop {
        let z = draw_c(rng);
        if z.norm() >= floor {
            return z;
        }
    }
}

/// A well-conditioned random parameter case with the `(m, n)` half free.
pub fn draw_case(seed: u64) -> PairCase<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd_1234_5678_u64);
    PairCase {
        a: draw_c_away_from_zero(&mut rng, 0.3),
        b: draw_c_away_from_zero(&mut rng, 0.3),
        free: FreePair::Mn {
            m: draw_c(&mut rng),
            n: draw_c(&mut rng),
        },
    }
}

/// Weighted sum of variances via the deviation-vector route.
pub fn oracle_weighted_sov(obs: &[Observable<f64>], s: &State<f64>, xs: &[C]) -> f64 {
    obs.iter()
        .zip(xs)
        .map(|(o, x)| x.norm_sqr() * deviation_vector(o, s).unwrap().norm_sq())
        .sum()
}
