//! Seeded random instances for the invariant suites.
//!
//! All draws happen in `f64` and are converted to the scalar type afterwards,
//! so a given seed produces the same instance (up to rounding) at every
//! precision. Draw order is fixed: state first, then observables, then
//! weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{vec_norm_sq, CMat};
use crate::multi_bounds::{PairCase, WeightVector};
use crate::pair_bounds::FreePair;
use crate::quantum::{Observable, State};
use crate::scalar::{cx, Cx, Scalar};

fn check_params(dim: usize, n_obs: usize) -> Result<()> {
    if dim < 2 || n_obs < 2 {
        return Err(Error::BadParams {
            detail: format!("dim and n_obs must both be >= 2, got dim={dim}, n_obs={n_obs}"),
        });
    }
    Ok(())
}

fn draw_cx<T: Scalar>(rng: &mut ChaCha8Rng) -> Cx<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    cx(re, im)
}

fn draw_ket<T: Scalar>(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Cx<T>> {
    let mut ket: Vec<Cx<T>> = (0..dim).map(|_| draw_cx(rng)).collect();
    let norm = vec_norm_sq(&ket).sqrt();
    for z in &mut ket {
        *z = z.unscale(norm);
    }
    ket
}

fn draw_ginibre<T: Scalar>(rng: &mut ChaCha8Rng, dim: usize) -> CMat<T> {
    let mut g = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(i, j, draw_cx(rng));
        }
    }
    g
}

fn draw_observables<T: Scalar>(
    rng: &mut ChaCha8Rng,
    dim: usize,
    n_obs: usize,
) -> Vec<Observable<T>> {
    (0..n_obs)
        .map(|_| {
            let g = draw_ginibre(rng, dim);
            let h = g.add(&g.adjoint()).scale_re(T::from_f64(0.5).unwrap());
            Observable::new(h).expect("(G + G^dag)/2 is Hermitian")
        })
        .collect()
}

fn draw_weights<T: Scalar>(rng: &mut ChaCha8Rng, n_obs: usize) -> WeightVector<T> {
    // A Gaussian draw is all-zero with probability zero, but stay total.
    loop {
        let xs: Vec<Cx<T>> = (0..n_obs).map(|_| draw_cx(rng)).collect();
        if let Ok(w) = WeightVector::new(xs) {
            return w;
        }
    }
}

/// A drawn instance: state, observables, and weights.
pub type Instance<T> = (State<T>, Vec<Observable<T>>, WeightVector<T>);

/// Deterministic random instance: a normalized Gaussian ket, `n_obs`
/// observables built as `(G + G^dag)/2` from complex Ginibre draws, and a
/// Gaussian complex weight vector.
pub fn random_instance<T: Scalar>(dim: usize, n_obs: usize, seed: u64) -> Result<Instance<T>> {
    check_params(dim, n_obs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let state = State::pure(draw_ket(&mut rng, dim))?;
    let observables = draw_observables(&mut rng, dim, n_obs);
    let weights = draw_weights(&mut rng, n_obs);
    Ok((state, observables, weights))
}

fn draw_split<T: Scalar>(rng: &mut ChaCha8Rng) -> (Cx<T>, Cx<T>) {
    // Keep |a| and |b| away from zero so the constraint solves stay
    // well-conditioned.
    let floor = T::from_f64(0.3).unwrap();
    let draw = |rng: &mut ChaCha8Rng| loop {
        let z: Cx<T> = draw_cx(rng);
        if z.norm() >= floor {
            return z;
        }
    };
    (draw(rng), draw(rng))
}

/// Deterministic free-parameter case with the `(m, n)` half free and a
/// well-conditioned `(a, b)` split.
pub fn random_pair_case<T: Scalar>(seed: u64) -> PairCase<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = draw_split(&mut rng);
    PairCase {
        a,
        b,
        free: FreePair::Mn {
            m: draw_cx(&mut rng),
            n: draw_cx(&mut rng),
        },
    }
}

/// Deterministic free-parameter case with the `(mt, nt)` half free.
pub fn random_pair_case_tilde<T: Scalar>(seed: u64) -> PairCase<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = draw_split(&mut rng);
    PairCase {
        a,
        b,
        free: FreePair::Tilde {
            m_tilde: draw_cx(&mut rng),
            n_tilde: draw_cx(&mut rng),
        },
    }
}

/// Like [`random_instance`] but with a full-rank mixed state
/// `rho = W W^dag / Tr(W W^dag)` from a Ginibre draw `W`.
pub fn random_mixed_instance<T: Scalar>(
    dim: usize,
    n_obs: usize,
    seed: u64,
) -> Result<Instance<T>> {
    check_params(dim, n_obs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w_mat = draw_ginibre::<T>(&mut rng, dim);
    let gram = w_mat.mul(&w_mat.adjoint());
    let rho = gram.scale_re(gram.trace().re.recip());
    let state = State::mixed(rho)?;
    let observables = draw_observables(&mut rng, dim, n_obs);
    let weights = draw_weights(&mut rng, n_obs);
    Ok((state, observables, weights))
}
