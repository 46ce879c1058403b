//! Reference bounds: Robertson, Schrodinger, the sum-form pair bound with an
//! orthogonal auxiliary ket, the qubit identity check for that bound, and the
//! two four-observable comparison bounds.

use crate::error::{Error, Result};
use crate::linalg::{vec_inner, vec_norm_sq};
use crate::quantum::{
    commutator_expectation, expectation, variance, variance_matrix, Observable, State,
};
use crate::scalar::{lit, Cx, Scalar};
use crate::tol;

/// Sign selection for the sum-form bound's first term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MpSign {
    Plus,
    Minus,
    /// Evaluate both signs and keep the larger value.
    Auto,
}

/// Choice of the auxiliary ket orthogonal to the state.
#[derive(Clone, Debug, PartialEq)]
pub enum MpPerp<T> {
    /// The normalized projection of `(X -/+ iY)|psi>` onto the orthogonal
    /// complement of `|psi>` — the maximizer of the second term. Falls back
    /// to the zero vector when the projection is null.
    AutoMax,
    /// A caller-supplied unit ket orthogonal to the state.
    Explicit(Vec<Cx<T>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MpConfig<T> {
    pub sign: MpSign,
    pub perp: MpPerp<T>,
}

impl<T> MpConfig<T> {
    pub fn auto() -> Self {
        Self {
            sign: MpSign::Auto,
            perp: MpPerp::AutoMax,
        }
    }
}

impl<T> Default for MpConfig<T> {
    fn default() -> Self {
        Self::auto()
    }
}

fn check_pair_dims<T: Scalar>(a: &Observable<T>, b: &Observable<T>, s: &State<T>) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if a.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: s.dim(),
        });
    }
    Ok(())
}

/// `|<[A, B]>| / 2`, the product-form commutator bound.
pub fn robertson<T: Scalar>(a: &Observable<T>, b: &Observable<T>, s: &State<T>) -> Result<T> {
    check_pair_dims(a, b, s)?;
    Ok(commutator_expectation(a, b, s)?.abs() * lit::<T>(0.5))
}

/// Strengthens [`robertson`] with the anticommutator correlation term:
/// the root-sum-square of `<[A, B]>/2` and `<{A, B}>/2 - <A><B>`, i.e. the
/// modulus of the full deviation cross term `<(A - <A>)(B - <B>)>`. Never
/// below [`robertson`], never above `Std(A) Std(B)`.
pub fn schrodinger<T: Scalar>(a: &Observable<T>, b: &Observable<T>, s: &State<T>) -> Result<T> {
    check_pair_dims(a, b, s)?;
    let anti = a.matrix().anticommutator(b.matrix());
    let half = lit::<T>(0.5);
    let corr = half * crate::quantum::expectation_matrix(&anti, s)?
        - expectation(a, s)? * expectation(b, s)?;
    Ok(robertson(a, b, s)?.hypot(corr))
}

/// First sum-form term: `s * i<[A, B]> + |<psi|(A + s iB)|perp>|^2`, maximized
/// over the sign when requested. Pure states only.
pub fn mp_l1<T: Scalar>(
    a: &Observable<T>,
    b: &Observable<T>,
    s: &State<T>,
    cfg: &MpConfig<T>,
) -> Result<T> {
    check_pair_dims(a, b, s)?;
    let Some(ket) = s.ket() else {
        return Err(Error::MixedStateUnsupported);
    };
    if let MpPerp::Explicit(perp) = &cfg.perp {
        if perp.len() != ket.len() {
            return Err(Error::InvalidPerp {
                detail: format!("dimension {} vs state {}", perp.len(), ket.len()),
            });
        }
        let norm_dev = (vec_norm_sq(perp).sqrt() - T::one()).abs();
        if norm_dev > lit::<T>(tol::PERP_ABS) {
            return Err(Error::InvalidPerp {
                detail: format!(
                    "norm deviates from 1 by {:.3e}",
                    norm_dev.to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
        let overlap = vec_inner(ket, perp).norm();
        if overlap > lit::<T>(tol::PERP_ABS) {
            return Err(Error::InvalidPerp {
                detail: format!(
                    "overlap with the state is {:.3e}",
                    overlap.to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
    }

    let ce = commutator_expectation(a, b, s)?;
    let signs: &[T] = match cfg.sign {
        MpSign::Plus => &[T::one()],
        MpSign::Minus => &[-T::one()],
        MpSign::Auto => &[T::one(), -T::one()],
    };
    let mut best: Option<T> = None;
    for &sg in signs {
        // phi = (A - sg * iB)|psi>; the matrix element pairs it with perp.
        let shifted = a.matrix().add(&b.matrix().scale(Cx::new(T::zero(), -sg)));
        let phi = shifted.mul_vec(ket);
        let term = match &cfg.perp {
            MpPerp::AutoMax => {
                // squared norm of the projection onto the complement of psi
                let overlap = vec_inner(ket, &phi);
                let mut p = phi.clone();
                for (pi, ki) in p.iter_mut().zip(ket) {
                    *pi -= overlap * *ki;
                }
                vec_norm_sq(&p)
            }
            MpPerp::Explicit(perp) => vec_inner(&phi, perp).norm_sqr(),
        };
        let value = sg * ce + term;
        best = Some(match best {
            None => value,
            Some(v) => v.max(value),
        });
    }
    Ok(best.expect("at least one sign evaluated"))
}

/// Second sum-form term: `Var(A + B) / 2`.
pub fn mp_l2<T: Scalar>(a: &Observable<T>, b: &Observable<T>, s: &State<T>) -> Result<T> {
    check_pair_dims(a, b, s)?;
    Ok(variance(&a.add(b)?, s)? * lit::<T>(0.5))
}

/// The sum-form lower bound `max(L1, L2)` on `Var(A) + Var(B)`.
pub fn mp_bound<T: Scalar>(
    a: &Observable<T>,
    b: &Observable<T>,
    s: &State<T>,
    cfg: &MpConfig<T>,
) -> Result<T> {
    let l1 = mp_l1(a, b, s, cfg)?;
    let l2 = mp_l2(a, b, s)?;
    Ok(l1.max(l2))
}

/// `|L1(auto) - (Var(A) + Var(B))|` on a qubit, where the orthogonal ket is
/// unique up to phase; the gap is zero there.
pub fn qubit_l1_identity_gap<T: Scalar>(
    a: &Observable<T>,
    b: &Observable<T>,
    s: &State<T>,
) -> Result<T> {
    if s.dim() != 2 {
        return Err(Error::NotQubit { dim: s.dim() });
    }
    let l1 = mp_l1(a, b, s, &MpConfig::auto())?;
    let sov = variance(a, s)? + variance(b, s)?;
    Ok((l1 - sov).abs())
}

fn pairwise_dims<T: Scalar>(obs: &[Observable<T>], s: &State<T>, min: usize) -> Result<usize> {
    if obs.len() < min {
        return Err(Error::BadParams {
            detail: format!("need at least {min} observables, got {}", obs.len()),
        });
    }
    let d = s.dim();
    for o in obs {
        if o.dim() != d {
            return Err(Error::DimensionMismatch {
                left: o.dim(),
                right: d,
            });
        }
    }
    Ok(obs.len())
}

/// Pair-sum lower bound on the sum of variances:
///
/// ```text
/// (sum_{i<j} Var(Ai + Aj) - [sum_{i<j} Std(Ai + Aj)]^2 / (N-1)^2) / (N-2)
/// ```
///
/// The four-observable form has the `1/2` and `1/9` coefficients; other
/// counts (N >= 3) generalize them. The outer coefficient must scale as
/// `1/(N-2)`: the pair variance sum equals `(N-2) * SOV + ||sum_i v_i||^2`,
/// so a fixed `1/2` would exceed the variance sum for N > 4. The value may
/// be negative and is reported as-is.
pub fn fb_bound<T: Scalar>(obs: &[Observable<T>], s: &State<T>) -> Result<T> {
    let n = pairwise_dims(obs, s, 3)?;
    let mut var_sum = T::zero();
    let mut std_sum = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = variance_matrix(&obs[i].matrix().add(obs[j].matrix()), s)?;
            var_sum += v;
            std_sum += v.max(T::zero()).sqrt();
        }
    }
    let inner = lit::<T>(((n - 1) * (n - 1)) as f64).recip();
    Ok((var_sum - inner * std_sum * std_sum) / lit::<T>((n - 2) as f64))
}

/// Pair-sum lower bound `sum_{i<j} Var(Ai + Aj) / (2(N-1))`; nonnegative.
pub fn pb_bound<T: Scalar>(obs: &[Observable<T>], s: &State<T>) -> Result<T> {
    let n = pairwise_dims(obs, s, 2)?;
    let mut var_sum = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            var_sum += variance_matrix(&obs[i].matrix().add(obs[j].matrix()), s)?;
        }
    }
    Ok(var_sum / lit::<T>((2 * (n - 1)) as f64))
}
