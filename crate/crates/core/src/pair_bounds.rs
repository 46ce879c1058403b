//! Two-sided bounds on the weighted sum of two variances, driven by a
//! constrained tuple of free complex parameters.
//!
//! For complex weights `(x, y)` the quantity `|x|^2 Var(A) + |y|^2 Var(B)` is
//! pinched between
//!
//! ```text
//! lower = (Q(x,y) + (|a| Q(m,n)^1/2 - |b| Q(mt,nt)^1/2)^2) / 2
//! upper = (Q(x,y) + (|a| Q(m,n)^1/2 + |b| Q(mt,nt)^1/2)^2) / 2
//! ```
//!
//! where `Q` is [`quadratic_form`] and the six parameters satisfy
//! `x = a m + b mt` and `-y = a n + b nt`. Both bounds collapse exactly onto
//! the weighted variance sum when `a = 0` or `b = 0`, so shrinking `|a|` (or
//! `|b|`) tightens them arbitrarily.

use crate::error::{Error, Result};
use crate::quantum::{
    combine, commutator_expectation, deviation_vector, variance, variance_matrix, Observable, State,
};
use crate::scalar::{lit, Cx, Scalar};
use crate::tol;

/// The complex weights defining one weighted uncertainty relation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightPair<T> {
    pub x: Cx<T>,
    pub y: Cx<T>,
}

impl<T: Scalar> WeightPair<T> {
    /// Rejects the all-zero pair, which defines no relation.
    pub fn new(x: Cx<T>, y: Cx<T>) -> Result<Self> {
        if x.norm_sqr() == T::zero() && y.norm_sqr() == T::zero() {
            return Err(Error::ZeroWeights);
        }
        Ok(Self { x, y })
    }

    /// Both weights equal to one.
    pub fn ones() -> Self {
        Self {
            x: Cx::new(T::one(), T::zero()),
            y: Cx::new(T::one(), T::zero()),
        }
    }
}

/// Which half of the parameter tuple is free; the other half is derived from
/// the constraints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FreePair<T> {
    /// `(m, n)` free, `(mt, nt)` derived; requires `b != 0`.
    Mn { m: Cx<T>, n: Cx<T> },
    /// `(mt, nt)` free, `(m, n)` derived; requires `a != 0`.
    Tilde { m_tilde: Cx<T>, n_tilde: Cx<T> },
}

/// Fully resolved parameter tuple `(a, b, m, n, mt, nt)` satisfying the
/// constraints for some weight pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairDecomposition<T> {
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub m: Cx<T>,
    pub n: Cx<T>,
    pub m_tilde: Cx<T>,
    pub n_tilde: Cx<T>,
}

impl<T: Scalar> PairDecomposition<T> {
    /// Derives the dependent pair from the free one so that
    /// `x = a m + b mt` and `-y = a n + b nt` hold.
    pub fn resolve(w: &WeightPair<T>, a: Cx<T>, b: Cx<T>, free: FreePair<T>) -> Result<Self> {
        let d = match free {
            FreePair::Mn { m, n } => {
                if b.norm_sqr() == T::zero() {
                    return Err(Error::SingularSolve);
                }
                Self {
                    a,
                    b,
                    m,
                    n,
                    m_tilde: (w.x - a * m) / b,
                    n_tilde: (-w.y - a * n) / b,
                }
            }
            FreePair::Tilde { m_tilde, n_tilde } => {
                if a.norm_sqr() == T::zero() {
                    return Err(Error::SingularSolve);
                }
                Self {
                    a,
                    b,
                    m: (w.x - b * m_tilde) / a,
                    n: (-w.y - b * n_tilde) / a,
                    m_tilde,
                    n_tilde,
                }
            }
        };
        let residue = d.constraint_residue(w);
        if residue > constraint_tolerance(w) {
            return Err(Error::ConstraintViolated {
                residue: residue.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(d)
    }

    /// Largest of the two constraint residues against the given weights.
    pub fn constraint_residue(&self, w: &WeightPair<T>) -> T {
        let r1 = (w.x - (self.a * self.m + self.b * self.m_tilde)).norm();
        let r2 = (-w.y - (self.a * self.n + self.b * self.n_tilde)).norm();
        r1.max(r2)
    }

    /// True when `|a| |b| = 0`: both bounds collapse onto the weighted
    /// variance sum, so the relation is an equality rather than a bound.
    pub fn is_saturating(&self) -> bool {
        self.a.norm_sqr() == T::zero() || self.b.norm_sqr() == T::zero()
    }
}

pub(crate) fn constraint_tolerance<T: Scalar>(w: &WeightPair<T>) -> T {
    lit::<T>(tol::CONSTRAINT_REL) * (T::one() + w.x.norm() + w.y.norm())
}

/// Lower and upper bound for one instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds<T> {
    pub lower: T,
    pub upper: T,
}

/// The quadratic form behind every bound term:
///
/// ```text
/// Q(alpha, beta) = Var(a1 A + b1 B) + Var(a2 A + b2 B)
///                + (a1 b2 - b1 a2) * i<[A, B]>
/// ```
///
/// with `alpha = a1 + i a2`, `beta = b1 + i b2`. It equals the squared norm
/// of `alpha (A - <A>)|s> + beta (B - <B>)|s>`, so it is nonnegative; tiny
/// negatives are clamped and anything below the floor is an error.
pub fn quadratic_form<T: Scalar>(
    alpha: Cx<T>,
    beta: Cx<T>,
    a: &Observable<T>,
    b: &Observable<T>,
    s: &State<T>,
) -> Result<T> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let m1 = Observable::linear_combination(&[alpha.re, beta.re], &[a, b])?;
    let m2 = Observable::linear_combination(&[alpha.im, beta.im], &[a, b])?;
    let cross = alpha.re * beta.im - beta.re * alpha.im;
    let mut v = variance_matrix(m1.matrix(), s)? + variance_matrix(m2.matrix(), s)?;
    if cross != T::zero() {
        v += cross * commutator_expectation(a, b, s)?;
    }
    if v < T::zero() {
        if v >= lit::<T>(tol::QUAD_FORM_FLOOR) {
            return Ok(T::zero());
        }
        return Err(Error::NegativeNormSquare {
            value: v.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(v)
}

/// Two-sided bounds on `|x|^2 Var(A) + |y|^2 Var(B)` for a resolved
/// decomposition. The decomposition is re-checked against the weights.
pub fn pair_bounds<T: Scalar>(
    a: &Observable<T>,
    b: &Observable<T>,
    s: &State<T>,
    w: &WeightPair<T>,
    d: &PairDecomposition<T>,
) -> Result<Bounds<T>> {
    let residue = d.constraint_residue(w);
    if residue > constraint_tolerance(w) {
        return Err(Error::ConstraintViolated {
            residue: residue.to_f64().unwrap_or(f64::NAN),
        });
    }
    let q_xy = quadratic_form(w.x, w.y, a, b, s)?;
    let q_mn = quadratic_form(d.m, d.n, a, b, s)?.sqrt();
    let q_tilde = quadratic_form(d.m_tilde, d.n_tilde, a, b, s)?.sqrt();
    let am = d.a.norm() * q_mn;
    let bt = d.b.norm() * q_tilde;
    let half = lit::<T>(0.5);
    Ok(Bounds {
        lower: half * (q_xy + (am - bt) * (am - bt)),
        upper: half * (q_xy + (am + bt) * (am + bt)),
    })
}

/// Residual of the parallelogram identity
/// `||x v1 + y v2||^2 + ||x v1 - y v2||^2 = 2 |x|^2 ||v1||^2 + 2 |y|^2 ||v2||^2`,
/// with the left side evaluated through deviation vectors and the right side
/// through the variance formula.
pub fn sum_identity_residual<T: Scalar>(
    a: &Observable<T>,
    b: &Observable<T>,
    s: &State<T>,
    w: &WeightPair<T>,
) -> Result<T> {
    let v1 = deviation_vector(a, s)?;
    let v2 = deviation_vector(b, s)?;
    let plus = combine(&[w.x, w.y], &[v1.clone(), v2.clone()])?;
    let minus = combine(&[w.x, -w.y], &[v1, v2])?;
    let lhs = plus.norm_sq() + minus.norm_sq();
    let two = lit::<T>(2.0);
    let rhs = two * (w.x.norm_sqr() * variance(a, s)? + w.y.norm_sqr() * variance(b, s)?);
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{ket0, ket_plus, pauli_x, pauli_y, pauli_z};

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    fn obs(m: crate::linalg::CMat<f64>) -> Observable<f64> {
        Observable::new(m).unwrap()
    }

    #[test]
    fn weight_pair_rejects_all_zero() {
        assert!(matches!(
            WeightPair::<f64>::new(c(0.0, 0.0), c(0.0, 0.0)),
            Err(Error::ZeroWeights)
        ));
        assert!(WeightPair::new(c(0.0, 0.0), c(1.0, 0.0)).is_ok());
    }

    #[test]
    fn quadratic_form_identity_weight_is_variance() {
        let s0 = State::pure(ket0::<f64>()).unwrap();
        let a = obs(pauli_x());
        let b = obs(pauli_y());
        let q = quadratic_form(c(1.0, 0.0), c(0.0, 0.0), &a, &b, &s0).unwrap();
        assert!((q - variance(&a, &s0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn quadratic_form_lowering_annihilation() {
        // (sx + i sy)|0> = 0, so Q(1, i) vanishes.
        let s0 = State::pure(ket0::<f64>()).unwrap();
        let a = obs(pauli_x());
        let b = obs(pauli_y());
        let q = quadratic_form(c(1.0, 0.0), c(0.0, 1.0), &a, &b, &s0).unwrap();
        assert!(q.abs() < 1e-14);
    }

    #[test]
    fn resolve_direct_substitution() {
        let w = WeightPair::new(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let d = PairDecomposition::resolve(
            &w,
            c(0.0, 0.0),
            c(1.0, 0.0),
            FreePair::Mn {
                m: c(0.7, -0.3),
                n: c(-0.2, 0.9),
            },
        )
        .unwrap();
        assert!((d.m_tilde - c(1.0, 0.0)).norm() < 1e-15);
        assert!((d.n_tilde - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(d.is_saturating());
    }

    #[test]
    fn resolve_singular_cases() {
        let w = WeightPair::new(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let zero = c(0.0, 0.0);
        assert!(matches!(
            PairDecomposition::resolve(&w, zero, zero, FreePair::Mn { m: zero, n: zero }),
            Err(Error::SingularSolve)
        ));
        assert!(matches!(
            PairDecomposition::resolve(
                &w,
                zero,
                c(1.0, 0.0),
                FreePair::Tilde {
                    m_tilde: zero,
                    n_tilde: zero
                }
            ),
            Err(Error::SingularSolve)
        ));
    }

    #[test]
    fn resolve_tilde_variant_round_trips() {
        let w = WeightPair::new(c(0.4, 0.2), c(-0.3, 0.7)).unwrap();
        let a = c(0.6, 0.1);
        let b = c(0.5, -0.4);
        let free = FreePair::Tilde {
            m_tilde: c(0.2, 0.9),
            n_tilde: c(-1.1, 0.3),
        };
        let d = PairDecomposition::resolve(&w, a, b, free).unwrap();
        assert!(d.constraint_residue(&w) < 1e-14);
    }

    #[test]
    fn saturation_on_common_deviation() {
        // A = B = sz on |+>: the difference vector x v1 - y v2 vanishes, so
        // lower = upper = Q(1,1)/2 = 2.
        let sp = State::pure(ket_plus::<f64>()).unwrap();
        let z1 = obs(pauli_z());
        let z2 = obs(pauli_z());
        let w = WeightPair::ones();
        let d = PairDecomposition::resolve(
            &w,
            c(0.0, 0.0),
            c(1.0, 0.0),
            FreePair::Mn {
                m: c(0.1, 0.0),
                n: c(0.1, 0.0),
            },
        )
        .unwrap();
        let b = pair_bounds(&z1, &z2, &sp, &w, &d).unwrap();
        assert!((b.lower - 2.0).abs() < 1e-12);
        assert!((b.upper - 2.0).abs() < 1e-12);
    }

    #[test]
    fn saturation_holds_for_any_instance_with_a_zero() {
        let s0 = State::pure(ket0::<f64>()).unwrap();
        let a = obs(pauli_x());
        let b = obs(pauli_y());
        let w = WeightPair::new(c(0.3, 0.8), c(-0.5, 0.2)).unwrap();
        let sov = w.x.norm_sqr() * variance(&a, &s0).unwrap()
            + w.y.norm_sqr() * variance(&b, &s0).unwrap();
        let d = PairDecomposition::resolve(
            &w,
            c(0.0, 0.0),
            c(2.0, -1.0),
            FreePair::Mn {
                m: c(1.3, 0.4),
                n: c(-0.6, 0.2),
            },
        )
        .unwrap();
        let bounds = pair_bounds(&a, &b, &s0, &w, &d).unwrap();
        assert!((bounds.lower - sov).abs() < 1e-10 * (1.0 + sov));
        assert!((bounds.upper - sov).abs() < 1e-10 * (1.0 + sov));
    }

    #[test]
    fn constraint_violation_detected() {
        let w = WeightPair::new(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let d = PairDecomposition::resolve(
            &w,
            c(0.5, 0.0),
            c(0.5, 0.0),
            FreePair::Mn {
                m: c(1.0, 0.0),
                n: c(1.0, 0.0),
            },
        )
        .unwrap();
        // Re-use the decomposition against different weights.
        let other = WeightPair::new(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        let s0 = State::pure(ket0::<f64>()).unwrap();
        let a = obs(pauli_x());
        let b = obs(pauli_y());
        assert!(matches!(
            pair_bounds(&a, &b, &s0, &other, &d),
            Err(Error::ConstraintViolated { .. })
        ));
    }

    #[test]
    fn single_zero_weight_is_reported_not_rejected() {
        // x = 0 (or y = 0) degenerates to a single-observable statement but
        // still flows through resolution and bounding.
        let w = WeightPair::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let s0 = State::pure(ket0::<f64>()).unwrap();
        let a = obs(pauli_x());
        let b = obs(pauli_y());
        let d = PairDecomposition::resolve(
            &w,
            c(0.3, 0.0),
            c(0.9, 0.0),
            FreePair::Mn {
                m: c(0.5, 0.2),
                n: c(-0.1, 0.4),
            },
        )
        .unwrap();
        let bounds = pair_bounds(&a, &b, &s0, &w, &d).unwrap();
        let sov = variance(&b, &s0).unwrap(); // |y|^2 Var(B) only
        assert!(bounds.lower <= sov + 1e-12 && sov <= bounds.upper + 1e-12);
    }

    #[test]
    fn sum_identity_trivials() {
        let s0 = State::pure(ket0::<f64>()).unwrap();
        let w = WeightPair::ones();
        let r = sum_identity_residual(&obs(pauli_x()), &obs(pauli_y()), &s0, &w).unwrap();
        assert!(r < 1e-12);
        // common eigenstate: all terms vanish exactly
        let r0 = sum_identity_residual(&obs(pauli_z()), &obs(pauli_z()), &s0, &w).unwrap();
        assert_eq!(r0, 0.0);
    }
}
