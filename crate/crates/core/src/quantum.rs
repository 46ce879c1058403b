//! States, observables, deviation vectors, and the norm algebra every bound
//! is built from.
//!
//! A mixed state carries the unique PSD square root of its density matrix;
//! deviation vectors for mixed states are `(A - <A>) sqrt_rho` and live in
//! the Hilbert-Schmidt space, so the same inner-product identities hold on
//! both state kinds.

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, psd_sqrt, vec_inner, vec_norm_sq, CMat};
use crate::scalar::{lit, Cx, Scalar};
use crate::tol;

/// Validated Hermitian observable.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable<T> {
    mat: CMat<T>,
}

impl<T: Scalar> Observable<T> {
    /// Validates Hermiticity (relative to the largest entry) and dimension.
    pub fn new(mat: CMat<T>) -> Result<Self> {
        let d = mat.dim();
        if d < 2 {
            return Err(Error::BadDimension { rows: d, cols: d });
        }
        let dev = mat.hermitian_deviation();
        let threshold = lit::<T>(tol::HERMITICITY_REL) * (T::one() + mat.max_abs());
        if dev > threshold {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { mat })
    }

    /// Wraps a matrix known to be Hermitian by construction (real linear
    /// combinations of validated observables).
    pub(crate) fn from_hermitian_unchecked(mat: CMat<T>) -> Self {
        Self { mat }
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Sum observable `self + other`, Hermitian by linearity.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self::from_hermitian_unchecked(self.mat.add(&other.mat)))
    }

    /// Real linear combination of observables, Hermitian by linearity.
    pub fn linear_combination(coeffs: &[T], obs: &[&Self]) -> Result<Self> {
        if obs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if coeffs.len() != obs.len() {
            return Err(Error::LengthMismatch {
                expected: obs.len(),
                actual: coeffs.len(),
            });
        }
        let d = obs[0].dim();
        let mut acc = CMat::zeros(d);
        for (&c, o) in coeffs.iter().zip(obs) {
            check_dims(d, o.dim())?;
            acc = acc.add(&o.mat.scale_re(c));
        }
        Ok(Self::from_hermitian_unchecked(acc))
    }
}

/// Pure ket or density matrix with its cached square root.
#[derive(Clone, Debug, PartialEq)]
pub enum State<T> {
    Pure { ket: Vec<Cx<T>> },
    Mixed { rho: CMat<T>, sqrt_rho: CMat<T> },
}

impl<T: Scalar> State<T> {
    /// Validates `||ket|| = 1` within tolerance.
    pub fn pure(ket: Vec<Cx<T>>) -> Result<Self> {
        if ket.len() < 2 {
            return Err(Error::BadDimension {
                rows: ket.len(),
                cols: 1,
            });
        }
        let norm = vec_norm_sq(&ket).sqrt();
        let dev = (norm - T::one()).abs();
        if dev > lit::<T>(tol::NORM_ABS) {
            return Err(Error::NotNormalized {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::Pure { ket })
    }

    /// Validates Hermiticity, unit trace, and positive semidefiniteness,
    /// then caches the PSD square root (eigenvalues in `[-1e-10, 0)` are
    /// clamped to zero).
    pub fn mixed(rho: CMat<T>) -> Result<Self> {
        let d = rho.dim();
        if d < 2 {
            return Err(Error::BadDimension { rows: d, cols: d });
        }
        let dev = rho.hermitian_deviation();
        if dev > lit::<T>(tol::HERMITICITY_REL) * (T::one() + rho.max_abs()) {
            return Err(Error::NotDensityMatrix {
                detail: format!(
                    "not Hermitian, deviation {:.3e}",
                    dev.to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
        let tr = rho.trace();
        let tr_dev = ((tr.re - T::one()).abs() + tr.im.abs())
            .to_f64()
            .unwrap_or(f64::NAN);
        if tr_dev > tol::NORM_ABS {
            return Err(Error::NotDensityMatrix {
                detail: format!("trace deviates from 1 by {tr_dev:.3e}"),
            });
        }
        let sqrt_rho =
            psd_sqrt(&rho, lit::<T>(tol::PSD_FLOOR)).map_err(|lambda| Error::NotDensityMatrix {
                detail: format!(
                    "negative eigenvalue {:.3e}",
                    lambda.to_f64().unwrap_or(f64::NAN)
                ),
            })?;
        let residual = sqrt_rho.mul(&sqrt_rho).sub(&rho).frobenius();
        // floored at a few ulps of the matrix scale so the check stays
        // meaningful at f32
        let threshold = lit::<T>(tol::SQRT_FROBENIUS)
            .max((T::one() + rho.frobenius()) * T::epsilon() * lit::<T>(16.0 * d as f64));
        if residual > threshold {
            return Err(Error::NotDensityMatrix {
                detail: format!(
                    "square root residual {:.3e} beyond tolerance",
                    residual.to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
        Ok(Self::Mixed { rho, sqrt_rho })
    }

    /// Lifts a pure state to the density matrix `|psi><psi|`.
    pub fn to_projector(&self) -> Result<Self> {
        match self {
            Self::Pure { ket } => {
                let d = ket.len();
                let rho = CMat::from_fn(d, |i, j| ket[i] * ket[j].conj());
                Self::mixed(rho)
            }
            Self::Mixed { .. } => Err(Error::MixedStateUnsupported),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Pure { ket } => ket.len(),
            Self::Mixed { rho, .. } => rho.dim(),
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, Self::Pure { .. })
    }

    pub fn ket(&self) -> Option<&[Cx<T>]> {
        match self {
            Self::Pure { ket } => Some(ket),
            Self::Mixed { .. } => None,
        }
    }

    pub fn rho(&self) -> Option<&CMat<T>> {
        match self {
            Self::Mixed { rho, .. } => Some(rho),
            Self::Pure { .. } => None,
        }
    }

    pub fn sqrt_rho(&self) -> Option<&CMat<T>> {
        match self {
            Self::Mixed { sqrt_rho, .. } => Some(sqrt_rho),
            Self::Pure { .. } => None,
        }
    }
}

/// Element of the working vector space: a ket for pure states, a matrix with
/// the Hilbert-Schmidt inner product for mixed ones.
#[derive(Clone, Debug, PartialEq)]
pub enum DeviationVector<T> {
    Ket(Vec<Cx<T>>),
    HilbertSchmidt(CMat<T>),
}

impl<T: Scalar> DeviationVector<T> {
    pub fn dim(&self) -> usize {
        match self {
            Self::Ket(v) => v.len(),
            Self::HilbertSchmidt(m) => m.dim(),
        }
    }

    /// Inner product between two vectors of the same kind.
    pub fn inner(&self, other: &Self) -> Result<Cx<T>> {
        match (self, other) {
            (Self::Ket(a), Self::Ket(b)) => {
                check_dims(a.len(), b.len())?;
                Ok(vec_inner(a, b))
            }
            (Self::HilbertSchmidt(p), Self::HilbertSchmidt(q)) => {
                check_dims(p.dim(), q.dim())?;
                Ok(hs_inner(p, q))
            }
            _ => Err(Error::KindMismatch),
        }
    }

    /// Squared norm, accumulated as a sum of squared magnitudes and clamped
    /// at zero for tiny negatives.
    pub fn norm_sq(&self) -> T {
        let v = match self {
            Self::Ket(a) => vec_norm_sq(a),
            Self::HilbertSchmidt(p) => vec_norm_sq(p.data()),
        };
        clamp_norm_sq(v)
    }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

fn clamp_norm_sq<T: Scalar>(v: T) -> T {
    if v < T::zero() && v >= lit::<T>(tol::NORM_SQ_FLOOR) {
        T::zero()
    } else {
        v
    }
}

/// `<M>` for an arbitrary (not necessarily Hermitian) matrix.
pub(crate) fn expectation_complex<T: Scalar>(m: &CMat<T>, s: &State<T>) -> Result<Cx<T>> {
    check_dims(m.dim(), s.dim())?;
    match s {
        State::Pure { ket } => Ok(vec_inner(ket, &m.mul_vec(ket))),
        State::Mixed { rho, .. } => Ok(rho.mul(m).trace()),
    }
}

/// `<M>` for a Hermitian matrix, with the imaginary residue discarded if
/// below tolerance.
pub(crate) fn expectation_matrix<T: Scalar>(m: &CMat<T>, s: &State<T>) -> Result<T> {
    let z = expectation_complex(m, s)?;
    if z.im.abs() > lit::<T>(tol::IMAG_RESIDUE) {
        return Err(Error::NonRealExpectation {
            imag: z.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(z.re)
}

/// `<A>` on the given state.
pub fn expectation<T: Scalar>(a: &Observable<T>, s: &State<T>) -> Result<T> {
    expectation_matrix(a.matrix(), s)
}

pub(crate) fn variance_matrix<T: Scalar>(m: &CMat<T>, s: &State<T>) -> Result<T> {
    // Two-pass form <(M - <M>)^2>: equal to <M^2> - <M>^2 but free of the
    // catastrophic cancellation that follows near-eigenstates when M carries
    // large coefficients.
    let mean = expectation_matrix(m, s)?;
    let shifted = m.sub_scaled_identity(Cx::new(mean, T::zero()));
    let v = expectation_matrix(&shifted.mul(&shifted), s)?;
    Ok(clamp_norm_sq(v))
}

/// Variance `<A^2> - <A>^2`, clamped at zero for tiny negatives.
pub fn variance<T: Scalar>(a: &Observable<T>, s: &State<T>) -> Result<T> {
    variance_matrix(a.matrix(), s)
}

/// `(A - <A>)` applied to the state: a ket for pure states, the matrix
/// `(A - <A>) sqrt_rho` for mixed ones. Its squared norm is the variance.
pub fn deviation_vector<T: Scalar>(a: &Observable<T>, s: &State<T>) -> Result<DeviationVector<T>> {
    let mean = expectation(a, s)?;
    let shifted = a.matrix().sub_scaled_identity(Cx::new(mean, T::zero()));
    match s {
        State::Pure { ket } => Ok(DeviationVector::Ket(shifted.mul_vec(ket))),
        State::Mixed { sqrt_rho, .. } => Ok(DeviationVector::HilbertSchmidt(shifted.mul(sqrt_rho))),
    }
}

/// Linear superposition of deviation vectors with complex coefficients.
pub fn combine<T: Scalar>(
    coeffs: &[Cx<T>],
    vectors: &[DeviationVector<T>],
) -> Result<DeviationVector<T>> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput);
    }
    if coeffs.len() != vectors.len() {
        return Err(Error::LengthMismatch {
            expected: vectors.len(),
            actual: coeffs.len(),
        });
    }
    match &vectors[0] {
        DeviationVector::Ket(first) => {
            let d = first.len();
            let mut acc = vec![Cx::new(T::zero(), T::zero()); d];
            for (c, v) in coeffs.iter().zip(vectors) {
                let DeviationVector::Ket(k) = v else {
                    return Err(Error::KindMismatch);
                };
                check_dims(d, k.len())?;
                for (a, b) in acc.iter_mut().zip(k) {
                    *a += *c * *b;
                }
            }
            Ok(DeviationVector::Ket(acc))
        }
        DeviationVector::HilbertSchmidt(first) => {
            let d = first.dim();
            let mut acc = CMat::zeros(d);
            for (c, v) in coeffs.iter().zip(vectors) {
                let DeviationVector::HilbertSchmidt(m) = v else {
                    return Err(Error::KindMismatch);
                };
                check_dims(d, m.dim())?;
                acc = acc.add(&m.scale(*c));
            }
            Ok(DeviationVector::HilbertSchmidt(acc))
        }
    }
}

/// `i <[A, B]>` as a real number.
///
/// For Hermitian `A`, `B` the commutator expectation is purely imaginary; a
/// real residue beyond tolerance signals a broken observable.
pub fn commutator_expectation<T: Scalar>(
    a: &Observable<T>,
    b: &Observable<T>,
    s: &State<T>,
) -> Result<T> {
    check_dims(a.dim(), b.dim())?;
    let z = expectation_complex(&a.matrix().commutator(b.matrix()), s)?;
    // i z = -Im(z) + i Re(z)
    if z.re.abs() > lit::<T>(tol::IMAG_RESIDUE) {
        return Err(Error::NonImaginaryCommutator {
            real: z.re.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(-z.im)
}
