//! Pauli matrices and standard qubit kets.

use crate::linalg::CMat;
use crate::scalar::{Cx, Scalar};

pub fn pauli_x<T: Scalar>() -> CMat<T> {
    let o = T::zero();
    let l = T::one();
    CMat::from_rows(&[
        vec![Cx::new(o, o), Cx::new(l, o)],
        vec![Cx::new(l, o), Cx::new(o, o)],
    ])
    .expect("2x2 literal")
}

pub fn pauli_y<T: Scalar>() -> CMat<T> {
    let o = T::zero();
    let l = T::one();
    CMat::from_rows(&[
        vec![Cx::new(o, o), Cx::new(o, -l)],
        vec![Cx::new(o, l), Cx::new(o, o)],
    ])
    .expect("2x2 literal")
}

pub fn pauli_z<T: Scalar>() -> CMat<T> {
    let o = T::zero();
    let l = T::one();
    CMat::from_rows(&[
        vec![Cx::new(l, o), Cx::new(o, o)],
        vec![Cx::new(o, o), Cx::new(-l, o)],
    ])
    .expect("2x2 literal")
}

/// `|0>`.
pub fn ket0<T: Scalar>() -> Vec<Cx<T>> {
    vec![Cx::new(T::one(), T::zero()), Cx::new(T::zero(), T::zero())]
}

/// `|1>`.
pub fn ket1<T: Scalar>() -> Vec<Cx<T>> {
    vec![Cx::new(T::zero(), T::zero()), Cx::new(T::one(), T::zero())]
}

/// `(|0> + |1>) / sqrt(2)`.
pub fn ket_plus<T: Scalar>() -> Vec<Cx<T>> {
    let h = (T::one() + T::one()).sqrt().recip();
    vec![Cx::new(h, T::zero()), Cx::new(h, T::zero())]
}
