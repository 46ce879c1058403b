//! Scalar abstraction: every numerical routine in this crate is generic over
//! the underlying real float type.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};

/// Real scalar type the complex linear algebra is built on: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssignOps + Debug + Display + Send + Sync + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over the crate scalar.
pub type Cx<T> = Complex<T>;

/// Converts an `f64` literal (tolerances, embedded fixture entries) into `T`.
#[inline]
pub(crate) fn lit<T: Scalar>(v: f64) -> T {
    T::from_f64(v).expect("f64 literal must convert into the scalar type")
}

/// Complex number from a pair of `f64` literals.
#[inline]
pub(crate) fn cx<T: Scalar>(re: f64, im: f64) -> Cx<T> {
    Cx::new(lit(re), lit(im))
}
