//! Dense complex matrices and kets, plus the Hermitian eigensolver backing
//! density-matrix square roots.
//!
//! Everything here is sized for small systems (dimensions up to a few dozen);
//! storage is a row-major `Vec` and the eigensolver is a cyclic Jacobi
//! iteration with complex rotations.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Cx, Scalar};

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat<T> {
    dim: usize,
    data: Vec<Cx<T>>,
}

impl<T: Scalar> CMat<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Cx::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Cx::new(T::one(), T::zero()));
        }
        m
    }

    /// Builds a matrix from nested rows, rejecting ragged or empty input.
    pub fn from_rows(rows: &[Vec<Cx<T>>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyInput);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::BadDimension {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Cx<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cx<T> {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Cx<T>) {
        self.data[i * self.dim + j] = v;
    }

    pub fn data(&self) -> &[Cx<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Cx<T> {
        let mut t = Cx::new(T::zero(), T::zero());
        for i in 0..self.dim {
            t += self.get(i, i);
        }
        t
    }

    /// Matrix product; both operands must share the same dimension.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.get(i, k);
                if aik.re == T::zero() && aik.im == T::zero() {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + aik * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cx<T>]) -> Vec<Cx<T>> {
        assert_eq!(self.dim, v.len(), "matrix-vector dimension mismatch");
        let d = self.dim;
        (0..d)
            .map(|i| {
                let mut acc = Cx::new(T::zero(), T::zero());
                for (j, x) in v.iter().enumerate() {
                    acc += self.get(i, j) * *x;
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        Self::from_fn(self.dim, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        Self::from_fn(self.dim, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn scale(&self, c: Cx<T>) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j) * c)
    }

    pub fn scale_re(&self, c: T) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j).scale(c))
    }

    /// `M - c * I`.
    pub fn sub_scaled_identity(&self, c: Cx<T>) -> Self {
        Self::from_fn(self.dim, |i, j| {
            if i == j {
                self.get(i, j) - c
            } else {
                self.get(i, j)
            }
        })
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).add(&rhs.mul(self))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for z in &self.data {
            m = m.max(z.norm());
        }
        m
    }

    pub fn frobenius(&self) -> T {
        let mut s = T::zero();
        for z in &self.data {
            s += z.norm_sqr();
        }
        s.sqrt()
    }

    /// Largest entry magnitude of `M - M^dag`.
    pub fn hermitian_deviation(&self) -> T {
        let mut m = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                m = m.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        m
    }
}

/// `<a|b>` with the conjugation on the left argument.
pub fn vec_inner<T: Scalar>(a: &[Cx<T>], b: &[Cx<T>]) -> Cx<T> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Cx::new(T::zero(), T::zero());
    for (x, y) in a.iter().zip(b) {
        acc += x.conj() * *y;
    }
    acc
}

/// Squared l2 norm, accumulated as a real sum of squared magnitudes.
pub fn vec_norm_sq<T: Scalar>(a: &[Cx<T>]) -> T {
    let mut acc = T::zero();
    for x in a {
        acc += x.norm_sqr();
    }
    acc
}

/// Hilbert-Schmidt inner product `Tr(P^dag Q)` without forming the product.
pub fn hs_inner<T: Scalar>(p: &CMat<T>, q: &CMat<T>) -> Cx<T> {
    debug_assert_eq!(p.dim(), q.dim());
    vec_inner(p.data(), q.data())
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching unitary of
/// eigenvector columns, so that `M = V diag(vals) V^dag`. The strictly upper
/// triangle of the input is trusted; tiny Hermiticity defects are symmetrized
/// away implicitly by working on `(p, q)` entries only.
pub fn hermitian_eigen<T: Scalar>(m: &CMat<T>) -> (Vec<T>, CMat<T>) {
    let d = m.dim();
    let mut a = m.clone();
    let mut v = CMat::identity(d);
    if d == 1 {
        return (vec![a.get(0, 0).re], v);
    }

    let scale = a.frobenius().max(T::min_positive_value());
    let stop = scale * T::epsilon() * lit::<T>(d as f64);
    let max_sweeps = 100;

    for _ in 0..max_sweeps {
        let mut off = T::zero();
        for p in 0..d {
            for q in (p + 1)..d {
                off += a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= stop {
            break;
        }

        for p in 0..(d - 1) {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                let beta = apq.norm();
                let local = a.get(p, p).norm() + a.get(q, q).norm();
                if beta <= (local + T::min_positive_value()) * T::epsilon() {
                    continue;
                }

                // Unit rotation zeroing the (p, q) entry of the Hermitian
                // 2x2 block [[app, beta f], [beta conj(f), aqq]].
                let f = apq / Cx::new(beta, T::zero());
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (app - aqq) / (lit::<T>(2.0) * beta);
                let t = if tau == T::zero() {
                    T::one()
                } else {
                    -tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;

                let sf = f.scale(s);
                let sfc = f.conj().scale(s);

                // Column update: A <- A G.
                for r in 0..d {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, arp.scale(c) - sfc * arq);
                    a.set(r, q, sf * arp + arq.scale(c));
                }
                // Row update: A <- G^dag A.
                for r in 0..d {
                    let apr = a.get(p, r);
                    let aqr = a.get(q, r);
                    a.set(p, r, apr.scale(c) - sf * aqr);
                    a.set(q, r, sfc * apr + aqr.scale(c));
                }
                // The pivot entries are zero analytically; pin them.
                a.set(p, q, Cx::new(T::zero(), T::zero()));
                a.set(q, p, Cx::new(T::zero(), T::zero()));
                let dpp = a.get(p, p);
                a.set(p, p, Cx::new(dpp.re, T::zero()));
                let dqq = a.get(q, q);
                a.set(q, q, Cx::new(dqq.re, T::zero()));

                // Accumulate the eigenvector basis: V <- V G.
                for r in 0..d {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, vrp.scale(c) - sfc * vrq);
                    v.set(r, q, sf * vrp + vrq.scale(c));
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let vals: Vec<T> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vecs = CMat::from_fn(d, |r, col| v.get(r, order[col]));
    (vals, vecs)
}

/// Unique positive-semidefinite square root of a Hermitian PSD matrix.
///
/// Eigenvalues in `[eig_floor, 0)` are clamped to zero; an eigenvalue below
/// `eig_floor` returns the offending value as an error.
pub fn psd_sqrt<T: Scalar>(m: &CMat<T>, eig_floor: T) -> Result<CMat<T>, T> {
    let d = m.dim();
    let (vals, vecs) = hermitian_eigen(m);
    let mut clamped = Vec::with_capacity(d);
    for &lambda in &vals {
        if lambda < eig_floor {
            return Err(lambda);
        }
        clamped.push(lambda.max(T::zero()).sqrt());
    }
    // V diag(sqrt(lambda)) V^dag
    Ok(CMat::from_fn(d, |i, j| {
        let mut acc = Cx::new(T::zero(), T::zero());
        for (k, &root) in clamped.iter().enumerate() {
            acc += vecs.get(i, k) * vecs.get(j, k).conj().scale(root);
        }
        acc
    }))
}

/// Convenience constructor from `(re, im)` pairs, used by fixtures and tests.
pub fn mat_from_pairs<T: Scalar>(rows: &[&[(f64, f64)]]) -> CMat<T> {
    let d = rows.len();
    let mut m = CMat::zeros(d);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), d, "ragged matrix literal");
        for (j, &(re, im)) in row.iter().enumerate() {
            m.set(i, j, Complex::new(lit(re), lit(im)));
        }
    }
    m
}
