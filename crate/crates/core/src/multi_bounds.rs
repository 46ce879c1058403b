//! Two-sided bounds on the weighted sum of N variances, the per-pair
//! decomposition machinery behind them, and composite lower bounds built
//! from pairwise matchings.
//!
//! The N-observable bounds average the pair quadratic form over all
//! `N(N-1)/2` index pairs `(i, j)` with `i < j`:
//!
//! ```text
//! lower = (Q + sum_k (|a_k| Q_k(m,n)^1/2 - |b_k| Q_k(mt,nt)^1/2)^2) / N
//! ```
//!
//! with per-pair constraints `a_k m_k + b_k mt_k = x_i` and
//! `a_k n_k + b_k nt_k = -x_j`. At `N = 2` this reduces exactly to the
//! pair bounds. Matching bounds instead partition an even set of
//! observables into disjoint pairs and sum per-pair lower bounds with unit
//! weights.

use crate::error::{Error, Result};
use crate::pair_bounds::{
    constraint_tolerance, pair_bounds, quadratic_form, Bounds, FreePair, PairDecomposition,
    WeightPair,
};
use crate::quantum::{
    combine, commutator_expectation, deviation_vector, variance, Observable, State,
};
use crate::scalar::{lit, Cx, Scalar};

/// Complex weights for N observables; not all zero, N >= 2.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector<T> {
    xs: Vec<Cx<T>>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn new(xs: Vec<Cx<T>>) -> Result<Self> {
        if xs.len() < 2 {
            return Err(Error::BadParams {
                detail: format!("need at least 2 weights, got {}", xs.len()),
            });
        }
        if xs.iter().all(|x| x.norm_sqr() == T::zero()) {
            return Err(Error::ZeroWeights);
        }
        Ok(Self { xs })
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![Cx::new(T::one(), T::zero()); n])
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn as_slice(&self) -> &[Cx<T>] {
        &self.xs
    }
}

/// One pair's worth of free parameters: the `(a, b)` split plus whichever
/// half of the remaining tuple is free.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairCase<T> {
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub free: FreePair<T>,
}

/// Free-parameter specification for all pairs: a single case broadcast to
/// every pair, or one case per pair in lexicographic `(i, j)` order.
#[derive(Clone, Debug, PartialEq)]
pub enum PairSpecs<T> {
    Broadcast(PairCase<T>),
    PerPair(Vec<PairCase<T>>),
}

/// Resolved decomposition for every index pair, in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiDecomposition<T> {
    entries: Vec<PairEntry<T>>,
    n: usize,
}

#[derive(Clone, Debug, PartialEq)]
struct PairEntry<T> {
    /// 1-based observable labels with i < j.
    i: usize,
    j: usize,
    decomp: PairDecomposition<T>,
}

impl<T: Scalar> MultiDecomposition<T> {
    /// Resolves the dependent parameters of every pair against the weights.
    pub fn resolve(w: &WeightVector<T>, specs: &PairSpecs<T>) -> Result<Self> {
        let n = w.len();
        let pair_count = n * (n - 1) / 2;
        if let PairSpecs::PerPair(cases) = specs {
            if cases.len() != pair_count {
                return Err(Error::LengthMismatch {
                    expected: pair_count,
                    actual: cases.len(),
                });
            }
        }
        let mut entries = Vec::with_capacity(pair_count);
        let mut k = 0;
        for i in 1..=n {
            for j in (i + 1)..=n {
                let case = match specs {
                    PairSpecs::Broadcast(c) => *c,
                    PairSpecs::PerPair(cs) => cs[k],
                };
                let pair_w = WeightPair {
                    x: w.as_slice()[i - 1],
                    y: w.as_slice()[j - 1],
                };
                let decomp = PairDecomposition::resolve(&pair_w, case.a, case.b, case.free)?;
                entries.push(PairEntry { i, j, decomp });
                k += 1;
            }
        }
        Ok(Self { entries, n })
    }

    pub fn n_observables(&self) -> usize {
        self.n
    }

    pub fn pair_count(&self) -> usize {
        self.entries.len()
    }

    /// The resolved decomposition for pair `(i, j)`, 1-based.
    pub fn pair(&self, i: usize, j: usize) -> Result<&PairDecomposition<T>> {
        let k = pair_index(i, j, self.n)?;
        Ok(&self.entries[k - 1].decomp)
    }

    /// Largest constraint residue across all pairs.
    pub fn max_residue(&self, w: &WeightVector<T>) -> T {
        let mut worst = T::zero();
        for e in &self.entries {
            let pair_w = WeightPair {
                x: w.as_slice()[e.i - 1],
                y: w.as_slice()[e.j - 1],
            };
            worst = worst.max(e.decomp.constraint_residue(&pair_w));
        }
        worst
    }

    /// True when all `a_k` vanish or all `b_k` vanish: the bounds collapse
    /// exactly onto the weighted variance sum.
    pub fn is_saturating(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.decomp.a.norm_sqr() == T::zero())
            || self
                .entries
                .iter()
                .all(|e| e.decomp.b.norm_sqr() == T::zero())
    }
}

/// Lexicographic 1-based rank of the pair `(i, j)` among all pairs over
/// `{1..n}`: `(1,2) -> 1`, ..., `(n-1,n) -> n(n-1)/2`.
pub fn pair_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i < 1 || j <= i || j > n {
        return Err(Error::BadIndices { i, j, n });
    }
    Ok((i - 1) * (2 * n - i) / 2 + (j - i))
}

fn check_obs_dims<T: Scalar>(obs: &[Observable<T>], s: &State<T>) -> Result<()> {
    for o in obs {
        if o.dim() != s.dim() {
            return Err(Error::DimensionMismatch {
                left: o.dim(),
                right: s.dim(),
            });
        }
    }
    Ok(())
}

/// The N-observable quadratic form
///
/// ```text
/// Q = Var(sum_j Re(x_j) A_j) + Var(sum_j Im(x_j) A_j)
///   + sum_{j<l} (Re(x_j) Im(x_l) - Im(x_j) Re(x_l)) * i<[A_j, A_l]>
/// ```
///
/// equal to the squared norm of `sum_j x_j (A_j - <A_j>)|s>`.
pub fn multi_quadratic_form<T: Scalar>(
    w: &WeightVector<T>,
    obs: &[Observable<T>],
    s: &State<T>,
) -> Result<T> {
    let n = obs.len();
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: w.len(),
        });
    }
    check_obs_dims(obs, s)?;
    let xs = w.as_slice();
    let refs: Vec<&Observable<T>> = obs.iter().collect();
    let re: Vec<T> = xs.iter().map(|x| x.re).collect();
    let im: Vec<T> = xs.iter().map(|x| x.im).collect();
    let m_re = Observable::linear_combination(&re, &refs)?;
    let m_im = Observable::linear_combination(&im, &refs)?;
    let mut q = variance(&m_re, s)? + variance(&m_im, s)?;
    for j in 0..n {
        for l in (j + 1)..n {
            let cross = xs[j].re * xs[l].im - xs[j].im * xs[l].re;
            if cross != T::zero() {
                q += cross * commutator_expectation(&obs[j], &obs[l], s)?;
            }
        }
    }
    Ok(q.max(T::zero()))
}

/// Two-sided bounds on `sum_i |x_i|^2 Var(A_i)` for a resolved
/// multi-decomposition; reduces to [`pair_bounds`] at `N = 2`.
pub fn multi_bounds<T: Scalar>(
    obs: &[Observable<T>],
    s: &State<T>,
    w: &WeightVector<T>,
    d: &MultiDecomposition<T>,
) -> Result<Bounds<T>> {
    let n = obs.len();
    if w.len() != n || d.n_observables() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: if w.len() != n {
                w.len()
            } else {
                d.n_observables()
            },
        });
    }
    check_obs_dims(obs, s)?;

    let q = multi_quadratic_form(w, obs, s)?;
    let mut lo_sum = T::zero();
    let mut hi_sum = T::zero();
    for e in &d.entries {
        let pair_w = WeightPair {
            x: w.as_slice()[e.i - 1],
            y: w.as_slice()[e.j - 1],
        };
        let residue = e.decomp.constraint_residue(&pair_w);
        if residue > constraint_tolerance(&pair_w) {
            return Err(Error::ConstraintViolated {
                residue: residue.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (oa, ob) = (&obs[e.i - 1], &obs[e.j - 1]);
        let q_mn = quadratic_form(e.decomp.m, e.decomp.n, oa, ob, s)?.sqrt();
        let q_tilde = quadratic_form(e.decomp.m_tilde, e.decomp.n_tilde, oa, ob, s)?.sqrt();
        let am = e.decomp.a.norm() * q_mn;
        let bt = e.decomp.b.norm() * q_tilde;
        lo_sum += (am - bt) * (am - bt);
        hi_sum += (am + bt) * (am + bt);
    }
    let n_t = lit::<T>(n as f64);
    Ok(Bounds {
        lower: (q + lo_sum) / n_t,
        upper: (q + hi_sum) / n_t,
    })
}

/// Residual of the N-vector norm identity
/// `||vbar||^2 + sum_k ||vtilde_k||^2 = N sum_i |x_i|^2 ||v_i||^2`, with the
/// left side evaluated through deviation vectors and the right side through
/// the variance formula.
pub fn multi_identity_residual<T: Scalar>(
    obs: &[Observable<T>],
    s: &State<T>,
    w: &WeightVector<T>,
) -> Result<T> {
    let n = obs.len();
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: w.len(),
        });
    }
    check_obs_dims(obs, s)?;
    let xs = w.as_slice();
    let vs: Vec<_> = obs
        .iter()
        .map(|o| deviation_vector(o, s))
        .collect::<Result<_>>()?;
    let vbar = combine(xs, &vs)?;
    let mut lhs = vbar.norm_sq();
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = combine(&[xs[i], -xs[j]], &[vs[i].clone(), vs[j].clone()])?;
            lhs += diff.norm_sq();
        }
    }
    let mut rhs = T::zero();
    for (x, o) in xs.iter().zip(obs) {
        rhs += x.norm_sqr() * variance(o, s)?;
    }
    rhs *= lit::<T>(n as f64);
    Ok((lhs - rhs).abs())
}

/// Partition of the 1-based labels `{1..n}` into disjoint pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
    n: usize,
}

impl Matching {
    /// Validates that every label in `1..=n` appears exactly once; `n` must
    /// be even.
    pub fn new(pairs: &[(usize, usize)], n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::OddCount { count: n });
        }
        if pairs.len() != n / 2 {
            return Err(Error::LengthMismatch {
                expected: n / 2,
                actual: pairs.len(),
            });
        }
        let mut seen = vec![false; n];
        let mut normalized = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            if lo < 1 || hi > n || lo == hi {
                return Err(Error::BadIndices { i, j, n });
            }
            for idx in [lo, hi] {
                if seen[idx - 1] {
                    return Err(Error::BadIndices { i, j, n });
                }
                seen[idx - 1] = true;
            }
            normalized.push((lo, hi));
        }
        Ok(Self {
            pairs: normalized,
            n,
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn n_observables(&self) -> usize {
        self.n
    }
}

/// Parameter cases tried for every matched pair; the bound keeps the best
/// case. Each case is broadcast to all pairs of the matching.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchingParams<T> {
    pub cases: Vec<PairCase<T>>,
}

/// Lower bound on `sum_i Var(A_i)` from one matching: per matched pair
/// `(i, j)`, the unit-weight pair lower bound on `Var(A_i) + Var(A_j)`,
/// summed over the matching, maximized over the parameter cases.
pub fn matching_bound<T: Scalar>(
    obs: &[Observable<T>],
    s: &State<T>,
    matching: &Matching,
    params: &MatchingParams<T>,
) -> Result<T> {
    if !obs.len().is_multiple_of(2) {
        return Err(Error::OddCount { count: obs.len() });
    }
    if matching.n_observables() != obs.len() {
        return Err(Error::LengthMismatch {
            expected: obs.len(),
            actual: matching.n_observables(),
        });
    }
    if params.cases.is_empty() {
        return Err(Error::EmptyInput);
    }
    check_obs_dims(obs, s)?;
    let w = WeightPair::ones();
    let mut best: Option<T> = None;
    for case in &params.cases {
        let d = PairDecomposition::resolve(&w, case.a, case.b, case.free)?;
        let mut total = T::zero();
        for &(i, j) in matching.pairs() {
            total += pair_bounds(&obs[i - 1], &obs[j - 1], s, &w, &d)?.lower;
        }
        best = Some(match best {
            None => total,
            Some(v) => v.max(total),
        });
    }
    Ok(best.expect("at least one case"))
}

/// Maximum and mean of [`matching_bound`] across several matchings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompositeBound<T> {
    pub max: T,
    pub avg: T,
}

pub fn composite_bound<T: Scalar>(
    obs: &[Observable<T>],
    s: &State<T>,
    matchings: &[Matching],
    params: &MatchingParams<T>,
) -> Result<CompositeBound<T>> {
    if matchings.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut max: Option<T> = None;
    let mut sum = T::zero();
    for m in matchings {
        let v = matching_bound(obs, s, m, params)?;
        sum += v;
        max = Some(match max {
            None => v,
            Some(prev) => prev.max(v),
        });
    }
    Ok(CompositeBound {
        max: max.expect("non-empty matchings"),
        avg: sum / lit::<T>(matchings.len() as f64),
    })
}
