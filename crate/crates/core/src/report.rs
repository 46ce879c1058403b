//! Consolidated bound comparison for a single instance.

use crate::classic::{
    fb_bound, mp_bound, mp_l1, mp_l2, pb_bound, robertson, schrodinger, MpConfig,
};
use crate::error::Result;
use crate::multi_bounds::{multi_bounds, MultiDecomposition, PairSpecs, WeightVector};
use crate::quantum::{variance, Observable, State};
use crate::scalar::{lit, Scalar};
use crate::tol;

/// What a bound constrains, and from which side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// Lower bound on the weighted variance sum `sum |x_i|^2 Var(A_i)`.
    LowerOnWeightedSov,
    /// Upper bound on the weighted variance sum.
    UpperOnWeightedSov,
    /// Lower bound on the unweighted variance sum (the weight-free
    /// reference bounds).
    LowerOnSov,
    /// Lower bound on the standard-deviation product (two observables only).
    LowerOnProduct,
}

/// One evaluated bound with the quantity it constrains and a pass flag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundEntry<T> {
    pub name: &'static str,
    pub value: T,
    pub kind: BoundKind,
    /// The constrained quantity the flag was checked against.
    pub target: T,
    pub ok: bool,
}

/// Every applicable bound for one instance, with sandwich flags.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport<T> {
    pub dim: usize,
    pub n_obs: usize,
    /// `sum_i |x_i|^2 Var(A_i)`.
    pub weighted_sov: T,
    /// `sum_i Var(A_i)`.
    pub sov: T,
    pub variances: Vec<T>,
    /// `Std(A_1) Std(A_2)` when exactly two observables are given.
    pub variance_product: Option<T>,
    pub entries: Vec<BoundEntry<T>>,
    /// Largest decomposition constraint residue.
    pub max_residue: T,
    /// True when the supplied parameters are saturating (`a = 0` or `b = 0`
    /// throughout), making both band bounds equalities.
    pub saturating: bool,
    pub all_ok: bool,
}

impl<T: Scalar> BoundsReport<T> {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry<T>> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn flag<T: Scalar>(kind: BoundKind, value: T, target: T) -> bool {
    let slack = lit::<T>(tol::SANDWICH_REL) * (T::one() + target.abs());
    match kind {
        BoundKind::UpperOnWeightedSov => value >= target - slack,
        _ => value <= target + slack,
    }
}

/// Evaluates every bound applicable to the instance.
///
/// The band bounds use the supplied free parameters. The weight-free
/// reference bounds (the sum-form pair bound, and the pair-sum bounds for
/// three or more observables) are checked against the unweighted variance
/// sum; the product-form bounds against the standard-deviation product.
/// The sum-form pair bound is evaluated for pure states only.
pub fn compare_bounds<T: Scalar>(
    s: &State<T>,
    obs: &[Observable<T>],
    w: &WeightVector<T>,
    specs: &PairSpecs<T>,
) -> Result<BoundsReport<T>> {
    let n = obs.len();
    let variances: Vec<T> = obs.iter().map(|o| variance(o, s)).collect::<Result<_>>()?;
    let mut sov = T::zero();
    let mut weighted_sov = T::zero();
    for (x, &v) in w.as_slice().iter().zip(&variances) {
        sov += v;
        weighted_sov += x.norm_sqr() * v;
    }

    let decomposition = MultiDecomposition::resolve(w, specs)?;
    let band = multi_bounds(obs, s, w, &decomposition)?;

    let mut entries = vec![
        BoundEntry {
            name: "lower",
            value: band.lower,
            kind: BoundKind::LowerOnWeightedSov,
            target: weighted_sov,
            ok: flag(BoundKind::LowerOnWeightedSov, band.lower, weighted_sov),
        },
        BoundEntry {
            name: "upper",
            value: band.upper,
            kind: BoundKind::UpperOnWeightedSov,
            target: weighted_sov,
            ok: flag(BoundKind::UpperOnWeightedSov, band.upper, weighted_sov),
        },
    ];

    let mut variance_product = None;
    if n == 2 {
        let (a, b) = (&obs[0], &obs[1]);
        let product = (variances[0] * variances[1]).max(T::zero()).sqrt();
        variance_product = Some(product);
        for (name, value) in [
            ("robertson", robertson(a, b, s)?),
            ("schrodinger", schrodinger(a, b, s)?),
        ] {
            entries.push(BoundEntry {
                name,
                value,
                kind: BoundKind::LowerOnProduct,
                target: product,
                ok: flag(BoundKind::LowerOnProduct, value, product),
            });
        }
        if s.is_pure() {
            let cfg = MpConfig::auto();
            for (name, value) in [
                ("mp_l1", mp_l1(a, b, s, &cfg)?),
                ("mp_l2", mp_l2(a, b, s)?),
                ("mp", mp_bound(a, b, s, &cfg)?),
            ] {
                entries.push(BoundEntry {
                    name,
                    value,
                    kind: BoundKind::LowerOnSov,
                    target: sov,
                    ok: flag(BoundKind::LowerOnSov, value, sov),
                });
            }
        }
    } else {
        for (name, value) in [("fb", fb_bound(obs, s)?), ("pb", pb_bound(obs, s)?)] {
            entries.push(BoundEntry {
                name,
                value,
                kind: BoundKind::LowerOnSov,
                target: sov,
                ok: flag(BoundKind::LowerOnSov, value, sov),
            });
        }
    }

    let all_ok = entries.iter().all(|e| e.ok);
    Ok(BoundsReport {
        dim: s.dim(),
        n_obs: n,
        weighted_sov,
        sov,
        variances,
        variance_product,
        max_residue: decomposition.max_residue(w),
        saturating: decomposition.is_saturating(),
        entries,
        all_ok,
    })
}
