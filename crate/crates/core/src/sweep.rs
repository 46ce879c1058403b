//! Grid sweeps over the embedded fixtures, emitting named columns.

use crate::classic::{fb_bound, pb_bound};
use crate::error::{Error, Result};
use crate::fixtures::Fixture;
use crate::multi_bounds::{composite_bound, multi_bounds, MultiDecomposition};
use crate::pair_bounds::{pair_bounds, Bounds, PairDecomposition};
use crate::quantum::variance;
use crate::scalar::{lit, Cx, Scalar};

/// One sweep's worth of data: the grid plus same-length named series.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult<T> {
    pub grid_name: &'static str,
    pub grid: Vec<T>,
    pub columns: Vec<(&'static str, Vec<T>)>,
}

impl<T: Scalar> SweepResult<T> {
    pub fn column(&self, name: &str) -> Option<&[T]> {
        self.columns
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v.as_slice())
    }

    /// Index of the first row where `lower <= mid <= upper` fails beyond the
    /// relative tolerance, if any.
    pub fn sandwich_violation(
        &self,
        lower: &str,
        mid: &str,
        upper: &str,
        rel_tol: T,
    ) -> Option<usize> {
        let lo = self.column(lower)?;
        let mi = self.column(mid)?;
        let hi = self.column(upper)?;
        for idx in 0..self.grid.len() {
            let slack = rel_tol * (T::one() + mi[idx].abs());
            if lo[idx] > mi[idx] + slack || hi[idx] < mi[idx] - slack {
                return Some(idx);
            }
        }
        None
    }
}

/// `points` evenly spaced values covering `[lo, hi]` inclusive.
pub fn uniform_grid<T: Scalar>(lo: T, hi: T, points: usize) -> Result<Vec<T>> {
    if points < 2 {
        return Err(Error::BadParams {
            detail: format!("grid needs at least 2 points, got {points}"),
        });
    }
    let step = (hi - lo) / lit::<T>((points - 1) as f64);
    Ok((0..points)
        .map(|k| {
            if k == points - 1 {
                hi
            } else {
                lo + step * lit::<T>(k as f64)
            }
        })
        .collect())
}

/// Sweeps the two-observable fixture over the split magnitude `|a|` with
/// `|a|^2 + |b|^2 = 1` (both real nonnegative). At each point the dependent
/// parameters of both cases are re-derived; the reported lower bound is the
/// larger of the resolvable cases and the upper bound the smaller. Columns:
/// `sov` (weighted), `lower`, `upper`.
pub fn sweep_abs_a<T: Scalar>(fx: &Fixture<T>, grid: &[T]) -> Result<SweepResult<T>> {
    let f = fx.as_two_observable()?;
    for &g in grid {
        // written so NaN fails too
        if !(g >= T::zero() && g <= T::one()) {
            return Err(Error::BadParams {
                detail: "split grid values must lie in [0, 1]".into(),
            });
        }
    }
    let [obs_a, obs_b] = &f.observables;
    let w = &f.weights;
    let sov =
        w.x.norm_sqr() * variance(obs_a, &f.state)? + w.y.norm_sqr() * variance(obs_b, &f.state)?;

    let mut lower = Vec::with_capacity(grid.len());
    let mut upper = Vec::with_capacity(grid.len());
    for &abs_a in grid {
        let abs_b = (T::one() - abs_a * abs_a).max(T::zero()).sqrt();
        let a = Cx::new(abs_a, T::zero());
        let b = Cx::new(abs_b, T::zero());
        let mut best: Option<Bounds<T>> = None;
        for case in &f.cases {
            let Ok(d) = PairDecomposition::resolve(w, a, b, *case) else {
                // The case whose free half requires the vanished divisor is
                // skipped at the endpoints.
                continue;
            };
            let bounds = pair_bounds(obs_a, obs_b, &f.state, w, &d)?;
            best = Some(match best {
                None => bounds,
                Some(prev) => Bounds {
                    lower: prev.lower.max(bounds.lower),
                    upper: prev.upper.min(bounds.upper),
                },
            });
        }
        let bounds = best.ok_or(Error::SingularSolve)?;
        lower.push(bounds.lower);
        upper.push(bounds.upper);
    }

    Ok(SweepResult {
        grid_name: "abs_a",
        grid: grid.to_vec(),
        columns: vec![
            ("sov", vec![sov; grid.len()]),
            ("lower", lower),
            ("upper", upper),
        ],
    })
}

/// Sweeps the four-observable fixture over the state parameter `theta`.
/// Columns: `sov`, `lb`, `ub` (band bounds), `fb`, `pb` (pair-sum reference
/// bounds), `tb1`, `tbm` (matching average / max), `tb2` (matching average
/// with the tighter parameter cases).
pub fn sweep_theta<T: Scalar>(fx: &Fixture<T>, grid: &[T]) -> Result<SweepResult<T>> {
    let f = fx.as_four_observable()?;
    let obs = &f.observables;
    let decomposition = MultiDecomposition::resolve(&f.weights, &f.band_params)?;

    let names = ["sov", "lb", "ub", "fb", "pb", "tb1", "tbm", "tb2"];
    let mut cols: Vec<Vec<T>> = vec![Vec::with_capacity(grid.len()); names.len()];
    for &theta in grid {
        let state = f.state_at(theta);
        let mut sov = T::zero();
        for o in obs.iter() {
            sov += variance(o, &state)?;
        }
        let band = multi_bounds(obs, &state, &f.weights, &decomposition)?;
        let fb = fb_bound(obs, &state)?;
        let pb = pb_bound(obs, &state)?;
        let tb = composite_bound(obs, &state, &f.matchings, &f.tb_params)?;
        let tb2 = composite_bound(obs, &state, &f.matchings, &f.tb2_params)?;
        for (col, v) in cols
            .iter_mut()
            .zip([sov, band.lower, band.upper, fb, pb, tb.avg, tb.max, tb2.avg])
        {
            col.push(v);
        }
    }

    Ok(SweepResult {
        grid_name: "theta",
        grid: grid.to_vec(),
        columns: names.into_iter().zip(cols).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture_fig1, fixture_fig2};

    #[test]
    fn uniform_grid_endpoints_exact() {
        let g = uniform_grid(0.0f64, 1.0, 101).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 1.0);
        assert!((g[50] - 0.5).abs() < 1e-15);
        assert!(uniform_grid(0.0f64, 1.0, 1).is_err());
    }

    #[test]
    fn split_sweep_endpoints_saturate() {
        let fx = fixture_fig1::<f64>();
        let r = sweep_abs_a(&fx, &[0.0, 1.0]).unwrap();
        let sov = r.column("sov").unwrap()[0];
        for idx in 0..2 {
            let lo = r.column("lower").unwrap()[idx];
            let hi = r.column("upper").unwrap()[idx];
            assert!((lo - sov).abs() <= 1e-9 * (1.0 + sov), "endpoint {idx}");
            assert!((hi - sov).abs() <= 1e-9 * (1.0 + sov), "endpoint {idx}");
        }
    }

    #[test]
    fn split_sweep_matches_frozen_midpoint() {
        let fx = fixture_fig1::<f64>();
        let r = sweep_abs_a(&fx, &[0.01, 0.5]).unwrap();
        let lower = r.column("lower").unwrap();
        let upper = r.column("upper").unwrap();
        assert!((lower[1] - 10.707775575947927).abs() < 1e-9);
        assert!((upper[1] - 36.48485089821508).abs() < 1e-9);
        assert!((lower[0] - 19.16477938367131).abs() < 1e-9);
        assert!((upper[0] - 19.796820236906612).abs() < 1e-9);
        let sov = r.column("sov").unwrap()[0];
        assert!((sov - 19.529201057861545).abs() < 1e-9);
    }

    #[test]
    fn split_sweep_rejects_out_of_range_grid() {
        let fx = fixture_fig1::<f64>();
        assert!(matches!(
            sweep_abs_a(&fx, &[0.0, 1.5]),
            Err(Error::BadParams { .. })
        ));
        assert!(matches!(
            sweep_abs_a(&fx, &[f64::NAN]),
            Err(Error::BadParams { .. })
        ));
    }

    #[test]
    fn split_sweep_rejects_wrong_fixture() {
        let fx = fixture_fig2::<f64>();
        assert!(matches!(
            sweep_abs_a(&fx, &[0.0]),
            Err(Error::BadFixtureShape { .. })
        ));
        let fx1 = fixture_fig1::<f64>();
        assert!(matches!(
            sweep_theta(&fx1, &[0.0]),
            Err(Error::BadFixtureShape { .. })
        ));
    }

    #[test]
    fn theta_sweep_matches_frozen_midpoint() {
        let fx = fixture_fig2::<f64>();
        let r = sweep_theta(&fx, &[std::f64::consts::FRAC_PI_2]).unwrap();
        let get = |name: &str| r.column(name).unwrap()[0];
        assert!((get("sov") - 2.1278718985851177).abs() < 1e-10);
        assert!((get("lb") - 2.089538842948828).abs() < 1e-10);
        assert!((get("ub") - 2.194345443906113).abs() < 1e-10);
        assert!((get("fb") - 1.3933513112777465).abs() < 1e-10);
        assert!((get("pb") - 1.0101554008072633).abs() < 1e-10);
        assert!((get("tb1") - 1.2848496492818278).abs() < 1e-10);
        assert!((get("tbm") - 1.4563039040953063).abs() < 1e-10);
        assert!((get("tb2") - 2.082997189414204).abs() < 1e-10);
    }

    #[test]
    fn theta_zero_is_pauli_z_eigenstate() {
        let fx = fixture_fig2::<f64>();
        let f = fx.as_four_observable().unwrap();
        let s = f.state_at(0.0);
        assert!(variance(&f.observables[2], &s).unwrap() < 1e-10);
    }

    #[test]
    fn sandwich_violation_detector() {
        let r = SweepResult {
            grid_name: "g",
            grid: vec![0.0f64, 1.0],
            columns: vec![
                ("lo", vec![0.0, 2.0]),
                ("mid", vec![1.0, 1.0]),
                ("hi", vec![2.0, 3.0]),
            ],
        };
        assert_eq!(r.sandwich_violation("lo", "mid", "hi", 1e-9), Some(1));
    }
}
