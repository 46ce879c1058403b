//! Implementations of the five subcommands.

use serde::Serialize;

use varbound_core::io::{fixture_doc, report_doc, FixtureDoc, ReportDoc};
use varbound_core::{
    compare_bounds, fixture_fig1, fixture_fig2, io, multi_bounds, multi_identity_residual,
    pair_bounds, random_instance, random_pair_case, random_pair_case_tilde, sum_identity_residual,
    sweep_abs_a, sweep_theta, uniform_grid, variance, Cx, MultiDecomposition, PairDecomposition,
    PairSpecs, SweepResult, WeightPair,
};

use crate::output::{fmt_g12, sig12, Tolerances};

/// A finished command: the document to emit plus an optional invariant
/// violation (which turns into exit code 2 after the document is written).
pub struct Outcome {
    pub document: String,
    pub violation: Option<String>,
}

pub enum RunError {
    /// Bad configuration or input: exit code 1.
    Input(String),
}

impl From<varbound_core::Error> for RunError {
    fn from(e: varbound_core::Error) -> Self {
        RunError::Input(e.to_string())
    }
}

pub type RunResult = Result<Outcome, RunError>;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

// ---------------------------------------------------------------------------
// sweep commands
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SweepDoc {
    command: &'static str,
    grid_points: usize,
    fixture: FixtureDoc,
    grid_name: &'static str,
    grid: Vec<f64>,
    columns: Vec<SweepColumnDoc>,
}

#[derive(Serialize)]
struct SweepColumnDoc {
    name: &'static str,
    values: Vec<f64>,
}

fn sweep_csv(result: &SweepResult<f64>) -> String {
    let mut header = vec![result.grid_name];
    header.extend(result.columns.iter().map(|(n, _)| *n));
    let mut out = header.join(",");
    out.push('\n');
    for idx in 0..result.grid.len() {
        let mut row = vec![fmt_g12(result.grid[idx])];
        for (_, values) in &result.columns {
            row.push(fmt_g12(values[idx]));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn sweep_json(
    command: &'static str,
    fixture: FixtureDoc,
    result: &SweepResult<f64>,
) -> Result<String, RunError> {
    let doc = SweepDoc {
        command,
        grid_points: result.grid.len(),
        fixture,
        grid_name: result.grid_name,
        grid: result.grid.iter().map(|&v| sig12(v)).collect(),
        columns: result
            .columns
            .iter()
            .map(|(name, values)| SweepColumnDoc {
                name,
                values: values.iter().map(|&v| sig12(v)).collect(),
            })
            .collect(),
    };
    to_json(&doc)
}

fn to_json<T: Serialize>(doc: &T) -> Result<String, RunError> {
    let mut s = serde_json::to_string_pretty(doc)
        .map_err(|e| RunError::Input(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn sandwich_violation_message(
    result: &SweepResult<f64>,
    lower: &str,
    mid: &str,
    upper: &str,
    rel: f64,
) -> Option<String> {
    result
        .sandwich_violation(lower, mid, upper, rel)
        .map(|row| {
            format!(
                "sandwich check failed at row {row} ({} = {}): {} = {}, {} = {}, {} = {}",
                result.grid_name,
                fmt_g12(result.grid[row]),
                lower,
                fmt_g12(result.column(lower).unwrap()[row]),
                mid,
                fmt_g12(result.column(mid).unwrap()[row]),
                upper,
                fmt_g12(result.column(upper).unwrap()[row]),
            )
        })
}

pub fn run_fig1(grid_points: usize, format: Format, tols: &Tolerances) -> RunResult {
    let fx = fixture_fig1::<f64>();
    let grid = uniform_grid(0.0, 1.0, grid_points)?;
    let result = sweep_abs_a(&fx, &grid)?;
    let violation = sandwich_violation_message(&result, "lower", "sov", "upper", tols.sandwich_rel);
    let document = match format {
        Format::Csv => sweep_csv(&result),
        Format::Json => sweep_json("fig1", fixture_doc(&fx), &result)?,
    };
    Ok(Outcome {
        document,
        violation,
    })
}

pub fn run_fig2(
    grid_points: usize,
    theta_range: (f64, f64),
    format: Format,
    tols: &Tolerances,
) -> RunResult {
    let fx = fixture_fig2::<f64>();
    let grid = uniform_grid(theta_range.0, theta_range.1, grid_points)?;
    let result = sweep_theta(&fx, &grid)?;
    let violation = sandwich_violation_message(&result, "lb", "sov", "ub", tols.sandwich_rel);
    let document = match format {
        Format::Csv => sweep_csv(&result),
        Format::Json => sweep_json("fig2", fixture_doc(&fx), &result)?,
    };
    Ok(Outcome {
        document,
        violation,
    })
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

fn round_report(mut doc: ReportDoc) -> ReportDoc {
    doc.weighted_sov = sig12(doc.weighted_sov);
    doc.sov = sig12(doc.sov);
    doc.variances = doc.variances.iter().map(|&v| sig12(v)).collect();
    doc.variance_product = doc.variance_product.map(sig12);
    doc.max_residue = sig12(doc.max_residue);
    for b in &mut doc.bounds {
        b.value = sig12(b.value);
        b.target = sig12(b.target);
    }
    doc
}

pub fn run_compare(input: &str) -> RunResult {
    let parsed = io::parse_instance(input)?;
    let report = compare_bounds(
        &parsed.state,
        &parsed.observables,
        &parsed.weights,
        &parsed.specs,
    )?;
    let violation = if report.all_ok {
        None
    } else {
        let failing: Vec<&str> = report
            .entries
            .iter()
            .filter(|e| !e.ok)
            .map(|e| e.name)
            .collect();
        Some(format!("bound check failed for: {}", failing.join(", ")))
    };
    let document = to_json(&round_report(report_doc(&report)))?;
    Ok(Outcome {
        document,
        violation,
    })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyDoc {
    command: &'static str,
    seed: u64,
    instances: usize,
    failures: usize,
    max_residual: f64,
    checks: Vec<CheckDoc>,
}

#[derive(Serialize)]
struct CheckDoc {
    name: &'static str,
    instances: usize,
    failures: usize,
    max_residual: f64,
    tolerance: f64,
}

struct CheckAcc {
    name: &'static str,
    instances: usize,
    failures: usize,
    max_residual: f64,
    tolerance: f64,
    first_failure: Option<String>,
}

impl CheckAcc {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            instances: 0,
            failures: 0,
            max_residual: 0.0,
            tolerance,
            first_failure: None,
        }
    }

    fn record(&mut self, residual: f64, context: impl Fn() -> String) {
        self.instances += 1;
        self.max_residual = self.max_residual.max(residual);
        if residual > self.tolerance {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(context());
            }
        }
    }

    fn doc(&self) -> CheckDoc {
        CheckDoc {
            name: self.name,
            instances: self.instances,
            failures: self.failures,
            max_residual: sig12(self.max_residual),
            tolerance: self.tolerance,
        }
    }
}

fn rel_excess(value: f64, limit: f64, scale: f64) -> f64 {
    ((value - limit) / scale).max(0.0)
}

/// Identity, sandwich, and saturation checks over seeded instances.
pub fn run_verify(seed: u64, instances: usize, tols: &Tolerances) -> RunResult {
    let mut pair_identity = CheckAcc::new("pair_identity", tols.identity_rel);
    let mut multi_identity = CheckAcc::new("multi_identity", tols.identity_rel);
    let mut pair_sandwich = CheckAcc::new("pair_sandwich", tols.sandwich_rel);
    let mut multi_sandwich = CheckAcc::new("multi_sandwich", tols.sandwich_rel);
    let mut saturation = CheckAcc::new("saturation", tols.saturation_rel);

    for i in 0..instances {
        let dim = 2 + i % 7;
        let n_obs = 2 + i % 5;
        let inst_seed = seed.wrapping_add(i as u64);
        let ctx = || format!("instance {i} (dim {dim}, seed {inst_seed})");

        // pair checks on the first two observables
        let (s, obs, w) = random_instance::<f64>(dim, 2, inst_seed)?;
        let wp = WeightPair::new(w.as_slice()[0], w.as_slice()[1])?;
        let wsov =
            wp.x.norm_sqr() * variance(&obs[0], &s)? + wp.y.norm_sqr() * variance(&obs[1], &s)?;

        let r = sum_identity_residual(&obs[0], &obs[1], &s, &wp)?;
        pair_identity.record(r / (1.0 + 2.0 * wsov), ctx);

        let case = random_pair_case::<f64>(inst_seed ^ 0x9e37_79b9);
        let d = PairDecomposition::resolve(&wp, case.a, case.b, case.free)?;
        let b = pair_bounds(&obs[0], &obs[1], &s, &wp, &d)?;
        let scale = 1.0 + wsov;
        pair_sandwich.record(
            rel_excess(b.lower, wsov, scale).max(rel_excess(wsov, b.upper, scale)),
            ctx,
        );

        let zero = Cx::new(0.0, 0.0);
        let one = Cx::new(1.0, 0.0);
        let at_a0 = PairDecomposition::resolve(&wp, zero, one, case.free)?;
        let b0 = pair_bounds(&obs[0], &obs[1], &s, &wp, &at_a0)?;
        let tilde = random_pair_case_tilde::<f64>(inst_seed ^ 0x51f1_5eed);
        let at_b0 = PairDecomposition::resolve(&wp, one, zero, tilde.free)?;
        let b1 = pair_bounds(&obs[0], &obs[1], &s, &wp, &at_b0)?;
        let sat = ((b0.lower - wsov).abs() / scale)
            .max((b0.upper - wsov).abs() / scale)
            .max((b1.lower - wsov).abs() / scale)
            .max((b1.upper - wsov).abs() / scale);
        saturation.record(sat, ctx);

        // multi checks on a fresh instance with 2..=6 observables
        let (s, obs, w) = random_instance::<f64>(dim, n_obs, inst_seed ^ 0xabcd_ef12)?;
        let mut wsov = 0.0;
        for (x, o) in w.as_slice().iter().zip(&obs) {
            wsov += x.norm_sqr() * variance(o, &s)?;
        }
        let r = multi_identity_residual(&obs, &s, &w)?;
        multi_identity.record(r / (1.0 + n_obs as f64 * wsov), ctx);

        let case = random_pair_case::<f64>(inst_seed ^ 0x0bad_f00d);
        let dm = MultiDecomposition::resolve(&w, &PairSpecs::Broadcast(case))?;
        let bm = multi_bounds(&obs, &s, &w, &dm)?;
        let scale = 1.0 + wsov;
        multi_sandwich.record(
            rel_excess(bm.lower, wsov, scale).max(rel_excess(wsov, bm.upper, scale)),
            ctx,
        );
    }

    let checks = [
        pair_identity,
        multi_identity,
        pair_sandwich,
        multi_sandwich,
        saturation,
    ];
    let failures: usize = checks.iter().map(|c| c.failures).sum();
    let max_residual = checks.iter().map(|c| c.max_residual).fold(0.0f64, f64::max);
    let violation = checks.iter().find_map(|c| {
        c.first_failure
            .as_ref()
            .map(|ctx| format!("check {} failed at {ctx}", c.name))
    });

    let doc = VerifyDoc {
        command: "verify",
        seed,
        instances,
        failures,
        max_residual: sig12(max_residual),
        checks: checks.iter().map(CheckAcc::doc).collect(),
    };
    Ok(Outcome {
        document: to_json(&doc)?,
        violation,
    })
}

// ---------------------------------------------------------------------------
// random-suite
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SuiteDoc {
    command: &'static str,
    seed: u64,
    instances: usize,
    failures: usize,
    checks: Vec<CheckDoc>,
}

/// Full bound-comparison reports over seeded pure instances, plus agreement
/// between each pure state and its projector lift.
pub fn run_random_suite(seed: u64, instances: usize, tols: &Tolerances) -> RunResult {
    let mut report_flags = CheckAcc::new("report_flags", tols.sandwich_rel);
    let mut lift_agreement = CheckAcc::new("projector_lift_agreement", tols.agreement_rel);

    for i in 0..instances {
        let dim = 2 + i % 7;
        let n_obs = 2 + i % 5;
        let inst_seed = seed.wrapping_add(i as u64);
        let ctx = || format!("instance {i} (dim {dim}, n_obs {n_obs}, seed {inst_seed})");

        let (s, obs, w) = random_instance::<f64>(dim, n_obs, inst_seed)?;
        let specs = PairSpecs::Broadcast(random_pair_case::<f64>(inst_seed ^ 0x7777_aaaa));
        let report = compare_bounds(&s, &obs, &w, &specs)?;
        // worst relative excess across the report's sandwich flags
        let mut excess = 0.0f64;
        for e in &report.entries {
            let scale = 1.0 + e.target.abs();
            let v = match e.kind {
                varbound_core::BoundKind::UpperOnWeightedSov => (e.target - e.value) / scale,
                _ => (e.value - e.target) / scale,
            };
            excess = excess.max(v);
        }
        report_flags.record(excess.max(0.0), ctx);

        let lifted = s.to_projector()?;
        let lifted_report = compare_bounds(&lifted, &obs, &w, &specs)?;
        let mut worst = 0.0f64;
        for e in &report.entries {
            // the sum-form pair bounds exist only on the pure path
            if let Some(le) = lifted_report.entries.iter().find(|l| l.name == e.name) {
                worst = worst.max((e.value - le.value).abs() / (1.0 + e.value.abs()));
            }
        }
        lift_agreement.record(worst, ctx);
    }

    let checks = [report_flags, lift_agreement];
    let failures: usize = checks.iter().map(|c| c.failures).sum();
    let violation = checks.iter().find_map(|c| {
        c.first_failure
            .as_ref()
            .map(|ctx| format!("check {} failed at {ctx}", c.name))
    });
    let doc = SuiteDoc {
        command: "random-suite",
        seed,
        instances,
        failures,
        checks: checks.iter().map(CheckAcc::doc).collect(),
    };
    Ok(Outcome {
        document: to_json(&doc)?,
        violation,
    })
}
