//! JSON interchange for the `f64` instantiation.
//!
//! Complex numbers are two-element `[re, im]` arrays and matrices are
//! row-major nested arrays of those pairs. Fixture exports carry the raw
//! printed values (pre-normalization) so that serializing an embedded
//! fixture reproduces its printed decimals exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::{Fixture, FourObservableFixture, TwoObservableFixture};
use crate::linalg::CMat;
use crate::multi_bounds::{PairCase, PairSpecs, WeightVector};
use crate::pair_bounds::FreePair;
use crate::quantum::{Observable, State};
use crate::report::{BoundEntry, BoundKind, BoundsReport};

pub type CxPair = [f64; 2];
pub type MatrixDoc = Vec<Vec<CxPair>>;

fn cx_to_pair(z: Complex64) -> CxPair {
    [z.re, z.im]
}

fn pair_to_cx(p: CxPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn mat_to_doc(m: &CMat<f64>) -> MatrixDoc {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| cx_to_pair(m.get(i, j))).collect())
        .collect()
}

fn doc_to_mat(doc: &MatrixDoc) -> Result<CMat<f64>> {
    let rows: Vec<Vec<Complex64>> = doc
        .iter()
        .map(|row| row.iter().map(|&p| pair_to_cx(p)).collect())
        .collect();
    CMat::from_rows(&rows)
}

// ---------------------------------------------------------------------------
// instance documents (input to `compare`)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ket: Option<Vec<CxPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<MatrixDoc>,
}

/// One pair's free parameters: `a`, `b`, and either `(m, n)` or
/// `(m_tilde, n_tilde)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairCaseDoc {
    pub a: CxPair,
    pub b: CxPair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<CxPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<CxPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_tilde: Option<CxPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_tilde: Option<CxPair>,
}

/// Parameters for all observable pairs: one broadcast case or a per-pair
/// list in lexicographic pair order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub broadcast: Option<PairCaseDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairCaseDoc>>,
}

/// A full instance: state, observables, weights, and free parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub state: StateDoc,
    pub observables: Vec<MatrixDoc>,
    pub weights: Vec<CxPair>,
    pub params: ParamsDoc,
}

fn schema_err(detail: impl Into<String>) -> Error {
    Error::InputSchema {
        detail: detail.into(),
    }
}

impl PairCaseDoc {
    pub fn to_case(&self) -> Result<PairCase<f64>> {
        let free = match (self.m, self.n, self.m_tilde, self.n_tilde) {
            (Some(m), Some(n), None, None) => FreePair::Mn {
                m: pair_to_cx(m),
                n: pair_to_cx(n),
            },
            (None, None, Some(mt), Some(nt)) => FreePair::Tilde {
                m_tilde: pair_to_cx(mt),
                n_tilde: pair_to_cx(nt),
            },
            _ => {
                return Err(schema_err(
                    "a pair case needs exactly (m, n) or (m_tilde, n_tilde)",
                ))
            }
        };
        Ok(PairCase {
            a: pair_to_cx(self.a),
            b: pair_to_cx(self.b),
            free,
        })
    }

    pub fn from_case(case: &PairCase<f64>) -> Self {
        let (m, n, mt, nt) = match case.free {
            FreePair::Mn { m, n } => (Some(cx_to_pair(m)), Some(cx_to_pair(n)), None, None),
            FreePair::Tilde { m_tilde, n_tilde } => (
                None,
                None,
                Some(cx_to_pair(m_tilde)),
                Some(cx_to_pair(n_tilde)),
            ),
        };
        Self {
            a: cx_to_pair(case.a),
            b: cx_to_pair(case.b),
            m,
            n,
            m_tilde: mt,
            n_tilde: nt,
        }
    }
}

/// Parsed instance ready for `compare_bounds`.
pub struct ParsedInstance {
    pub state: State<f64>,
    pub observables: Vec<Observable<f64>>,
    pub weights: WeightVector<f64>,
    pub specs: PairSpecs<f64>,
}

/// Validates an instance document and converts it into domain values.
pub fn parse_instance(json: &str) -> Result<ParsedInstance> {
    let doc: InstanceDoc =
        serde_json::from_str(json).map_err(|e| schema_err(format!("invalid JSON: {e}")))?;
    instance_from_doc(&doc)
}

pub fn instance_from_doc(doc: &InstanceDoc) -> Result<ParsedInstance> {
    let state = match doc.state.kind.as_str() {
        "pure" => {
            let ket = doc
                .state
                .ket
                .as_ref()
                .ok_or_else(|| schema_err("pure state needs a `ket`"))?;
            State::pure(ket.iter().map(|&p| pair_to_cx(p)).collect())?
        }
        "mixed" => {
            let rho = doc
                .state
                .rho
                .as_ref()
                .ok_or_else(|| schema_err("mixed state needs a `rho`"))?;
            State::mixed(doc_to_mat(rho)?)?
        }
        other => return Err(schema_err(format!("unknown state kind `{other}`"))),
    };

    if doc.observables.is_empty() {
        return Err(schema_err("at least one observable is required"));
    }
    let observables: Vec<Observable<f64>> = doc
        .observables
        .iter()
        .map(|m| Observable::new(doc_to_mat(m)?))
        .collect::<Result<_>>()?;

    let weights = WeightVector::new(doc.weights.iter().map(|&p| pair_to_cx(p)).collect())?;

    let specs = match (&doc.params.broadcast, &doc.params.pairs) {
        (Some(case), None) => PairSpecs::Broadcast(case.to_case()?),
        (None, Some(cases)) => PairSpecs::PerPair(
            cases
                .iter()
                .map(|c| c.to_case())
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => {
            return Err(schema_err(
                "params needs exactly one of `broadcast` or `pairs`",
            ))
        }
    };

    Ok(ParsedInstance {
        state,
        observables,
        weights,
        specs,
    })
}

// ---------------------------------------------------------------------------
// fixture export
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureDoc {
    pub name: String,
    pub kind: String,
    pub observables: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ket_raw: Option<Vec<CxPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_raw: Option<CxPair>,
    pub weights: Vec<CxPair>,
    pub param_cases: Vec<ParamCaseDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamCaseDoc {
    pub name: String,
    pub cases: Vec<PairCaseDoc>,
}

fn free_pair_doc(name: &str, free: &FreePair<f64>) -> ParamCaseDoc {
    // The split (a, b) is the swept quantity, so export it as zero/one
    // placeholders alongside the fixed free half.
    let case = PairCase {
        a: Complex64::new(0.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        free: *free,
    };
    ParamCaseDoc {
        name: name.to_string(),
        cases: vec![PairCaseDoc::from_case(&case)],
    }
}

fn two_observable_doc(f: &TwoObservableFixture<f64>) -> FixtureDoc {
    FixtureDoc {
        name: f.name.to_string(),
        kind: "two_observable".to_string(),
        observables: f
            .observables
            .iter()
            .map(|o| mat_to_doc(o.matrix()))
            .collect(),
        ket_raw: Some(f.raw_ket.to_vec()),
        phase_raw: None,
        weights: vec![cx_to_pair(f.weights.x), cx_to_pair(f.weights.y)],
        param_cases: f
            .case_names
            .iter()
            .zip(&f.cases)
            .map(|(name, free)| free_pair_doc(name, free))
            .collect(),
    }
}

fn four_observable_doc(f: &FourObservableFixture<f64>) -> FixtureDoc {
    let band_cases = match &f.band_params {
        PairSpecs::Broadcast(c) => vec![PairCaseDoc::from_case(c)],
        PairSpecs::PerPair(cs) => cs.iter().map(PairCaseDoc::from_case).collect(),
    };
    let mut param_cases = vec![ParamCaseDoc {
        name: "band".to_string(),
        cases: band_cases,
    }];
    for (name, params) in [("tb", &f.tb_params), ("tb2", &f.tb2_params)] {
        param_cases.push(ParamCaseDoc {
            name: name.to_string(),
            cases: params.cases.iter().map(PairCaseDoc::from_case).collect(),
        });
    }
    FixtureDoc {
        name: f.name.to_string(),
        kind: "four_observable".to_string(),
        observables: f
            .observables
            .iter()
            .map(|o| mat_to_doc(o.matrix()))
            .collect(),
        ket_raw: None,
        phase_raw: Some(f.raw_phase),
        weights: f
            .weights
            .as_slice()
            .iter()
            .map(|&z| cx_to_pair(z))
            .collect(),
        param_cases,
    }
}

/// JSON document for a fixture, carrying raw printed values.
pub fn fixture_doc(fx: &Fixture<f64>) -> FixtureDoc {
    match fx {
        Fixture::TwoObservable(f) => two_observable_doc(f),
        Fixture::FourObservable(f) => four_observable_doc(f),
    }
}

// ---------------------------------------------------------------------------
// report export
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundEntryDoc {
    pub name: String,
    pub value: f64,
    pub kind: String,
    pub target: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    pub dim: usize,
    pub n_obs: usize,
    pub weighted_sov: f64,
    pub sov: f64,
    pub variances: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variance_product: Option<f64>,
    pub max_residue: f64,
    pub saturating: bool,
    pub all_ok: bool,
    pub bounds: Vec<BoundEntryDoc>,
}

fn kind_name(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::LowerOnWeightedSov => "lower_on_weighted_sov",
        BoundKind::UpperOnWeightedSov => "upper_on_weighted_sov",
        BoundKind::LowerOnSov => "lower_on_sov",
        BoundKind::LowerOnProduct => "lower_on_product",
    }
}

fn entry_doc(e: &BoundEntry<f64>) -> BoundEntryDoc {
    BoundEntryDoc {
        name: e.name.to_string(),
        value: e.value,
        kind: kind_name(e.kind).to_string(),
        target: e.target,
        ok: e.ok,
    }
}

pub fn report_doc(r: &BoundsReport<f64>) -> ReportDoc {
    ReportDoc {
        dim: r.dim,
        n_obs: r.n_obs,
        weighted_sov: r.weighted_sov,
        sov: r.sov,
        variances: r.variances.clone(),
        variance_product: r.variance_product,
        max_residue: r.max_residue,
        saturating: r.saturating,
        all_ok: r.all_ok,
        bounds: r.entries.iter().map(entry_doc).collect(),
    }
}
