use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use qlr_core::locality::{
    classify, hjw_connect, connection_residual, unitary_diagonalize, ClassifyOptions, MeasurementSet, SearchOptions,
};
use qlr_core::matcore::format::{parse_matrix, parse_state, Entry, MatrixDocument, OperatorListDocument, StateInput, VectorListDocument};
use qlr_core::realism::{mixed_witness_with_tol, pure_witness, WitnessReport, MAXIMALLY_MIXED_TOL};
use qlr_core::sampler::{estimate_gap, measure_projective, sequential_expectation, GapEstimate};
use qlr_core::schemes::{
    run_single_qubit, run_two_qubit, sweep, sweep_csv, SchemeDocument, SchemeFamily, SingleQubitScheme,
    TwoQubitScheme, WITNESS_NOTE,
};
use qlr_core::{Error, HermitianObservable};
use serde::Serialize;

use crate::args::{Cli, Command, Family, Format, GlobalOpts, SchemeParams, SweepRange};

/// Exit code and text written to stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout }
    }
}

pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MAXIMALLY_MIXED: i32 = 2;
pub const EXIT_UNSUPPORTED_DIMENSION: i32 = 3;

/// Exit code for a failed command.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::UnsupportedDimension(_)) => EXIT_UNSUPPORTED_DIMENSION,
        _ => EXIT_INPUT,
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_state(g: &GlobalOpts) -> Result<StateInput> {
    let path = g.state.as_deref().ok_or_else(|| anyhow!("--state is required"))?;
    let input = parse_state(&read(path)?).with_context(|| format!("invalid state file {}", path.display()))?;
    match &g.dims {
        Some(d) => Ok(input.with_dims(d.0.clone())?),
        None => Ok(input),
    }
}

fn load_observable(path: &Path) -> Result<HermitianObservable> {
    let (_, m) = parse_matrix(&read(path)?).with_context(|| format!("invalid observable file {}", path.display()))?;
    HermitianObservable::new(m).with_context(|| format!("observable in {} is not Hermitian", path.display()))
}

fn validate(g: &GlobalOpts) -> Result<()> {
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            bail!("--tol must be positive, got {t}");
        }
    }
    if g.grid < 2 {
        bail!("--grid must be at least 2, got {}", g.grid);
    }
    if g.shots == 0 {
        bail!("--shots must be at least 1");
    }
    Ok(())
}

fn require_json(g: &GlobalOpts) -> Result<()> {
    if g.format == Some(Format::Csv) {
        bail!("csv output is only available for sweeps");
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    validate(g)?;
    match &cli.command {
        Command::Witness => {
            require_json(g)?;
            witness(g)
        }
        Command::Classify { measurement, no_weak } => {
            require_json(g)?;
            classify_cmd(g, measurement.as_deref(), !*no_weak)
        }
        Command::Scheme { family, params, sweep } => match sweep {
            Some(range) => sweep_cmd(g, *family, params.n.0, range),
            None => {
                require_json(g)?;
                scheme(*family, params)
            }
        },
        Command::Sweep { family, range, n } => sweep_cmd(g, *family, n.0, range),
        Command::Sample {
            scheme,
            params,
            observable,
            a,
            b,
            sequential,
        } => {
            require_json(g)?;
            match (scheme, observable, a, b) {
                (Some(f), None, None, None) => sample_scheme(g, *f, params),
                (None, Some(h), None, None) => {
                    let rho = load_state(g)?.to_density();
                    Ok(Output::ok(json(&measure_projective(&rho, &load_observable(h)?, g.shots, g.seed)?)?))
                }
                (None, None, Some(a), Some(b)) => {
                    let rho = load_state(g)?.to_density();
                    let (a, b) = (load_observable(a)?, load_observable(b)?);
                    if *sequential {
                        Ok(Output::ok(json(&sequential_expectation(&rho, &a, &b, g.shots, g.seed)?)?))
                    } else {
                        Ok(Output::ok(json(&GapReport::from(estimate_gap(&rho, &a, &b, g.shots, g.seed)?))?))
                    }
                }
                _ => bail!("sample needs --scheme, --observable, or both --a and --b"),
            }
        }
        Command::Hjw { dec1, dec2 } => {
            require_json(g)?;
            hjw(g, dec1, dec2)
        }
    }
}

#[derive(Serialize)]
struct WitnessOutput {
    verdict: &'static str,
    state: &'static str,
    #[serde(flatten)]
    witness: WitnessReport,
}

#[derive(Serialize)]
struct MaximallyMixedOutput {
    verdict: &'static str,
    max_deviation: f64,
    tolerance: f64,
}

fn witness(g: &GlobalOpts) -> Result<Output> {
    let input = load_state(g)?;
    let tol = g.tol.unwrap_or(MAXIMALLY_MIXED_TOL);
    let (kind, result) = match &input {
        StateInput::Pure { state, .. } => ("pure", pure_witness(state, None)),
        StateInput::Mixed(rho) => ("mixed", mixed_witness_with_tol(rho, tol)),
    };
    match result {
        Ok(w) => Ok(Output::ok(json(&WitnessOutput {
            verdict: "witness",
            state: kind,
            witness: WitnessReport::from(&w),
        })?)),
        Err(Error::MaximallyMixed { max_deviation }) => Ok(Output {
            code: EXIT_MAXIMALLY_MIXED,
            stdout: json(&MaximallyMixedOutput {
                verdict: "maximally-mixed",
                max_deviation,
                tolerance: tol,
            })?,
        }),
        Err(e) => Err(e.into()),
    }
}

fn classify_cmd(g: &GlobalOpts, measurement: Option<&Path>, weak: bool) -> Result<Output> {
    let input = load_state(g)?;
    let tol = g.tol.unwrap_or(SearchOptions::default().tol);
    let measurement = match measurement {
        Some(path) => {
            let doc: OperatorListDocument = serde_json::from_str(&read(path)?)
                .with_context(|| format!("invalid measurement file {}", path.display()))?;
            Some(MeasurementSet::new(doc.to_operators()?)?)
        }
        None => None,
    };
    let opts = ClassifyOptions {
        search: SearchOptions {
            tol,
            grid: g.grid,
            jobs: g.jobs,
        },
        weak,
        product_tol: tol,
        measurement,
    };
    Ok(Output::ok(json(&classify(&input, &opts)?)?))
}

fn single_qubit(params: &SchemeParams) -> Result<SingleQubitScheme> {
    let p = params.p.ok_or_else(|| anyhow!("the single-qubit scheme needs --p"))?;
    Ok(SingleQubitScheme::new(p)?)
}

fn two_qubit(params: &SchemeParams) -> Result<TwoQubitScheme> {
    let alpha = params.alpha.ok_or_else(|| anyhow!("the two-qubit scheme needs --alpha"))?;
    Ok(TwoQubitScheme::new(alpha, params.n.0)?)
}

fn scheme(family: Family, params: &SchemeParams) -> Result<Output> {
    let doc = match family {
        Family::SingleQubit => {
            let s = single_qubit(params)?;
            SchemeDocument::single_qubit(&s, &run_single_qubit(&s))
        }
        Family::TwoQubit => {
            let s = two_qubit(params)?;
            SchemeDocument::two_qubit(&s, &run_two_qubit(&s))
        }
    };
    Ok(Output::ok(json(&doc)?))
}

fn sweep_cmd(g: &GlobalOpts, family: Family, n: [f64; 3], range: &SweepRange) -> Result<Output> {
    let family = match family {
        Family::SingleQubit => SchemeFamily::SingleQubit,
        Family::TwoQubit => SchemeFamily::TwoQubit { n },
    };
    let rows = sweep(family, range.lo, range.hi, range.steps)?;
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(Output::ok(sweep_csv(&rows)?)),
        Format::Json => Ok(Output::ok(json(&rows)?)),
    }
}

#[derive(Serialize)]
struct GapReport {
    gap: Entry,
    measurement: &'static str,
    #[serde(flatten)]
    estimator: qlr_core::sampler::EstimatorReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_gap: Option<Entry>,
}

impl From<GapEstimate> for GapReport {
    fn from(g: GapEstimate) -> Self {
        let exact_gap = g.estimator.exact.map(|d| {
            let z = Complex64::new(0.0, d);
            [z.re, z.im]
        });
        Self {
            gap: g.gap,
            measurement: WITNESS_NOTE,
            estimator: g.estimator,
            exact_gap,
        }
    }
}

fn sample_scheme(g: &GlobalOpts, family: Family, params: &SchemeParams) -> Result<Output> {
    let report = match family {
        Family::SingleQubit => run_single_qubit(&single_qubit(params)?),
        Family::TwoQubit => run_two_qubit(&two_qubit(params)?),
    };
    let est = estimate_gap(&report.rho, &report.a, &report.b, g.shots, g.seed)?;
    Ok(Output::ok(json(&GapReport::from(est))?))
}

#[derive(Serialize)]
struct HjwOutput {
    u0: MatrixDocument,
    residual: f64,
    unitarity_error: f64,
    u: MatrixDocument,
    eigenvalues: Vec<Entry>,
}

fn hjw(g: &GlobalOpts, dec1: &Path, dec2: &Path) -> Result<Output> {
    let load = |p: &Path| -> Result<_> {
        let doc: VectorListDocument =
            serde_json::from_str(&read(p)?).with_context(|| format!("invalid decomposition file {}", p.display()))?;
        Ok(doc.to_vectors()?)
    };
    let (d1, d2) = (load(dec1)?, load(dec2)?);
    let u0 = hjw_connect(&d1, &d2, g.tol.unwrap_or(1e-9))?;
    let (u, lambda) = unitary_diagonalize(&u0)?;
    Ok(Output::ok(json(&HjwOutput {
        residual: connection_residual(&u0, &d1, &d2)?,
        unitarity_error: u0.unitarity_error(),
        u0: MatrixDocument::from_matrix(None, &u0),
        u: MatrixDocument::from_matrix(None, &u),
        eigenvalues: (0..lambda.rows()).map(|k| [lambda[(k, k)].re, lambda[(k, k)].im]).collect(),
    })?))
}
