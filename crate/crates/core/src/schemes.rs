//! The two experimental proposals for measuring the commutator gap.
//!
//! Single qubit: `rho = p|0><0| + (1-p)|1><1|` with `A = σx`, `B = σy`.
//! Two qubits: `|ψ> = cos α|00> + sin α|11>` with `A = σx⊗σx` and
//! `B = (n·σ)⊗(n·σ)`.
//!
//! The gap `Tr(rho C)` with `C = [A, B]` is purely imaginary. Every report also
//! carries the Hermitian witness `D = -iC`, whose ordinary expectation gives
//! the gap as `i<D>`; this is the quantity a sampler measures.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::format::{Entry, MatrixDocument};
use crate::matcore::matrix::I;
use crate::matcore::{
    commutator, expectation, pauli, tensor, ComplexMatrix, DensityMatrix, HermitianObservable, PureState,
};

/// Allowed deviation of `||n||` from 1.
pub const UNIT_TOL: f64 = 1e-10;

/// `n = (1/√2, 1/√2, 0)`, the direction with a closed-form gap `2i cos 2α`.
pub const DIAGONAL_N: [f64; 3] = [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2, 0.0];

/// Label stored in reports to say how the gap is meant to be measured.
pub const WITNESS_NOTE: &str = "gap = i<D> with Hermitian D = -i[A,B]";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitScheme {
    p: f64,
}

impl SingleQubitScheme {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("p must lie in [0, 1], got {p}")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn state(&self) -> DensityMatrix {
        DensityMatrix::from_diagonal(&[self.p, 1.0 - self.p]).expect("valid by construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitScheme {
    alpha: f64,
    n: [f64; 3],
}

impl TwoQubitScheme {
    pub fn new(alpha: f64, n: [f64; 3]) -> Result<Self> {
        if !alpha.is_finite() || n.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite scheme parameter".into()));
        }
        let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidParameter(format!("n must be a unit vector, has norm {norm}")));
        }
        Ok(Self { alpha, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> [f64; 3] {
        self.n
    }

    /// `cos α|00> + sin α|11>`
    pub fn pure_state(&self) -> PureState {
        let (s, c) = self.alpha.sin_cos();
        PureState::from_real(&[c, 0.0, 0.0, s]).expect("unit by construction")
    }

    pub fn state(&self) -> DensityMatrix {
        DensityMatrix::from_pure(&self.pure_state(), vec![2, 2]).expect("valid by construction")
    }
}

#[derive(Debug, Clone)]
pub struct SchemeReport {
    pub rho: DensityMatrix,
    pub a: HermitianObservable,
    pub b: HermitianObservable,
    pub c: ComplexMatrix,
    pub gap: Complex64,
    pub hermitian_witness_d: HermitianObservable,
    pub d_expectation: f64,
}

fn report(rho: DensityMatrix, a: ComplexMatrix, b: ComplexMatrix) -> Result<SchemeReport> {
    let a = HermitianObservable::new(a)?;
    let b = HermitianObservable::new(b)?;
    let c = commutator(&a, &b)?;
    let gap = expectation(&rho, &c)?;
    let d = HermitianObservable::new(c.scale(-I).hermitian_part())?;
    let d_expectation = expectation(&rho, d.matrix())?.re;
    Ok(SchemeReport {
        rho,
        a,
        b,
        c,
        gap,
        hermitian_witness_d: d,
        d_expectation,
    })
}

/// `A = σx`, `B = σy`; the gap is `2i(2p - 1)` and `D = 2σz`.
pub fn run_single_qubit(s: &SingleQubitScheme) -> SchemeReport {
    report(s.state(), pauli::x(), pauli::y()).expect("Pauli operators are Hermitian")
}

/// `A = σx⊗σx`, `B = (n·σ)⊗(n·σ)`, gap from `Tr(rho [A, B])`.
pub fn run_two_qubit(s: &TwoQubitScheme) -> SchemeReport {
    let x = pauli::x();
    let ns = pauli::along(s.n);
    report(s.state(), tensor(&x, &x), tensor(&ns, &ns)).expect("Pauli products are Hermitian")
}

/// Serializable form of a [`SchemeReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeDocument {
    pub scheme: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<[f64; 3]>,
    pub rho: MatrixDocument,
    pub a: MatrixDocument,
    pub b: MatrixDocument,
    pub c: MatrixDocument,
    pub gap: Entry,
    pub hermitian_witness_d: MatrixDocument,
    pub d_expectation: f64,
    pub measurement: String,
}

impl SchemeDocument {
    fn from_report(scheme: &str, r: &SchemeReport) -> Self {
        Self {
            scheme: scheme.to_string(),
            p: None,
            alpha: None,
            n: None,
            rho: MatrixDocument::from_density(&r.rho),
            a: MatrixDocument::from_matrix(None, r.a.matrix()),
            b: MatrixDocument::from_matrix(None, r.b.matrix()),
            c: MatrixDocument::from_matrix(None, &r.c),
            gap: [r.gap.re, r.gap.im],
            hermitian_witness_d: MatrixDocument::from_matrix(None, r.hermitian_witness_d.matrix()),
            d_expectation: r.d_expectation,
            measurement: WITNESS_NOTE.to_string(),
        }
    }

    pub fn single_qubit(s: &SingleQubitScheme, r: &SchemeReport) -> Self {
        Self {
            p: Some(s.p),
            ..Self::from_report("single-qubit", r)
        }
    }

    pub fn two_qubit(s: &TwoQubitScheme, r: &SchemeReport) -> Self {
        Self {
            alpha: Some(s.alpha),
            n: Some(s.n),
            ..Self::from_report("two-qubit", r)
        }
    }
}

/// Parameterized family swept by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeFamily {
    /// Sweeps `p`.
    SingleQubit,
    /// Sweeps `α` at a fixed direction `n`.
    TwoQubit { n: [f64; 3] },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub gap_imag: f64,
    pub d_expectation: f64,
}

pub const SWEEP_CSV_HEADER: &str = "param,gap_imag,d_expectation";

/// Evaluates the family on `steps` uniformly spaced parameters from `lo` to `hi` inclusive.
pub fn sweep(family: SchemeFamily, lo: f64, hi: f64, steps: usize) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("a sweep needs at least 2 steps, got {steps}")));
    }
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::InvalidParameter(format!("empty parameter range {lo}:{hi}")));
    }
    if let SchemeFamily::TwoQubit { n } = family {
        TwoQubitScheme::new(lo, n)?;
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|k| {
            let param = if k == steps - 1 {
                hi
            } else {
                lo + (hi - lo) * (k as f64 / last)
            };
            let r = match family {
                SchemeFamily::SingleQubit => run_single_qubit(&SingleQubitScheme::new(param)?),
                SchemeFamily::TwoQubit { n } => run_two_qubit(&TwoQubitScheme::new(param, n)?),
            };
            Ok(SweepRow {
                param,
                gap_imag: r.gap.im,
                d_expectation: r.d_expectation,
            })
        })
        .collect()
}

/// CSV with header `param,gap_imag,d_expectation`.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Numerical(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Numerical(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Numerical(format!("csv: {e}")))
}
