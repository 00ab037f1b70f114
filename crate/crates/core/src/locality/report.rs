use serde::{Deserialize, Serialize};

use super::search::{weak_locality_search_with, SearchOptions, WeakLocalityVerdict};
use super::separable::{build_separable_decomposition, SeparableDecomposition};
use super::{conditional_states, info_gain, partial_trace, product_distance, pure_is_entangled, MeasurementSet, SCHMIDT_TOL};
use crate::error::Result;
use crate::matcore::format::{Entry, StateInput};

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub search: SearchOptions,
    /// Run the weak-locality search (requires a two-dimensional A).
    pub weak: bool,
    /// Threshold on `||rho - rho_A ⊗ rho_B||_F` for the strong-locality decision.
    pub product_tol: f64,
    pub measurement: Option<MeasurementSet>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        let search = SearchOptions::default();
        Self {
            product_tol: search.tol,
            search,
            weak: true,
            measurement: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakVerdictReport {
    pub found: bool,
    pub theta: f64,
    pub phi: f64,
    pub residual: f64,
    pub grid: usize,
}

impl From<&WeakLocalityVerdict> for WeakVerdictReport {
    fn from(v: &WeakLocalityVerdict) -> Self {
        Self {
            found: v.found,
            theta: v.theta,
            phi: v.phi,
            residual: v.residual,
            grid: v.grid_resolution,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTermReport {
    pub weight: f64,
    pub state_a: Vec<Entry>,
    pub state_b: Vec<Entry>,
}

fn entries(v: &[num_complex::Complex64]) -> Vec<Entry> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn term_reports(dec: &SeparableDecomposition) -> Vec<DecompositionTermReport> {
    dec.terms
        .iter()
        .map(|t| DecompositionTermReport {
            weight: t.weight,
            state_a: entries(t.state_a.amplitudes()),
            state_b: entries(t.state_b.amplitudes()),
        })
        .collect()
}

/// Locality classification of a bipartite state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub dims: Vec<usize>,
    pub strong_local: bool,
    pub product_distance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure_entangled: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak_verdict: Option<WeakVerdictReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separable_decomposition: Option<Vec<DecompositionTermReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub info_gain_bits: Option<Vec<f64>>,
}

/// Runs the strong-locality test, the Schmidt-rank test for pure input, the
/// weak-locality search and, when a basis is found, the separable decomposition.
pub fn classify(input: &StateInput, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let rho = input.to_density();
    let (da, db) = rho.bipartite_dims()?;
    let distance = product_distance(&rho)?;

    let pure_entangled = match input {
        StateInput::Pure { state, .. } => Some(pure_is_entangled(state, (da, db), SCHMIDT_TOL)?),
        StateInput::Mixed(_) => None,
    };

    let (weak_verdict, separable_decomposition) = if opts.weak {
        let verdict = weak_locality_search_with(&rho, &opts.search)?;
        let dec = if verdict.found {
            Some(term_reports(&build_separable_decomposition(&rho, &verdict)?))
        } else {
            None
        };
        (Some(WeakVerdictReport::from(&verdict)), dec)
    } else {
        (None, None)
    };

    let info_gain_bits = match &opts.measurement {
        Some(m) => {
            let rho_b = partial_trace(&rho, 1)?;
            let gains = conditional_states(&rho, m)?
                .iter()
                .map(|o| info_gain(&rho_b, &o.post_state_b))
                .collect::<Result<Vec<_>>>()?;
            Some(gains)
        }
        None => None,
    };

    Ok(ClassificationReport {
        dims: vec![da, db],
        strong_local: distance < opts.product_tol,
        product_distance: distance,
        pure_entangled,
        weak_verdict,
        separable_decomposition,
        info_gain_bits,
    })
}
