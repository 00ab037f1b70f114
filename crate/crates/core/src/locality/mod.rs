//! Strong and weak locality of bipartite states.
//!
//! A state is *strongly local* when every measurement on A leaves every
//! conditional state of B equal to `rho_B`; this holds exactly for product states.
//! It is *weakly local* when some measurement on A does so. For a qubit A and a
//! rank-1 projective measurement, weak locality implies separability, and
//! [`build_separable_decomposition`] constructs the separable form explicitly.

mod hjw;
mod report;
mod search;
mod separable;

pub use hjw::{connection_residual, hjw_connect, stack, unitary_diagonalize};
pub use report::{classify, ClassificationReport, ClassifyOptions, DecompositionTermReport, WeakVerdictReport};
pub use search::{bloch_basis, weak_locality_search, weak_locality_search_with, SearchOptions, WeakLocalityVerdict};
pub use separable::{build_separable_decomposition, ProductTerm, SeparableDecomposition};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::matrix::ZERO;
use crate::matcore::{
    partial_trace, partial_trace_matrix, singular_values, tensor, von_neumann_entropy, ComplexMatrix,
    DensityMatrix, PureState,
};

/// Completeness tolerance `||sum M^dag M - I||_F`.
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// Outcomes with probability below this carry `rho_B` as their conditional state.
pub const ZERO_PROB: f64 = 1e-12;

/// Default Schmidt-rank cutoff.
pub const SCHMIDT_TOL: f64 = 1e-8;

/// Measurement operators on subsystem A satisfying `sum M_i^dag M_i = I`.
#[derive(Debug, Clone)]
pub struct MeasurementSet {
    operators: Vec<ComplexMatrix>,
}

impl MeasurementSet {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let d = match operators.first() {
            Some(m) => m.rows(),
            None => return Err(Error::IncompleteMeasurement(f64::INFINITY)),
        };
        let mut sum = ComplexMatrix::zeros(d, d);
        for m in &operators {
            if !m.is_square() || m.rows() != d {
                return Err(Error::DimensionMismatch(format!(
                    "measurement operator {}x{} in a {d}-dimensional set",
                    m.rows(),
                    m.cols()
                )));
            }
            sum = &sum + &(&m.adjoint() * m);
        }
        let err = sum.distance(&ComplexMatrix::identity(d));
        if err > COMPLETENESS_TOL {
            return Err(Error::IncompleteMeasurement(err));
        }
        Ok(Self { operators })
    }

    /// Rank-1 projective measurement onto an orthonormal basis.
    pub fn projective(basis: &[PureState]) -> Result<Self> {
        Self::new(basis.iter().map(PureState::projector).collect())
    }

    pub fn dim(&self) -> usize {
        self.operators[0].rows()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }
}

/// Normalized conditional state of B after outcome `index` on A.
#[derive(Debug, Clone)]
pub struct ConditionalOutcome {
    pub index: usize,
    pub prob: f64,
    pub post_state_b: DensityMatrix,
    /// Set when `prob < ZERO_PROB` and `post_state_b` was replaced by `rho_B`.
    pub zero_probability: bool,
}

/// Normalize an unnormalized conditional `sigma_B` with weight `prob`.
fn conditional(index: usize, prob: f64, sigma_b: ComplexMatrix, rho_b: &DensityMatrix) -> ConditionalOutcome {
    if prob < ZERO_PROB {
        ConditionalOutcome {
            index,
            prob: prob.max(0.0),
            post_state_b: rho_b.clone(),
            zero_probability: true,
        }
    } else {
        ConditionalOutcome {
            index,
            prob,
            post_state_b: DensityMatrix::from_trusted(rho_b.dims().to_vec(), sigma_b),
            zero_probability: false,
        }
    }
}

/// Outcome probabilities and normalized B states `Tr_A((M⊗I) rho (M⊗I)^dag) / p`.
pub fn conditional_states(rho_ab: &DensityMatrix, m: &MeasurementSet) -> Result<Vec<ConditionalOutcome>> {
    let (da, db) = rho_ab.bipartite_dims()?;
    if m.dim() != da {
        return Err(Error::DimensionMismatch(format!(
            "measurement on a {}-dimensional system, subsystem A has dimension {da}",
            m.dim()
        )));
    }
    let rho_b = partial_trace(rho_ab, 1)?;
    let id_b = ComplexMatrix::identity(db);
    m.operators()
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let k = tensor(op, &id_b);
            let sigma = &(&k * rho_ab.matrix()) * &k.adjoint();
            let prob = sigma.trace().re;
            let sigma_b = partial_trace_matrix(&sigma, (da, db), 1)?;
            Ok(conditional(i, prob, sigma_b, &rho_b))
        })
        .collect()
}

/// `(<phi|⊗I) rho (|phi>⊗I)`: the unnormalized B state after projecting A onto `phi`.
pub(crate) fn project_a(rho_ab: &ComplexMatrix, phi: &[Complex64], db: usize) -> ComplexMatrix {
    let da = phi.len();
    let mut out = ComplexMatrix::zeros(db, db);
    for a in 0..da {
        let ca = phi[a].conj();
        if ca == ZERO {
            continue;
        }
        for a2 in 0..da {
            let w = ca * phi[a2];
            if w == ZERO {
                continue;
            }
            for b in 0..db {
                for b2 in 0..db {
                    out[(b, b2)] += w * rho_ab[(a * db + b, a2 * db + b2)];
                }
            }
        }
    }
    out
}

/// Conditional B states for a rank-1 projective basis on A.
pub fn projective_conditionals(rho_ab: &DensityMatrix, basis: &[PureState]) -> Result<Vec<ConditionalOutcome>> {
    let (da, db) = rho_ab.bipartite_dims()?;
    if basis.iter().any(|s| s.dim() != da) {
        return Err(Error::DimensionMismatch("basis does not act on subsystem A".into()));
    }
    let rho_b = partial_trace(rho_ab, 1)?;
    Ok(basis
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let sigma_b = project_a(rho_ab.matrix(), phi.amplitudes(), db);
            conditional(i, sigma_b.trace().re, sigma_b, &rho_b)
        })
        .collect())
}

/// `||rho_AB - rho_A ⊗ rho_B||_F`
pub fn product_distance(rho_ab: &DensityMatrix) -> Result<f64> {
    let ra = partial_trace(rho_ab, 0)?;
    let rb = partial_trace(rho_ab, 1)?;
    Ok(rho_ab.matrix().distance(&tensor(ra.matrix(), rb.matrix())))
}

/// Strong-locality decision: `||rho_AB - rho_A ⊗ rho_B||_F < tol`.
pub fn is_product(rho_ab: &DensityMatrix, tol: f64) -> bool {
    product_distance(rho_ab).is_ok_and(|d| d < tol)
}

/// Schmidt coefficients (singular values of the `dA x dB` coefficient matrix), descending.
pub fn schmidt_coefficients(psi_ab: &PureState, dims: (usize, usize)) -> Result<Vec<f64>> {
    let (da, db) = dims;
    if da * db != psi_ab.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dims ({da}, {db}) do not match state dimension {}",
            psi_ab.dim()
        )));
    }
    let coeffs = ComplexMatrix::new(da, db, psi_ab.amplitudes().to_vec())?;
    Ok(singular_values(&coeffs))
}

/// Entangled iff the Schmidt rank (singular values above `tol`) is at least 2.
pub fn pure_is_entangled(psi_ab: &PureState, dims: (usize, usize), tol: f64) -> Result<bool> {
    Ok(schmidt_coefficients(psi_ab, dims)?
        .iter()
        .filter(|&&s| s > tol)
        .count()
        >= 2)
}

/// `S(rho_B) - S(rho_iB)` in bits; negative values are reported as-is.
pub fn info_gain(rho_b: &DensityMatrix, rho_ib: &DensityMatrix) -> Result<f64> {
    if rho_b.dim() != rho_ib.dim() {
        return Err(Error::DimensionMismatch(format!(
            "states of dimension {} and {}",
            rho_b.dim(),
            rho_ib.dim()
        )));
    }
    Ok(von_neumann_entropy(rho_b) - von_neumann_entropy(rho_ib))
}
