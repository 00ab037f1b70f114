//! Commutator witnesses separating quantum predictions from hidden-variable models.
//!
//! A hidden-variable model assigns pre-existing outcomes to both observables, so
//! the averages of the joint products satisfy `mean(AB) = mean(BA)`. Quantum
//! mechanics gives `Tr(rho AB) - Tr(rho BA) = Tr(rho [A, B])`, and for every state
//! other than the maximally mixed one a pair `(A, B)` exists that makes this
//! nonzero.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::format::{Entry, MatrixDocument};
use crate::matcore::matrix::{ComplexMatrix, I};
use crate::matcore::{
    commutator, eig_hermitian, expectation, DensityMatrix, HermitianObservable, PureState,
};

/// Default tolerance below which every `|p_i - 1/n|` counts as maximally mixed.
pub const MAXIMALLY_MIXED_TOL: f64 = 1e-9;

/// Tolerance for the orthogonality of a caller-supplied `psi_perp`.
const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Overlaps closer than this count as tied when choosing the completion vector.
const OVERLAP_TIE_EPS: f64 = 1e-12;

/// Observables `A`, `B`, their commutator `C` and the predicted gap `Tr(rho C)`.
#[derive(Debug, Clone)]
pub struct RealismWitness {
    pub a: HermitianObservable,
    pub b: HermitianObservable,
    pub c: ComplexMatrix,
    pub predicted_gap: Complex64,
}

/// Serializable form of a [`RealismWitness`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub a: MatrixDocument,
    pub b: MatrixDocument,
    pub c: MatrixDocument,
    pub predicted_gap: Entry,
}

impl From<&RealismWitness> for WitnessReport {
    fn from(w: &RealismWitness) -> Self {
        Self {
            a: MatrixDocument::from_matrix(None, w.a.matrix()),
            b: MatrixDocument::from_matrix(None, w.b.matrix()),
            c: MatrixDocument::from_matrix(None, &w.c),
            predicted_gap: [w.predicted_gap.re, w.predicted_gap.im],
        }
    }
}

/// Build `A = |u><v| + |v><u|`, `B = -i(|u><v| - |v><u|)` for orthonormal `u`, `v`.
///
/// Then `[A, B] = 2i(|u><u| - |v><v|)`.
fn witness_pair(u: &[Complex64], v: &[Complex64]) -> (HermitianObservable, HermitianObservable) {
    let uv = ComplexMatrix::outer(u, v);
    let vu = ComplexMatrix::outer(v, u);
    let a = &uv + &vu;
    let b = (&uv - &vu).scale(-I);
    (
        HermitianObservable::unchecked(a.hermitian_part()),
        HermitianObservable::unchecked(b.hermitian_part()),
    )
}

fn assemble(rho: &DensityMatrix, a: HermitianObservable, b: HermitianObservable) -> Result<RealismWitness> {
    let c = commutator(&a, &b)?;
    let predicted_gap = expectation(rho, &c)?;
    Ok(RealismWitness {
        a,
        b,
        c,
        predicted_gap,
    })
}

/// Unit vector orthogonal to `psi`, from the standard basis vector of smallest
/// `|overlap|` (lowest index on ties).
pub fn orthogonal_complement(psi: &PureState) -> Result<PureState> {
    let amps = psi.amplitudes();
    if amps.len() < 2 {
        return Err(Error::InvalidParameter(
            "a witness needs a state of dimension at least 2".into(),
        ));
    }
    let mut best = 0;
    for (k, z) in amps.iter().enumerate().skip(1) {
        if z.norm() < amps[best].norm() - OVERLAP_TIE_EPS {
            best = k;
        }
    }
    // e_k - <psi|e_k> psi
    let overlap = amps[best].conj();
    let mut v: Vec<Complex64> = amps.iter().map(|&z| -overlap * z).collect();
    v[best] += Complex64::new(1.0, 0.0);
    PureState::normalized(v)
}

/// Witness for a pure state: `A = |psi⊥><psi| + |psi><psi⊥|`,
/// `B = -i(|psi⊥><psi| - |psi><psi⊥|)`, `C = 2i(|psi⊥><psi⊥| - |psi><psi|)`,
/// so that `<psi|C|psi> = -2i`.
///
/// When `psi_perp` is `None` it is built by [`orthogonal_complement`].
pub fn pure_witness(psi: &PureState, psi_perp: Option<&PureState>) -> Result<RealismWitness> {
    if psi.dim() < 2 {
        return Err(Error::InvalidParameter(
            "a witness needs a state of dimension at least 2".into(),
        ));
    }
    let perp = match psi_perp {
        Some(p) => {
            if p.dim() != psi.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "psi has dimension {}, psi_perp {}",
                    psi.dim(),
                    p.dim()
                )));
            }
            let overlap = psi.inner(p).norm();
            if overlap > ORTHOGONALITY_TOL {
                return Err(Error::NotOrthogonal(overlap));
            }
            p.clone()
        }
        None => orthogonal_complement(psi)?,
    };
    let (a, b) = witness_pair(perp.amplitudes(), psi.amplitudes());
    let rho = DensityMatrix::from_pure(psi, vec![psi.dim()])?;
    assemble(&rho, a, b)
}

/// Eigen-deltas `p_i - 1/n` of a density matrix in ascending eigenvalue order.
pub fn eigen_deltas(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let n = rho.dim() as f64;
    Ok(eig_hermitian(&rho.as_observable())?
        .values
        .into_iter()
        .map(|p| p - 1.0 / n)
        .collect())
}

/// [`mixed_witness_with_tol`] at the default tolerance.
pub fn mixed_witness(rho: &DensityMatrix) -> Result<RealismWitness> {
    mixed_witness_with_tol(rho, MAXIMALLY_MIXED_TOL)
}

/// Witness for a mixed state built on the eigenvectors with the largest and
/// smallest eigenvalue; the gap is `2i(Δp_max - Δp_min)`.
///
/// Returns [`Error::MaximallyMixed`] when every `|Δp_i| < tol`.
pub fn mixed_witness_with_tol(rho: &DensityMatrix, tol: f64) -> Result<RealismWitness> {
    let eig = eig_hermitian(&rho.as_observable())?;
    let n = rho.dim() as f64;
    let deltas: Vec<f64> = eig.values.iter().map(|p| p - 1.0 / n).collect();
    let max_deviation = deltas.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    if max_deviation < tol {
        return Err(Error::MaximallyMixed { max_deviation });
    }
    let mut hi = 0;
    let mut lo = 0;
    for (k, &d) in deltas.iter().enumerate() {
        if d > deltas[hi] {
            hi = k;
        }
        if d < deltas[lo] {
            lo = k;
        }
    }
    let (a, b) = witness_pair(&eig.vector(hi), &eig.vector(lo));
    assemble(rho, a, b)
}

/// `Tr(rho AB) - Tr(rho BA)`
pub fn realism_gap(
    rho: &DensityMatrix,
    a: &HermitianObservable,
    b: &HermitianObservable,
) -> Result<Complex64> {
    if a.dim() != b.dim() || a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {}, observables {} and {}",
            rho.dim(),
            a.dim(),
            b.dim()
        )));
    }
    let ab = a.matrix() * b.matrix();
    let ba = b.matrix() * a.matrix();
    Ok(expectation(rho, &ab)? - expectation(rho, &ba)?)
}

/// True iff every eigenvalue lies within `tol` of `1/n`, `n` the full dimension.
pub fn is_maximally_mixed(rho: &DensityMatrix, tol: f64) -> bool {
    match eigen_deltas(rho) {
        Ok(d) => d.iter().all(|x| x.abs() <= tol),
        Err(_) => false,
    }
}

/// Joint outcome distribution of a two-observable hidden-variable model.
///
/// Each hidden-variable pair `(λ_i, λ'_j)` fixes the outcomes `(A_i, B_j)` and
/// occurs with probability `p[i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HvmJointModel {
    a: [f64; 2],
    b: [f64; 2],
    p: [[f64; 2]; 2],
}

impl HvmJointModel {
    pub fn new(a: [f64; 2], b: [f64; 2], p: [[f64; 2]; 2]) -> Result<Self> {
        let flat = p.iter().flatten();
        if flat.clone().any(|&x| x.is_nan() || x < 0.0) {
            return Err(Error::InvalidParameter("negative joint probability".into()));
        }
        let total: f64 = flat.sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "joint probabilities sum to {total}"
            )));
        }
        if a.iter().chain(&b).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite outcome value".into()));
        }
        Ok(Self { a, b, p })
    }

    pub fn outcomes_a(&self) -> [f64; 2] {
        self.a
    }

    pub fn outcomes_b(&self) -> [f64; 2] {
        self.b
    }

    pub fn probabilities(&self) -> [[f64; 2]; 2] {
        self.p
    }
}

/// `(sum p_ij A_i B_j, sum p_ij B_j A_i)`; the pair is always equal.
pub fn hvm_expectation(model: &HvmJointModel) -> (f64, f64) {
    let mut ab = 0.0;
    let mut ba = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            ab += model.p[i][j] * (model.a[i] * model.b[j]);
            ba += model.p[i][j] * (model.b[j] * model.a[i]);
        }
    }
    (ab, ba)
}
