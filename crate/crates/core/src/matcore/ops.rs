use nalgebra::{SymmetricEigen, SVD};
use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use super::state::{DensityMatrix, HermitianObservable, VALIDATION_TOL};
use crate::error::{Error, Result};

/// Components below this modulus are skipped when fixing eigenvector phases.
const PHASE_EPS: f64 = 1e-12;

/// Kronecker product, block `(i, j)` equal to `a[i, j] * b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Partial trace of a square matrix on `C^dA ⊗ C^dB`, keeping subsystem `keep` (0 = A, 1 = B).
/// No normalization or validation is applied.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dims: (usize, usize),
    keep: usize,
) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    if !m.is_square() || m.rows() != da * db {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not on a {da}x{db} bipartite space",
            m.rows(),
            m.cols()
        )));
    }
    match keep {
        0 => Ok(ComplexMatrix::from_fn(da, da, |a, a2| {
            (0..db).map(|b| m[(a * db + b, a2 * db + b)]).sum()
        })),
        1 => Ok(ComplexMatrix::from_fn(db, db, |b, b2| {
            (0..da).map(|a| m[(a * db + b, a * db + b2)]).sum()
        })),
        k => Err(Error::BadSubsystem(k)),
    }
}

/// Reduced state of a bipartite density matrix on subsystem `keep` (0 = A, 1 = B).
pub fn partial_trace(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    let (da, db) = rho.bipartite_dims()?;
    let reduced = partial_trace_matrix(rho.matrix(), (da, db), keep)?;
    let dim = if keep == 0 { da } else { db };
    Ok(DensityMatrix::from_trusted(vec![dim], reduced))
}

/// `AB - BA`
pub fn commutator(a: &HermitianObservable, b: &HermitianObservable) -> Result<ComplexMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "commutator of {}x{} and {}x{} operators",
            a.dim(),
            a.dim(),
            b.dim(),
            b.dim()
        )));
    }
    let (a, b) = (a.matrix(), b.matrix());
    Ok(&(a * b) - &(b * a))
}

/// `AB + BA`
pub fn anticommutator(a: &HermitianObservable, b: &HermitianObservable) -> Result<ComplexMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "anticommutator of {}- and {}-dimensional operators",
            a.dim(),
            b.dim()
        )));
    }
    let (a, b) = (a.matrix(), b.matrix());
    Ok(&(a * b) + &(b * a))
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.col(k)
    }

    /// `V diag(values) V^dag`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * self.values[k] * v[(j, k)].conj())
                .sum()
        })
    }
}

/// Multiplies `v` by a phase so its first component above `PHASE_EPS` is real positive.
pub(crate) fn fix_phase(v: &mut [Complex64]) {
    if let Some(z) = v.iter().find(|z| z.norm() > PHASE_EPS).copied() {
        let phase = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

/// Eigendecomposition with ascending eigenvalues and phase-fixed eigenvectors.
///
/// Ties keep the solver's column order (stable sort); each eigenvector is then
/// rotated so that its first nonzero component is real and positive.
pub fn eig_hermitian(h: &HermitianObservable) -> Result<EigenDecomposition> {
    let m = h.matrix();
    let err = m.hermiticity_error();
    if err > VALIDATION_TOL {
        return Err(Error::NotHermitian(err));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: vec![],
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(m.hermitian_part().to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut v: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
        fix_phase(&mut v);
        for (row, z) in v.into_iter().enumerate() {
            vectors[(row, col)] = z;
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Singular values of an arbitrary complex matrix, descending.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return vec![];
    }
    let svd = SVD::new(m.to_nalgebra(), false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// `Tr(rho m)`
pub fn expectation(rho: &DensityMatrix, m: &ComplexMatrix) -> Result<Complex64> {
    let r = rho.matrix();
    if !m.is_square() || m.rows() != r.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator against a {}-dimensional state",
            m.rows(),
            m.cols(),
            r.rows()
        )));
    }
    let n = r.rows();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += r[(i, j)] * m[(j, i)];
        }
    }
    Ok(acc)
}

/// Von Neumann entropy in bits; eigenvalues in `[-1e-10, 0)` count as zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let eig = eig_hermitian(&rho.as_observable()).expect("density matrices are Hermitian");
    eig.values
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum()
}
