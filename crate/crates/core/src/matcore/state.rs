use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use super::ops::eig_hermitian;
use crate::error::{Error, Result};

/// Construction-time validation tolerance for Hermiticity, trace, norm and positivity.
pub const VALIDATION_TOL: f64 = 1e-10;

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `<u|v>`
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(amplitudes, VALIDATION_TOL)
    }

    pub fn with_tolerance(amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParameter("empty state vector".into()));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("non-finite amplitude".into()));
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > tol {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { amplitudes })
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n));
        }
        for z in &mut amplitudes {
            *z /= n;
        }
        Self::new(amplitudes)
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Standard basis vector `|k>` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        PureState { amplitudes }
    }
}

/// Unnormalized vector whose squared norm is its ensemble weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedVector {
    amplitudes: Vec<Complex64>,
}

impl WeightedVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn from_state(weight: f64, state: &PureState) -> Result<Self> {
        if weight.is_nan() || weight < 0.0 {
            return Err(Error::InvalidParameter(format!("negative weight {weight}")));
        }
        let s = weight.sqrt();
        Ok(Self {
            amplitudes: state.amplitudes().iter().map(|&z| z * s).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn weight(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Normalized direction, or `None` for the zero vector.
    pub fn direction(&self) -> Option<PureState> {
        PureState::normalized(self.amplitudes.clone()).ok()
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix with subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(dims, matrix, VALIDATION_TOL)
    }

    /// Validates against `tol` instead of the default `1e-10`.
    pub fn with_tolerance(dims: Vec<usize>, matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare(matrix.rows(), matrix.cols()));
        }
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) || total != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "dims {dims:?} do not match a {}x{} matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("non-finite matrix entry".into()));
        }
        let herm = matrix.hermiticity_error();
        if herm > tol {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidTrace(tr.re));
        }
        let eig = eig_hermitian(&HermitianObservable::unchecked(matrix.hermitian_part()))?;
        let min = eig.values.first().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { dims, matrix })
    }

    /// Trusted constructor for internally produced states; symmetrizes and renormalizes.
    pub(crate) fn from_trusted(dims: Vec<usize>, matrix: ComplexMatrix) -> Self {
        let mut m = matrix.hermitian_part();
        let tr = m.trace().re;
        if tr > 0.0 {
            m = m.scale_real(1.0 / tr);
        }
        Self { dims, matrix: m }
    }

    pub fn from_pure(state: &PureState, dims: Vec<usize>) -> Result<Self> {
        if dims.iter().product::<usize>() != state.dim() {
            return Err(Error::DimensionMismatch(format!(
                "dims {dims:?} do not match state dimension {}",
                state.dim()
            )));
        }
        Ok(Self::from_trusted(dims, state.projector()))
    }

    /// `sum_i p_i |psi_i><psi_i|` for a probability vector `p`.
    pub fn mixture(dims: Vec<usize>, terms: &[(f64, PureState)]) -> Result<Self> {
        let n: usize = dims.iter().product();
        let mut m = ComplexMatrix::zeros(n, n);
        for (p, s) in terms {
            if s.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "mixture term of dimension {} in a {n}-dimensional space",
                    s.dim()
                )));
            }
            m = &m + &s.projector().scale_real(*p);
        }
        Self::new(dims, m)
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        Self {
            dims,
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(vec![probs.len()], ComplexMatrix::real_diag(probs))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn as_observable(&self) -> HermitianObservable {
        HermitianObservable::unchecked(self.matrix.clone())
    }

    /// Same matrix regarded with different subsystem dimensions.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        if dims.iter().product::<usize>() != self.dim() || dims.contains(&0) {
            return Err(Error::DimensionMismatch(format!(
                "dims {dims:?} do not match dimension {}",
                self.dim()
            )));
        }
        Ok(Self {
            dims,
            matrix: self.matrix.clone(),
        })
    }

    /// `(d_A, d_B)` of a bipartite state.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            &[a, b] => Ok((a, b)),
            other => Err(Error::NotBipartite(other.len())),
        }
    }
}

/// Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianObservable {
    matrix: ComplexMatrix,
}

impl HermitianObservable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, VALIDATION_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare(matrix.rows(), matrix.cols()));
        }
        let err = matrix.hermiticity_error();
        if err > tol {
            return Err(Error::NotHermitian(err));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}
