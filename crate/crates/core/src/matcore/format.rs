//! JSON interchange format for matrices, states and vector lists.
//!
//! A matrix document has two fields: `dims`, the subsystem dimensions, and
//! `matrix`, a list of rows whose entries are `[re, im]` pairs:
//!
//! ```json
//! { "dims": [2], "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]] }
//! ```
//!
//! A document with a single column is read as a state vector (ket); a square
//! document is read as a density matrix. `dims` may be omitted, in which case
//! the state is treated as a single system.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::state::{DensityMatrix, PureState, WeightedVector};
use crate::error::{Error, Result};

pub type Entry = [f64; 2];

fn to_entry(z: Complex64) -> Entry {
    [z.re, z.im]
}

fn from_entry(e: &Entry) -> Result<Complex64> {
    if e.iter().all(|x| x.is_finite()) {
        Ok(Complex64::new(e[0], e[1]))
    } else {
        Err(Error::Parse("non-finite matrix entry".into()))
    }
}

fn parse_row(row: &[Entry]) -> Result<Vec<Complex64>> {
    row.iter().map(from_entry).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    pub matrix: Vec<Vec<Entry>>,
}

impl MatrixDocument {
    pub fn from_matrix(dims: Option<Vec<usize>>, m: &ComplexMatrix) -> Self {
        Self {
            dims,
            matrix: (0..m.rows())
                .map(|i| m.row(i).iter().copied().map(to_entry).collect())
                .collect(),
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self::from_matrix(Some(rho.dims().to_vec()), rho.matrix())
    }

    pub fn from_pure(state: &PureState, dims: Vec<usize>) -> Self {
        Self::from_matrix(Some(dims), &ComplexMatrix::column(state.amplitudes()))
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let rows = self
            .matrix
            .iter()
            .map(|r| parse_row(r))
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        ComplexMatrix::from_rows(&rows)
    }
}

/// A parsed state file.
#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Pure { state: PureState, dims: Vec<usize> },
    Mixed(DensityMatrix),
}

impl StateInput {
    pub fn dims(&self) -> &[usize] {
        match self {
            StateInput::Pure { dims, .. } => dims,
            StateInput::Mixed(rho) => rho.dims(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            StateInput::Pure { state, dims } => {
                DensityMatrix::from_pure(state, dims.clone()).expect("dims validated at parse time")
            }
            StateInput::Mixed(rho) => rho.clone(),
        }
    }

    /// Replaces subsystem dimensions, e.g. from a `--dims` flag.
    pub fn with_dims(self, dims: Vec<usize>) -> Result<Self> {
        match self {
            StateInput::Pure { state, .. } => {
                if dims.iter().product::<usize>() != state.dim() || dims.contains(&0) {
                    return Err(Error::DimensionMismatch(format!(
                        "dims {dims:?} do not match state dimension {}",
                        state.dim()
                    )));
                }
                Ok(StateInput::Pure { state, dims })
            }
            StateInput::Mixed(rho) => Ok(StateInput::Mixed(rho.with_dims(dims)?)),
        }
    }

    pub fn to_document(&self) -> MatrixDocument {
        match self {
            StateInput::Pure { state, dims } => MatrixDocument::from_pure(state, dims.clone()),
            StateInput::Mixed(rho) => MatrixDocument::from_density(rho),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<(Option<Vec<usize>>, ComplexMatrix)> {
    let doc: MatrixDocument = serde_json::from_str(text)?;
    let m = doc.to_matrix()?;
    Ok((doc.dims, m))
}

pub fn parse_state(text: &str) -> Result<StateInput> {
    let doc: MatrixDocument = serde_json::from_str(text)?;
    let m = doc.to_matrix()?;
    if m.cols() == 1 && m.rows() > 1 || m.rows() == 1 && m.cols() == 1 && doc.dims.is_none() {
        let dims = doc.dims.unwrap_or_else(|| vec![m.rows()]);
        if dims.iter().product::<usize>() != m.rows() || dims.contains(&0) {
            return Err(Error::DimensionMismatch(format!(
                "dims {dims:?} do not match a {}-component ket",
                m.rows()
            )));
        }
        let state = PureState::new(m.col(0))?;
        return Ok(StateInput::Pure { state, dims });
    }
    let dims = doc.dims.unwrap_or_else(|| vec![m.rows()]);
    Ok(StateInput::Mixed(DensityMatrix::new(dims, m)?))
}

/// List of unnormalized vectors (a pure-state decomposition).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorListDocument {
    pub vectors: Vec<Vec<Entry>>,
}

impl VectorListDocument {
    pub fn from_vectors(vs: &[WeightedVector]) -> Self {
        Self {
            vectors: vs
                .iter()
                .map(|v| v.amplitudes().iter().copied().map(to_entry).collect())
                .collect(),
        }
    }

    pub fn to_vectors(&self) -> Result<Vec<WeightedVector>> {
        self.vectors
            .iter()
            .map(|v| parse_row(v).map(WeightedVector::new))
            .collect()
    }
}

/// List of measurement operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorListDocument {
    pub operators: Vec<Vec<Vec<Entry>>>,
}

impl OperatorListDocument {
    pub fn from_operators(ops: &[ComplexMatrix]) -> Self {
        Self {
            operators: ops
                .iter()
                .map(|m| MatrixDocument::from_matrix(None, m).matrix)
                .collect(),
        }
    }

    pub fn to_operators(&self) -> Result<Vec<ComplexMatrix>> {
        self.operators
            .iter()
            .map(|rows| {
                MatrixDocument {
                    dims: None,
                    matrix: rows.clone(),
                }
                .to_matrix()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ragged_rejected() {
        let text = r#"{"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0]]]}"#;
        assert!(matches!(parse_state(text), Err(Error::Parse(_))));
    }

    #[test]
    fn non_finite_rejected() {
        let text = r#"{"dims":[2],"matrix":[[[1e999,0],[0,0]],[[0,0],[0,0]]]}"#;
        assert!(parse_state(text).is_err());
    }

    #[test]
    fn ket_and_density_detected() {
        let ket = r#"{"dims":[2],"matrix":[[[1,0]],[[0,0]]]}"#;
        assert!(matches!(parse_state(ket).unwrap(), StateInput::Pure { .. }));
        let rho = r#"{"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#;
        match parse_state(rho).unwrap() {
            StateInput::Mixed(r) => assert_eq!(r.dims(), &[2]),
            other => panic!("expected density matrix, got {other:?}"),
        }
    }

    #[test]
    fn bad_dims_rejected() {
        let rho = r#"{"dims":[3],"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#;
        assert!(parse_state(rho).is_err());
    }

    #[test]
    fn document_round_trip_is_exact() {
        let rho = DensityMatrix::new(
            vec![2],
            ComplexMatrix::from_rows(&[
                vec![Complex64::new(0.3, 0.0), Complex64::new(0.1, -0.2)],
                vec![Complex64::new(0.1, 0.2), Complex64::new(0.7, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        let text = serde_json::to_string(&MatrixDocument::from_density(&rho)).unwrap();
        assert_eq!(parse_state(&text).unwrap(), StateInput::Mixed(rho));
    }
}
