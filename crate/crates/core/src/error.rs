use thiserror::Error;

/// Errors raised by state construction, witness building and locality analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {rows}x{cols} matrix needs {expected} entries, got {got}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("states are not orthogonal (|overlap| = {0:e})")]
    NotOrthogonal(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("measurement set is incomplete (||sum M^dag M - I||_F = {0:e})")]
    IncompleteMeasurement(f64),

    #[error("expected a bipartite state, got {0} subsystem dims")]
    NotBipartite(usize),

    #[error("subsystem index {0} out of range")]
    BadSubsystem(usize),

    #[error("subsystem A must be two-dimensional, got {0}")]
    UnsupportedDimension(usize),

    #[error("state is maximally mixed (max |p_i - 1/n| = {max_deviation:e}); no realism witness exists")]
    MaximallyMixed { max_deviation: f64 },

    #[error("decompositions describe different states (||rho1 - rho2||_F = {0:e})")]
    DecompositionMismatch(f64),

    #[error("rank inconsistency: {0}")]
    RankInconsistency(String),

    #[error("weak-locality verdict does not hold for this state (residual {0:e})")]
    InconsistentVerdict(f64),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
