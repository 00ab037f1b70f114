//! Dense complex linear algebra for small quantum systems: states, observables,
//! tensor products, partial traces, Hermitian eigendecomposition and entropy.

pub mod format;
pub mod matrix;
pub mod ops;
pub mod state;

pub use matrix::{pauli, ComplexMatrix};
pub use ops::{
    anticommutator, commutator, eig_hermitian, expectation, partial_trace, partial_trace_matrix,
    singular_values, tensor, von_neumann_entropy, EigenDecomposition,
};
pub use state::{inner, DensityMatrix, HermitianObservable, PureState, WeightedVector, VALIDATION_TOL};
