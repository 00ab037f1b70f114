//! Constructive tests of realism and locality for finite-dimensional quantum states.
//!
//! - [`realism`] builds commutator witnesses `(A, B, C = [A, B])` whose gap
//!   `Tr(rho C)` is nonzero for every state except the maximally mixed one,
//!   while any hidden-variable assignment predicts `<AB> = <BA>`.
//! - [`locality`] classifies bipartite states against strong locality (product
//!   form) and weak locality (a projective measurement on a qubit A that leaves B
//!   unchanged), and turns a weak-locality certificate into an explicit separable
//!   decomposition.
//! - [`schemes`] and [`sampler`] reproduce the one- and two-qubit experimental
//!   proposals with exact and shot-sampled estimates.

pub mod error;
pub mod locality;
pub mod matcore;
pub mod realism;
pub mod sampler;
pub mod schemes;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, DensityMatrix, HermitianObservable, PureState, WeightedVector};
pub use num_complex::Complex64;
