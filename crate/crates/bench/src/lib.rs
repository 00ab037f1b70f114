//! Deterministic fixtures shared by the benchmarks.

use qlr_core::matcore::{pauli, tensor};
use qlr_core::{Complex64, ComplexMatrix, DensityMatrix, HermitianObservable};

/// Hermitian `n x n` matrix with entries `sin(i + 2j) + i cos(3i - j)` above the diagonal.
pub fn hermitian(n: usize) -> HermitianObservable {
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (i.min(j) as f64, i.max(j) as f64);
        let z = Complex64::new((a + 2.0 * b).sin(), (3.0 * a - b).cos());
        match i.cmp(&j) {
            std::cmp::Ordering::Less => z,
            std::cmp::Ordering::Greater => z.conj(),
            std::cmp::Ordering::Equal => Complex64::new(z.re, 0.0),
        }
    });
    HermitianObservable::new(m).expect("Hermitian by construction")
}

/// `½|00><00| + ½|11><11|`
pub fn classical_pair() -> DensityMatrix {
    DensityMatrix::new(vec![2, 2], ComplexMatrix::real_diag(&[0.5, 0.0, 0.0, 0.5])).expect("valid state")
}

/// Werner-like mixture `0.6 |Φ+><Φ+| + 0.4 I/4` on a qubit pair.
pub fn noisy_bell() -> DensityMatrix {
    let mut m = ComplexMatrix::identity(4).scale_real(0.1);
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[(i, j)] += Complex64::new(0.3, 0.0);
    }
    DensityMatrix::new(vec![2, 2], m).expect("valid state")
}

/// `σx⊗σx` and `σz⊗σz`.
pub fn two_qubit_pair() -> (HermitianObservable, HermitianObservable) {
    let x = pauli::x();
    let z = pauli::z();
    (
        HermitianObservable::new(tensor(&x, &x)).expect("Hermitian"),
        HermitianObservable::new(tensor(&z, &z)).expect("Hermitian"),
    )
}
