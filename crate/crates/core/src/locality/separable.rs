//! Explicit separable form of a weakly local state with a qubit A.
//!
//! Purify `rho_AB = sum_k p_k |ψ_k><ψ_k|` to
//! `|Ψ> = sum_k sqrt(p_k) |ψ_k>|k>_C` and expand it in the A basis
//! `{|φ_1>, |φ_2>}` that leaves B unchanged:
//!
//! ```text
//! |Ψ> = sqrt(λ_1) |φ_1> sum_k |η_1k>|k> + sqrt(λ_2) |φ_2> sum_k |η_2k>|k>
//! ```
//!
//! Both families `{η_1k}`, `{η_2k}` decompose `rho_B`, so `η_2 = U0 η_1` for a
//! unitary `U0`. Diagonalizing `U U0 U^† = Λ` and rotating the C basis by `U`
//! gives `η'_2k = Λ_kk η'_1k`, hence
//! `|Ψ> = sum_k (sqrt(λ_1)|φ_1> + Λ_kk sqrt(λ_2)|φ_2>) |η'_1k> |k'>`,
//! and tracing out C leaves a convex sum of product states.

use num_complex::Complex64;

use super::search::WeakLocalityVerdict;
use super::{hjw_connect, projective_conditionals, unitary_diagonalize};
use crate::error::{Error, Result};
use crate::matcore::{eig_hermitian, partial_trace, tensor, ComplexMatrix, DensityMatrix, PureState, WeightedVector};

/// Eigenvalues of `rho_AB` at or below this are dropped from the purification.
const PURIFICATION_CUTOFF: f64 = 1e-14;

/// A branch weight `λ_i` below this is treated as absent.
const BRANCH_CUTOFF: f64 = 1e-12;

/// Terms lighter than this are dropped from the output.
const TERM_CUTOFF: f64 = 1e-15;

/// Rank cutoff and mismatch bound handed to [`hjw_connect`].
const CONNECT_TOL: f64 = 1e-9;

/// Required reconstruction accuracy, Frobenius norm.
pub const RECONSTRUCTION_TOL: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct ProductTerm {
    pub weight: f64,
    pub state_a: PureState,
    pub state_b: PureState,
}

#[derive(Debug, Clone)]
pub struct SeparableDecomposition {
    pub terms: Vec<ProductTerm>,
}

impl SeparableDecomposition {
    /// `sum_k w_k |a_k><a_k| ⊗ |b_k><b_k|`
    pub fn reconstruct(&self) -> Option<ComplexMatrix> {
        let first = self.terms.first()?;
        let n = first.state_a.dim() * first.state_b.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for t in &self.terms {
            let term = tensor(&t.state_a.projector(), &t.state_b.projector()).scale_real(t.weight);
            m = &m + &term;
        }
        Some(m)
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }
}

/// `(<φ|⊗I)|ψ>` for a vector on `C^dA ⊗ C^dB`.
fn contract_a(phi: &[Complex64], psi: &[Complex64], db: usize) -> Vec<Complex64> {
    (0..db)
        .map(|b| phi.iter().enumerate().map(|(a, f)| f.conj() * psi[a * db + b]).sum())
        .collect()
}

fn push_term(terms: &mut Vec<ProductTerm>, a: Vec<Complex64>, b: &[Complex64]) -> Result<()> {
    let weight: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    if weight <= TERM_CUTOFF {
        return Ok(());
    }
    let state_b = PureState::normalized(b.to_vec())?;
    let state_a = PureState::normalized(a)?;
    terms.push(ProductTerm {
        weight,
        state_a,
        state_b,
    });
    Ok(())
}

/// Builds the separable decomposition certified by a weak-locality verdict.
///
/// Fails with [`Error::NotApplicable`] when no basis was found and with
/// [`Error::InconsistentVerdict`] when the verdict's basis does not leave
/// `rho_B` unchanged for this state.
pub fn build_separable_decomposition(
    rho_ab: &DensityMatrix,
    verdict: &WeakLocalityVerdict,
) -> Result<SeparableDecomposition> {
    let (da, db) = rho_ab.bipartite_dims()?;
    if da != 2 {
        return Err(Error::UnsupportedDimension(da));
    }
    let basis = match (&verdict.basis, verdict.found) {
        (Some(b), true) => b,
        _ => {
            return Err(Error::NotApplicable(
                "no projective basis on A leaves rho_B unchanged".into(),
            ))
        }
    };

    let rho_b = partial_trace(rho_ab, 1)?;
    let residual = projective_conditionals(rho_ab, basis)?
        .iter()
        .map(|o| o.post_state_b.matrix().distance(rho_b.matrix()))
        .fold(0.0, f64::max);
    if residual > verdict.tolerance {
        return Err(Error::InconsistentVerdict(residual));
    }

    // purification: |Ψ> = sum_k sqrt(p_k) |ψ_k>|k>
    let eig = eig_hermitian(&rho_ab.as_observable())?;
    let components: Vec<(f64, Vec<Complex64>)> = (0..rho_ab.dim())
        .filter(|&k| eig.values[k] > PURIFICATION_CUTOFF)
        .map(|k| (eig.values[k], eig.vector(k)))
        .collect();

    // unnormalized B vectors sqrt(p_k) (<φ_i|⊗I)|ψ_k> for each branch i
    let branches: Vec<Vec<Vec<Complex64>>> = basis
        .iter()
        .map(|phi| {
            components
                .iter()
                .map(|(p, psi)| {
                    contract_a(phi.amplitudes(), psi, db)
                        .into_iter()
                        .map(|z| z * p.sqrt())
                        .collect()
                })
                .collect()
        })
        .collect();
    // λ_i = <φ_i|rho_A|φ_i>
    let lambdas: Vec<f64> = branches
        .iter()
        .map(|vs| vs.iter().flatten().map(|z| z.norm_sqr()).sum())
        .collect();

    let mut terms = Vec::new();
    if let Some(only) = (0..2).find(|&i| lambdas[1 - i] < BRANCH_CUTOFF) {
        // A is in the pure state |φ_only>; every B component pairs with it
        for v in &branches[only] {
            push_term(&mut terms, basis[only].amplitudes().to_vec(), v)?;
        }
    } else {
        let eta: Vec<Vec<WeightedVector>> = branches
            .iter()
            .zip(&lambdas)
            .map(|(vs, l)| {
                vs.iter()
                    .map(|v| WeightedVector::new(v.iter().map(|z| z / l.sqrt()).collect()))
                    .collect()
            })
            .collect();
        let u0 = hjw_connect(&eta[0], &eta[1], CONNECT_TOL)?;
        let (u, lambda) = unitary_diagonalize(&u0)?;
        let n = u.rows();
        let (s1, s2) = (lambdas[0].sqrt(), lambdas[1].sqrt());
        let (phi1, phi2) = (basis[0].amplitudes(), basis[1].amplitudes());
        for k in 0..n {
            // η'_1k = sum_j U[k, j] η_1j
            let mut rotated = vec![Complex64::new(0.0, 0.0); db];
            for (j, v) in eta[0].iter().enumerate() {
                for (x, &z) in rotated.iter_mut().zip(v.amplitudes()) {
                    *x += u[(k, j)] * z;
                }
            }
            let a: Vec<Complex64> = phi1
                .iter()
                .zip(phi2)
                .map(|(&x, &y)| x * s1 + lambda[(k, k)] * s2 * y)
                .collect();
            push_term(&mut terms, a, &rotated)?;
        }
    }

    let decomposition = SeparableDecomposition { terms };
    let err = decomposition
        .reconstruct()
        .map_or(f64::INFINITY, |m| m.distance(rho_ab.matrix()));
    if err > RECONSTRUCTION_TOL {
        return Err(Error::Numerical(format!(
            "separable decomposition reconstructs rho_AB only to {err:e}"
        )));
    }
    Ok(decomposition)
}
