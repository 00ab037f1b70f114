//! Unitary freedom in pure-state decompositions of a density matrix.
//!
//! Two families `{|η_1k>}` and `{|η_2k>}` with `sum_k |η_1k><η_1k| = sum_k |η_2k><η_2k|`
//! are related by a unitary `U0` acting on the family index:
//! `|η_2k> = sum_j U0[k, j] |η_1j>`.

use num_complex::Complex64;

use super::super::matcore::ops::fix_phase;
use crate::error::{Error, Result};
use crate::matcore::matrix::ZERO;
use crate::matcore::{eig_hermitian, inner, ComplexMatrix, HermitianObservable, WeightedVector};

/// Unitarity tolerance accepted by [`unitary_diagonalize`].
const UNITARY_TOL: f64 = 1e-9;

/// Schur eigenvalues closer than this share an eigenspace.
const CLUSTER_EPS: f64 = 1e-10;

/// A standard basis vector joins the completion when this much of it survives projection.
const COMPLETION_MIN_NORM: f64 = 1e-6;

/// Stacks the vectors as rows of an `n x d` matrix, zero-padding to `n` rows.
pub fn stack(vectors: &[WeightedVector], n: usize) -> Result<ComplexMatrix> {
    let d = vectors.first().map_or(0, WeightedVector::dim);
    if vectors.iter().any(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch("decomposition vectors of differing dimension".into()));
    }
    let mut m = ComplexMatrix::zeros(n, d);
    for (k, v) in vectors.iter().enumerate() {
        for (j, &z) in v.amplitudes().iter().enumerate() {
            m[(k, j)] = z;
        }
    }
    Ok(m)
}

/// `||U0 · stack1 - stack2||_F`
pub fn connection_residual(u0: &ComplexMatrix, dec1: &[WeightedVector], dec2: &[WeightedVector]) -> Result<f64> {
    let n = u0.rows();
    let s1 = stack(dec1, n)?;
    let s2 = stack(dec2, n)?;
    Ok(u0.try_mul(&s1)?.distance(&s2))
}

/// Orthonormal columns spanning the complement of the (orthonormal) columns of `v`,
/// built by Gram-Schmidt on the standard basis in index order.
fn complete_basis(v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = v.rows();
    let mut basis: Vec<Vec<Complex64>> = (0..v.cols()).map(|j| v.col(j)).collect();
    let start = basis.len();
    for e in 0..n {
        if basis.len() == n {
            break;
        }
        let mut cand = vec![ZERO; n];
        cand[e] = Complex64::new(1.0, 0.0);
        // two passes of classical Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &cand);
                for (x, y) in cand.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > COMPLETION_MIN_NORM {
            basis.push(cand.into_iter().map(|z| z / norm).collect());
        }
    }
    if basis.len() != n {
        return Err(Error::Numerical("basis completion failed".into()));
    }
    let extra = &basis[start..];
    Ok(ComplexMatrix::from_fn(n, extra.len(), |i, j| extra[j][i]))
}

/// Unitary `U0` with `U0 · stack(dec1) = stack(dec2)`.
///
/// Both families are factored against a common eigen-square-root of `rho`:
/// writing the vectors as columns, `X_i = E Λ^{1/2} R_i` with `R_i` having
/// orthonormal rows. Then `W = R_1^† R_2 + Q_1 Q_2^†`, where `Q_i` completes
/// `R_i^†` to a unitary, satisfies `X_1 W = X_2`, and `U0 = W^T`.
///
/// `tol` bounds `||rho_1 - rho_2||_F` and is the rank cutoff for eigenvalues of `rho`.
pub fn hjw_connect(dec1: &[WeightedVector], dec2: &[WeightedVector], tol: f64) -> Result<ComplexMatrix> {
    let n = dec1.len().max(dec2.len());
    if n == 0 {
        return Err(Error::InvalidParameter("empty decomposition".into()));
    }
    let d = dec1.first().or(dec2.first()).map_or(0, WeightedVector::dim);
    if dec1.iter().chain(dec2).any(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch("decomposition vectors of differing dimension".into()));
    }
    // columns are the vectors
    let x1 = stack(dec1, n)?.transpose();
    let x2 = stack(dec2, n)?.transpose();
    let rho1 = &x1 * &x1.adjoint();
    let rho2 = &x2 * &x2.adjoint();
    let mismatch = rho1.distance(&rho2);
    if mismatch > tol {
        return Err(Error::DecompositionMismatch(mismatch));
    }

    let rho = (&rho1 + &rho2).scale_real(0.5);
    let eig = eig_hermitian(&HermitianObservable::unchecked(rho.hermitian_part()))?;
    let kept: Vec<usize> = (0..d).filter(|&k| eig.values[k] > tol).collect();
    let r = kept.len();
    if r == 0 {
        return Err(Error::RankInconsistency("decompositions of the zero operator".into()));
    }

    // R_i = Λ^{-1/2} E_r^† X_i  (r x n)
    let whiten = ComplexMatrix::from_fn(r, d, |i, j| {
        let k = kept[i];
        eig.vectors[(j, k)].conj() / eig.values[k].sqrt()
    });
    let r1 = &whiten * &x1;
    let r2 = &whiten * &x2;
    for (label, ri) in [("first", &r1), ("second", &r2)] {
        let gram = ri * &ri.adjoint();
        let err = gram.distance(&ComplexMatrix::identity(r));
        if err > 1e-6 {
            return Err(Error::RankInconsistency(format!(
                "{label} decomposition is not supported on the rank-{r} range (error {err:e})"
            )));
        }
    }

    let q1 = complete_basis(&r1.adjoint())?;
    let q2 = complete_basis(&r2.adjoint())?;
    let w = &(&r1.adjoint() * &r2) + &(&q1 * &q2.adjoint());
    Ok(w.transpose())
}

/// Orthonormal basis of `span(cluster)` from Gram-Schmidt on `P e_j`, `P` the projector.
fn canonical_span(cluster: &[Vec<Complex64>], n: usize) -> Result<Vec<Vec<Complex64>>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(cluster.len());
    for e in 0..n {
        if out.len() == cluster.len() {
            break;
        }
        // P e_j = sum_q q conj(q_j)
        let mut cand = vec![ZERO; n];
        for v in cluster {
            let c = v[e].conj();
            for (x, y) in cand.iter_mut().zip(v) {
                *x += c * y;
            }
        }
        for _ in 0..2 {
            for b in &out {
                let c = inner(b, &cand);
                for (x, y) in cand.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > COMPLETION_MIN_NORM {
            out.push(cand.into_iter().map(|z| z / norm).collect());
        }
    }
    if out.len() != cluster.len() {
        return Err(Error::Numerical("degenerate eigenspace basis failed".into()));
    }
    Ok(out)
}

/// Diagonalizes a unitary: returns `(U, Λ)` with `U U0 U^† = Λ`, `|Λ_kk| = 1`.
///
/// Uses the complex Schur form, which is diagonal for normal matrices.
/// Eigenvalues are ordered by phase in `[0, 2π)`. Degenerate eigenspaces get the
/// basis obtained by projecting standard basis vectors in index order, so an
/// already-diagonal input yields `U = I`. Each eigenvector (row of `U`,
/// conjugated) has its first nonzero component real positive.
pub fn unitary_diagonalize(u0: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let err = u0.unitarity_error();
    if err > UNITARY_TOL {
        return Err(Error::NotUnitary(err));
    }
    let n = u0.rows();
    let (q, t) = u0.to_nalgebra().schur().unpack();
    let phase = |k: usize| t[(k, k)].arg().rem_euclid(2.0 * std::f64::consts::PI);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| phase(a).total_cmp(&phase(b)));

    // Within a degenerate cluster the Schur basis is arbitrary; replace it by the
    // projections of standard basis vectors onto the eigenspace, in index order.
    let mut vecs: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (t[(order[end], order[end])] - t[(order[start], order[start])]).norm() < CLUSTER_EPS {
            end += 1;
        }
        let cluster: Vec<Vec<Complex64>> = order[start..end]
            .iter()
            .map(|&k| q.column(k).iter().copied().collect())
            .collect();
        if cluster.len() == 1 {
            vecs.extend(cluster);
        } else {
            vecs.extend(canonical_span(&cluster, n)?);
        }
        start = end;
    }
    for v in &mut vecs {
        fix_phase(v);
    }
    let u = ComplexMatrix::from_fn(n, n, |i, j| vecs[i][j].conj());

    let t = &(&u * u0) * &u.adjoint();
    let mut off = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off = off.max(t[(i, j)].norm());
            }
        }
    }
    if off > UNITARY_TOL {
        return Err(Error::Numerical(format!("Schur form not diagonal (off-diagonal {off:e})")));
    }
    let lambda = ComplexMatrix::diag(&(0..n).map(|k| t[(k, k)]).collect::<Vec<_>>());
    Ok((u, lambda))
}
