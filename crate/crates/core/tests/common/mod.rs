//! Test-only oracles and random generators. Nothing here calls into the crate's
//! eigensolvers.
#![allow(dead_code)]

use qlr_core::{Complex64, ComplexMatrix, DensityMatrix, HermitianObservable, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector.
pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> PureState {
    PureState::normalized((0..n).map(|_| gaussian(rng)).collect()).unwrap()
}

pub fn ginibre(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// `G G^† / Tr(G G^†)` with a square Ginibre `G`; full rank almost surely.
pub fn random_density(rng: &mut ChaCha8Rng, dims: Vec<usize>) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let g = ginibre(rng, n, n);
    let m = &g * &g.adjoint();
    let t = m.trace().re;
    DensityMatrix::new(dims, m.scale_real(1.0 / t).hermitian_part()).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianObservable {
    let g = ginibre(rng, n, n);
    HermitianObservable::new((&g + &g.adjoint()).scale_real(0.5).hermitian_part()).unwrap()
}

/// Unitary from Gram-Schmidt on a Ginibre matrix's columns.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n {
        let mut v = g.col(j);
        for _ in 0..2 {
            for c in &cols {
                let ov: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= ov * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `n·σ` for a uniformly random unit `n`: a ±1-valued qubit observable.
pub fn random_pm1_qubit(rng: &mut ChaCha8Rng) -> (HermitianObservable, [f64; 3]) {
    let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n = [v[0] / norm, v[1] / norm, v[2] / norm];
    (HermitianObservable::new(qlr_core::matcore::pauli::along(n)).unwrap(), n)
}

/// Cyclic Jacobi eigenvalues of a real symmetric matrix (row-major `n x n`).
/// Returns `(values, vectors)` with vectors as columns of a row-major matrix.
pub fn jacobi_symmetric(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix via the real
/// embedding `[[X, -Y], [Y, X]]` of `H = X + iY`, whose spectrum is that of `H`
/// with every eigenvalue doubled.
pub fn oracle_eig(h: &ComplexMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            a[i * m + j] = z.re;
            a[i * m + n + j] = -z.im;
            a[(n + i) * m + j] = z.im;
            a[(n + i) * m + n + j] = z.re;
        }
    }
    let (vals, vecs) = jacobi_symmetric(a, m);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| vals[x].total_cmp(&vals[y]));
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    // each eigenvalue appears twice; keep one column per pair
    for pair in order.chunks(2) {
        let k = pair[0];
        values.push(vals[k]);
        let v: Vec<Complex64> = (0..n).map(|i| Complex64::new(vecs[i * m + k], vecs[(n + i) * m + k])).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        vectors.push(v.into_iter().map(|z| z / norm).collect());
    }
    (values, vectors)
}

/// `<v|M|v>` with plain loops.
pub fn quad(m: &ComplexMatrix, v: &[Complex64]) -> Complex64 {
    let n = v.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += v[i].conj() * m[(i, j)] * v[j];
        }
    }
    acc
}
