//! Seeded shot-level simulation of projective measurements.
//!
//! Each call draws from a single `ChaCha8Rng` stream seeded with the 64-bit
//! seed, so identical inputs, seed and shot count reproduce identical reports.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::format::Entry;
use crate::matcore::matrix::I;
use crate::matcore::{commutator, eig_hermitian, expectation, ComplexMatrix, DensityMatrix, HermitianObservable};

/// Eigenvalues within this distance share one projector.
pub const EIGENVALUE_MERGE_TOL: f64 = 1e-9;

/// Outcome probabilities below this are set to zero.
const PROB_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorReport {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(shots)`.
    pub std_error: f64,
    pub shots: u64,
    pub seed: u64,
    /// Analytic value of the estimated quantity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
}

/// Distinct eigenvalues of an observable with their spectral projectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub values: Vec<f64>,
    pub projectors: Vec<ComplexMatrix>,
}

/// Groups ascending eigenvalues whose distance to the first of their group is below
/// [`EIGENVALUE_MERGE_TOL`]. The group value is the Rayleigh quotient
/// `Tr(h P) / rank(P)` of its projector, which is exact for diagonal `h`.
pub fn spectral_decomposition(h: &HermitianObservable) -> Result<SpectralDecomposition> {
    let eig = eig_hermitian(h)?;
    let n = h.dim();
    let mut values = Vec::new();
    let mut projectors = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end] - eig.values[start] < EIGENVALUE_MERGE_TOL {
            end += 1;
        }
        let mut p = ComplexMatrix::zeros(n, n);
        for k in start..end {
            let v = eig.vector(k);
            p = &p + &ComplexMatrix::outer(&v, &v);
        }
        values.push((h.matrix() * &p).trace().re / (end - start) as f64);
        projectors.push(p);
        start = end;
    }
    Ok(SpectralDecomposition { values, projectors })
}

/// Outcome probabilities `Tr(rho P_i)`, floored and renormalized.
fn probabilities(rho: &ComplexMatrix, projectors: &[ComplexMatrix]) -> Vec<f64> {
    let mut probs: Vec<f64> = projectors
        .iter()
        .map(|p| {
            let t = (rho * p).trace().re;
            if t < PROB_FLOOR {
                0.0
            } else {
                t
            }
        })
        .collect();
    let total: f64 = probs.iter().sum();
    if total > 0.0 {
        for p in &mut probs {
            *p /= total;
        }
    }
    probs
}

/// Index drawn from `probs` by inversion; never returns a zero-probability index.
fn draw(rng: &mut ChaCha8Rng, probs: &[f64]) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        acc += p;
        last = i;
        if u < acc {
            return i;
        }
    }
    last
}

/// Running mean and variance (Welford).
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn new() -> Self {
        Self { n: 0, mean: 0.0, m2: 0.0 }
    }

    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn finish(self, seed: u64, exact: Option<f64>) -> EstimatorReport {
        let std_error = if self.n > 1 {
            (self.m2 / (self.n - 1) as f64).sqrt() / (self.n as f64).sqrt()
        } else {
            0.0
        };
        EstimatorReport {
            mean: self.mean,
            std_error,
            shots: self.n,
            seed,
            exact,
        }
    }
}

fn check(rho: &DensityMatrix, ops: &[&HermitianObservable], shots: u64) -> Result<()> {
    for h in ops {
        if h.dim() != rho.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}-dimensional observable against a {}-dimensional state",
                h.dim(),
                rho.dim()
            )));
        }
    }
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be at least 1".into()));
    }
    Ok(())
}

/// Samples eigenvalues of `h` with probabilities `Tr(rho P_i)`.
pub fn measure_projective(
    rho: &DensityMatrix,
    h: &HermitianObservable,
    shots: u64,
    seed: u64,
) -> Result<EstimatorReport> {
    check(rho, &[h], shots)?;
    let spectrum = spectral_decomposition(h)?;
    let probs = probabilities(rho.matrix(), &spectrum.projectors);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Moments::new();
    for _ in 0..shots {
        m.push(spectrum.values[draw(&mut rng, &probs)]);
    }
    let exact = expectation(rho, h.matrix())?.re;
    Ok(m.finish(seed, Some(exact)))
}

/// `D = -i[a, b]`, the Hermitian witness whose expectation is `-i Tr(rho [a, b])`.
pub fn hermitian_witness(a: &HermitianObservable, b: &HermitianObservable) -> Result<HermitianObservable> {
    let c = commutator(a, b)?;
    HermitianObservable::new(c.scale(-I).hermitian_part())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapEstimate {
    /// `i` times the sampled mean of `D`.
    pub gap: Entry,
    pub estimator: EstimatorReport,
}

impl GapEstimate {
    pub fn gap(&self) -> Complex64 {
        Complex64::new(self.gap[0], self.gap[1])
    }
}

/// Estimates `Tr(rho [a, b])` by sampling `D = -i[a, b]`; `exact` in the report is `<D>`.
pub fn estimate_gap(
    rho: &DensityMatrix,
    a: &HermitianObservable,
    b: &HermitianObservable,
    shots: u64,
    seed: u64,
) -> Result<GapEstimate> {
    check(rho, &[a, b], shots)?;
    let d = hermitian_witness(a, b)?;
    let estimator = measure_projective(rho, &d, shots, seed)?;
    let gap = I * estimator.mean;
    Ok(GapEstimate {
        gap: [gap.re, gap.im],
        estimator,
    })
}

/// `sum_i a_i Tr(P_i rho P_i second)` for the spectral decomposition of `first`.
pub fn sequential_exact(rho: &DensityMatrix, first: &HermitianObservable, second: &HermitianObservable) -> Result<f64> {
    check(rho, &[first, second], 1)?;
    let spectrum = spectral_decomposition(first)?;
    let mut total = 0.0;
    for (a, p) in spectrum.values.iter().zip(&spectrum.projectors) {
        let post = &(p * rho.matrix()) * p;
        total += a * (&post * second.matrix()).trace().re;
    }
    Ok(total)
}

/// Measures `first`, applies the Lüders update `rho -> P_i rho P_i / p_i`, then
/// measures `second`; each shot records the product of the two outcomes.
pub fn sequential_expectation(
    rho: &DensityMatrix,
    first: &HermitianObservable,
    second: &HermitianObservable,
    shots: u64,
    seed: u64,
) -> Result<EstimatorReport> {
    check(rho, &[first, second], shots)?;
    let s1 = spectral_decomposition(first)?;
    let s2 = spectral_decomposition(second)?;
    let p1 = probabilities(rho.matrix(), &s1.projectors);
    // outcome distribution of `second` on each updated state
    let p2: Vec<Vec<f64>> = s1
        .projectors
        .iter()
        .zip(&p1)
        .map(|(p, &w)| {
            if w == 0.0 {
                vec![0.0; s2.values.len()]
            } else {
                probabilities(&(&(p * rho.matrix()) * p), &s2.projectors)
            }
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Moments::new();
    for _ in 0..shots {
        let i = draw(&mut rng, &p1);
        let j = draw(&mut rng, &p2[i]);
        m.push(s1.values[i] * s2.values[j]);
    }
    let exact = sequential_exact(rho, first, second)?;
    Ok(m.finish(seed, Some(exact)))
}
