use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{partial_trace, project_a, ZERO_PROB};
use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix, PureState};

/// Residual differences below this count as ties (earlier grid point wins).
const TIE_EPS: f64 = 1e-13;

/// Coordinate-descent refinement passes; the step halves after each.
const REFINE_ITERATIONS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub tol: f64,
    pub grid: usize,
    /// Worker threads for the grid scan; `<= 1` scans serially. Results do not depend on it.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            grid: 48,
            jobs: 1,
        }
    }
}

/// Outcome of the search for a projective basis on qubit A that leaves `rho_B` unchanged.
///
/// `theta`, `phi` and `residual` describe the best basis found even when
/// `found` is false; a negative result only holds at the given grid resolution.
#[derive(Debug, Clone)]
pub struct WeakLocalityVerdict {
    pub found: bool,
    pub basis: Option<[PureState; 2]>,
    pub theta: f64,
    pub phi: f64,
    /// Largest `||rho_iB - rho_B||_F` over the two outcomes at the best basis.
    pub residual: f64,
    pub grid_resolution: usize,
    pub tolerance: f64,
}

/// `{|φ(θ,ϕ)>, |φ⊥>}` with `|φ> = cos(θ/2)|0> + e^{iϕ} sin(θ/2)|1>`.
pub fn bloch_basis(theta: f64, phi: f64) -> [PureState; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    let up = vec![Complex64::new(c, 0.0), e * s];
    let down = vec![Complex64::new(s, 0.0), -e * c];
    [
        PureState::normalized(up).expect("unit by construction"),
        PureState::normalized(down).expect("unit by construction"),
    ]
}

struct Scorer<'a> {
    rho: &'a ComplexMatrix,
    rho_b: ComplexMatrix,
    db: usize,
}

impl Scorer<'_> {
    fn score(&self, theta: f64, phi: f64) -> f64 {
        bloch_basis(theta, phi)
            .iter()
            .map(|v| {
                let sigma = project_a(self.rho, v.amplitudes(), self.db);
                let p = sigma.trace().re;
                if p < ZERO_PROB {
                    0.0
                } else {
                    sigma.hermitian_part().scale_real(1.0 / p).distance(&self.rho_b)
                }
            })
            .fold(0.0, f64::max)
    }
}

/// [`weak_locality_search_with`] using a serial scan.
pub fn weak_locality_search(rho_ab: &DensityMatrix, tol: f64, grid: usize) -> Result<WeakLocalityVerdict> {
    weak_locality_search_with(
        rho_ab,
        &SearchOptions {
            tol,
            grid,
            jobs: 1,
        },
    )
}

/// Scans `grid x grid` Bloch-sphere bases (`θ` over `[0, π]` inclusive, `ϕ` over
/// `[0, 2π)`), then refines the best point by coordinate descent.
pub fn weak_locality_search_with(rho_ab: &DensityMatrix, opts: &SearchOptions) -> Result<WeakLocalityVerdict> {
    let (da, db) = rho_ab.bipartite_dims()?;
    if da != 2 {
        return Err(Error::UnsupportedDimension(da));
    }
    if opts.grid < 2 {
        return Err(Error::InvalidParameter(format!("grid must be at least 2, got {}", opts.grid)));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let scorer = Scorer {
        rho: rho_ab.matrix(),
        rho_b: partial_trace(rho_ab, 1)?.into_matrix(),
        db,
    };
    let n = opts.grid;
    let d_theta = PI / (n - 1) as f64;
    let d_phi = 2.0 * PI / n as f64;
    let points: Vec<(f64, f64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i as f64 * d_theta, j as f64 * d_phi)))
        .collect();

    let scores: Vec<f64> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
        pool.install(|| points.par_iter().map(|&(t, p)| scorer.score(t, p)).collect())
    } else {
        points.iter().map(|&(t, p)| scorer.score(t, p)).collect()
    };

    // ordered reduction: serial and parallel scans pick the same point
    let mut best = 0;
    for (k, &s) in scores.iter().enumerate() {
        if s < scores[best] - TIE_EPS {
            best = k;
        }
    }
    let (mut theta, mut phi) = points[best];
    let mut residual = scores[best];

    let mut step_theta = d_theta;
    let mut step_phi = d_phi;
    for _ in 0..REFINE_ITERATIONS {
        for t in [theta + step_theta, theta - step_theta] {
            let t = t.clamp(0.0, PI);
            let s = scorer.score(t, phi);
            if s < residual - TIE_EPS {
                theta = t;
                residual = s;
            }
        }
        for p in [phi + step_phi, phi - step_phi] {
            let p = p.rem_euclid(2.0 * PI);
            let s = scorer.score(theta, p);
            if s < residual - TIE_EPS {
                phi = p;
                residual = s;
            }
        }
        step_theta /= 2.0;
        step_phi /= 2.0;
    }

    let found = residual < opts.tol;
    Ok(WeakLocalityVerdict {
        found,
        basis: found.then(|| bloch_basis(theta, phi)),
        theta,
        phi,
        residual,
        grid_resolution: n,
        tolerance: opts.tol,
    })
}
