//! Lowest eigenpairs of a dense Hermitian matrix.
//!
//! Small problems use a full dense decomposition. Larger ones use
//! Chebyshev-filtered subspace iteration with Rayleigh-Ritz projection,
//! started from a fixed-seed random block so results are reproducible.

use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::BasisCutoff;
use crate::error::{Error, Result};
use crate::hamiltonian::{HamiltonianMatrix, TermSet};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Largest dimension solved densely.
    pub dense_limit: usize,
    pub max_iterations: usize,
    /// Required residual `‖Hv − Ev‖` relative to `‖H‖`.
    pub tolerance: f64,
    pub filter_degree: usize,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { dense_limit: 4096, max_iterations: 500, tolerance: 1e-10, filter_degree: 16, seed: 0x5eed_b0c5 }
    }
}

/// Lowest eigenpairs, ascending, with phase-fixed eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SpinorSpectrum {
    pub energies: Vec<f64>,
    pub vectors: Mat<C64>,
    pub cutoff: BasisCutoff,
    pub terms: TermSet,
}

impl SpinorSpectrum {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
}

/// Residual acceptance for both solver paths.
const RESIDUAL_LIMIT: f64 = 1e-9;

pub fn solve_spectrum(h: &HamiltonianMatrix, n_states: usize) -> Result<SpinorSpectrum> {
    solve_spectrum_with(h, n_states, &SolverOptions::default())
}

pub fn solve_spectrum_with(h: &HamiltonianMatrix, n_states: usize, opts: &SolverOptions) -> Result<SpinorSpectrum> {
    let dim = h.dim();
    if n_states == 0 || n_states > dim {
        return Err(Error::InvalidInput(format!("requested {n_states} eigenpairs of a {dim}-dimensional matrix")));
    }
    let (energies, mut vectors, norm) = if dim <= opts.dense_limit {
        dense(h, n_states)?
    } else {
        chebyshev(h, n_states, opts)?
    };
    let worst = worst_residual(&h.matrix, &energies, &vectors);
    if worst > RESIDUAL_LIMIT * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::NoConvergence { iterations: 0, residual: worst });
    }
    fix_phases(&mut vectors);
    Ok(SpinorSpectrum { energies, vectors, cutoff: h.cutoff, terms: h.terms })
}

fn dense(h: &HamiltonianMatrix, n: usize) -> Result<(Vec<f64>, Mat<C64>, f64)> {
    let evd = h
        .matrix
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::NoConvergence { iterations: 0, residual: f64::NAN })?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let all: Vec<f64> = (0..h.dim()).map(|k| s[k].re).collect();
    let norm = all.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let vectors = Mat::from_fn(h.dim(), n, |i, k| u[(i, k)]);
    Ok((all[..n].to_vec(), vectors, norm))
}

fn worst_residual(h: &Mat<C64>, energies: &[f64], v: &Mat<C64>) -> f64 {
    let hv = h * v;
    (0..energies.len())
        .map(|k| {
            (0..v.nrows())
                .map(|i| (hv[(i, k)] - v[(i, k)] * energies[k]).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

/// Rotates each column so its largest-magnitude component is real and positive.
fn fix_phases(v: &mut Mat<C64>) {
    for k in 0..v.ncols() {
        let mut best = (0usize, 0.0f64);
        for i in 0..v.nrows() {
            let a = v[(i, k)].norm();
            // Strict comparison with a small margin keeps ties on the first index.
            if a > best.1 * (1.0 + 1e-12) {
                best = (i, a);
            }
        }
        if best.1 == 0.0 {
            continue;
        }
        let phase = v[(best.0, k)].conj() / best.1;
        for i in 0..v.nrows() {
            v[(i, k)] *= phase;
        }
    }
}

/// Upper bound on the spectrum from Gershgorin discs.
fn gershgorin_upper(h: &Mat<C64>) -> f64 {
    let n = h.nrows();
    let mut radius = vec![0.0f64; n];
    for j in 0..n {
        for i in 0..n {
            if i != j {
                radius[i] += h[(i, j)].norm();
            }
        }
    }
    (0..n).map(|i| h[(i, i)].re + radius[i]).fold(f64::NEG_INFINITY, f64::max)
}

/// Rayleigh-Ritz on an orthonormal block: returns Ritz values and rotated block.
fn rayleigh_ritz(h: &Mat<C64>, q: &Mat<C64>) -> Result<(Vec<f64>, Mat<C64>)> {
    let hq = h * q;
    let small = q.adjoint() * &hq;
    let m = small.nrows();
    let sym = Mat::from_fn(m, m, |i, j| 0.5 * (small[(i, j)] + small[(j, i)].conj()));
    let evd = sym
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::NoConvergence { iterations: 0, residual: f64::NAN })?;
    let s = evd.S().column_vector();
    let theta = (0..m).map(|k| s[k].re).collect();
    Ok((theta, q * evd.U()))
}

fn orthonormalize(x: &Mat<C64>) -> Mat<C64> {
    x.qr().compute_thin_Q()
}

fn chebyshev(h: &HamiltonianMatrix, n: usize, opts: &SolverOptions) -> Result<(Vec<f64>, Mat<C64>, f64)> {
    let a = &h.matrix;
    let dim = h.dim();
    let block = (n + (n / 4).max(8)).min(dim);
    let upper = gershgorin_upper(a);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let start = Mat::from_fn(dim, block, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let (mut theta, mut v) = rayleigh_ritz(a, &orthonormalize(&start))?;
    let norm = upper.abs().max(theta[0].abs());

    let mut worst = f64::INFINITY;
    for iter in 0..opts.max_iterations {
        worst = worst_residual(a, &theta[..n], &v.subcols(0, n).to_owned());
        log::debug!("chebyshev iteration {iter}: worst residual {worst:e}");
        if worst <= opts.tolerance * norm {
            return Ok((theta[..n].to_vec(), v.subcols(0, n).to_owned(), norm));
        }
        // Damp the interval [theta_max, upper]; amplify everything below.
        let cut = theta[block - 1];
        let e = 0.5 * (upper - cut);
        let c = 0.5 * (upper + cut);
        let mut sigma = e / (theta[0] - c);
        let tau = 2.0 / sigma;
        let mut x = v.clone();
        let mut y = Mat::from_fn(dim, block, |_, _| C64::new(0.0, 0.0));
        let hx = a * &x;
        for j in 0..block {
            for i in 0..dim {
                y[(i, j)] = (hx[(i, j)] - x[(i, j)] * c) * (sigma / e);
            }
        }
        for _ in 2..=opts.filter_degree {
            let sigma_new = 1.0 / (tau - sigma);
            let hy = a * &y;
            let next = Mat::from_fn(dim, block, |i, j| {
                (hy[(i, j)] - y[(i, j)] * c) * (2.0 * sigma_new / e) - x[(i, j)] * (sigma * sigma_new)
            });
            x = y;
            y = next;
            sigma = sigma_new;
        }
        let (t, w) = rayleigh_ritz(a, &orthonormalize(&y))?;
        theta = t;
        v = w;
    }
    Err(Error::NoConvergence { iterations: opts.max_iterations, residual: worst })
}
