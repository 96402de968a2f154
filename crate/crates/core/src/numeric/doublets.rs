//! Grouping a zero-field spectrum into Kramers doublets.

use faer::Mat;

use super::eigen::SpinorSpectrum;
use crate::error::{Error, Result};
use crate::C64;

/// Default pairing tolerance in meV.
pub const KRAMERS_TOL: f64 = 1e-8;

/// A degenerate pair of orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct KramersDoublet {
    /// Mean energy of the pair (meV).
    pub energy: f64,
    /// Energy difference within the pair (meV).
    pub gap: f64,
    /// `dim × 2`, columns `v_up`, `v_down`.
    pub vectors: Mat<C64>,
    /// Rank by energy, ground doublet = 0.
    pub index: usize,
}

impl KramersDoublet {
    pub fn v_up(&self) -> faer::ColRef<'_, C64> {
        self.vectors.col(0)
    }

    pub fn v_down(&self) -> faer::ColRef<'_, C64> {
        self.vectors.col(1)
    }

    /// The same doublet with its basis rotated by the 2×2 unitary `u`
    /// (`new_k = Σ_j old_j u[j][k]`).
    pub fn rotated(&self, u: [[C64; 2]; 2]) -> Self {
        let v = &self.vectors;
        let vectors = Mat::from_fn(v.nrows(), 2, |i, k| v[(i, 0)] * u[0][k] + v[(i, 1)] * u[1][k]);
        Self { vectors, ..self.clone() }
    }
}

/// Greedy adjacent pairing of levels `(0,1), (2,3), …`.
///
/// Fails when a pair is split by more than `tol`, or when a pair's partner is
/// as close to a neighbouring level as to itself (pairing ambiguous). A single
/// unpaired state at the top is dropped with a warning.
pub fn pair_doublets(spectrum: &SpinorSpectrum, tol: f64) -> Result<Vec<KramersDoublet>> {
    let e = &spectrum.energies;
    let mut n = e.len();
    if n % 2 == 1 {
        log::warn!("dropping unpaired top level at {} meV", e[n - 1]);
        n -= 1;
    }
    let mut out = Vec::with_capacity(n / 2);
    for k in 0..n / 2 {
        let (a, b) = (2 * k, 2 * k + 1);
        let gap = (e[b] - e[a]).abs();
        if gap > tol {
            return Err(Error::Pairing(format!(
                "levels {a} and {b} at {} and {} meV differ by {gap:e} meV (tolerance {tol:e})",
                e[a], e[b]
            )));
        }
        if b + 1 < e.len() && (e[b + 1] - e[b]).abs() <= tol {
            return Err(Error::Pairing(format!(
                "ambiguous pairing: levels {a}, {b}, {} at {}, {}, {} meV lie within {tol:e} meV",
                b + 1,
                e[a],
                e[b],
                e[b + 1]
            )));
        }
        let vectors = Mat::from_fn(spectrum.vectors.nrows(), 2, |i, j| spectrum.vectors[(i, a + j)]);
        out.push(KramersDoublet { energy: 0.5 * (e[a] + e[b]), gap, vectors, index: k });
    }
    Ok(out)
}
