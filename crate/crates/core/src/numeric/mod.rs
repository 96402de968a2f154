//! Converged-basis pipeline: diagonalize, pair Kramers doublets, project the
//! field-linear terms on the ground doublet and sum over excited states.

mod doublets;
mod eigen;
mod rabi;

pub use doublets::{pair_doublets, KramersDoublet, KRAMERS_TOL};
pub use eigen::{solve_spectrum, solve_spectrum_with, SolverOptions, SpinorSpectrum};
pub use rabi::{qubit_h1, rabi_sum_over_states, QubitWorkspace, SumOverStates, DEFAULT_EXCITED_DOUBLETS};

use crate::tier::Tier;
use crate::C64;

/// Larmor and Rabi frequencies (GHz) at one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct RabiResult {
    pub f_larmor: f64,
    pub f_rabi: f64,
    /// `(|g_x|, |g_y|, |g_z|)` when the per-axis field operators are known.
    pub g_principal: Option<[f64; 3]>,
    pub tier: Tier,
    /// Share of the amplitude carried by the last 10% of excited doublets.
    pub tail_fraction: Option<f64>,
}

/// Eigen-decomposition of a 2×2 Hermitian matrix `[[p, q], [q*, r]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian2 {
    pub e_lower: f64,
    pub e_upper: f64,
    pub splitting: f64,
    pub lower: [C64; 2],
    pub upper: [C64; 2],
}

/// Returns `None` when the splitting is zero or below `1e-12 · scale`.
pub fn hermitian_2x2(p: f64, q: C64, r: f64, scale: f64) -> Option<Hermitian2> {
    let m = 0.5 * (p + r);
    let d = 0.5 * (p - r);
    let s = d.hypot(q.norm());
    if s == 0.0 || s <= 1e-12 * scale {
        return None;
    }
    let normalize = |v: [C64; 2]| {
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    };
    // Pick the row of (H − λ) whose pivot is bounded below by s.
    let (lower, upper) = if d >= 0.0 {
        ([-q, C64::from(d + s)], [C64::from(d + s), q.conj()])
    } else {
        ([C64::from(s - d), -q.conj()], [q, C64::from(s - d)])
    };
    Some(Hermitian2 { e_lower: m - s, e_upper: m + s, splitting: 2.0 * s, lower: normalize(lower), upper: normalize(upper) })
}
