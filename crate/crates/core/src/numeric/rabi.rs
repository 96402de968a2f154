//! Qubit Hamiltonian and first-order sum-over-states Rabi frequency.

use faer::Mat;

use super::doublets::{pair_doublets, KramersDoublet, KRAMERS_TOL};
use super::eigen::{solve_spectrum_with, SolverOptions};
use super::{hermitian_2x2, RabiResult};
use crate::basis::BasisCutoff;
use crate::constants::{E_SCALE, H_PLANCK, MU_B};
use crate::error::{Error, Result};
use crate::hamiltonian::{Assembler, BoxGeometry, HamiltonianMatrix, StrainConfig};
use crate::materials::MaterialParams;
use crate::minimal::DEGENERACY_TOL;
use crate::tier::Tier;
use crate::C64;

/// Default number of excited doublets in the sum over states.
pub const DEFAULT_EXCITED_DOUBLETS: usize = 40;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// `⟨ground|H_m′|ground⟩` in the `(v_up, v_down)` basis (meV).
pub fn qubit_h1(ground: &KramersDoublet, hm: &HamiltonianMatrix) -> [[C64; 2]; 2] {
    let hv = &hm.matrix * &ground.vectors;
    let p = ground.vectors.adjoint() * &hv;
    [[p[(0, 0)], p[(0, 1)]], [p[(1, 0)], p[(1, 1)]]]
}

/// Ground doublet plus `n_excited` excited doublets, with the dipole operator
/// projected onto their span. Field-linear operators are projected on demand
/// with [`SumOverStates::project`] and combined in the small space.
#[derive(Debug, Clone)]
pub struct SumOverStates {
    basis: Mat<C64>,
    /// Energy of each basis column (meV).
    energies: Vec<f64>,
    dipole: Mat<C64>,
}

impl SumOverStates {
    pub fn new(doublets: &[KramersDoublet], dipole: &HamiltonianMatrix, n_excited: usize) -> Result<Self> {
        if n_excited == 0 || doublets.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need a ground and at least one excited doublet, have {} doublets and n_excited = {n_excited}",
                doublets.len()
            )));
        }
        let used = &doublets[..doublets.len().min(n_excited + 1)];
        let gap = used[1].energy - used[0].energy;
        if gap.abs() < DEGENERACY_TOL {
            return Err(Error::NearDegenerate { context: "excited doublet vs ground doublet".into(), gap });
        }
        let dim = used[0].vectors.nrows();
        if dipole.dim() != dim {
            return Err(Error::InvalidInput(format!("dipole dimension {} differs from states {dim}", dipole.dim())));
        }
        let k = 2 * used.len();
        let basis = Mat::from_fn(dim, k, |i, j| used[j / 2].vectors[(i, j % 2)]);
        let energies = (0..k).map(|j| used[j / 2].energy).collect();
        let mut s = Self { basis, energies, dipole: Mat::zeros(0, 0) };
        s.dipole = s.project(dipole);
        Ok(s)
    }

    /// Number of excited doublets in the sum.
    pub fn n_excited(&self) -> usize {
        self.energies.len() / 2 - 1
    }

    pub fn ground_vectors(&self) -> faer::MatRef<'_, C64> {
        self.basis.subcols(0, 2)
    }

    /// `V† O V` over the retained states.
    pub fn project(&self, op: &HamiltonianMatrix) -> Mat<C64> {
        let ov = &op.matrix * &self.basis;
        self.basis.adjoint() * &ov
    }

    /// Larmor splitting and Rabi amplitude for a projected field-linear
    /// operator `hm` (from [`SumOverStates::project`], or a sum of such).
    pub fn evaluate(&self, hm: &Mat<C64>, e_ac: f64, tier: Tier) -> Result<RabiResult> {
        let k = self.energies.len();
        let mut scale = 0.0f64;
        for j in 0..k {
            for i in 0..k {
                scale = scale.max(hm[(i, j)].norm());
            }
        }
        let q = hermitian_2x2(hm[(0, 0)].re, hm[(0, 1)], hm[(1, 1)].re, scale).ok_or(Error::DegenerateQubit)?;
        let (s0, s1) = (q.lower, q.upper);
        let y = &self.dipole;
        let e_g = self.energies[0];
        let n_exc = self.n_excited();
        let mut per_doublet = vec![zero(); n_exc];
        for n in 2..k {
            let (mut y1n, mut hn0, mut h1n, mut yn0) = (zero(), zero(), zero(), zero());
            for a in 0..2 {
                y1n += s1[a].conj() * y[(a, n)];
                h1n += s1[a].conj() * hm[(a, n)];
                hn0 += hm[(n, a)] * s0[a];
                yn0 += y[(n, a)] * s0[a];
            }
            per_doublet[n / 2 - 1] += (y1n * hn0 + h1n * yn0) / (e_g - self.energies[n]);
        }
        let amp: C64 = per_doublet.iter().sum();
        let n_tail = n_exc.div_ceil(10);
        let tail: C64 = per_doublet[n_exc - n_tail..].iter().sum();
        let tail_fraction = (amp.norm() > 0.0).then(|| tail.norm() / amp.norm());
        Ok(RabiResult {
            f_larmor: q.splitting / H_PLANCK,
            f_rabi: E_SCALE * e_ac * amp.norm() / H_PLANCK,
            g_principal: None,
            tier,
            tail_fraction,
        })
    }
}

/// Sum over `n_excited` excited doublets with full-size operators.
pub fn rabi_sum_over_states(
    doublets: &[KramersDoublet],
    hm: &HamiltonianMatrix,
    dipole: &HamiltonianMatrix,
    e_ac: f64,
    n_excited: usize,
) -> Result<RabiResult> {
    let sos = SumOverStates::new(doublets, dipole, n_excited)?;
    let tier = if hm.terms.paramagnetic { Tier::ConvergedFull } else { Tier::ConvergedZeeman };
    sos.evaluate(&sos.project(hm), e_ac, tier)
}

/// Zero-field states of one dot and the field-linear operators for unit
/// fields along x, y, z, projected once so that any field direction costs a
/// few small matrix sums.
#[derive(Debug, Clone)]
pub struct QubitWorkspace {
    pub material: MaterialParams,
    pub geometry: BoxGeometry,
    pub cutoff: BasisCutoff,
    pub e0: f64,
    pub strain: Option<StrainConfig>,
    pub doublets: Vec<KramersDoublet>,
    /// Relative Hermiticity residual of the zero-field matrix.
    pub hermiticity_residual: f64,
    sos: SumOverStates,
    zeeman: [Mat<C64>; 3],
    paramagnetic: [Mat<C64>; 3],
}

impl QubitWorkspace {
    pub fn new(
        material: &MaterialParams,
        geometry: &BoxGeometry,
        cutoff: BasisCutoff,
        e0: f64,
        strain: Option<StrainConfig>,
        n_excited: usize,
    ) -> Result<Self> {
        Self::with_options(material, geometry, cutoff, e0, strain, n_excited, &SolverOptions::default())
    }

    pub fn with_options(
        material: &MaterialParams,
        geometry: &BoxGeometry,
        cutoff: BasisCutoff,
        e0: f64,
        strain: Option<StrainConfig>,
        n_excited: usize,
        opts: &SolverOptions,
    ) -> Result<Self> {
        if n_excited == 0 {
            return Err(Error::InvalidInput("n_excited must be at least 1".into()));
        }
        let asm = Assembler::new(geometry, cutoff)?;
        let mut h0 = asm.lk(material).add(&asm.electric(e0))?;
        if let Some(s) = &strain {
            h0 = h0.add(&asm.strain(material, s)?)?;
        }
        let hermiticity_residual = h0.hermiticity_residual();
        let n_states = (2 * n_excited + 4).min(h0.dim());
        let spectrum = solve_spectrum_with(&h0, n_states, opts)?;
        let doublets = pair_doublets(&spectrum, KRAMERS_TOL)?;
        let sos = SumOverStates::new(&doublets, &asm.dipole_y(), n_excited)?;
        let unit = |j: usize| {
            let mut b = [0.0; 3];
            b[j] = 1.0;
            b
        };
        let zeeman = [0, 1, 2].map(|j| sos.project(&asm.zeeman(material, unit(j))));
        let paramagnetic = [0, 1, 2].map(|j| sos.project(&asm.paramagnetic(material, unit(j))));
        Ok(Self {
            material: material.clone(),
            geometry: *geometry,
            cutoff: asm.cutoff(),
            e0,
            strain,
            doublets,
            hermiticity_residual,
            sos,
            zeeman,
            paramagnetic,
        })
    }

    pub fn n_excited(&self) -> usize {
        self.sos.n_excited()
    }

    /// Projected field-linear operator for field vector `b` (T).
    fn field_operator(&self, b: [f64; 3], with_paramagnetic: bool) -> Mat<C64> {
        let k = self.zeeman[0].nrows();
        Mat::from_fn(k, k, |r, c| {
            let mut v = zero();
            for j in 0..3 {
                v += self.zeeman[j][(r, c)] * b[j];
                if with_paramagnetic {
                    v += self.paramagnetic[j][(r, c)] * b[j];
                }
            }
            v
        })
    }

    /// Rabi and Larmor frequencies for field vector `b` (T) and drive `e_ac`.
    /// `tier` selects the field-linear terms: `ConvergedZeeman` or `ConvergedFull`.
    pub fn rabi(&self, b: [f64; 3], e_ac: f64, tier: Tier) -> Result<RabiResult> {
        let with_p = match tier {
            Tier::ConvergedZeeman => false,
            Tier::ConvergedFull => true,
            other => return Err(Error::InvalidInput(format!("tier {other} is not a converged-basis tier"))),
        };
        let mut r = self.sos.evaluate(&self.field_operator(b, with_p), e_ac, tier)?;
        r.g_principal = Some(self.g_factors(with_p));
        Ok(r)
    }

    /// Effective `|g|` along x, y and z from the ground-doublet splitting.
    pub fn g_factors(&self, with_paramagnetic: bool) -> [f64; 3] {
        [0, 1, 2].map(|j| {
            let mut b = [0.0; 3];
            b[j] = 1.0;
            let h = self.field_operator(b, with_paramagnetic);
            let d = 0.5 * (h[(0, 0)].re - h[(1, 1)].re);
            2.0 * d.hypot(h[(0, 1)].norm()) / MU_B
        })
    }

    /// Heavy-hole weight of the ground doublet.
    pub fn ground_hh_weight(&self) -> f64 {
        let v = self.sos.ground_vectors();
        let mut w = 0.0;
        for c in 0..2 {
            for i in 0..v.nrows() {
                if matches!(i % 4, 0 | 3) {
                    w += v[(i, c)].norm_sqr();
                }
            }
        }
        0.5 * w
    }
}
