//! Closed-form theory in the minimal basis `{n_y = 1, 2} ⊗ {±3/2, ±1/2}`
//! (`n_x = n_z = 1`).
//!
//! At zero field the 8×8 Hamiltonian splits into 2×2 blocks coupling
//! `|i, +3/2⟩` with `|i, −1/2⟩` (and `|i, −3/2⟩` with `|i, +1/2⟩`), whose
//! eigenstates `|i±⟩` are the mixed subbands. The static field couples
//! `n_y = 1` and `n_y = 2` through `Λ = 16eE₀L_y/(9π²)`.

mod pisum;
mod strain;
mod thin;

use std::f64::consts::PI;

use faer::Mat;

use crate::constants::{E_SCALE, HBAR2_OVER_2M0, H_PLANCK, MU_B};
use crate::error::{Error, Result};
use crate::hamiltonian::{spin, BoxGeometry, FieldConfig, Orientation, StrainConfig};
use crate::materials::MaterialParams;
use crate::numeric::{hermitian_2x2, RabiResult};
use crate::tier::Tier;
use crate::C64;

pub use pisum::{rabi_linearized, PiTerms};
pub use strain::{divergence_strain, strain_equivalent_height, MixingBalance};
pub use thin::{
    e_max_general, e_max_thin, g_sin_theta, h_sin_theta, light_hole_rabi, rabi_thin_dot, renormalization_factor,
    renormalized_rabi, ThinOrder,
};

/// Near-degeneracy threshold for perturbative denominators, in meV.
pub const DEGENERACY_TOL: f64 = 1e-6;

/// Confinement energies of the `n_y = 1, 2` subbands, in meV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubbandParams {
    pub p1: f64,
    pub q1: f64,
    pub r1: f64,
    pub p2: f64,
    pub q2: f64,
    pub r2: f64,
}

impl SubbandParams {
    pub fn pqr(&self, i: usize) -> (f64, f64, f64) {
        match i {
            1 => (self.p1, self.q1, self.r1),
            2 => (self.p2, self.q2, self.r2),
            _ => panic!("subband index {i} out of range"),
        }
    }
}

pub fn subband_params(material: &MaterialParams, geometry: &BoxGeometry) -> SubbandParams {
    let c = HBAR2_OVER_2M0 * PI * PI;
    let gr = match geometry.orientation {
        Orientation::Dot110 => material.gamma3,
        Orientation::Dot100 => material.gamma2,
    };
    let (ix, iy, iz) = (geometry.lx.powi(-2), geometry.ly.powi(-2), geometry.lz.powi(-2));
    let pqr = |n2: f64| {
        (
            c * material.gamma1 * (ix + n2 * iy + iz),
            c * material.gamma2 * (ix + n2 * iy - 2.0 * iz),
            -c * 3f64.sqrt() * gr * (ix - n2 * iy),
        )
    };
    let (p1, q1, r1) = pqr(1.0);
    let (p2, q2, r2) = pqr(4.0);
    SubbandParams { p1, q1, r1, p2, q2, r2 }
}

/// Subband parameters including the biaxial-strain shifts of P and Q.
pub fn subband_params_strained(
    material: &MaterialParams,
    geometry: &BoxGeometry,
    strain: &StrainConfig,
) -> Result<SubbandParams> {
    let s = material.strain_parameters()?;
    let dp = (s.nu - 2.0) * s.a_v * strain.eps_parallel;
    let dq = -(s.nu + 1.0) * s.b_v * strain.eps_parallel;
    let mut sp = subband_params(material, geometry);
    sp.p1 += dp;
    sp.p2 += dp;
    sp.q1 += dq;
    sp.q2 += dq;
    Ok(sp)
}

/// Eigenstates `|i−⟩ = h|i,+3/2⟩ + l|i,−1/2⟩` and `|i+⟩ = −l|i,+3/2⟩ + h|i,−1/2⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedSubband {
    pub h: f64,
    pub l: f64,
    pub e_minus: f64,
    pub e_plus: f64,
}

fn mix(p: f64, q: f64, r: f64) -> MixedSubband {
    let s = q.hypot(r);
    // Q + s without cancellation when Q < 0.
    let q_plus_s = if q >= 0.0 { q + s } else { r * r / (s - q) };
    let w = r.hypot(q_plus_s);
    let (h, l) = if w == 0.0 { (1.0, 0.0) } else { (-r / w, q_plus_s / w) };
    MixedSubband { h, l, e_minus: p - s, e_plus: p + s }
}

pub fn mixed_subbands(sp: &SubbandParams) -> [MixedSubband; 2] {
    [mix(sp.p1, sp.q1, sp.r1), mix(sp.p2, sp.q2, sp.r2)]
}

/// Dipole prefactor `16L_y/(9π²) = |⟨χ₂|y|χ₁⟩|` in nm.
pub fn dipole_length(ly: f64) -> f64 {
    16.0 * ly / (9.0 * PI * PI)
}

/// First-order admixture coefficients. `l_1m_2p` is the amplitude of `|2+⟩`
/// in the corrected `|1̃−⟩`, and so on; the reversed coefficients are the
/// negatives (`λ^{2a}_{1b} = −λ^{1b}_{2a}`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectricMixing {
    /// `Λ = 16eE₀L_y/(9π²)` in meV.
    pub lambda: f64,
    pub l_1m_2m: f64,
    pub l_1m_2p: f64,
    pub l_1p_2m: f64,
    pub l_1p_2p: f64,
    /// Thin-dot value of `l_1m_2m`.
    pub lambda_thin: f64,
}

impl ElectricMixing {
    pub fn l_2m_1m(&self) -> f64 {
        -self.l_1m_2m
    }

    pub fn l_2p_1m(&self) -> f64 {
        -self.l_1m_2p
    }

    pub fn l_2m_1p(&self) -> f64 {
        -self.l_1p_2m
    }

    pub fn l_2p_1p(&self) -> f64 {
        -self.l_1p_2p
    }
}

fn checked_gap(a: f64, b: f64, context: &str) -> Result<f64> {
    let gap = a - b;
    if gap.abs() < DEGENERACY_TOL {
        return Err(Error::NearDegenerate { context: context.to_string(), gap });
    }
    Ok(gap)
}

pub fn electric_mixing(
    material: &MaterialParams,
    ms: &[MixedSubband; 2],
    e0: f64,
    geometry: &BoxGeometry,
) -> Result<ElectricMixing> {
    let [s1, s2] = ms;
    let lambda = E_SCALE * e0 * dipole_length(geometry.ly);
    let same = s1.h * s2.h + s1.l * s2.l;
    let cross = s1.h * s2.l - s2.h * s1.l;
    Ok(ElectricMixing {
        lambda,
        l_1m_2m: lambda * same / checked_gap(s1.e_minus, s2.e_minus, "E(1-) - E(2-)")?,
        l_1p_2p: lambda * same / checked_gap(s1.e_plus, s2.e_plus, "E(1+) - E(2+)")?,
        l_1m_2p: -lambda * cross / checked_gap(s1.e_minus, s2.e_plus, "E(1-) - E(2+)")?,
        l_1p_2m: lambda * cross / checked_gap(s1.e_plus, s2.e_minus, "E(1+) - E(2-)")?,
        lambda_thin: -16.0 * E_SCALE * e0 * geometry.ly.powi(3)
            / (27.0 * PI.powi(4) * HBAR2_OVER_2M0 * (material.gamma1 + material.gamma2)),
    })
}

/// Ground-doublet g-factors and qubit eigenvector.
///
/// `|0₀⟩ = α|1−,⇑⟩ + β|1−,⇓⟩` is the lower Zeeman state, with `β` real and
/// non-negative. `alpha_beta` is `None` when the splitting vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitCoefficients {
    pub g_x: f64,
    pub g_y: f64,
    pub g_z: f64,
    pub alpha_beta: Option<(C64, f64)>,
    /// Larmor frequency in GHz.
    pub f_larmor: f64,
}

impl QubitCoefficients {
    pub fn is_degenerate(&self) -> bool {
        self.alpha_beta.is_none()
    }
}

pub fn qubit_coefficients(ground: &MixedSubband, material: &MaterialParams, fields: &FieldConfig) -> QubitCoefficients {
    let (h, l, k) = (ground.h, ground.l, material.kappa);
    let s3 = 3f64.sqrt();
    let g_x = 4.0 * k * (s3 * h * l + l * l);
    let g_y = 4.0 * k * (s3 * h * l - l * l);
    let g_z = 2.0 * k * (3.0 * h * h - l * l);
    let b = fields.direction();
    let a = g_z * b[2];
    let c = C64::new(g_x * b[0], g_y * b[1]);
    let s = a.hypot(c.norm());
    let f_larmor = MU_B * fields.b * s / H_PLANCK;
    let alpha_beta = if s == 0.0 || fields.b == 0.0 {
        None
    } else if a >= 0.0 {
        let (alpha, beta) = (-c.conj(), a + s);
        let n = (alpha.norm_sqr() + beta * beta).sqrt();
        Some((alpha / n, beta / n))
    } else {
        // (s − a, −c), rephased so the second component is real and non-negative.
        let m = c.norm();
        if m == 0.0 {
            Some((C64::new(1.0, 0.0), 0.0))
        } else {
            let alpha = -c.conj() * ((s - a) / m);
            let beta = m;
            let n = (alpha.norm_sqr() + beta * beta).sqrt();
            Some((alpha / n, beta / n))
        }
    };
    QubitCoefficients { g_x, g_y, g_z, alpha_beta, f_larmor }
}

/// Minimal-basis model of one dot, optionally strained.
#[derive(Debug, Clone)]
pub struct MinimalModel {
    pub material: MaterialParams,
    pub geometry: BoxGeometry,
    pub strain: Option<StrainConfig>,
    pub subband_params: SubbandParams,
    pub subbands: [MixedSubband; 2],
}

impl MinimalModel {
    pub fn new(material: &MaterialParams, geometry: &BoxGeometry) -> Self {
        let sp = subband_params(material, geometry);
        Self {
            material: material.clone(),
            geometry: *geometry,
            strain: None,
            subband_params: sp,
            subbands: mixed_subbands(&sp),
        }
    }

    pub fn with_strain(material: &MaterialParams, geometry: &BoxGeometry, strain: StrainConfig) -> Result<Self> {
        let sp = subband_params_strained(material, geometry, &strain)?;
        Ok(Self {
            material: material.clone(),
            geometry: *geometry,
            strain: Some(strain),
            subband_params: sp,
            subbands: mixed_subbands(&sp),
        })
    }

    pub fn mixing(&self, e0: f64) -> Result<ElectricMixing> {
        electric_mixing(&self.material, &self.subbands, e0, &self.geometry)
    }

    pub fn qubit(&self, fields: &FieldConfig) -> QubitCoefficients {
        qubit_coefficients(&self.subbands[0], &self.material, fields)
    }

    /// Closed-form zero-field energies `E_{1−}, E_{1+}, E_{2−}, E_{2+}`.
    pub fn zero_field_energies(&self) -> [f64; 4] {
        let [a, b] = self.subbands;
        [a.e_minus, a.e_plus, b.e_minus, b.e_plus]
    }

    /// The 8×8 Hamiltonian (kinetic, strain and static field) in the basis
    /// `jz + 4·(n_y − 1)`.
    pub fn hamiltonian(&self, e0: f64) -> [[f64; 8]; 8] {
        let mut h = [[0.0; 8]; 8];
        for i in 1..=2 {
            let (p, q, r) = self.subband_params.pqr(i);
            let o = 4 * (i - 1);
            for (s, d) in [p + q, p - q, p - q, p + q].into_iter().enumerate() {
                h[o + s][o + s] = d;
            }
            h[o][o + 2] = r;
            h[o + 2][o] = r;
            h[o + 1][o + 3] = r;
            h[o + 3][o + 1] = r;
        }
        let lambda = E_SCALE * e0 * dipole_length(self.geometry.ly);
        for s in 0..4 {
            h[s][4 + s] = lambda;
            h[4 + s][s] = lambda;
        }
        h
    }

    /// Exact diagonalization at static field `e0`.
    pub fn exact(&self, e0: f64) -> Result<MinimalEigen> {
        let h = self.hamiltonian(e0);
        let m = Mat::<f64>::from_fn(8, 8, |i, j| h[i][j]);
        let evd = m
            .self_adjoint_eigen(faer::Side::Lower)
            .map_err(|_| Error::NoConvergence { iterations: 0, residual: f64::NAN })?;
        let s = evd.S().column_vector();
        let u = evd.U();
        let mut energies = [0.0; 8];
        let mut vectors = [[0.0; 8]; 8];
        for k in 0..8 {
            energies[k] = s[k];
            for i in 0..8 {
                vectors[k][i] = u[(i, k)];
            }
        }
        Ok(MinimalEigen { energies, vectors, ly: self.geometry.ly, kappa: self.material.kappa })
    }

    /// First-order-in-`E0` Rabi frequency in GHz.
    pub fn linearized_rabi(&self, fields: &FieldConfig) -> Result<f64> {
        pisum::linearized(self, fields).map(|(f, _)| f)
    }

    /// Rabi frequency from the exact minimal-basis eigenstates, in GHz.
    pub fn exact_rabi(&self, fields: &FieldConfig) -> Result<RabiResult> {
        self.exact(fields.e0)?.rabi(fields.b_vector(), fields.e_ac)
    }

    /// `E_max` from the unperturbed dipole element and gap.
    pub fn e_max(&self) -> f64 {
        let [s1, s2] = self.subbands;
        let d1 = dipole_length(self.geometry.ly) * (s1.h * s2.h + s1.l * s2.l).abs();
        (s2.e_minus - s1.e_minus) / (2.0 * 2f64.sqrt() * E_SCALE * d1)
    }

    /// Heavy-hole weight of the exact ground doublet at static field `e0`.
    pub fn ground_hh_weight(&self, e0: f64) -> Result<f64> {
        Ok(self.exact(e0)?.ground_hh_weight())
    }
}

/// Exact eigenpairs of the 8×8 minimal Hamiltonian.
#[derive(Debug, Clone)]
pub struct MinimalEigen {
    pub energies: [f64; 8],
    /// `vectors[k]` is the eigenvector of `energies[k]`.
    pub vectors: [[f64; 8]; 8],
    ly: f64,
    kappa: f64,
}

impl MinimalEigen {
    pub fn ground_hh_weight(&self) -> f64 {
        let w = |v: &[f64; 8]| [0, 3, 4, 7].iter().map(|&i| v[i] * v[i]).sum::<f64>();
        0.5 * (w(&self.vectors[0]) + w(&self.vectors[1]))
    }

    /// Sum over the six excited states with the Zeeman term for field vector `b` (T).
    pub fn rabi(&self, b: [f64; 3], e_ac: f64) -> Result<RabiResult> {
        checked_gap(self.energies[2], self.energies[1], "ground doublet vs first excited state")?;
        let zs = spin::scale(&spin::dot_j(b), C64::new(2.0 * self.kappa * MU_B, 0.0));
        let hz = |v: &[C64; 8]| -> [C64; 8] {
            let mut out = [C64::new(0.0, 0.0); 8];
            for blk in 0..2 {
                for s in 0..4 {
                    for t in 0..4 {
                        out[4 * blk + s] += zs[s][t] * v[4 * blk + t];
                    }
                }
            }
            out
        };
        let y_elem = -dipole_length(self.ly);
        let y = |v: &[C64; 8]| -> [C64; 8] {
            let mut out = [C64::new(0.0, 0.0); 8];
            for s in 0..4 {
                out[s] = v[4 + s] * y_elem;
                out[4 + s] = v[s] * y_elem;
            }
            out
        };
        let dot = |a: &[C64; 8], b: &[C64; 8]| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>();
        let cvec = |k: usize| self.vectors[k].map(|x| C64::new(x, 0.0));

        let (g0, g1) = (cvec(0), cvec(1));
        let (hz0, hz1) = (hz(&g0), hz(&g1));
        let scale = 3.0 * (self.kappa * MU_B).abs() * b.iter().map(|x| x * x).sum::<f64>().sqrt();
        let q = hermitian_2x2(dot(&g0, &hz0).re, dot(&g0, &hz1), dot(&g1, &hz1).re, scale)
            .ok_or(Error::DegenerateQubit)?;
        let combine = |c: [C64; 2]| -> [C64; 8] {
            let mut v = [C64::new(0.0, 0.0); 8];
            for i in 0..8 {
                v[i] = c[0] * g0[i] + c[1] * g1[i];
            }
            v
        };
        let (s0, s1) = (combine(q.lower), combine(q.upper));
        let (hs0, ys0) = (hz(&s0), y(&s0));
        let (hs1, ys1) = (hz(&s1), y(&s1));
        let mut amp = C64::new(0.0, 0.0);
        for n in 2..8 {
            let vn = cvec(n);
            // ⟨1₀|y|n⟩⟨n|H|0₀⟩ + ⟨1₀|H|n⟩⟨n|y|0₀⟩ with y, H Hermitian.
            let term = dot(&ys1, &vn) * dot(&vn, &hs0) + dot(&hs1, &vn) * dot(&vn, &ys0);
            amp += term / (self.energies[0] - self.energies[n]);
        }
        Ok(RabiResult {
            f_larmor: q.splitting / H_PLANCK,
            f_rabi: E_SCALE * e_ac * amp.norm() / H_PLANCK,
            g_principal: None,
            tier: Tier::MinimalExact,
            tail_fraction: None,
        })
    }
}

/// Rabi frequency (GHz) from the exact minimal-basis eigenstates, with the
/// Zeeman term as the only field-linear perturbation.
pub fn minimal_exact_rabi(material: &MaterialParams, geometry: &BoxGeometry, fields: &FieldConfig) -> Result<f64> {
    Ok(MinimalModel::new(material, geometry).exact_rabi(fields)?.f_rabi)
}
