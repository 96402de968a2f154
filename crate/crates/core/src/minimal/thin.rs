//! Thin-dot (`Lz ≪ Lx, Ly`) expansions and the large-`E0` renormalization.

use std::f64::consts::PI;

use crate::constants::{E_SCALE, HBAR2_OVER_2M0, H_PLANCK, MU_B};
use crate::error::{Error, Result};
use crate::hamiltonian::{BoxGeometry, FieldConfig, Orientation};
use crate::materials::MaterialParams;
use crate::minimal::MinimalModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThinOrder {
    Second,
    Fourth,
}

/// Luttinger parameter of the in-plane `R` coupling.
fn gamma_r(material: &MaterialParams, orientation: Orientation) -> f64 {
    match orientation {
        Orientation::Dot110 => material.gamma3,
        Orientation::Dot100 => material.gamma2,
    }
}

/// `G(θ)·sinθ`, written so that `θ = π/2` needs no `tan θ`.
pub fn g_sin_theta(material: &MaterialParams, geometry: &BoxGeometry, theta: f64) -> f64 {
    let lz2 = geometry.lz * geometry.lz;
    let f = gamma_r(material, geometry.orientation) / (2.0 * material.gamma2)
        * (lz2 / (geometry.ly * geometry.ly) - lz2 / (geometry.lx * geometry.lx));
    let (s, c) = theta.sin_cos();
    if f == 0.0 {
        return s.abs();
    }
    (s * c).abs() / (c * c + f * f * s * s).sqrt()
}

/// `H(θ, φ)·sinθ` for the light-hole pair.
pub fn h_sin_theta(theta: f64, phi: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let s2p = (2.0 * phi).sin();
    s.abs() * ((c * c + 4.0 * s * s * s2p * s2p) / (c * c + 4.0 * s * s)).sqrt()
}

fn prefactor(material: &MaterialParams, geometry: &BoxGeometry, fields: &FieldConfig, mass_sum: f64) -> f64 {
    let c = HBAR2_OVER_2M0;
    256.0 / (81.0 * PI.powi(8)) * MU_B * material.kappa.abs() * fields.b * E_SCALE * E_SCALE * fields.e_ac
        * fields.e0.abs()
        * geometry.ly.powi(4)
        * geometry.lz.powi(2)
        * gamma_r(material, geometry.orientation)
        / (material.gamma2 * mass_sum * mass_sum * c * c)
        / H_PLANCK
}

/// Thin-dot Rabi frequency in GHz at second or fourth order in `Lz`.
pub fn rabi_thin_dot(material: &MaterialParams, geometry: &BoxGeometry, fields: &FieldConfig, order: ThinOrder) -> f64 {
    let (g1, g2) = (material.gamma1, material.gamma2);
    let f2 = prefactor(material, geometry, fields, g1 + g2) * g_sin_theta(material, geometry, fields.theta);
    match order {
        ThinOrder::Second => f2,
        ThinOrder::Fourth => {
            let gr = gamma_r(material, geometry.orientation);
            let a1 = 10.0 * (g1 * g2 + g2 * g2 + 3.0 * gr * gr);
            let a2 = 12.0 * gr * gr;
            let a3 = gr * (g1 + g2);
            let lz2 = geometry.lz * geometry.lz;
            let (ry, rx) = (lz2 / (geometry.ly * geometry.ly), lz2 / (geometry.lx * geometry.lx));
            let corr = a1 * ry - a2 * rx + a3 * (5.0 * ry - 2.0 * rx) * (2.0 * fields.phi).cos();
            f2 * (1.0 + corr / (4.0 * g2 * (g1 + g2)))
        }
    }
}

/// Thin-dot Rabi frequency (GHz) of the light-hole `|1+⟩` pair.
pub fn light_hole_rabi(material: &MaterialParams, geometry: &BoxGeometry, fields: &FieldConfig) -> Result<f64> {
    if geometry.orientation != Orientation::Dot110 {
        return Err(Error::InvalidInput("light-hole Rabi frequency is only available for [110] dots".into()));
    }
    Ok(prefactor(material, geometry, fields, material.gamma1 - material.gamma2) * h_sin_theta(fields.theta, fields.phi))
}

/// `E_max` (mV/nm) to lowest order in `Lz/L`.
pub fn e_max_thin(material: &MaterialParams, geometry: &BoxGeometry) -> f64 {
    27.0 * PI.powi(4) * 2.0 * HBAR2_OVER_2M0 * (material.gamma1 + material.gamma2)
        / (64.0 * 2f64.sqrt() * E_SCALE * geometry.ly.powi(3))
}

/// `E_max` (mV/nm) from the minimal-basis dipole element and gap.
pub fn e_max_general(material: &MaterialParams, geometry: &BoxGeometry) -> f64 {
    MinimalModel::new(material, geometry).e_max()
}

/// `F_e(E0) = [1 + (E0/E_max)²/2]^(−3/2)`.
pub fn renormalization_factor(e0: f64, e_max: f64) -> f64 {
    let x = e0 / e_max;
    (1.0 + 0.5 * x * x).powf(-1.5)
}

pub fn renormalized_rabi(fr_linear: f64, e0: f64, e_max: f64) -> f64 {
    fr_linear * renormalization_factor(e0, e_max)
}
