//! Biaxial strain in the minimal basis.
//!
//! Strain shifts `Q` by `−(ν+1)b_v ε_∥`, which is the same as changing the
//! `1/Lz²` term of `Q`; `P` only moves rigidly.

use std::f64::consts::PI;

use crate::constants::HBAR2_OVER_2M0;
use crate::error::{Error, Result};
use crate::hamiltonian::{BoxGeometry, StrainConfig};
use crate::materials::MaterialParams;
use crate::minimal::MinimalModel;

/// Signed `Lz′²` (nm²) of the unstrained box equivalent to strain `eps_parallel`.
pub fn strain_equivalent_height(material: &MaterialParams, lz: f64, eps_parallel: f64) -> Result<f64> {
    let s = material.strain_parameters()?;
    let inv = 1.0 / (lz * lz) + (s.nu + 1.0) * s.b_v * eps_parallel / (2.0 * HBAR2_OVER_2M0 * PI * PI * material.gamma2);
    Ok(1.0 / inv)
}

/// Strain at which `Lz′²` diverges.
pub fn divergence_strain(material: &MaterialParams, lz: f64) -> Result<f64> {
    let s = material.strain_parameters()?;
    Ok(-2.0 * HBAR2_OVER_2M0 * PI * PI * material.gamma2 / (lz * lz * (s.nu + 1.0) * s.b_v))
}

fn bisect(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<Option<f64>> {
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(Some(lo));
    }
    if flo * fhi > 0.0 {
        return Ok(None);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 || (hi - lo).abs() <= 1e-15 * mid.abs().max(1e-12) {
            return Ok(Some(mid));
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// First sign change of `f` on a uniform scan of `[lo, hi]`, refined by bisection.
fn first_root(f: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, steps: usize) -> Result<Option<f64>> {
    let mut x0 = lo;
    let mut f0 = f(x0)?;
    for k in 1..=steps {
        let x1 = lo + (hi - lo) * k as f64 / steps as f64;
        let f1 = f(x1)?;
        if f0 == 0.0 {
            return Ok(Some(x0));
        }
        if f0 * f1 < 0.0 {
            return bisect(&f, x0, x1);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(None)
}

impl MinimalModel {
    /// Strain where the exact ground doublet turns from mostly heavy- to mostly
    /// light-hole (heavy-hole weight ½), searched on `[lo, hi]`.
    pub fn hh_lh_transition_strain(
        material: &MaterialParams,
        geometry: &BoxGeometry,
        e0: f64,
        lo: f64,
        hi: f64,
    ) -> Result<Option<f64>> {
        let w = |eps: f64| -> Result<f64> {
            Ok(MinimalModel::with_strain(material, geometry, StrainConfig { eps_parallel: eps })?.ground_hh_weight(e0)? - 0.5)
        };
        first_root(w, lo, hi, 200)
    }
}

/// Strains where the subband mixings balance, the two conditions under which
/// the Rabi frequency can dip to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingBalance {
    /// `h₁ = h₂` (equivalently `l₁ = l₂`).
    pub equal: Option<f64>,
    /// `h₂ = −l₁` (equivalently `h₁ = l₂`).
    pub crossed: Option<f64>,
}

impl MixingBalance {
    pub fn find(material: &MaterialParams, geometry: &BoxGeometry, lo: f64, hi: f64) -> Result<MixingBalance> {
        if lo >= hi {
            return Err(Error::InvalidInput(format!("empty strain range [{lo}, {hi}]")));
        }
        let subbands = |eps: f64| -> Result<_> {
            Ok(MinimalModel::with_strain(material, geometry, StrainConfig { eps_parallel: eps })?.subbands)
        };
        let equal = first_root(
            |e| {
                let [a, b] = subbands(e)?;
                Ok(a.h - b.h)
            },
            lo,
            hi,
            400,
        )?;
        let crossed = first_root(
            |e| {
                let [a, b] = subbands(e)?;
                Ok(b.h + a.l)
            },
            lo,
            hi,
            400,
        )?;
        Ok(MixingBalance { equal, crossed })
    }
}
