//! Physical constants in the crate's unit system.
//!
//! Energies are in meV, lengths in nm, magnetic fields in T, electric fields in
//! mV/nm and frequencies in GHz. With these units `e·E·L` is already in meV.

/// ħ²/2m₀ in meV·nm².
pub const HBAR2_OVER_2M0: f64 = 38.099_821_2;
/// Bohr magneton in meV/T.
pub const MU_B: f64 = 0.057_883_818_06;
/// Conversion from `e·(mV/nm)·nm` to meV.
pub const E_SCALE: f64 = 1.0;
/// Planck constant in meV·ns, so that `E / H_PLANCK` is a frequency in GHz.
pub const H_PLANCK: f64 = 4.135_667_696e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar2_over_2m0: f64,
    pub mu_b: f64,
    pub e_scale: f64,
    pub h_planck: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar2_over_2m0: HBAR2_OVER_2M0,
        mu_b: MU_B,
        e_scale: E_SCALE,
        h_planck: H_PLANCK,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

/// Converts an energy in meV to a frequency in GHz.
pub fn mev_to_ghz(e: f64) -> f64 {
    e / H_PLANCK
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_in_expected_ranges() {
        let c = PhysicalConstants::default();
        assert!((38.0..=38.2).contains(&c.hbar2_over_2m0));
        assert!((0.0578..=0.0580).contains(&c.mu_b));
        assert_eq!(c.e_scale, 1.0);
    }

    #[test]
    fn frequency_conversion() {
        // 1 meV is about 241.8 GHz.
        assert!((mev_to_ghz(1.0) - 241.799_05).abs() < 1e-3);
    }
}
