//! Hole spin qubits in rectangular (hard-wall) quantum dots.
//!
//! The crate implements the four-band Luttinger-Kohn model of a valence-band
//! hole confined in an `Lx × Ly × Lz` box, in two complementary ways:
//!
//! * [`minimal`]: closed-form results in the minimal basis
//!   `{n_y = 1, 2} ⊗ {±3/2, ±1/2}` (subbands, electric mixing, g-factors,
//!   sum-over-states Rabi frequency, thin-dot expansions, strain mapping).
//! * [`numeric`]: the same Hamiltonian assembled over an arbitrary sine basis
//!   ([`basis`], [`hamiltonian`]), diagonalized, paired into Kramers doublets and
//!   fed to a numerical sum over excited states.
//!
//! Units are fixed throughout: meV, nm, T, mV/nm and GHz. See [`constants`].

pub mod basis;
pub mod constants;
pub mod error;
pub mod hamiltonian;
pub mod kv;
pub mod materials;
pub mod minimal;
pub mod numeric;
pub mod sweep;
pub mod tier;

pub use basis::{BasisCutoff, BasisIndex, Jz};
pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use hamiltonian::{
    BoxGeometry, FieldConfig, HamiltonianMatrix, Orientation, StrainConfig, TermSet,
};
pub use materials::{builtin_materials, figures_of_merit, FigureOfMerit, MaterialParams};
pub use minimal::{MinimalModel, QubitCoefficients};
pub use numeric::{KramersDoublet, RabiResult, SpinorSpectrum};
pub use tier::Tier;

/// Complex scalar used by every matrix in the crate.
pub type C64 = num_complex::Complex<f64>;
