//! Hamiltonian assembly over the sine basis.
//!
//! Every term is a sum of separable pieces `c · (O_x ⊗ O_y ⊗ O_z) ⊗ S`, with
//! one-dimensional operators from [`crate::basis`] and a 4×4 spin matrix `S`.
//! The kinetic term is `(ħ²/2m₀) Σ_ij Γ_ij k_i k_j` and the paramagnetic term
//! collects the pieces linear in the vector potential `A = B×r/2` (gauge origin
//! at the box center). The diamagnetic term, quadratic in `A`, is not modelled.

pub mod spin;

use std::fmt;

use faer::Mat;

use crate::basis::{AxisOp, AxisTables, BasisCutoff};
use crate::constants::{HBAR2_OVER_2M0, MU_B};
use crate::error::{Error, Result};
use crate::materials::MaterialParams;
use crate::C64;

pub use spin::Spin4;

/// Default ceiling on the spinor dimension accepted by the assembler.
pub const DEFAULT_MAX_DIM: usize = 16_384;

/// In-plane crystal axes of the box edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// x ∥ [110], y ∥ [1̄10], z ∥ [001].
    Dot110,
    /// x ∥ [100], y ∥ [010], z ∥ [001].
    Dot100,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Dot110 => "110",
            Orientation::Dot100 => "100",
        })
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "110" | "dot110" | "dot_110" => Ok(Orientation::Dot110),
            "100" | "dot100" | "dot_100" => Ok(Orientation::Dot100),
            other => Err(Error::InvalidInput(format!("unknown orientation `{other}` (expected 110 or 100)"))),
        }
    }
}

/// Box side lengths in nm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxGeometry {
    pub lx: f64,
    pub ly: f64,
    pub lz: f64,
    pub orientation: Orientation,
}

impl BoxGeometry {
    pub fn new(lx: f64, ly: f64, lz: f64, orientation: Orientation) -> Result<Self> {
        for (name, v) in [("Lx", lx), ("Ly", ly), ("Lz", lz)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!("{name} = {v} must be positive")));
            }
        }
        Ok(Self { lx, ly, lz, orientation })
    }

    pub fn lengths(&self) -> [f64; 3] {
        [self.lx, self.ly, self.lz]
    }

    pub fn with_lz(&self, lz: f64) -> Result<Self> {
        Self::new(self.lx, self.ly, lz, self.orientation)
    }
}

/// Static and driving fields.
///
/// The azimuth `phi` is measured from the y axis (the static-field axis) towards
/// x, so `b̂ = (sinθ sinφ, sinθ cosφ, cosθ)`; `θ = 45°, φ = 0` is `B ∥ ŷ + ẑ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    /// Magnetic field magnitude in T.
    pub b: f64,
    /// Polar angle in radians.
    pub theta: f64,
    /// Azimuthal angle in radians.
    pub phi: f64,
    /// Static electric field along +y in mV/nm.
    pub e0: f64,
    /// RF drive amplitude along +y in mV/nm.
    pub e_ac: f64,
}

impl FieldConfig {
    pub fn new(b: f64, theta: f64, phi: f64, e0: f64, e_ac: f64) -> Result<Self> {
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::InvalidInput(format!("B = {b} must be non-negative")));
        }
        for (name, v) in [("theta", theta), ("phi", phi), ("E0", e0), ("E_ac", e_ac)] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be finite")));
            }
        }
        Ok(Self { b, theta, phi, e0, e_ac })
    }

    /// Same, with angles given in degrees.
    pub fn degrees(b: f64, theta_deg: f64, phi_deg: f64, e0: f64, e_ac: f64) -> Result<Self> {
        Self::new(b, theta_deg.to_radians(), phi_deg.to_radians(), e0, e_ac)
    }

    pub fn direction(&self) -> [f64; 3] {
        direction(self.theta, self.phi)
    }

    /// The magnetic field vector in T.
    pub fn b_vector(&self) -> [f64; 3] {
        self.direction().map(|c| c * self.b)
    }
}

/// Unit vector for polar angle `theta` and azimuth `phi` measured from y.
pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * sp, st * cp, ct]
}

/// Biaxial in-plane strain `ε_xx = ε_yy = ε_∥`, `ε_zz = −ν ε_∥`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrainConfig {
    pub eps_parallel: f64,
}

impl StrainConfig {
    pub fn eps_perp(&self, nu: f64) -> f64 {
        -nu * self.eps_parallel
    }

    /// Heavy- and light-hole band-edge shifts `(ΔE_HH, ΔE_LH)` in meV.
    pub fn band_shifts(&self, material: &MaterialParams) -> Result<(f64, f64)> {
        let p = material.strain_parameters()?;
        let pe = (p.nu - 2.0) * p.a_v * self.eps_parallel;
        let qe = -(p.nu + 1.0) * p.b_v * self.eps_parallel;
        Ok((pe + qe, pe - qe))
    }
}

/// Which physical terms a matrix contains.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TermSet {
    pub lk: bool,
    pub electric: bool,
    pub zeeman: bool,
    pub paramagnetic: bool,
    pub strain: bool,
    pub dipole: bool,
}

impl TermSet {
    pub fn union(self, o: TermSet) -> TermSet {
        TermSet {
            lk: self.lk || o.lk,
            electric: self.electric || o.electric,
            zeeman: self.zeeman || o.zeeman,
            paramagnetic: self.paramagnetic || o.paramagnetic,
            strain: self.strain || o.strain,
            dipole: self.dipole || o.dipole,
        }
    }
}

impl fmt::Display for TermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [
            (self.lk, "lk"),
            (self.electric, "electric"),
            (self.zeeman, "zeeman"),
            (self.paramagnetic, "paramagnetic"),
            (self.strain, "strain"),
            (self.dipole, "dipole"),
        ];
        let on: Vec<_> = names.iter().filter(|(b, _)| *b).map(|(_, n)| *n).collect();
        if on.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&on.join("+"))
        }
    }
}

/// Dense Hermitian matrix in meV over a [`BasisCutoff`].
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    pub matrix: Mat<C64>,
    pub cutoff: BasisCutoff,
    pub terms: TermSet,
}

impl HamiltonianMatrix {
    pub fn zeros(cutoff: BasisCutoff) -> Self {
        let d = cutoff.dim();
        Self { matrix: Mat::zeros(d, d), cutoff, terms: TermSet::default() }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for j in 0..self.dim() {
            for x in self.matrix.col(j).iter() {
                m = m.max(x.norm());
            }
        }
        m
    }

    /// `max |H_ij − conj(H_ji)| / max |H_ij|` (zero for the zero matrix).
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim();
        let mut r = 0.0f64;
        for j in 0..n {
            for i in j..n {
                r = r.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        let scale = self.max_abs();
        if scale == 0.0 {
            0.0
        } else {
            r / scale
        }
    }

    pub fn add(&self, other: &HamiltonianMatrix) -> Result<HamiltonianMatrix> {
        if self.cutoff != other.cutoff {
            return Err(Error::InvalidInput(format!(
                "cannot add matrices over cutoffs {} and {}",
                self.cutoff, other.cutoff
            )));
        }
        Ok(HamiltonianMatrix {
            matrix: &self.matrix + &other.matrix,
            cutoff: self.cutoff,
            terms: self.terms.union(other.terms),
        })
    }

    pub fn scaled(&self, s: f64) -> HamiltonianMatrix {
        HamiltonianMatrix {
            matrix: Mat::from_fn(self.dim(), self.dim(), |i, j| self.matrix[(i, j)] * s),
            cutoff: self.cutoff,
            terms: self.terms,
        }
    }
}

/// `coef · (O_x ⊗ O_y ⊗ O_z) ⊗ spin`.
#[derive(Debug, Clone)]
struct Term {
    coef: C64,
    ops: [AxisOp; 3],
    spin: Spin4,
}

/// Precomputed one-dimensional tables for a geometry and cutoff.
#[derive(Debug, Clone)]
pub struct Assembler {
    geometry: BoxGeometry,
    cutoff: BasisCutoff,
    tables: [AxisTables; 3],
}

impl Assembler {
    pub fn new(geometry: &BoxGeometry, cutoff: BasisCutoff) -> Result<Self> {
        Self::with_max_dim(geometry, cutoff, DEFAULT_MAX_DIM)
    }

    pub fn with_max_dim(geometry: &BoxGeometry, cutoff: BasisCutoff, max_dim: usize) -> Result<Self> {
        let cutoff = BasisCutoff::new(cutoff.nx, cutoff.ny, cutoff.nz)?;
        let dim = cutoff.dim();
        if dim > max_dim {
            return Err(Error::DimensionTooLarge { dim, max: max_dim });
        }
        let l = geometry.lengths();
        let n = cutoff.axes();
        Ok(Self {
            geometry: *geometry,
            cutoff,
            tables: [0, 1, 2].map(|i| AxisTables::new(n[i], l[i])),
        })
    }

    pub fn cutoff(&self) -> BasisCutoff {
        self.cutoff
    }

    pub fn geometry(&self) -> &BoxGeometry {
        &self.geometry
    }

    fn build(&self, terms: &[Term], set: TermSet) -> HamiltonianMatrix {
        let mut h = HamiltonianMatrix::zeros(self.cutoff);
        h.terms = set;
        let n = self.cutoff.axes();
        for term in terms {
            let spin_nz: Vec<(usize, usize, C64)> = (0..16)
                .map(|k| (k / 4, k % 4, term.spin[k / 4][k % 4]))
                .filter(|(_, _, v)| *v != C64::new(0.0, 0.0))
                .collect();
            if spin_nz.is_empty() || term.coef == C64::new(0.0, 0.0) {
                continue;
            }
            let axis_nz: [Vec<(usize, usize, f64)>; 3] = [0, 1, 2].map(|ax| {
                let mut v = Vec::new();
                for a in 0..n[ax] {
                    for b in 0..n[ax] {
                        let x = self.tables[ax].get(term.ops[ax], a, b);
                        if x != 0.0 {
                            v.push((a, b, x));
                        }
                    }
                }
                v
            });
            for &(az, bz, vz) in &axis_nz[2] {
                for &(ay, by, vy) in &axis_nz[1] {
                    for &(ax, bx, vx) in &axis_nz[0] {
                        let ea = ax + n[0] * (ay + n[1] * az);
                        let eb = bx + n[0] * (by + n[1] * bz);
                        let c = term.coef * (vx * vy * vz);
                        for &(s, t, v) in &spin_nz {
                            h.matrix[(4 * ea + s, 4 * eb + t)] += c * v;
                        }
                    }
                }
            }
        }
        h
    }

    fn kinetic_terms(&self, material: &MaterialParams) -> Vec<Term> {
        let gammas = spin::luttinger_gammas(material, self.geometry.orientation);
        let mut terms = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let mut ops = [AxisOp::Identity; 3];
                let coef = if i == j {
                    ops[i] = AxisOp::KSquared;
                    HBAR2_OVER_2M0
                } else {
                    // k_i k_j = (−i∂_i)(−i∂_j) = −∂_i∂_j on different axes.
                    ops[i] = AxisOp::Derivative;
                    ops[j] = AxisOp::Derivative;
                    -HBAR2_OVER_2M0
                };
                terms.push(Term { coef: C64::new(coef, 0.0), ops, spin: gammas[i][j] });
            }
        }
        terms
    }

    /// Luttinger-Kohn kinetic energy.
    pub fn lk(&self, material: &MaterialParams) -> HamiltonianMatrix {
        self.build(&self.kinetic_terms(material), TermSet { lk: true, ..TermSet::default() })
    }

    /// Position operator `y ⊗ 1₄` in nm.
    pub fn dipole_y(&self) -> HamiltonianMatrix {
        let term = Term {
            coef: C64::new(1.0, 0.0),
            ops: [AxisOp::Identity, AxisOp::Position, AxisOp::Identity],
            spin: spin::identity(),
        };
        self.build(&[term], TermSet { dipole: true, ..TermSet::default() })
    }

    /// Static-field potential `−eE₀y`.
    pub fn electric(&self, e0: f64) -> HamiltonianMatrix {
        let term = Term {
            coef: C64::new(-e0 * crate::constants::E_SCALE, 0.0),
            ops: [AxisOp::Identity, AxisOp::Position, AxisOp::Identity],
            spin: spin::identity(),
        };
        self.build(&[term], TermSet { electric: true, ..TermSet::default() })
    }

    /// Zeeman term `2κμ_B B·J` for a field vector in T.
    pub fn zeeman(&self, material: &MaterialParams, b: [f64; 3]) -> HamiltonianMatrix {
        let term = Term {
            coef: C64::new(2.0 * material.kappa * MU_B, 0.0),
            ops: [AxisOp::Identity; 3],
            spin: spin::dot_j(b),
        };
        self.build(&[term], TermSet { zeeman: true, ..TermSet::default() })
    }

    /// Paramagnetic term for a field vector in T.
    pub fn paramagnetic(&self, material: &MaterialParams, b: [f64; 3]) -> HamiltonianMatrix {
        let gammas = spin::luttinger_gammas(material, self.geometry.orientation);
        // A_j = Σ_l a[j][l] r_l with A = B×r/2.
        let a = [
            [0.0, -b[2] / 2.0, b[1] / 2.0],
            [b[2] / 2.0, 0.0, -b[0] / 2.0],
            [-b[1] / 2.0, b[0] / 2.0, 0.0],
        ];
        // {k_i, r_l}: −2i r_l ∂_i for l ≠ i, −i {∂_i, r_i} for l = i.
        let anticommutator = |i: usize, l: usize| -> (C64, [AxisOp; 3]) {
            let mut ops = [AxisOp::Identity; 3];
            if i == l {
                ops[i] = AxisOp::Anticommutator;
                (C64::new(0.0, -1.0), ops)
            } else {
                ops[i] = AxisOp::Derivative;
                ops[l] = AxisOp::Position;
                (C64::new(0.0, -2.0), ops)
            }
        };
        let mut terms = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                // M_ij = ½ Σ_l (a_jl {k_i, r_l} + a_il {k_j, r_l})
                for l in 0..3 {
                    for (p, q) in [(i, j), (j, i)] {
                        let w = a[q][l];
                        if w == 0.0 {
                            continue;
                        }
                        let (c, ops) = anticommutator(p, l);
                        terms.push(Term { coef: c * (0.5 * w * MU_B), ops, spin: gammas[i][j] });
                    }
                }
            }
        }
        self.build(&terms, TermSet { paramagnetic: true, ..TermSet::default() })
    }

    /// Biaxial strain: `ΔE_HH` on `±3/2`, `ΔE_LH` on `±1/2`.
    pub fn strain(&self, material: &MaterialParams, strain: &StrainConfig) -> Result<HamiltonianMatrix> {
        let (hh, lh) = strain.band_shifts(material)?;
        let mut s = spin::zero();
        for (k, v) in [hh, lh, lh, hh].into_iter().enumerate() {
            s[k][k] = C64::new(v, 0.0);
        }
        let term = Term { coef: C64::new(1.0, 0.0), ops: [AxisOp::Identity; 3], spin: s };
        Ok(self.build(&[term], TermSet { strain: true, ..TermSet::default() }))
    }
}

pub fn assemble_lk(material: &MaterialParams, geometry: &BoxGeometry, cutoff: BasisCutoff) -> Result<HamiltonianMatrix> {
    Ok(Assembler::new(geometry, cutoff)?.lk(material))
}

pub fn assemble_electric(e0: f64, geometry: &BoxGeometry, cutoff: BasisCutoff) -> Result<HamiltonianMatrix> {
    Ok(Assembler::new(geometry, cutoff)?.electric(e0))
}

/// Zeeman term for a field of magnitude `b` (T) along `(theta, phi)`.
pub fn assemble_zeeman(
    material: &MaterialParams,
    geometry: &BoxGeometry,
    b: f64,
    theta: f64,
    phi: f64,
    cutoff: BasisCutoff,
) -> Result<HamiltonianMatrix> {
    let v = direction(theta, phi).map(|c| c * b);
    Ok(Assembler::new(geometry, cutoff)?.zeeman(material, v))
}

pub fn assemble_paramagnetic(
    material: &MaterialParams,
    geometry: &BoxGeometry,
    b: f64,
    theta: f64,
    phi: f64,
    cutoff: BasisCutoff,
) -> Result<HamiltonianMatrix> {
    let v = direction(theta, phi).map(|c| c * b);
    Ok(Assembler::new(geometry, cutoff)?.paramagnetic(material, v))
}

pub fn assemble_strain(
    material: &MaterialParams,
    geometry: &BoxGeometry,
    strain: &StrainConfig,
    cutoff: BasisCutoff,
) -> Result<HamiltonianMatrix> {
    Assembler::new(geometry, cutoff)?.strain(material, strain)
}
