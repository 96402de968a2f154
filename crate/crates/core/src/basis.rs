//! Hard-wall sine basis `χ_n(u) = √(2/L) sin(nπ(u/L + 1/2))` on `|u| ≤ L/2`.
//!
//! Basis states are `|n_x n_y n_z⟩ ⊗ |j_z⟩` with the flat index
//! `jz + 4·(ix + Nx·(iy + Ny·iz))` (zero-based `i = n − 1`), so each 4×4 spin
//! block is contiguous.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Angular-momentum projection, in the fixed order (+3/2, +1/2, −1/2, −3/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Jz {
    Plus3Half,
    Plus1Half,
    Minus1Half,
    Minus3Half,
}

impl Jz {
    pub const ALL: [Jz; 4] = [Jz::Plus3Half, Jz::Plus1Half, Jz::Minus1Half, Jz::Minus3Half];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Jz {
        Self::ALL[i]
    }

    pub fn value(self) -> f64 {
        1.5 - self.index() as f64
    }

    pub fn is_heavy(self) -> bool {
        matches!(self, Jz::Plus3Half | Jz::Minus3Half)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisCutoff {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub jz: Jz,
}

impl BasisCutoff {
    /// The minimal basis `n_x = n_z = 1`, `n_y ∈ {1, 2}`.
    pub const MINIMAL: BasisCutoff = BasisCutoff { nx: 1, ny: 2, nz: 1 };

    pub fn new(nx: usize, ny: usize, nz: usize) -> Result<Self> {
        if nx == 0 || ny == 0 || nz == 0 {
            return Err(Error::InvalidInput(format!("basis cutoff ({nx},{ny},{nz}) must be ≥ 1 on every axis")));
        }
        Ok(Self { nx, ny, nz })
    }

    pub fn axes(&self) -> [usize; 3] {
        [self.nx, self.ny, self.nz]
    }

    pub fn envelope_dim(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    pub fn dim(&self) -> usize {
        4 * self.envelope_dim()
    }

    /// Zero-based envelope index of the quantum numbers `(n_x, n_y, n_z)`.
    pub fn envelope_index(&self, n: [usize; 3]) -> usize {
        debug_assert!(n[0] >= 1 && n[0] <= self.nx && n[1] >= 1 && n[1] <= self.ny && n[2] >= 1 && n[2] <= self.nz);
        (n[0] - 1) + self.nx * ((n[1] - 1) + self.ny * (n[2] - 1))
    }

    /// Quantum numbers of a zero-based envelope index.
    pub fn envelope_numbers(&self, e: usize) -> [usize; 3] {
        [e % self.nx + 1, (e / self.nx) % self.ny + 1, e / (self.nx * self.ny) + 1]
    }

    pub fn index(&self, b: &BasisIndex) -> usize {
        b.jz.index() + 4 * self.envelope_index([b.nx, b.ny, b.nz])
    }

    pub fn index_of(&self, flat: usize) -> BasisIndex {
        debug_assert!(flat < self.dim());
        let [nx, ny, nz] = self.envelope_numbers(flat / 4);
        BasisIndex { nx, ny, nz, jz: Jz::from_index(flat % 4) }
    }
}

impl std::fmt::Display for BasisCutoff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.nx, self.ny, self.nz)
    }
}

fn odd(n: usize, m: usize) -> bool {
    (n + m) % 2 == 1
}

/// `(n·m, n² − m²)` computed in integers so that swapping `n` and `m` is exact.
fn products(n: usize, m: usize) -> (f64, f64) {
    let (n, m) = (n as i64, m as i64);
    ((n * m) as f64, (n * n - m * m) as f64)
}

/// `⟨χ_n|u|χ_m⟩`, in units of `L`.
pub fn position_element(n: usize, m: usize, l: f64) -> f64 {
    if !odd(n, m) {
        return 0.0;
    }
    let (nm, d) = products(n, m);
    -8.0 * l * nm / (PI * PI * d * d)
}

/// `⟨χ_n|d/du|χ_m⟩`, in units of `1/L`.
pub fn derivative_element(n: usize, m: usize, l: f64) -> f64 {
    if !odd(n, m) {
        return 0.0;
    }
    let (nm, d) = products(n, m);
    4.0 * nm / (l * d)
}

/// `⟨χ_n|−d²/du²|χ_m⟩ = δ_nm (nπ/L)²`.
pub fn ksquared_element(n: usize, m: usize, l: f64) -> f64 {
    if n != m {
        return 0.0;
    }
    let k = n as f64 * PI / l;
    k * k
}

/// `⟨χ_n|(d/du)u + u(d/du)|χ_m⟩`, dimensionless and independent of `L`.
///
/// Evaluated exactly rather than as a product of truncated matrices, which
/// would not be antisymmetric at finite cutoff.
pub fn anticommutator_element(n: usize, m: usize) -> f64 {
    if n == m || odd(n, m) {
        return 0.0;
    }
    let (nm, d) = products(n, m);
    -4.0 * nm / d
}

/// One-dimensional operator kinds used in separable envelope products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisOp {
    Identity,
    Position,
    Derivative,
    KSquared,
    Anticommutator,
}

/// Dense `N×N` tables of every [`AxisOp`] for one axis.
#[derive(Debug, Clone)]
pub struct AxisTables {
    pub n: usize,
    pub length: f64,
    position: Vec<f64>,
    derivative: Vec<f64>,
    anticommutator: Vec<f64>,
}

impl AxisTables {
    pub fn new(n: usize, length: f64) -> Self {
        let table = |f: &dyn Fn(usize, usize) -> f64| {
            (0..n * n).map(|k| f(k / n + 1, k % n + 1)).collect::<Vec<_>>()
        };
        Self {
            n,
            length,
            position: table(&|a, b| position_element(a, b, length)),
            derivative: table(&|a, b| derivative_element(a, b, length)),
            anticommutator: table(&|a, b| anticommutator_element(a, b)),
        }
    }

    /// Element between zero-based indices `a`, `b`.
    #[inline]
    pub fn get(&self, op: AxisOp, a: usize, b: usize) -> f64 {
        match op {
            AxisOp::Identity => (a == b) as u8 as f64,
            AxisOp::KSquared => ksquared_element(a + 1, b + 1, self.length),
            AxisOp::Position => self.position[a * self.n + b],
            AxisOp::Derivative => self.derivative[a * self.n + b],
            AxisOp::Anticommutator => self.anticommutator[a * self.n + b],
        }
    }
}
