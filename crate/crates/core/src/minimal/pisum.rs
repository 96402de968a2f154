//! First-order-in-`E0` Rabi frequency as a sum of three contributions, from
//! the corrected states `|1̃+⟩`, `|2̃−⟩` and `|2̃+⟩`.

use crate::constants::{E_SCALE, H_PLANCK, MU_B};
use crate::error::Result;
use crate::hamiltonian::{BoxGeometry, FieldConfig};
use crate::materials::MaterialParams;
use crate::minimal::{dipole_length, MinimalModel};
use crate::C64;

/// The three state contributions to the Rabi amplitude (nm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiTerms {
    pub pi_1p: C64,
    pub pi_2m: C64,
    pub pi_2p: C64,
}

impl PiTerms {
    pub fn total(&self) -> C64 {
        self.pi_1p + self.pi_2m + self.pi_2p
    }
}

/// Zeeman matrix elements between the mixed states of subband `(h, l)`.
struct Zeeman {
    kb: f64,
    bz: f64,
    bp: C64,
    bm: C64,
}

impl Zeeman {
    fn z1(&self, h: f64, l: f64) -> C64 {
        C64::from(self.kb * (3.0 * h * h - l * l) * self.bz)
    }

    fn z2(&self, h: f64, l: f64) -> C64 {
        2.0 * self.kb * (3f64.sqrt() * h * l * self.bm + l * l * self.bp)
    }

    fn z3(&self, h: f64, l: f64) -> C64 {
        C64::from(-4.0 * self.kb * h * l * self.bz)
    }

    fn z4(&self, h: f64, l: f64) -> C64 {
        2.0 * self.kb * (0.5 * 3f64.sqrt() * (h * h - l * l) * self.bm + h * l * self.bp)
    }

    fn z5(&self, h: f64, l: f64) -> C64 {
        C64::from(self.kb * (3.0 * l * l - h * h) * self.bz)
    }

    fn z6(&self, h: f64, l: f64) -> C64 {
        2.0 * self.kb * (-3f64.sqrt() * h * l * self.bm + h * h * self.bp)
    }
}

pub(crate) fn linearized(model: &MinimalModel, fields: &FieldConfig) -> Result<(f64, PiTerms)> {
    let mix = model.mixing(fields.e0)?;
    let [s1, s2] = model.subbands;
    let (h1, l1, h2, l2) = (s1.h, s1.l, s2.h, s2.l);
    let zero = PiTerms { pi_1p: C64::from(0.0), pi_2m: C64::from(0.0), pi_2p: C64::from(0.0) };
    let q = model.qubit(fields);
    let Some((alpha, beta)) = q.alpha_beta else {
        // B = 0 or an accidental zero of the splitting.
        return Ok((0.0, zero));
    };
    let b = fields.direction();
    let bp = C64::new(b[0], b[1]);
    let z = Zeeman { kb: model.material.kappa * MU_B * fields.b, bz: b[2], bp, bm: bp.conj() };

    let d = dipole_length(model.geometry.ly);
    let d1 = -d * (h1 * h2 + l1 * l2);
    let d2 = -d * (h2 * l1 - h1 * l2);

    let ab = alpha * beta;
    let b2 = beta * beta;
    let a2 = alpha * alpha;
    // Matrix element of a (z_diag, z_off) pair between |1₀⟩ and |0₀⟩.
    let block = |z3: C64, z4: C64| -4.0 * ab * z3 - 2.0 * b2 * z4 + 2.0 * a2 * z4.conj();
    let diff = |za: C64, zb: C64, wa: C64, wb: C64| -4.0 * ab * (za - zb) - 2.0 * b2 * (wa - wb) + 2.0 * a2 * (wa.conj() - wb.conj());

    let (e1m, e1p, e2m, e2p) = (s1.e_minus, s1.e_plus, s2.e_minus, s2.e_plus);
    let pi_2m = d1 / (e1m - e2m)
        * (mix.l_1m_2m * diff(z.z1(h2, l2), z.z1(h1, l1), z.z2(h2, l2), z.z2(h1, l1))
            + mix.l_1m_2p * block(z.z3(h2, l2), z.z4(h2, l2))
            + mix.l_2m_1p() * block(z.z3(h1, l1), z.z4(h1, l1)));
    let pi_2p = d2 / (e1m - e2p)
        * (mix.l_1m_2m * block(z.z3(h2, l2), z.z4(h2, l2))
            + mix.l_2p_1p() * block(z.z3(h1, l1), z.z4(h1, l1))
            + mix.l_1m_2p * diff(z.z5(h2, l2), z.z1(h1, l1), z.z6(h2, l2), z.z2(h1, l1)));
    let pi_1p = block(z.z3(h1, l1), z.z4(h1, l1)) / (e1m - e1p)
        * (d1 * (mix.l_1p_2m + mix.l_1m_2p) + d2 * (mix.l_1p_2p - mix.l_1m_2m));
    let terms = PiTerms { pi_1p, pi_2m, pi_2p };
    Ok((E_SCALE * fields.e_ac * terms.total().norm() / H_PLANCK, terms))
}

/// Rabi frequency (GHz) to first order in `E0`, `B` and `E_ac`.
pub fn rabi_linearized(material: &MaterialParams, geometry: &BoxGeometry, fields: &FieldConfig) -> Result<f64> {
    MinimalModel::new(material, geometry).linearized_rabi(fields)
}

impl MinimalModel {
    /// The three state contributions of [`MinimalModel::linearized_rabi`].
    pub fn pi_terms(&self, fields: &FieldConfig) -> Result<PiTerms> {
        linearized(self, fields).map(|(_, t)| t)
    }
}
