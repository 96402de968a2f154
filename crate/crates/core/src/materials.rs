//! Material parameters and figures of merit.

use std::path::Path;

use crate::error::{Error, Result};
use crate::kv;

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialParams {
    pub name: String,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub kappa: f64,
    /// Band gap in eV (metadata only).
    pub e_g: Option<f64>,
    /// Spin-orbit splitting in eV (metadata only).
    pub delta_so: Option<f64>,
    /// Biaxial Poisson ratio.
    pub nu: Option<f64>,
    /// Uniaxial deformation potential in eV.
    pub b_v: Option<f64>,
    /// Hydrostatic deformation potential in eV.
    pub a_v: f64,
}

/// Strain parameters converted to meV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrainParameters {
    pub nu: f64,
    pub b_v: f64,
    pub a_v: f64,
}

impl MaterialParams {
    pub fn new(name: &str, gamma1: f64, gamma2: f64, gamma3: f64, kappa: f64) -> Self {
        Self {
            name: name.to_string(),
            gamma1,
            gamma2,
            gamma3,
            kappa,
            e_g: None,
            delta_so: None,
            nu: None,
            b_v: None,
            a_v: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |message: &str| Error::InvalidMaterial {
            name: self.name.clone(),
            message: message.to_string(),
        };
        if self.name.is_empty() {
            return Err(bad("empty name"));
        }
        let fields = [
            ("gamma1", Some(self.gamma1)),
            ("gamma2", Some(self.gamma2)),
            ("gamma3", Some(self.gamma3)),
            ("kappa", Some(self.kappa)),
            ("E_g", self.e_g),
            ("Delta_SO", self.delta_so),
            ("nu", self.nu),
            ("b_v", self.b_v),
            ("a_v", Some(self.a_v)),
        ];
        for (field, value) in fields {
            if let Some(v) = value {
                if !v.is_finite() {
                    return Err(bad(&format!("{field} must be finite")));
                }
            }
        }
        if self.gamma2 <= 0.0 {
            return Err(bad("gamma2 > 0 violated"));
        }
        if self.gamma1 <= 2.0 * self.gamma2 {
            return Err(bad("gamma1 > 2·gamma2 violated"));
        }
        if self.gamma3 <= 0.0 {
            return Err(bad("gamma3 > 0 violated"));
        }
        Ok(())
    }

    /// Returns ν, b_v and a_v (the latter two in meV), or an error naming the material.
    pub fn strain_parameters(&self) -> Result<StrainParameters> {
        match (self.nu, self.b_v) {
            (Some(nu), Some(b_v)) => Ok(StrainParameters { nu, b_v: 1e3 * b_v, a_v: 1e3 * self.a_v }),
            _ => Err(Error::MissingStrainParameters { material: self.name.clone() }),
        }
    }

    /// Copy with γ₂ and γ₃ exchanged.
    pub fn with_swapped_gammas(&self) -> Self {
        let mut m = self.clone();
        std::mem::swap(&mut m.gamma2, &mut m.gamma3);
        m
    }
}

/// Rabi-speed figures of merit and heavy-hole masses (masses in units of m₀).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOfMerit {
    pub zeta_110: f64,
    pub zeta_100: f64,
    pub zeta_prime_110: f64,
    pub zeta_prime_100: f64,
    pub m_z: f64,
    pub m_xy: f64,
}

pub fn figures_of_merit(m: &MaterialParams) -> Result<FigureOfMerit> {
    m.validate()?;
    let (g1, g2, g3) = (m.gamma1, m.gamma2, m.gamma3);
    let s = g1 + g2;
    let kappa = m.kappa.abs();
    Ok(FigureOfMerit {
        zeta_110: g3 * kappa / (g2 * s * s),
        zeta_100: kappa / (s * s),
        zeta_prime_110: (g3 / g2) / s,
        zeta_prime_100: 1.0 / s,
        m_z: 1.0 / (g1 - 2.0 * g2),
        m_xy: 1.0 / s,
    })
}

fn row(name: &str, e_g: f64, delta_so: f64, g: [f64; 3], kappa: f64) -> MaterialParams {
    MaterialParams {
        e_g: Some(e_g),
        delta_so: Some(delta_so),
        ..MaterialParams::new(name, g[0], g[1], g[2], kappa)
    }
}

/// The six reference materials.
pub fn builtin_materials() -> Vec<MaterialParams> {
    let mut si = row("Si", 4.34, 0.044, [4.285, 0.339, 1.446], -0.42);
    si.nu = Some(0.77);
    si.b_v = Some(-2.1);
    vec![
        si,
        row("Ge", 0.89, 0.29, [13.38, 4.24, 5.69], 3.41),
        row("InP", 1.42, 0.11, [4.95, 1.65, 2.35], 0.97),
        row("GaAs", 1.52, 0.34, [6.85, 2.10, 2.90], 1.20),
        row("InAs", 0.42, 0.41, [20.40, 8.30, 9.10], 7.60),
        row("InSb", 0.24, 0.80, [37.10, 16.50, 17.70], 15.60),
    ]
}

/// Looks up a builtin material by name (case-insensitive).
pub fn builtin(name: &str) -> Option<MaterialParams> {
    builtin_materials().into_iter().find(|m| m.name.eq_ignore_ascii_case(name))
}

const KEYS: [&str; 9] = ["gamma1", "gamma2", "gamma3", "kappa", "E_g", "Delta_SO", "nu", "b_v", "a_v"];

/// Parses the material file format.
pub fn parse_materials(text: &str) -> Result<Vec<MaterialParams>> {
    let doc = kv::parse(text)?;
    let mut out: Vec<MaterialParams> = Vec::new();
    for section in &doc.sections {
        let name = section
            .name
            .strip_prefix("material.")
            .filter(|n| !n.is_empty())
            .ok_or_else(|| Error::Parse {
                line: section.line,
                message: format!("expected [material.<name>], found [{}]", section.name),
            })?;
        for e in &section.entries {
            if !KEYS.contains(&e.key.as_str()) {
                return Err(Error::Parse { line: e.line, message: format!("unknown key `{}`", e.key) });
            }
        }
        let get = |key: &str| section.get(key).map(kv::parse_f64).transpose();
        let required = |key: &str| -> Result<f64> {
            get(key)?.ok_or_else(|| Error::Parse {
                line: section.line,
                message: format!("material {name}: missing `{key}`"),
            })
        };
        let m = MaterialParams {
            name: name.to_string(),
            gamma1: required("gamma1")?,
            gamma2: required("gamma2")?,
            gamma3: required("gamma3")?,
            kappa: required("kappa")?,
            e_g: get("E_g")?,
            delta_so: get("Delta_SO")?,
            nu: get("nu")?,
            b_v: get("b_v")?,
            a_v: get("a_v")?.unwrap_or(0.0),
        };
        m.validate()?;
        out.push(m);
    }
    Ok(out)
}

pub fn load_materials(path: &Path) -> Result<Vec<MaterialParams>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_materials(&text)
}

/// Serializes materials in the file format accepted by [`parse_materials`].
pub fn to_material_file(materials: &[MaterialParams]) -> String {
    let mut s = String::new();
    for (i, m) in materials.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        s.push_str(&format!("[material.{}]\n", m.name));
        let values = [
            Some(m.gamma1),
            Some(m.gamma2),
            Some(m.gamma3),
            Some(m.kappa),
            m.e_g,
            m.delta_so,
            m.nu,
            m.b_v,
            (m.a_v != 0.0).then_some(m.a_v),
        ];
        for (key, value) in KEYS.iter().zip(values) {
            if let Some(v) = value {
                s.push_str(&format!("{key} = {v}\n"));
            }
        }
    }
    s
}
