//! Parameter sweeps over field, height, orientation and strain.
//!
//! Each sweep returns a [`Table`] of optional values: a grid point whose
//! qubit is degenerate or whose perturbation theory breaks down is recorded
//! as absent rather than zero. Points are evaluated in parallel and returned
//! in grid order.

use rayon::prelude::*;

use crate::basis::BasisCutoff;
use crate::error::{Error, Result};
use crate::hamiltonian::{BoxGeometry, FieldConfig, StrainConfig};
use crate::materials::MaterialParams;
use crate::minimal::{
    rabi_thin_dot, renormalized_rabi, strain_equivalent_height, MinimalModel, ThinOrder,
};
use crate::numeric::{QubitWorkspace, DEFAULT_EXCITED_DOUBLETS};
use crate::tier::Tier;

/// Converged-basis settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub cutoff: BasisCutoff,
    pub n_excited: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { cutoff: BasisCutoff { nx: 8, ny: 8, nz: 5 }, n_excited: DEFAULT_EXCITED_DOUBLETS }
    }
}

/// Column names plus rows of optional values.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

fn tier_column(t: Tier) -> String {
    format!("f_R_{t}")
}

/// `n ≥ 2` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("grid needs at least 2 points, got {n}")));
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidInput("grid bounds must be finite".into()));
    }
    Ok((0..n).map(|k| if k == n - 1 { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 }).collect())
}

fn check_tiers(tiers: &[Tier], allowed: &[Tier], sweep: &str) -> Result<()> {
    if tiers.is_empty() {
        return Err(Error::InvalidInput(format!("{sweep}: no tiers requested")));
    }
    for t in tiers {
        if !allowed.contains(t) {
            let names: Vec<_> = allowed.iter().map(|t| t.to_string()).collect();
            return Err(Error::InvalidInput(format!("{sweep}: tier {t} not supported (allowed: {})", names.join(", "))));
        }
    }
    Ok(())
}

/// Everything needed to evaluate any tier at one `(geometry, E0, strain)`.
#[derive(Debug, Clone)]
pub struct PointModel {
    pub minimal: MinimalModel,
    /// Geometry used by the thin-dot tiers (height replaced by `|Lz′|` under strain).
    pub thin_geometry: BoxGeometry,
    pub e_max: f64,
    pub workspace: Option<QubitWorkspace>,
}

impl PointModel {
    pub fn new(
        material: &MaterialParams,
        geometry: &BoxGeometry,
        e0: f64,
        strain: Option<StrainConfig>,
        tiers: &[Tier],
        solver: &SolverSettings,
    ) -> Result<Self> {
        let minimal = match strain {
            Some(s) => MinimalModel::with_strain(material, geometry, s)?,
            None => MinimalModel::new(material, geometry),
        };
        let thin_geometry = match strain {
            Some(s) => geometry.with_lz(strain_equivalent_height(material, geometry.lz, s.eps_parallel)?.abs().sqrt())?,
            None => *geometry,
        };
        let workspace = if tiers.iter().any(|t| matches!(t, Tier::ConvergedZeeman | Tier::ConvergedFull)) {
            Some(QubitWorkspace::new(material, geometry, solver.cutoff, e0, strain, solver.n_excited)?)
        } else {
            None
        };
        let e_max = minimal.e_max();
        Ok(Self { minimal, thin_geometry, e_max, workspace })
    }

    /// Rabi frequency (GHz) for one tier. `fields.e0` must be the static field
    /// the model was built for when a converged tier is requested.
    pub fn rabi(&self, tier: Tier, fields: &FieldConfig) -> Result<f64> {
        let m = &self.minimal;
        match tier {
            Tier::Analytic2 => Ok(rabi_thin_dot(&m.material, &self.thin_geometry, fields, ThinOrder::Second)),
            Tier::Analytic4 => Ok(rabi_thin_dot(&m.material, &self.thin_geometry, fields, ThinOrder::Fourth)),
            Tier::Linearized => {
                if m.qubit(fields).is_degenerate() {
                    return Err(Error::DegenerateQubit);
                }
                m.linearized_rabi(fields)
            }
            Tier::Renormalized => {
                if m.qubit(fields).is_degenerate() {
                    return Err(Error::DegenerateQubit);
                }
                Ok(renormalized_rabi(m.linearized_rabi(fields)?, fields.e0, self.e_max))
            }
            Tier::MinimalExact => Ok(m.exact_rabi(fields)?.f_rabi),
            Tier::ConvergedZeeman | Tier::ConvergedFull => {
                let ws = self
                    .workspace
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput(format!("tier {tier} needs a converged-basis workspace")))?;
                Ok(ws.rabi(fields.b_vector(), fields.e_ac, tier)?.f_rabi)
            }
        }
    }

    /// As [`PointModel::rabi`], with per-point failures mapped to `None`.
    pub fn rabi_or_absent(&self, tier: Tier, fields: &FieldConfig) -> Option<f64> {
        match self.rabi(tier, fields) {
            Ok(v) => Some(v),
            Err(e) => {
                log::debug!("{tier} absent at {fields:?}: {e}");
                None
            }
        }
    }
}

/// Scenario shared by the sweeps: material, box and fields.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub material: MaterialParams,
    pub geometry: BoxGeometry,
    pub fields: FieldConfig,
    pub solver: SolverSettings,
}

pub const E0_SWEEP_TIERS: [Tier; 3] = [Tier::MinimalExact, Tier::Linearized, Tier::Renormalized];
pub const ANGLE_MAP_TIERS: [Tier; 5] =
    [Tier::Analytic2, Tier::Analytic4, Tier::MinimalExact, Tier::ConvergedZeeman, Tier::ConvergedFull];

/// `f_R` versus static field. Columns `E0`, then one per tier.
pub fn e0_sweep(sc: &Scenario, e0_values: &[f64], tiers: &[Tier]) -> Result<Table> {
    check_tiers(tiers, &E0_SWEEP_TIERS, "e0-sweep")?;
    let model = PointModel::new(&sc.material, &sc.geometry, 0.0, None, tiers, &sc.solver)?;
    let mut table = Table::new(std::iter::once("E0".to_string()).chain(tiers.iter().map(|&t| tier_column(t))).collect());
    table.rows = e0_values
        .par_iter()
        .map(|&e0| {
            let f = FieldConfig { e0, ..sc.fields };
            std::iter::once(Some(e0)).chain(tiers.iter().map(|&t| model.rabi_or_absent(t, &f))).collect()
        })
        .collect();
    Ok(table)
}

/// `f_R` versus dot height. Columns `Lz`, then one per tier.
pub fn lz_sweep(sc: &Scenario, lz_values: &[f64], tiers: &[Tier]) -> Result<Table> {
    check_tiers(tiers, &Tier::ALL, "lz-sweep")?;
    let mut table = Table::new(std::iter::once("Lz".to_string()).chain(tiers.iter().map(|&t| tier_column(t))).collect());
    table.rows = lz_values
        .par_iter()
        .map(|&lz| -> Result<Vec<Option<f64>>> {
            let g = sc.geometry.with_lz(lz)?;
            let model = PointModel::new(&sc.material, &g, sc.fields.e0, None, tiers, &sc.solver)?;
            Ok(std::iter::once(Some(lz)).chain(tiers.iter().map(|&t| model.rabi_or_absent(t, &sc.fields))).collect())
        })
        .collect::<Result<_>>()?;
    Ok(table)
}

/// `f_R` over polar angle `theta` and azimuth `phi` (degrees). Columns
/// `theta_deg`, `phi_deg`, then one per tier; rows ordered by theta, then phi.
pub fn angle_map(sc: &Scenario, theta_deg: &[f64], phi_deg: &[f64], tiers: &[Tier]) -> Result<Table> {
    check_tiers(tiers, &ANGLE_MAP_TIERS, "angle-map")?;
    let model = PointModel::new(&sc.material, &sc.geometry, sc.fields.e0, None, tiers, &sc.solver)?;
    let points: Vec<(f64, f64)> = theta_deg.iter().flat_map(|&t| phi_deg.iter().map(move |&p| (t, p))).collect();
    let mut table = Table::new(
        ["theta_deg", "phi_deg"].iter().map(|s| s.to_string()).chain(tiers.iter().map(|&t| tier_column(t))).collect(),
    );
    table.rows = points
        .par_iter()
        .map(|&(t, p)| {
            let f = FieldConfig { theta: t.to_radians(), phi: p.to_radians(), ..sc.fields };
            [Some(t), Some(p)].into_iter().chain(tiers.iter().map(|&tier| model.rabi_or_absent(tier, &f))).collect()
        })
        .collect();
    Ok(table)
}

/// Field orientation (degrees) maximizing `f`, with the maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub value: f64,
}

/// Maximizes `f(θ, φ)` over `θ ∈ [0°, 90°]`, `φ ∈ [0°, 180°]`: a 10° grid scan,
/// then a compass search from the best grid point down to 1e-3°.
pub fn optimal_orientation(f: impl Fn(f64, f64) -> Option<f64>) -> Option<Optimum> {
    let eval = |t: f64, p: f64| f(t.clamp(0.0, 90.0), p.clamp(0.0, 180.0)).filter(|v| v.is_finite());
    let mut best: Option<Optimum> = None;
    for i in 0..=9 {
        for j in 0..=18 {
            let (t, p) = (10.0 * i as f64, 10.0 * j as f64);
            if let Some(v) = eval(t, p) {
                if best.map_or(true, |b| v > b.value) {
                    best = Some(Optimum { theta_deg: t, phi_deg: p, value: v });
                }
            }
        }
    }
    let mut best = best?;
    let mut step = 5.0;
    while step >= 1e-3 {
        let mut moved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (t, p) = ((best.theta_deg + dt).clamp(0.0, 90.0), (best.phi_deg + dp).clamp(0.0, 180.0));
            if let Some(v) = eval(t, p) {
                if v > best.value {
                    best = Optimum { theta_deg: t, phi_deg: p, value: v };
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Some(best)
}

pub const STRAIN_SWEEP_TIERS: [Tier; 4] = [Tier::Linearized, Tier::MinimalExact, Tier::ConvergedZeeman, Tier::ConvergedFull];

/// `f_R` at the optimal field orientation versus biaxial strain.
///
/// Columns: `eps_parallel`, `reference` (1 at zero strain), `hh_weight` (h₁² of
/// the ground subband), `hh_weight_exact` (ground-doublet heavy-hole weight at
/// `E0`), `Lz_eff_sq` (signed `Lz′²`), then per tier `f_R_<tier>`,
/// `theta_opt_<tier>`, `phi_opt_<tier>`.
pub fn strain_sweep(sc: &Scenario, eps_values: &[f64], tiers: &[Tier]) -> Result<Table> {
    check_tiers(tiers, &STRAIN_SWEEP_TIERS, "strain-sweep")?;
    sc.material.strain_parameters()?;
    let mut columns: Vec<String> =
        ["eps_parallel", "reference", "hh_weight", "hh_weight_exact", "Lz_eff_sq"].iter().map(|s| s.to_string()).collect();
    for t in tiers {
        columns.extend([tier_column(*t), format!("theta_opt_{t}"), format!("phi_opt_{t}")]);
    }
    let mut table = Table::new(columns);
    table.rows = eps_values
        .par_iter()
        .map(|&eps| -> Result<Vec<Option<f64>>> {
            let strain = StrainConfig { eps_parallel: eps };
            let model = PointModel::new(&sc.material, &sc.geometry, sc.fields.e0, Some(strain), tiers, &sc.solver)?;
            let h = model.minimal.subbands[0].h;
            let mut row = vec![
                Some(eps),
                Some(if eps == 0.0 { 1.0 } else { 0.0 }),
                Some(h * h),
                model.minimal.ground_hh_weight(sc.fields.e0).ok(),
                Some(strain_equivalent_height(&sc.material, sc.geometry.lz, eps)?),
            ];
            for &t in tiers {
                let opt = optimal_orientation(|th, ph| {
                    let f = FieldConfig { theta: th.to_radians(), phi: ph.to_radians(), ..sc.fields };
                    model.rabi_or_absent(t, &f)
                });
                row.extend(match opt {
                    Some(o) => [Some(o.value), Some(o.theta_deg), Some(o.phi_deg)],
                    None => [None; 3],
                });
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(table)
}

/// Converged-basis `f_R` (Zeeman only and full) for a list of cutoffs.
/// Columns: `nx`, `ny`, `nz`, `dim`, `f_R_converged_zeeman`,
/// `f_R_converged_full`, `f_L`, `tail_fraction`, `rel_change` (of the full
/// result relative to the previous row).
pub fn convergence_study(sc: &Scenario, cutoffs: &[BasisCutoff]) -> Result<Table> {
    let columns = ["nx", "ny", "nz", "dim", "f_R_converged_zeeman", "f_R_converged_full", "f_L", "tail_fraction", "rel_change"];
    let mut table = Table::new(columns.iter().map(|s| s.to_string()).collect());
    let mut previous: Option<f64> = None;
    for &c in cutoffs {
        let ws = QubitWorkspace::new(&sc.material, &sc.geometry, c, sc.fields.e0, None, sc.solver.n_excited)?;
        let b = sc.fields.b_vector();
        let z = ws.rabi(b, sc.fields.e_ac, Tier::ConvergedZeeman).ok();
        let full = ws.rabi(b, sc.fields.e_ac, Tier::ConvergedFull).ok();
        let f_full = full.as_ref().map(|r| r.f_rabi);
        let change = match (previous, f_full) {
            (Some(p), Some(f)) if p != 0.0 => Some((f - p).abs() / p.abs()),
            _ => None,
        };
        previous = f_full;
        table.rows.push(vec![
            Some(c.nx as f64),
            Some(c.ny as f64),
            Some(c.nz as f64),
            Some(c.dim() as f64),
            z.as_ref().map(|r| r.f_rabi),
            f_full,
            full.as_ref().map(|r| r.f_larmor),
            full.as_ref().and_then(|r| r.tail_fraction),
            change,
        ]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::Orientation;
    use crate::materials::builtin;

    fn scenario(name: &str) -> Scenario {
        Scenario {
            material: builtin(name).unwrap(),
            geometry: BoxGeometry::new(40.0, 30.0, 10.0, Orientation::Dot110).unwrap(),
            fields: FieldConfig::degrees(1.0, 45.0, 0.0, 0.1, 0.03).unwrap(),
            solver: SolverSettings { cutoff: BasisCutoff::new(3, 3, 2).unwrap(), n_excited: 10 },
        }
    }

    #[test]
    fn grid() {
        assert_eq!(linspace(0.0, 1.0, 3).unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(linspace(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn e0_sweep_rejects_unsupported_tier() {
        assert!(e0_sweep(&scenario("Si"), &[0.1], &[Tier::Analytic2]).is_err());
        assert!(e0_sweep(&scenario("Si"), &[0.1], &[]).is_err());
    }

    #[test]
    fn e0_sweep_rows_in_order() {
        let e = linspace(0.0, 1.0, 11).unwrap();
        let t = e0_sweep(&scenario("Si"), &e, &E0_SWEEP_TIERS).unwrap();
        assert_eq!(t.columns, ["E0", "f_R_minimal_exact", "f_R_linearized", "f_R_renormalized"]);
        assert_eq!(t.column("E0").unwrap(), e.iter().map(|&x| Some(x)).collect::<Vec<_>>());
        assert_eq!(t.rows[0][2], Some(0.0));
    }

    #[test]
    fn angle_map_shapes() {
        let th = linspace(0.0, 90.0, 4).unwrap();
        let ph = linspace(0.0, 180.0, 5).unwrap();
        let t = angle_map(&scenario("Si"), &th, &ph, &[Tier::Analytic2, Tier::ConvergedFull]).unwrap();
        assert_eq!(t.rows.len(), 20);
        // theta = 0: heavy-hole analytic tier vanishes.
        for r in &t.rows[..5] {
            assert_eq!(r[2], Some(0.0));
        }
        // Second order is azimuth-independent.
        for i in 0..4 {
            let row = &t.rows[5 * i..5 * i + 5];
            assert!(row.iter().all(|r| r[2] == row[0][2]));
        }
    }

    #[test]
    fn optimum_of_smooth_function() {
        let o = optimal_orientation(|t, p| Some(-(t - 33.3).powi(2) - (p - 121.7).powi(2))).unwrap();
        assert!((o.theta_deg - 33.3).abs() < 1e-2 && (o.phi_deg - 121.7).abs() < 1e-2);
        assert!(optimal_orientation(|_, _| None).is_none());
    }

    #[test]
    fn strain_sweep_marks_reference() {
        let t = strain_sweep(&scenario("Si"), &[0.0, 3e-4], &[Tier::MinimalExact]).unwrap();
        assert_eq!(t.column("reference").unwrap(), vec![Some(1.0), Some(0.0)]);
        assert_eq!(t.column("Lz_eff_sq").unwrap()[0], Some(100.0));
        assert!(strain_sweep(&scenario("Ge"), &[0.0], &[Tier::MinimalExact]).is_err());
    }

    #[test]
    fn convergence_rows() {
        let c = [BasisCutoff::new(2, 2, 2).unwrap(), BasisCutoff::new(3, 3, 2).unwrap()];
        let t = convergence_study(&scenario("Si"), &c).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows[0][8].is_none() && t.rows[1][8].is_some());
    }
}
