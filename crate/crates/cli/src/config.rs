//! Run configuration: INI sections `model`, `fields`, `solver` and one per
//! command, parsed with the same key/value reader as material files.
//!
//! Every key has a default, so an empty file (or no file) is a valid
//! configuration reproducing the reference scenario. Unknown sections and
//! keys are rejected.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use boxqubit::kv::{self, Document, Entry, Section};
use boxqubit::materials::{builtin, load_materials};
use boxqubit::sweep::{linspace, Scenario, SolverSettings};
use boxqubit::{BasisCutoff, BoxGeometry, FieldConfig, MaterialParams, Orientation, Tier};

use crate::CliError;

/// A `lo..=hi` grid with `count` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Grid {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        linspace(self.min, self.max, self.count).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub material: String,
    pub materials_file: Option<PathBuf>,
    pub lx: f64,
    pub ly: f64,
    pub lz: f64,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldsConfig {
    pub b: f64,
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub e0: f64,
    pub e_ac: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub grid: Grid,
    pub tiers: Vec<Tier>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleMapConfig {
    pub theta: Grid,
    pub phi: Grid,
    pub tiers: Vec<Tier>,
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub model: ModelConfig,
    pub fields: FieldsConfig,
    pub solver: SolverSettings,
    pub e0_sweep: SweepConfig,
    pub lz_sweep: SweepConfig,
    pub angle_map: AngleMapConfig,
    pub strain_sweep: SweepConfig,
    pub convergence: Vec<BasisCutoff>,
    pub materials_table: Vec<String>,
}

impl Default for Config {
    fn default() -> Self {
        let tiers = |t: &[Tier]| t.to_vec();
        Self {
            model: ModelConfig {
                material: "Si".into(),
                materials_file: None,
                lx: 40.0,
                ly: 30.0,
                lz: 10.0,
                orientation: Orientation::Dot110,
            },
            // B = 1 T along y + z.
            fields: FieldsConfig { b: 1.0, theta_deg: 45.0, phi_deg: 0.0, e0: 0.1, e_ac: 0.03 },
            solver: SolverSettings::default(),
            e0_sweep: SweepConfig {
                grid: Grid { min: 0.0, max: 1.0, count: 101 },
                tiers: tiers(&[Tier::MinimalExact, Tier::Linearized, Tier::Renormalized]),
            },
            lz_sweep: SweepConfig {
                grid: Grid { min: 1.0, max: 10.0, count: 10 },
                tiers: tiers(&[Tier::Analytic2, Tier::Analytic4, Tier::Linearized]),
            },
            angle_map: AngleMapConfig {
                theta: Grid { min: 0.0, max: 90.0, count: 46 },
                phi: Grid { min: 0.0, max: 180.0, count: 91 },
                tiers: tiers(&[Tier::Analytic4, Tier::MinimalExact, Tier::ConvergedZeeman, Tier::ConvergedFull]),
            },
            strain_sweep: SweepConfig {
                grid: Grid { min: 0.0, max: 0.001, count: 21 },
                tiers: tiers(&[Tier::Linearized, Tier::MinimalExact, Tier::ConvergedZeeman, Tier::ConvergedFull]),
            },
            convergence: [(4, 4, 3), (6, 6, 4), (8, 8, 5), (10, 10, 6)]
                .into_iter()
                .map(|(nx, ny, nz)| BasisCutoff { nx, ny, nz })
                .collect(),
            materials_table: ["Si", "Ge", "InP", "GaAs", "InAs", "InSb"].into_iter().map(String::from).collect(),
        }
    }
}

fn config_err(entry: &Entry, message: impl std::fmt::Display) -> CliError {
    if entry.line == 0 {
        CliError::Config(format!("--set {}: {message}", entry.key))
    } else {
        CliError::Config(format!("line {}: `{}`: {message}", entry.line, entry.key))
    }
}

/// Reads typed keys from one section and rejects leftovers.
struct Reader<'a> {
    section: Option<&'a Section>,
    name: &'static str,
    used: Vec<&'static str>,
}

impl<'a> Reader<'a> {
    fn new(doc: &'a Document, name: &'static str) -> Self {
        Self { section: doc.section(name), name, used: Vec::new() }
    }

    fn entry(&mut self, key: &'static str) -> Option<&'a Entry> {
        self.used.push(key);
        self.section.and_then(|s| s.get(key))
    }

    fn f64(&mut self, key: &'static str, default: f64) -> Result<f64, CliError> {
        match self.entry(key) {
            Some(e) => kv::parse_f64(e).map_err(|err| CliError::Config(err.to_string())),
            None => Ok(default),
        }
    }

    fn usize(&mut self, key: &'static str, default: usize) -> Result<usize, CliError> {
        match self.entry(key) {
            Some(e) => e.value.parse().map_err(|_| config_err(e, format!("not a non-negative integer: `{}`", e.value))),
            None => Ok(default),
        }
    }

    fn string(&mut self, key: &'static str) -> Option<(&'a Entry, String)> {
        self.entry(key).map(|e| (e, e.value.clone()))
    }

    fn tiers(&mut self, default: &[Tier]) -> Result<Vec<Tier>, CliError> {
        match self.entry("tiers") {
            Some(e) => parse_tiers(&e.value).map_err(|m| config_err(e, m)),
            None => Ok(default.to_vec()),
        }
    }

    fn grid(&mut self, prefix: &'static str, default: Grid) -> Result<Grid, CliError> {
        let keys: [&'static str; 3] = match prefix {
            "theta" => ["theta_min", "theta_max", "theta_count"],
            "phi" => ["phi_min", "phi_max", "phi_count"],
            _ => ["min", "max", "count"],
        };
        Ok(Grid {
            min: self.f64(keys[0], default.min)?,
            max: self.f64(keys[1], default.max)?,
            count: self.usize(keys[2], default.count)?,
        })
    }

    fn finish(self) -> Result<(), CliError> {
        if let Some(s) = self.section {
            if let Some(e) = s.entries.iter().find(|e| !self.used.contains(&e.key.as_str())) {
                return Err(config_err(e, format!("unknown key in [{}]", self.name)));
            }
        }
        Ok(())
    }
}

const SECTIONS: [&str; 9] =
    ["model", "fields", "solver", "e0_sweep", "lz_sweep", "angle_map", "strain_sweep", "convergence", "materials_table"];

/// Comma-separated tier labels; an empty list is an error.
pub fn parse_tiers(s: &str) -> Result<Vec<Tier>, String> {
    let tiers = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse::<Tier>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if tiers.is_empty() {
        return Err("empty tier list".into());
    }
    Ok(tiers)
}

fn parse_cutoff(s: &str) -> Result<BasisCutoff, String> {
    let parts: Vec<&str> = s.trim().split('x').collect();
    let n = |p: &str| p.trim().parse::<usize>().map_err(|_| format!("bad cutoff `{s}`, expected NXxNYxNZ"));
    match parts.as_slice() {
        [a, b, c] => BasisCutoff::new(n(a)?, n(b)?, n(c)?).map_err(|e| e.to_string()),
        _ => Err(format!("bad cutoff `{s}`, expected NXxNYxNZ")),
    }
}

fn orientation_label(o: Orientation) -> &'static str {
    match o {
        Orientation::Dot110 => "110",
        Orientation::Dot100 => "100",
    }
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(",")
}

impl Config {
    pub fn from_document(doc: &Document) -> Result<Self, CliError> {
        if let Some(s) = doc.sections.iter().find(|s| !SECTIONS.contains(&s.name.as_str())) {
            return Err(CliError::Config(format!("line {}: unknown section [{}]", s.line, s.name)));
        }
        let d = Config::default();

        let mut r = Reader::new(doc, "model");
        let material = r.string("material").map_or(d.model.material.clone(), |(_, v)| v);
        let materials_file = r.string("materials_file").map(|(_, v)| PathBuf::from(v)).filter(|p| !p.as_os_str().is_empty());
        let orientation = match r.string("orientation") {
            None => d.model.orientation,
            Some((e, v)) => match v.as_str() {
                "110" => Orientation::Dot110,
                "100" => Orientation::Dot100,
                _ => return Err(config_err(e, "orientation must be 110 or 100")),
            },
        };
        let model = ModelConfig {
            material,
            materials_file,
            lx: r.f64("lx", d.model.lx)?,
            ly: r.f64("ly", d.model.ly)?,
            lz: r.f64("lz", d.model.lz)?,
            orientation,
        };
        r.finish()?;

        let mut r = Reader::new(doc, "fields");
        let fields = FieldsConfig {
            b: r.f64("b", d.fields.b)?,
            theta_deg: r.f64("theta_deg", d.fields.theta_deg)?,
            phi_deg: r.f64("phi_deg", d.fields.phi_deg)?,
            e0: r.f64("e0", d.fields.e0)?,
            e_ac: r.f64("e_ac", d.fields.e_ac)?,
        };
        r.finish()?;

        let mut r = Reader::new(doc, "solver");
        let (nx, ny, nz) = (
            r.usize("nx", d.solver.cutoff.nx)?,
            r.usize("ny", d.solver.cutoff.ny)?,
            r.usize("nz", d.solver.cutoff.nz)?,
        );
        let solver = SolverSettings {
            cutoff: BasisCutoff::new(nx, ny, nz).map_err(|e| CliError::Config(format!("[solver]: {e}")))?,
            n_excited: r.usize("n_excited", d.solver.n_excited)?,
        };
        r.finish()?;

        let sweep = |name: &'static str, def: &SweepConfig| -> Result<SweepConfig, CliError> {
            let mut r = Reader::new(doc, name);
            let out = SweepConfig { grid: r.grid("", def.grid)?, tiers: r.tiers(&def.tiers)? };
            r.finish()?;
            Ok(out)
        };
        let e0_sweep = sweep("e0_sweep", &d.e0_sweep)?;
        let lz_sweep = sweep("lz_sweep", &d.lz_sweep)?;
        let strain_sweep = sweep("strain_sweep", &d.strain_sweep)?;

        let mut r = Reader::new(doc, "angle_map");
        let angle_map = AngleMapConfig {
            theta: r.grid("theta", d.angle_map.theta)?,
            phi: r.grid("phi", d.angle_map.phi)?,
            tiers: r.tiers(&d.angle_map.tiers)?,
        };
        r.finish()?;

        let mut r = Reader::new(doc, "convergence");
        let convergence = match r.string("cutoffs") {
            None => d.convergence.clone(),
            Some((e, v)) => v
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(parse_cutoff)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|m| config_err(e, m))?,
        };
        r.finish()?;

        let mut r = Reader::new(doc, "materials_table");
        let materials_table = match r.string("materials") {
            None => d.materials_table.clone(),
            Some((_, v)) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        };
        r.finish()?;

        Ok(Self { model, fields, solver, e0_sweep, lz_sweep, angle_map, strain_sweep, convergence, materials_table })
    }

    /// Parses `text` and applies `section.key=value` overrides on top.
    pub fn parse(text: &str, overrides: &[String]) -> Result<Self, CliError> {
        let mut doc = kv::parse(text).map_err(|e| CliError::Config(e.to_string()))?;
        for o in overrides {
            apply_override(&mut doc, o)?;
        }
        Self::from_document(&doc)
    }

    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self, CliError> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
            None => String::new(),
        };
        Self::parse(&text, overrides).map_err(|e| match (e, path) {
            (CliError::Config(m), Some(p)) => CliError::Config(format!("{}: {m}", p.display())),
            (e, _) => e,
        })
    }

    /// The resolved configuration in the input format, every key explicit.
    pub fn to_ini(&self) -> String {
        let mut s = String::new();
        let m = &self.model;
        let _ = writeln!(s, "[model]\nmaterial = {}", m.material);
        if let Some(p) = &m.materials_file {
            let _ = writeln!(s, "materials_file = {}", p.display());
        }
        let _ = writeln!(s, "lx = {}\nly = {}\nlz = {}\norientation = {}", m.lx, m.ly, m.lz, orientation_label(m.orientation));
        let f = &self.fields;
        let _ = writeln!(
            s,
            "\n[fields]\nb = {}\ntheta_deg = {}\nphi_deg = {}\ne0 = {}\ne_ac = {}",
            f.b, f.theta_deg, f.phi_deg, f.e0, f.e_ac
        );
        let c = self.solver.cutoff;
        let _ = writeln!(s, "\n[solver]\nnx = {}\nny = {}\nnz = {}\nn_excited = {}", c.nx, c.ny, c.nz, self.solver.n_excited);
        for (name, sw) in [("e0_sweep", &self.e0_sweep), ("lz_sweep", &self.lz_sweep), ("strain_sweep", &self.strain_sweep)] {
            let g = sw.grid;
            let _ = writeln!(
                s,
                "\n[{name}]\nmin = {}\nmax = {}\ncount = {}\ntiers = {}",
                g.min,
                g.max,
                g.count,
                list(&sw.tiers, |t| t.to_string())
            );
        }
        let a = &self.angle_map;
        let _ = writeln!(
            s,
            "\n[angle_map]\ntheta_min = {}\ntheta_max = {}\ntheta_count = {}\nphi_min = {}\nphi_max = {}\nphi_count = {}\ntiers = {}",
            a.theta.min,
            a.theta.max,
            a.theta.count,
            a.phi.min,
            a.phi.max,
            a.phi.count,
            list(&a.tiers, |t| t.to_string())
        );
        let _ = writeln!(s, "\n[convergence]\ncutoffs = {}", list(&self.convergence, |c| format!("{}x{}x{}", c.nx, c.ny, c.nz)));
        let _ = writeln!(s, "\n[materials_table]\nmaterials = {}", self.materials_table.join(","));
        s
    }

    /// Looks `name` up in `materials_file` if set, otherwise among the builtins.
    pub fn find_material(&self, name: &str) -> Result<MaterialParams, CliError> {
        match &self.model.materials_file {
            Some(path) => load_materials(path)
                .map_err(|e| CliError::Config(e.to_string()))?
                .into_iter()
                .find(|m| m.name == name)
                .ok_or_else(|| CliError::Config(format!("material `{name}` not found in {}", path.display()))),
            None => builtin(name).ok_or_else(|| CliError::Config(format!("unknown builtin material `{name}`"))),
        }
    }

    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let m = &self.model;
        let cfg = |e: boxqubit::Error| CliError::Config(e.to_string());
        let f = &self.fields;
        Ok(Scenario {
            material: self.find_material(&m.material)?,
            geometry: BoxGeometry::new(m.lx, m.ly, m.lz, m.orientation).map_err(cfg)?,
            fields: FieldConfig::degrees(f.b, f.theta_deg, f.phi_deg, f.e0, f.e_ac).map_err(cfg)?,
            solver: self.solver,
        })
    }
}

/// Applies one `section.key=value` override.
pub fn apply_override(doc: &mut Document, assignment: &str) -> Result<(), CliError> {
    let bad = || CliError::Config(format!("--set `{assignment}`: expected section.key=value"));
    let (path, value) = assignment.split_once('=').ok_or_else(bad)?;
    let (section, key) = path.trim().split_once('.').ok_or_else(bad)?;
    let (section, key) = (section.trim(), key.trim());
    if section.is_empty() || key.is_empty() {
        return Err(bad());
    }
    let entry = Entry { key: key.to_string(), value: value.trim().to_string(), line: 0 };
    let idx = match doc.sections.iter().position(|s| s.name == section) {
        Some(i) => i,
        None => {
            doc.sections.push(Section { name: section.to_string(), line: 0, entries: Vec::new() });
            doc.sections.len() - 1
        }
    };
    let entries = &mut doc.sections[idx].entries;
    match entries.iter_mut().find(|e| e.key == key) {
        Some(e) => *e = entry,
        None => entries.push(entry),
    }
    Ok(())
}
