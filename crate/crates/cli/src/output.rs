//! CSV emission.
//!
//! Layout: `#`-prefixed metadata lines (tool version, command, SHA-256 of the
//! resolved configuration, tiers, column units), one header row, then data
//! rows. Numbers use Rust's `Display` for `f64`, the shortest decimal string
//! that parses back to the same value, so identical inputs give identical
//! bytes. Absent values are empty fields.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use boxqubit::sweep::Table;
use boxqubit::Tier;
use sha2::{Digest, Sha256};

use crate::CliError;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Number(Option<f64>),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Number(Some(v)) => format!("{v}"),
            Cell::Number(None) => String::new(),
        }
    }
}

/// A table ready for output.
#[derive(Debug, Clone, PartialEq)]
pub struct Csv {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl From<Table> for Csv {
    fn from(t: Table) -> Self {
        Csv { columns: t.columns, rows: t.rows.into_iter().map(|r| r.into_iter().map(Cell::Number).collect()).collect() }
    }
}

/// Unit of a column, from its name.
pub fn unit(column: &str) -> &'static str {
    match column {
        "E0" => "mV/nm",
        "Lz" => "nm",
        "Lz_eff_sq" => "nm^2",
        "f_L" => "GHz",
        "E_g" | "Delta_SO" => "eV",
        "m_z" | "m_xy" => "m0",
        "material" => "",
        c if c.starts_with("f_R_") => "GHz",
        c if c.ends_with("_deg") || c.starts_with("theta_opt_") || c.starts_with("phi_opt_") => "deg",
        _ => "1",
    }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Renders metadata, header and rows.
pub fn render(csv: &Csv, command: &str, config_ini: &str, tiers: &[Tier]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# boxqubit {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "# command: {command}");
    let _ = writeln!(s, "# config_sha256: {}", sha256_hex(config_ini));
    let tiers: Vec<String> = tiers.iter().map(|t| t.to_string()).collect();
    let _ = writeln!(s, "# tiers: {}", if tiers.is_empty() { "none".to_string() } else { tiers.join(",") });
    let units: Vec<String> = csv
        .columns
        .iter()
        .filter(|c| !unit(c).is_empty())
        .map(|c| format!("{c}={}", unit(c)))
        .collect();
    let _ = writeln!(s, "# units: {}", units.join(" "));
    s.push_str(&csv.columns.join(","));
    s.push('\n');
    for row in &csv.rows {
        let cells: Vec<String> = row.iter().map(Cell::render).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// Path of the configuration sidecar written next to `out`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".config.ini");
    out.with_file_name(name)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
