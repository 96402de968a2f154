//! Command-line front end for `boxqubit`: reads an INI configuration, runs a
//! sweep and writes a CSV plus a sidecar holding the resolved configuration.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 solver error.

pub mod config;
pub mod output;

use std::path::PathBuf;

use boxqubit::sweep::{self, Table};
use boxqubit::{figures_of_merit, Tier};
use clap::{Args, Parser, Subcommand};
use log::info;

use config::{parse_tiers, Config};
use output::{Cell, Csv};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(#[from] boxqubit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use boxqubit::Error as E;
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Model(E::Parse { .. } | E::Io { .. } | E::InvalidMaterial { .. })
            | CliError::Model(E::MissingStrainParameters { .. } | E::InvalidInput(_)) => 1,
            CliError::Model(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "boxqubit", version, about = "Hole spin qubit sweeps in rectangular quantum dots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rabi figures of merit and heavy-hole masses per material.
    MaterialsTable(Common),
    /// Rabi frequency versus static field E0.
    E0Sweep(Common),
    /// Rabi frequency versus dot height Lz.
    LzSweep(Common),
    /// Rabi frequency over magnetic field orientation.
    AngleMap(Common),
    /// Rabi frequency at the optimal orientation versus biaxial strain.
    StrainSweep(Common),
    /// Converged-basis Rabi frequency versus basis cutoff.
    Convergence(Common),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// INI configuration file; defaults reproduce the reference dot.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV; stdout if omitted (no sidecar is written then).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated tiers, replacing the configured list.
    #[arg(long)]
    pub tier: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Override a configuration key, `section.key=value`; repeatable.
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
    pub set: Vec<String>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::MaterialsTable(_) => "materials-table",
            Command::E0Sweep(_) => "e0-sweep",
            Command::LzSweep(_) => "lz-sweep",
            Command::AngleMap(_) => "angle-map",
            Command::StrainSweep(_) => "strain-sweep",
            Command::Convergence(_) => "convergence",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::MaterialsTable(c)
            | Command::E0Sweep(c)
            | Command::LzSweep(c)
            | Command::AngleMap(c)
            | Command::StrainSweep(c)
            | Command::Convergence(c) => c,
        }
    }

    /// The configured tier list of this command, if it has one.
    fn tiers_mut<'a>(&self, c: &'a mut Config) -> Option<&'a mut Vec<Tier>> {
        match self {
            Command::E0Sweep(_) => Some(&mut c.e0_sweep.tiers),
            Command::LzSweep(_) => Some(&mut c.lz_sweep.tiers),
            Command::AngleMap(_) => Some(&mut c.angle_map.tiers),
            Command::StrainSweep(_) => Some(&mut c.strain_sweep.tiers),
            Command::MaterialsTable(_) | Command::Convergence(_) => None,
        }
    }
}

/// Resolves the configuration for `command`, applying `--set` and `--tier`.
pub fn resolve_config(command: &Command) -> Result<Config, CliError> {
    let common = command.common();
    let mut config = Config::load(common.config.as_deref(), &common.set)?;
    if let Some(t) = &common.tier {
        let tiers = parse_tiers(t).map_err(|m| CliError::Config(format!("--tier: {m}")))?;
        match command.tiers_mut(&mut config) {
            Some(slot) => *slot = tiers,
            None => return Err(CliError::Config(format!("{} takes no --tier", command.name()))),
        }
    }
    Ok(config)
}

pub const MATERIALS_COLUMNS: [&str; 13] = [
    "material",
    "E_g",
    "Delta_SO",
    "gamma1",
    "gamma2",
    "gamma3",
    "m_z",
    "m_xy",
    "kappa",
    "zeta_110_x100",
    "zeta_100_x100",
    "zeta_prime_110_x100",
    "zeta_prime_100_x100",
];

/// One row per configured material, in the configured order.
pub fn materials_table(config: &Config) -> Result<Csv, CliError> {
    let mut rows = Vec::new();
    for name in &config.materials_table {
        let m = config.find_material(name)?;
        let f = figures_of_merit(&m)?;
        let mut row = vec![Cell::Text(m.name.clone())];
        row.extend(
            [
                m.e_g,
                m.delta_so,
                Some(m.gamma1),
                Some(m.gamma2),
                Some(m.gamma3),
                Some(f.m_z),
                Some(f.m_xy),
                Some(m.kappa),
                Some(100.0 * f.zeta_110),
                Some(100.0 * f.zeta_100),
                Some(100.0 * f.zeta_prime_110),
                Some(100.0 * f.zeta_prime_100),
            ]
            .map(Cell::Number),
        );
        rows.push(row);
    }
    Ok(Csv { columns: MATERIALS_COLUMNS.iter().map(|s| s.to_string()).collect(), rows })
}

/// Runs the computation of `command` on the current rayon pool.
pub fn compute(command: &Command, config: &Config) -> Result<(Csv, Vec<Tier>), CliError> {
    let table = |t: Result<Table, boxqubit::Error>| -> Result<Csv, CliError> { Ok(t?.into()) };
    Ok(match command {
        Command::MaterialsTable(_) => (materials_table(config)?, Vec::new()),
        Command::E0Sweep(_) => {
            let c = &config.e0_sweep;
            (table(sweep::e0_sweep(&config.scenario()?, &c.grid.values()?, &c.tiers))?, c.tiers.clone())
        }
        Command::LzSweep(_) => {
            let c = &config.lz_sweep;
            (table(sweep::lz_sweep(&config.scenario()?, &c.grid.values()?, &c.tiers))?, c.tiers.clone())
        }
        Command::AngleMap(_) => {
            let c = &config.angle_map;
            let (theta, phi) = (c.theta.values()?, c.phi.values()?);
            (table(sweep::angle_map(&config.scenario()?, &theta, &phi, &c.tiers))?, c.tiers.clone())
        }
        Command::StrainSweep(_) => {
            let c = &config.strain_sweep;
            (table(sweep::strain_sweep(&config.scenario()?, &c.grid.values()?, &c.tiers))?, c.tiers.clone())
        }
        Command::Convergence(_) => {
            if config.convergence.is_empty() {
                return Err(CliError::Config("[convergence]: empty cutoff list".into()));
            }
            let t = sweep::convergence_study(&config.scenario()?, &config.convergence);
            (table(t)?, vec![Tier::ConvergedZeeman, Tier::ConvergedFull])
        }
    })
}

/// Runs one command end to end.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let command = &cli.command;
    let common = command.common();
    let config = resolve_config(command)?;
    let config_ini = config.to_ini();

    // Per-point solves stay sequential so results do not depend on the pool size.
    faer::set_global_parallelism(faer::Par::Seq);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = common.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    info!("{}: {} threads", command.name(), pool.current_num_threads());

    let (csv, tiers) = pool.install(|| compute(command, &config))?;
    let text = output::render(&csv, command.name(), &config_ini, &tiers);
    match &common.out {
        Some(path) => {
            output::write_file(path, &text)?;
            let sidecar = output::sidecar_path(path);
            output::write_file(&sidecar, &config_ini)?;
            info!("wrote {} rows to {} (config in {})", csv.rows.len(), path.display(), sidecar.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}
