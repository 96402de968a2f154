use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("material {name}: {message}")]
    InvalidMaterial { name: String, message: String },

    #[error("material {material}: strain requires nu and b_v")]
    MissingStrainParameters { material: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("basis dimension {dim} exceeds limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("perturbation theory invalid near crossing: {context} gap {gap:e} meV")]
    NearDegenerate { context: String, gap: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (worst residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("Kramers pairing failed: {0}")]
    Pairing(String),

    #[error("qubit splitting vanishes, Rabi frequency undefined")]
    DegenerateQubit,
}
