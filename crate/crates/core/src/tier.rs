use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Approximation level of a Rabi-frequency estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    /// Thin-dot expansion to second order in `Lz`.
    Analytic2,
    /// Thin-dot expansion to fourth order in `Lz`.
    Analytic4,
    /// Minimal-basis sum over states, linear in `E0`.
    Linearized,
    /// Linearized value times the `E0` renormalization factor.
    Renormalized,
    /// Exact minimal-basis eigenstates.
    MinimalExact,
    /// Converged basis, Zeeman term only.
    ConvergedZeeman,
    /// Converged basis, Zeeman plus paramagnetic terms.
    ConvergedFull,
}

impl Tier {
    pub const ALL: [Tier; 7] = [
        Tier::Analytic2,
        Tier::Analytic4,
        Tier::Linearized,
        Tier::Renormalized,
        Tier::MinimalExact,
        Tier::ConvergedZeeman,
        Tier::ConvergedFull,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Tier::Analytic2 => "analytic2",
            Tier::Analytic4 => "analytic4",
            Tier::Linearized => "linearized",
            Tier::Renormalized => "renormalized",
            Tier::MinimalExact => "minimal_exact",
            Tier::ConvergedZeeman => "converged_zeeman",
            Tier::ConvergedFull => "converged_full",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        Tier::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown tier `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for t in Tier::ALL {
            assert_eq!(t.label().parse::<Tier>().unwrap(), t);
        }
        assert!("exact".parse::<Tier>().is_err());
    }
}
