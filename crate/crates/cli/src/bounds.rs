use clap::Args;
use fuzzint::search::{parse_duration, BasisFamily, SearchBounds};

use crate::output::{input, CliError};

pub const ENV: &str = "FUZZINT_BOUNDS";

#[derive(Args, Clone, Debug, Default)]
pub struct BoundArgs {
    /// Largest carrier |X|.
    #[arg(long)]
    pub max_x: Option<usize>,
    /// Largest basis lattice |L|.
    #[arg(long)]
    pub max_l: Option<usize>,
    /// Largest admissible operator-table count |L|^(|X|·|L|^|X|).
    #[arg(long)]
    pub max_tables: Option<f64>,
    /// Time budget, e.g. `60s`, `500ms`, `2m`.
    #[arg(long)]
    pub budget: Option<String>,
    /// Basis family: chains or extended.
    #[arg(long)]
    pub family: Option<String>,
    /// Largest structured source.
    #[arg(long)]
    pub max_members: Option<usize>,
}

impl BoundArgs {
    /// Defaults, then `FUZZINT_BOUNDS`, then flags.
    pub fn resolve(&self) -> Result<SearchBounds, CliError> {
        let mut b = SearchBounds::default();
        if let Ok(spec) = std::env::var(ENV) {
            b.apply_overrides(&spec).map_err(|e| CliError(format!("{ENV}: {e}")))?;
        }
        if let Some(v) = self.max_x {
            b.max_points = v;
        }
        if let Some(v) = self.max_l {
            b.max_lattice = v;
        }
        if let Some(v) = self.max_tables {
            b.max_operator_tables = v;
        }
        if let Some(v) = &self.budget {
            b.budget = Some(parse_duration(v).ok_or_else(|| CliError(format!("bad budget {v:?}")))?);
        }
        if let Some(v) = &self.family {
            b.family = match v.as_str() {
                "chains" => BasisFamily::Chains,
                "extended" => BasisFamily::Extended,
                other => return Err(CliError(format!("unknown family {other:?} (expected chains or extended)"))),
            };
        }
        if let Some(v) = self.max_members {
            b.max_source_members = v;
        }
        b.validate().map_err(input)?;
        Ok(b)
    }
}
