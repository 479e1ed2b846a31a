//! Exhaustive enumeration of grounds, morphisms and interior maps within
//! bounds, and the counterexample searcher built on it.

mod bundle;
mod enumerate;
mod properties;

use std::time::Duration;

use thiserror::Error;

pub use enumerate::{
    all_interior_maps, basis_catalog, enumerate_interior_maps, grounds, morphisms, operator_table_log10, phi_ops,
    InteriorEnumerator,
};

pub use bundle::{replay, AdjunctionKind, BoundsDoc, LatticeOp, Status, WitnessBundle, WitnessDoc};
pub use properties::{search, Expectation, Property, SearchResult};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("time budget exhausted after {instances} instances")]
    BudgetExhausted { instances: u64 },
    #[error("malformed witness bundle: {0}")]
    MalformedBundle(String),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
}

/// Which bases the catalog offers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BasisFamily {
    /// Gödel and Łukasiewicz chains.
    #[default]
    Chains,
    /// Chains plus CQMLs that are not GL-monoids.
    Extended,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchBounds {
    /// Largest carrier `|X|` (also `|Y|`, `|Z|`).
    pub max_points: usize,
    /// Largest basis carrier `|L|`.
    pub max_lattice: usize,
    /// Reject a ground whose naive table count `|L|^(|X|·|L|^|X|)` is larger.
    pub max_operator_tables: f64,
    /// Wall-clock budget for one search.
    pub budget: Option<Duration>,
    pub family: BasisFamily,
    /// Largest structured source considered by `initiality`.
    pub max_source_members: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_points: 2,
            max_lattice: 3,
            max_operator_tables: 1e9,
            budget: None,
            family: BasisFamily::Chains,
            max_source_members: 2,
        }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_points == 0 {
            return Err(SearchError::InvalidBounds("max-x must be positive".into()));
        }
        if self.max_lattice < 2 {
            return Err(SearchError::InvalidBounds("max-l must be at least 2".into()));
        }
        if self.max_operator_tables.is_nan() || self.max_operator_tables < 1.0 {
            return Err(SearchError::InvalidBounds("max-tables must be at least 1".into()));
        }
        if self.budget == Some(Duration::ZERO) {
            return Err(SearchError::InvalidBounds("budget must be positive".into()));
        }
        Ok(())
    }

    /// Applies `key=value` overrides separated by commas, e.g.
    /// `max-x=2,max-l=3,budget=60s,max-tables=1e9,family=extended,max-members=2`.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<(), SearchError> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| SearchError::InvalidBounds(format!("expected key=value, got {part:?}")))?;
            let bad = || SearchError::InvalidBounds(format!("bad value for {key}: {value:?}"));
            match key.trim() {
                "max-x" => self.max_points = value.trim().parse().map_err(|_| bad())?,
                "max-l" => self.max_lattice = value.trim().parse().map_err(|_| bad())?,
                "max-tables" => self.max_operator_tables = value.trim().parse().map_err(|_| bad())?,
                "max-members" => self.max_source_members = value.trim().parse().map_err(|_| bad())?,
                "budget" => self.budget = Some(parse_duration(value).ok_or_else(bad)?),
                "family" => {
                    self.family = match value.trim() {
                        "chains" => BasisFamily::Chains,
                        "extended" => BasisFamily::Extended,
                        _ => return Err(bad()),
                    }
                }
                other => return Err(SearchError::InvalidBounds(format!("unknown bound {other:?}"))),
            }
        }
        self.validate()
    }
}

/// `"60"`, `"60s"`, `"1.5s"`, `"500ms"`, `"2m"`.
pub fn parse_duration(s: &str) -> Option<Duration> {
    let s = s.trim();
    let (num, scale) = if let Some(v) = s.strip_suffix("ms") {
        (v, 0.001)
    } else if let Some(v) = s.strip_suffix('s') {
        (v, 1.0)
    } else if let Some(v) = s.strip_suffix('m') {
        (v, 60.0)
    } else {
        (s, 1.0)
    };
    let x: f64 = num.trim().parse().ok()?;
    (x.is_finite() && x > 0.0).then(|| Duration::from_secs_f64(x * scale))
}

#[cfg(test)]
mod tests;
