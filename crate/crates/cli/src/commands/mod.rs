pub mod corpus;
pub mod extremal;
pub mod mu;
pub mod partition;
pub mod sqcomm;
pub mod verify;

use std::path::Path;

use sumset_core::rational::parse_fraction;
use sumset_core::{GSet, GroupSpec, Rational};

use crate::error::{CliError, Result};
use crate::instance::set_from_rows;

pub fn fraction_arg(s: &str, flag: &str) -> Result<Rational> {
    parse_fraction(s).ok_or_else(|| CliError::Usage(format!("{flag}: expected a fraction like 1/2, got {s:?}")))
}

/// A set given on the command line as a JSON list of vectors, `[[0], [3]]`.
pub fn set_arg(s: &str, spec: &GroupSpec, flag: &str) -> Result<GSet> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(s)
        .map_err(|e| CliError::Usage(format!("{flag}: expected a JSON list of vectors ({e})")))?;
    set_from_rows(spec, &rows, flag, flag)
}

pub fn exactly_one(instance: Option<&Path>, graph: Option<&Path>) -> Result<()> {
    match (instance, graph) {
        (Some(_), Some(_)) => Err(CliError::Usage("give an instance or --graph, not both".into())),
        (None, None) => Err(CliError::Usage("an instance path or --graph is required".into())),
        _ => Ok(()),
    }
}
