use std::fmt;
use std::path::Path;

use fuzzint::schema::{read_json_value, SchemaError};

/// Text to print and whether the verdict was OK.
pub struct Done {
    pub output: String,
    pub ok: bool,
}

impl Done {
    pub fn new(output: String, ok: bool) -> Self {
        let mut output = output;
        if !output.ends_with('\n') {
            output.push('\n');
        }
        Done { output, ok }
    }
}

/// An input error: unreadable file, bad JSON, wrong schema, bad flags.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError(e.to_string())
    }
}

pub fn input(e: impl fmt::Display) -> CliError {
    CliError(e.to_string())
}

pub fn read(path: &Path) -> Result<serde_json::Value, CliError> {
    Ok(read_json_value(path)?)
}

/// Splits a schema error into an input error (`Err`) or an axiom failure (`Ok`).
pub fn classify(e: SchemaError) -> Result<String, CliError> {
    if e.is_input_error() {
        Err(e.into())
    } else {
        Ok(e.to_string())
    }
}

pub fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
