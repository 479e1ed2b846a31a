//! `fuzzint`: validate structures, print tables, check properties, search
//! for counterexamples and run the worked examples.
//!
//! Exit codes: 0 ok, 1 property failure or witness, 2 input error.

mod bounds;
mod check;
mod examples;
mod output;
mod tables;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::bounds::BoundArgs;
use crate::output::{CliError, Done};

#[derive(Parser)]
#[command(name = "fuzzint", version, about = "Fuzzy interior operators on finite lattices")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print timing to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a lattice, monoid, ground, morphism, fuzzy set, interior,
    /// topology, source or witness bundle file.
    Validate { path: PathBuf },
    /// Print a table: residuum, tensor, interior, closure or powerset-op.
    Tables {
        which: tables::Which,
        path: PathBuf,
        /// Powerset operator for `powerset-op` (default: all).
        #[arg(long)]
        op: Option<String>,
        /// Closure reading for `closure` (default: both).
        #[arg(long)]
        mode: Option<String>,
    },
    /// Check a property on supplied instances, or run a registered search.
    Check {
        property: String,
        #[arg(long)]
        morphism: Option<PathBuf>,
        /// Domain space, or structured source for `initiality`.
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
        /// Candidate lift for `initiality` (default: the join of initial interiors).
        #[arg(long)]
        lift: Option<PathBuf>,
        /// Interior for `idempotent`, `productive` and `fully-productive`.
        #[arg(long)]
        space: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Exhaustive counterexample search for a registered property.
    Search {
        #[arg(long, required_unless_present = "list")]
        property: Option<String>,
        /// List the registered properties.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Write the witness bundle here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Worked examples.
    Examples {
        #[command(subcommand)]
        cmd: ExamplesCmd,
    },
    /// Re-evaluate a witness bundle.
    Replay { path: PathBuf },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    /// Run example 1, 2 or 3 (default: all).
    Run {
        which: Option<u8>,
        /// L-topology file for example 3.
        #[arg(long)]
        topology: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Done, CliError> {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Validate { path } => validate::run(path, json),
        Cmd::Tables { which, path, op, mode } => tables::run(*which, path, op.as_deref(), mode.as_deref(), json),
        Cmd::Check { property, morphism, source, target, lift, space, bounds } => check::run(
            property,
            &check::Inputs {
                morphism: morphism.as_deref(),
                source: source.as_deref(),
                target: target.as_deref(),
                lift: lift.as_deref(),
                space: space.as_deref(),
            },
            bounds,
            json,
        ),
        Cmd::Search { property, list, bounds, out } => {
            if *list {
                return Ok(check::list(json));
            }
            check::search(property.as_deref().unwrap_or_default(), bounds, out.as_deref(), json)
        }
        Cmd::Examples { cmd: ExamplesCmd::Run { which, topology } } => examples::run(*which, topology.as_deref(), json),
        Cmd::Replay { path } => check::replay(path, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.verbose {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(done) => {
            print!("{}", done.output);
            ExitCode::from(if done.ok { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
