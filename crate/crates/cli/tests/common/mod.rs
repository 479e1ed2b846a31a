#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Exit code, stdout, stderr; `FUZZINT_BOUNDS` is cleared.
pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fuzzint"))
        .args(args)
        .current_dir(root())
        .env_remove("FUZZINT_BOUNDS")
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

/// Name, arguments, expected exit code.
pub const CASES: &[(&str, &[&str], i32)] = &[
    ("validate_godel3", &["validate", "fixtures/godel3.json"], 0),
    ("validate_godel3_json", &["validate", "fixtures/godel3.json", "--json"], 0),
    ("validate_lukasiewicz5", &["validate", "fixtures/lukasiewicz5.json"], 0),
    ("validate_chain3", &["validate", "fixtures/chain3.json"], 0),
    ("validate_diamond", &["validate", "fixtures/diamond.json"], 0),
    ("validate_n5_gl", &["validate", "fixtures/n5_gl.json"], 1),
    ("validate_n5_gl_json", &["validate", "fixtures/n5_gl.json", "--json"], 1),
    ("validate_ground", &["validate", "fixtures/ground.json"], 0),
    ("validate_morphism", &["validate", "fixtures/morphism.json"], 0),
    ("validate_fuzzyset", &["validate", "fixtures/fuzzyset.json"], 0),
    ("validate_interior_table", &["validate", "fixtures/interior_table.json"], 0),
    ("validate_literal_trivial", &["validate", "fixtures/interior_literal_trivial.json"], 1),
    ("validate_topology", &["validate", "fixtures/topology.json"], 0),
    ("validate_source", &["validate", "fixtures/source.json"], 0),
    ("validate_bundle", &["validate", "fixtures/witness_trivial.json"], 0),
    ("validate_malformed_json", &["validate", "fixtures/malformed.json", "--json"], 2),
    ("tables_residuum_godel3", &["tables", "residuum", "fixtures/godel3.json"], 0),
    ("tables_residuum_godel3_json", &["tables", "residuum", "fixtures/godel3.json", "--json"], 0),
    ("tables_tensor_lukasiewicz5", &["tables", "tensor", "fixtures/lukasiewicz5.json"], 0),
    ("tables_interior_topology", &["tables", "interior", "fixtures/topology.json"], 0),
    ("tables_interior_discrete", &["tables", "interior", "fixtures/space_x_discrete.json"], 0),
    ("tables_closure_topology", &["tables", "closure", "fixtures/topology.json"], 0),
    ("tables_powerset_morphism", &["tables", "powerset-op", "fixtures/morphism.json"], 0),
    ("tables_residuum_not_monoid", &["tables", "residuum", "fixtures/chain3.json", "--json"], 2),
    (
        "check_continuity_fail",
        &[
            "check",
            "continuity",
            "--morphism",
            "fixtures/morphism.json",
            "--source",
            "fixtures/space_x_least.json",
            "--target",
            "fixtures/space_y_discrete.json",
        ],
        1,
    ),
    (
        "check_continuity_ok",
        &[
            "check",
            "continuity",
            "--morphism",
            "fixtures/morphism.json",
            "--source",
            "fixtures/space_x_discrete.json",
            "--target",
            "fixtures/space_y_discrete.json",
            "--json",
        ],
        0,
    ),
    ("check_initiality", &["check", "initiality", "--source", "fixtures/source.json"], 0),
    (
        "check_initiality_discrete_lift",
        &[
            "check",
            "initiality",
            "--source",
            "fixtures/source.json",
            "--lift",
            "fixtures/space_x_discrete.json",
            "--json",
        ],
        1,
    ),
    ("check_idempotent", &["check", "idempotent", "--space", "fixtures/interior_table.json"], 0),
    ("check_trivial_literal", &["check", "trivial-literal"], 1),
    ("check_unknown_property", &["check", "no-such-property", "--json"], 2),
    ("replay_trivial", &["replay", "fixtures/witness_trivial.json"], 1),
    ("examples_run_3", &["examples", "run", "3"], 0),
];
