//! WebAssembly bindings for the static demo in `www/`.
//!
//! Every export takes plain arguments and returns a JSON string; errors come
//! back as a thrown string. The `*_json` functions are the same operations
//! without the JS types, for native use and tests.

use fuzzint::examples::{example2_idempotency_scan, Grid};
use fuzzint::interior::ClosureMode;
use fuzzint::monoid::{builtin_chain, ChainKind};
use fuzzint::report::{closure_table, interior_table, residuum_table, tensor_table};
use fuzzint::schema::{parse_json, Loader, SpaceDoc};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest chain offered by the demo.
pub const MAX_CHAIN: usize = 11;
/// Largest power index in the scan.
pub const MAX_POWER: u32 = 32;
/// Largest grid in the scan.
pub const MAX_GRID: usize = 10_001;

fn text(v: Value) -> String {
    serde_json::to_string(&v).expect("values serialize")
}

/// Residuum and tensor tables of a builtin chain (`godel` or `lukasiewicz`).
pub fn residuum_json(kind: &str, n: usize) -> Result<String, String> {
    let kind: ChainKind = kind.parse()?;
    if !(2..=MAX_CHAIN).contains(&n) {
        return Err(format!("chain length must be between 2 and {MAX_CHAIN}"));
    }
    let m = builtin_chain(kind, n).map_err(|e| e.to_string())?;
    Ok(text(json!({
        "basis": m.cqml().display_name(),
        "residuum": residuum_table(&m),
        "tensor": tensor_table(m.cqml()),
    })))
}

/// Interior and both closure readings of an L-topology document with an
/// inline or builtin basis.
pub fn topology_json(doc: &str) -> Result<String, String> {
    let doc: SpaceDoc = parse_json(doc).map_err(|e| e.to_string())?;
    let (t, basis) = Loader::default().topology(&doc).map_err(|e| e.to_string())?;
    let g = t.ground();
    let interior = t.interior();
    let mut out = json!({
        "points": g.points(),
        "basis": g.basis().display_name(),
        "opens": t.opens().iter().map(|u| g.render(u)).collect::<Vec<_>>(),
        "join_closed": t.is_join_closed().holds(),
        "idempotent": interior.is_idempotent().map_err(|e| e.to_string())?.holds(),
        "interior": interior_table(&interior).map_err(|e| e.to_string())?,
    });
    if let Some(m) = &basis.gl {
        let mut closures = Vec::new();
        for mode in [ClosureMode::Literal, ClosureMode::Extensional] {
            let c = t.closure(m, mode).map_err(|e| e.to_string())?;
            closures.push(json!({ "extensive": c.axioms().extensive.holds(), "table": closure_table(&c) }));
        }
        out["closures"] = Value::Array(closures);
    }
    Ok(text(out))
}

/// Idempotency of `t ↦ tⁿ` for `n = 1..=n_max` and the limit, on a uniform grid.
pub fn power_scan_json(n_max: u32, grid_points: usize) -> Result<String, String> {
    if !(1..=MAX_POWER).contains(&n_max) {
        return Err(format!("n must be between 1 and {MAX_POWER}"));
    }
    if !(2..=MAX_GRID).contains(&grid_points) {
        return Err(format!("grid must have between 2 and {MAX_GRID} points"));
    }
    let report = example2_idempotency_scan(n_max, &Grid::uniform(grid_points)).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn residuum(kind: &str, n: usize) -> Result<String, JsValue> {
    residuum_json(kind, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn topology(doc: &str) -> Result<String, JsValue> {
    topology_json(doc).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn power_scan(n_max: u32, grid_points: usize) -> Result<String, JsValue> {
    power_scan_json(n_max, grid_points).map_err(|e| JsValue::from_str(&e))
}
