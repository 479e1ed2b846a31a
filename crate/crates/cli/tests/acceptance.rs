//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fuzzint::examples::{
    example1, example2_idempotency_scan, example3_default, example3_sweep, Example1Params, Grid, PowerIndex,
};
use fuzzint::interior::{literal_trivial, InteriorMap};
use fuzzint::monoid::{builtin_chain, validate_gl, ChainKind, GlConfig, GlMonoid};
use fuzzint::powerset::{Code, Ground};
use fuzzint::search::{all_interior_maps, grounds, search, Property, SearchBounds};

use common::{golden_dir, run, CASES};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn holds(property: Property, bounds: &SearchBounds) -> Result<(u64, Vec<String>), String> {
    let r = search(property, bounds).map_err(|e| format!("{property}: {e}"))?;
    match &r.witness {
        None => Ok((r.instances, r.notes)),
        Some(w) => Err(format!("{property}: witness {}", serde_json::to_string(w).unwrap())),
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {:.2} s, limit {} s", t.as_secs_f64(), limit.as_secs()))
}

fn residuation(m: &GlMonoid) -> Result<(), String> {
    let l = m.lattice();
    for a in l.elements() {
        for b in l.elements() {
            let r = m.residuum(b, a);
            for c in l.elements() {
                if l.leq(m.tensor(c, b), a) != l.leq(c, r) {
                    return Err(format!("residuation fails at {}, {}, {}", l.name(c), l.name(b), l.name(a)));
                }
            }
            if l.leq(a, b) && !l.elements().any(|g| m.tensor(b, g) == a) {
                return Err(format!("{} <= {} has no divisor", l.name(a), l.name(b)));
            }
        }
    }
    Ok(())
}

fn c1_gl_chains() -> Verdict {
    let start = Instant::now();
    let mut n_checked = 0;
    for kind in [ChainKind::Godel, ChainKind::Lukasiewicz] {
        for n in 2..=11 {
            let m = builtin_chain(kind, n).map_err(|e| format!("{kind} {n}: {e}"))?;
            let again = validate_gl(m.cqml().clone(), &GlConfig::default()).map_err(|e| format!("{kind} {n}: {e}"))?;
            residuation(&again).map_err(|e| format!("{kind} {n}: {e}"))?;
            n_checked += 1;
        }
    }
    within(start, Duration::from_secs(5), "validation")?;
    Ok(format!("{n_checked} chains in {:.2} s", start.elapsed().as_secs_f64()))
}

fn c2_adjunctions() -> Verdict {
    let start = Instant::now();
    let (n, _) = holds(Property::Adjunctions, &SearchBounds::default())?;
    within(start, Duration::from_secs(60), "adjunction suite")?;
    Ok(format!("{n} order pairs, no witness, {:.2} s", start.elapsed().as_secs_f64()))
}

/// Contraction, monotonicity and upper bound on a code table, straight from the order.
fn oracle_axioms(g: &Ground, t: &[Code]) -> bool {
    let idx = g.index().unwrap();
    let top = idx.top();
    t[top as usize] == top
        && idx.codes().all(|u| {
            idx.leq(t[u as usize], u) && idx.codes().all(|v| !idx.leq(u, v) || idx.leq(t[u as usize], t[v as usize]))
        })
}

/// Number of tables on `g` passing the oracle, by brute force over all tables.
fn oracle_count(g: &Ground) -> u64 {
    let n = g.index().unwrap().size();
    let total = (n as u64).pow(n as u32);
    let mut count = 0;
    let mut t = vec![0 as Code; n];
    for mut c in 0..total {
        for slot in t.iter_mut() {
            *slot = (c % n as u64) as Code;
            c /= n as u64;
        }
        if oracle_axioms(g, &t) {
            count += 1;
        }
    }
    count
}

fn pointwise(g: &Ground, family: &[&InteriorMap], join: bool) -> Vec<Code> {
    let idx = g.index().unwrap();
    let l = g.lattice();
    idx.codes()
        .map(|u| {
            let mut it = family.iter().map(|i| i.table().unwrap()[u as usize]);
            let first = it.next().unwrap();
            it.fold(first, |a, b| if join { idx.join(l, a, b) } else { idx.meet(l, a, b) })
        })
        .collect()
}

fn c3_operator_lattice() -> Verdict {
    let bounds = SearchBounds::default();
    let (n, _) = holds(Property::OperatorLattice, &bounds)?;
    let mut subsets = 0u64;
    let mut counts = Vec::new();
    for g in grounds(&bounds) {
        let maps = all_interior_maps(&g, &bounds).map_err(|e| e.to_string())?;
        let (least, discrete) = (InteriorMap::least(&g), InteriorMap::discrete(&g));
        for i in &maps {
            ensure(oracle_axioms(&g, i.table().unwrap()), "enumerated map fails the axiom oracle")?;
            ensure(least.leq(i).unwrap() && i.leq(&discrete).unwrap(), "least/discrete are not the bounds")?;
        }
        ensure(maps.iter().any(|i| i.table() == least.table()), "least is not enumerated")?;
        ensure(maps.iter().any(|i| i.table() == discrete.table()), "discrete is not enumerated")?;
        // Every non-empty subset directly where that is feasible; the search covers pairs everywhere.
        if maps.len() <= 12 {
            for mask in 1u32..(1 << maps.len()) {
                let family: Vec<&InteriorMap> =
                    maps.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, i)| i).collect();
                for join in [true, false] {
                    ensure(oracle_axioms(&g, &pointwise(&g, &family, join)), "a subset join/meet fails the axioms")?;
                }
                subsets += 1;
            }
        }
        if g.powerset_size() <= 4 {
            let expected = oracle_count(&g);
            ensure(maps.len() as u64 == expected, format!("{} maps enumerated, oracle counts {expected}", maps.len()))?;
            counts.push(format!("{}pt/{}={}", g.len(), g.basis().display_name(), maps.len()));
        }
    }
    Ok(format!(
        "{n} pairs, {subsets} subsets; counts agree with the brute-force oracle: {} (on two points over C2 each atom goes to itself or 0)",
        counts.join(", ")
    ))
}

fn c4_trivial_literal() -> Verdict {
    let r = search(Property::TrivialLiteral, &SearchBounds::default()).map_err(|e| e.to_string())?;
    let w = r.witness.as_ref().ok_or("literal trivial operator passed every check")?;
    let w = serde_json::to_value(w).unwrap();
    ensure(w["u"] == serde_json::json!(["1/2"]), format!("first witness is {w}, expected u = (1/2)"))?;
    for kind in [ChainKind::Godel, ChainKind::Lukasiewicz] {
        let m = builtin_chain(kind, 3).unwrap();
        let g = Ground::numbered(1, Arc::new(m.cqml().clone()));
        let half = g.fuzzy_set(&["1/2"]).unwrap();
        let image = literal_trivial(&g, &half);
        ensure(!g.leq(&image, &half), format!("literal trivial is contractive at 1/2 over {kind}"))?;
    }
    let bounds = SearchBounds::default();
    let mut maps = 0;
    for g in grounds(&bounds) {
        let least = InteriorMap::least(&g);
        ensure(oracle_axioms(&g, least.table().unwrap()), "least map fails the axioms")?;
        for i in all_interior_maps(&g, &bounds).map_err(|e| e.to_string())? {
            ensure(least.leq(&i).unwrap(), "least map is not below an enumerated map")?;
            maps += 1;
        }
    }
    Ok(format!("u = (1/2) maps to (1) on C3; least map below all {maps} enumerated maps"))
}

fn c5_initiality() -> Verdict {
    let (n, notes) = holds(Property::Initiality, &SearchBounds::default())?;
    for note in &notes {
        println!("       note: {note}");
    }
    Ok(format!("{n} instances, no witness, {} meet-interchange notes", notes.len()))
}

fn c6_preservation() -> Verdict {
    let b = SearchBounds::default();
    let (a, _) = holds(Property::PreserveIdempotency, &b)?;
    let (f, _) = holds(Property::PreserveFullProductivity, &b)?;
    Ok(format!("idempotency {a} instances, full productivity {f} instances"))
}

fn c7_closure() -> Verdict {
    let b = SearchBounds::default();
    let start = Instant::now();
    let (c, _) = holds(Property::ContinuityComposition, &b)?;
    let (o, _) = holds(Property::OpennessComposition, &b)?;
    let (p, _) = holds(Property::OpenPreimage, &b)?;
    Ok(format!("compositions {c} + {o}, preimages {p}, {:.1} s", start.elapsed().as_secs_f64()))
}

fn c8_examples() -> Verdict {
    let e2 = example2_idempotency_scan(8, &Grid::uniform(101)).map_err(|e| e.to_string())?;
    ensure(e2.grid_points == 101 && e2.tolerance == 1e-12, "example 2 grid or tolerance")?;
    ensure(
        e2.idempotent == [PowerIndex::Finite(1), PowerIndex::Infinity] && e2.passed(),
        format!("example 2 idempotent set {:?}", e2.idempotent),
    )?;
    let e1 = example1(&Example1Params { grid: Grid::halves(), max_points: 3, crisp_max_points: 3 })
        .map_err(|e| e.to_string())?;
    ensure(e1.crisp.agrees.holds(), format!("example 1 crisp disagreement: {:?}", e1.crisp.agrees))?;
    let e3 = example3_default().map_err(|e| e.to_string())?;
    let images: Vec<&str> = e3.interior.iter().map(|[_, v]| v.as_str()).collect();
    ensure(images == ["(0)", "(0)", "(1)"], format!("example 3 interior {:?}", e3.interior))?;
    let ext = e3
        .closures
        .iter()
        .find(|c| c.mode == fuzzint::interior::ClosureMode::Extensional)
        .ok_or("no extensional closure")?;
    ensure(ext.extensive.holds(), "extensional closure not extensive on the default space")?;
    let sweep = example3_sweep(2, 3, 16).map_err(|e| e.to_string())?;
    ensure(sweep.extensional_extensive, "extensional closure not extensive in the sweep")?;
    let families: u64 = sweep.rows.iter().map(|r| r.families).sum();
    Ok(format!(
        "idempotent {{i_1, i_inf}} on 101 points; crisp agreement on {} spaces; table (0, 1/2, 1) -> (0, 0, 1); {families} families extensive",
        e1.crisp.spaces
    ))
}

fn c9_cli() -> Verdict {
    let dir = golden_dir();
    for (name, args, code) in CASES {
        let (c1, out1, _) = run(args);
        let (c2, out2, _) = run(args);
        ensure(out1 == out2 && c1 == c2, format!("{name}: differs between runs"))?;
        ensure(c1 == *code, format!("{name}: exit {c1}, expected {code}"))?;
        let want = std::fs::read_to_string(dir.join(format!("{name}.txt"))).map_err(|e| format!("{name}: {e}"))?;
        ensure(want == out1, format!("{name}: differs from the golden file"))?;
    }
    let (c, _, _) = run(&["validate", "fixtures/does-not-exist.json"]);
    ensure(c == 2, "missing file does not exit 2")?;
    Ok(format!("{} golden cases byte-identical twice; exit codes 0/1/2 as recorded", CASES.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("GL-monoid validation", c1_gl_chains),
        ("adjunction suite", c2_adjunctions),
        ("operator lattice", c3_operator_lattice),
        ("literal trivial operator", c4_trivial_literal),
        ("initiality suite", c5_initiality),
        ("preservation suite", c6_preservation),
        ("continuity/openness closure", c7_closure),
        ("examples", c8_examples),
        ("CLI determinism", c9_cli),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let t = start.elapsed().as_secs_f64();
        match v {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({t:.2} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why} ({t:.2} s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
