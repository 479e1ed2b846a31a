use std::fmt::Write as _;
use std::path::Path;

use fuzzint::examples::{
    example1, example2_idempotency_scan, example3_default, example3_roundtrip, example3_sweep, fmt_value,
    Example1Params, Example1Report, Example2Report, Example3Report, Example3Sweep, Grid,
};
use fuzzint::outcome::Outcome;
use fuzzint::schema::{from_value, Loader, SpaceDoc};
use serde_json::json;

use crate::output::{input, pretty, read, CliError, Done};

fn mark<W>(o: &Outcome<W>) -> &'static str {
    if o.holds() {
        "ok"
    } else {
        "FAIL"
    }
}

fn text1(r: &Example1Report) -> String {
    let mut s = String::from("example 1: lower semicontinuous and compact interiors\n");
    let _ = writeln!(s, "grid: {}", r.grid.values().iter().map(|&t| fmt_value(t)).collect::<Vec<_>>().join(", "));
    s.push_str("Sierpinski space {p,q}, opens {}, {p}, {p,q}:\n");
    for [u, iu] in &r.sierpinski {
        let _ = writeln!(s, "  {u} -> {iu}");
    }
    let _ = writeln!(
        s,
        "[{}] crisp inputs give the classical interior ({} spaces, {} inputs)",
        mark(&r.crisp.agrees),
        r.crisp.spaces,
        r.crisp.inputs
    );
    let _ = writeln!(s, "[{}] lsc interior satisfies I1-I3 ({} instances)", mark(&r.axioms.lsc), r.axioms.instances);
    let _ = writeln!(s, "[{}] compact min interior satisfies I1-I3", mark(&r.axioms.compact_min));
    let _ = writeln!(
        s,
        "[{}] every map into a finite space is IJ-continuous ({} maps, {} fuzzy sets)",
        mark(&r.ij.all_continuous),
        r.ij.maps,
        r.ij.fuzzy_sets
    );
    let _ = writeln!(s, "[info] JI-continuity: {} ({} maps scanned)", r.ji.finding, r.ji.maps);
    if let Some(w) = &r.ji.first_nonconstant {
        let _ =
            writeln!(s, "       first non-constant: f = ({}) into opens {}", w.f.join(","), w.target.opens.join(" "));
    }
    s
}

fn text2(r: &Example2Report) -> String {
    let mut s = format!("example 2: i_n(t) = t^n on a {}-point grid, tolerance {:e}\n", r.grid_points, r.tolerance);
    for row in &r.rows {
        let idem = match &row.idempotent {
            Outcome::Holds => "idempotent".to_string(),
            Outcome::Fails(w) => {
                format!("not idempotent: t={} i(t)={:.6e} i(i(t))={:.6e}", fmt_value(w.t), w.once, w.twice)
            }
        };
        let _ = writeln!(s, "  i_{:<4} axioms {:<4} {idem}", row.n.to_string(), mark(&row.axioms));
    }
    let names: Vec<String> = r.idempotent.iter().map(|n| format!("i_{n}")).collect();
    let _ = writeln!(s, "idempotent: {{{}}}", names.join(", "));
    s
}

fn text3(r: &Example3Report, sweep: Option<&Example3Sweep>) -> String {
    let mut s =
        format!("example 3: interior and closure of an L-topology on {{{}}} over {}\n", r.points.join(","), r.basis);
    let _ = writeln!(s, "opens: {}", r.opens.join(" "));
    let _ = writeln!(s, "[{}] interior satisfies I1-I3", mark(&r.interior_axioms));
    for [u, iu] in &r.interior {
        let _ = writeln!(s, "  i{u} = {iu}");
    }
    for c in &r.closures {
        let _ = writeln!(
            s,
            "{} closure: extensive {}, monotone {}, idempotent {}",
            c.mode,
            mark(&c.extensive),
            mark(&c.monotone),
            mark(&c.idempotent)
        );
        for [u, cu] in &c.table {
            let _ = writeln!(s, "  c{u} = {cu}");
        }
    }
    if let Some(sw) = sweep {
        let _ = writeln!(s, "sweep over every family containing 1_X:");
        for row in &sw.rows {
            let _ = writeln!(
                s,
                "  |X|={} over {:<4} {:>4} families, literal not extensive in {:>4}, extensional in {}",
                row.points, row.basis, row.families, row.literal_extensive_failures, row.extensional_extensive_failures
            );
        }
    }
    s
}

fn example3_passed(r: &Example3Report, sweep: Option<&Example3Sweep>) -> bool {
    r.interior_axioms.holds()
        && r.closures
            .iter()
            .filter(|c| c.mode == fuzzint::interior::ClosureMode::Extensional)
            .all(|c| c.extensive.holds())
        && sweep.is_none_or(|s| s.extensional_extensive)
}

pub fn run(which: Option<u8>, topology: Option<&Path>, json: bool) -> Result<Done, CliError> {
    let which: Vec<u8> = match which {
        Some(k @ 1..=3) => vec![k],
        Some(k) => return Err(CliError(format!("no example {k}; expected 1, 2 or 3"))),
        None => vec![1, 2, 3],
    };
    let mut text = Vec::new();
    let mut docs = serde_json::Map::new();
    let mut ok = true;
    for k in which {
        match k {
            1 => {
                let r = example1(&Example1Params::default()).map_err(input)?;
                ok &= r.passed();
                text.push(text1(&r));
                docs.insert("1".into(), json!({ "passed": r.passed(), "report": r }));
            }
            2 => {
                let r = example2_idempotency_scan(8, &Grid::uniform(101)).map_err(input)?;
                ok &= r.passed();
                text.push(text2(&r));
                docs.insert("2".into(), json!({ "passed": r.passed(), "report": r }));
            }
            _ => {
                let (r, sweep) = match topology {
                    Some(p) => {
                        let doc: SpaceDoc = from_value(read(p)?)?;
                        let (t, b) = Loader::for_file(p).topology(&doc).map_err(input)?;
                        let m = b.gl.ok_or_else(|| CliError("example 3 needs a GL-monoid basis".into()))?;
                        (example3_roundtrip(&m, &t).map_err(input)?, None)
                    }
                    None => (example3_default().map_err(input)?, Some(example3_sweep(2, 3, 81).map_err(input)?)),
                };
                let passed = example3_passed(&r, sweep.as_ref());
                ok &= passed;
                text.push(text3(&r, sweep.as_ref()));
                docs.insert("3".into(), json!({ "passed": passed, "report": r, "sweep": sweep }));
            }
        }
    }
    Ok(Done::new(if json { pretty(&docs) } else { text.join("\n") }, ok))
}
