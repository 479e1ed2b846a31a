use std::fmt::Write as _;
use std::path::Path;

use fuzzint::continuity::{
    initial_from_source, is_continuous, is_open_morphism, verify_initiality, InitialityDirection, Strategy, TestFamily,
};
use fuzzint::outcome::Outcome;
use fuzzint::powerset::Ground;
use fuzzint::schema::{from_value, morphism_doc, space_doc, Loader, MorphismDoc, SourceDoc, SpaceDoc};
use fuzzint::search::{self, all_interior_maps, grounds, morphisms, Expectation, Property, WitnessBundle};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::BoundArgs;
use crate::output::{classify, input, pretty, read, CliError, Done};

const TRIVIAL_NOTE: &str =
    "the trivial operator as literally stated (0 -> 0, every other u -> 1_X) is not contractive; \
the least interior map sends 1_X to 1_X and every other u to 0";

/// Verdict report of `check`, `search` and `replay`.
#[derive(Serialize)]
struct Verdict {
    property: String,
    status: &'static str,
    instances_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl Verdict {
    fn new(property: &str, instances: u64, witness: Option<Value>, notes: Vec<String>) -> Self {
        Verdict {
            property: property.into(),
            status: if witness.is_some() { "fail" } else { "ok" },
            instances_checked: instances,
            witness,
            notes,
        }
    }

    fn done(&self, command: &str, json: bool) -> Done {
        let ok = self.witness.is_none();
        if json {
            return Done::new(pretty(self), ok);
        }
        let mut s = format!("{command} {}: {} ({} instances)\n", self.property, self.status, self.instances_checked);
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness:\n{}", pretty(w));
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        Done::new(s, ok)
    }
}

pub struct Inputs<'a> {
    pub morphism: Option<&'a Path>,
    pub source: Option<&'a Path>,
    pub target: Option<&'a Path>,
    pub lift: Option<&'a Path>,
    pub space: Option<&'a Path>,
}

fn need<'a>(p: Option<&'a Path>, flag: &str, property: &str) -> Result<&'a Path, CliError> {
    p.ok_or_else(|| CliError(format!("{property} needs --{flag}")))
}

/// Loads a document, treating axiom failures as a failed verdict.
fn load<T, D: serde::de::DeserializeOwned>(
    path: &Path,
    f: impl FnOnce(&Loader, D) -> Result<T, fuzzint::schema::SchemaError>,
) -> Result<Result<T, String>, CliError> {
    let doc: D = from_value(read(path)?)?;
    match f(&Loader::for_file(path), doc) {
        Ok(t) => Ok(Ok(t)),
        Err(e) => classify(e).map(|m| Err(format!("{}: {m}", path.display()))),
    }
}

macro_rules! loaded {
    ($e:expr, $property:expr, $json:expr) => {
        match $e? {
            Ok(t) => t,
            Err(msg) => return Ok(Verdict::new($property, 0, Some(json!({ "invalid_input": msg })), vec![]).done("check", $json)),
        }
    };
}

pub const LOCAL: [&str; 6] = ["continuity", "openness", "initiality", "idempotent", "productive", "fully-productive"];

pub fn list(json: bool) -> Done {
    #[derive(Serialize)]
    struct Entry {
        name: &'static str,
        expected: &'static str,
        summary: &'static str,
    }
    let entries: Vec<Entry> = Property::ALL
        .iter()
        .map(|p| Entry {
            name: p.name(),
            expected: match p.expectation() {
                Expectation::Holds => "holds",
                Expectation::Counterexample => "counterexample",
                Expectation::Measured => "measured",
            },
            summary: p.summary(),
        })
        .collect();
    if json {
        return Done::new(pretty(&entries), true);
    }
    let mut s = String::new();
    for e in &entries {
        let _ = writeln!(s, "{:<28} {:<15} {}", e.name, e.expected, e.summary);
    }
    Done::new(s, true)
}

pub fn run(property: &str, inputs: &Inputs<'_>, bounds: &BoundArgs, json: bool) -> Result<Done, CliError> {
    if !LOCAL.contains(&property) {
        return search(property, bounds, None, json);
    }
    let verdict = match property {
        "continuity" | "openness" => {
            let g = loaded!(
                load(need(inputs.morphism, "morphism", property)?, |l, d: MorphismDoc| l.morphism(&d)),
                property,
                json
            );
            let s =
                loaded!(load(need(inputs.source, "source", property)?, |l, d: SpaceDoc| l.space(&d)), property, json);
            let t =
                loaded!(load(need(inputs.target, "target", property)?, |l, d: SpaceDoc| l.space(&d)), property, json);
            let open = property == "openness";
            let out = if open { is_open_morphism(&g, &s, &t) } else { is_continuous(&g, &s, &t) }.map_err(input)?;
            let witness = out.witness().map(|v| {
                let y = t.ground();
                let pulled = g.backward(v).expect("codomain set");
                let x = s.ground();
                let (lhs, rhs) = if open {
                    (s.interior().apply(&pulled), g.backward(&t.interior().apply(v)).expect("codomain set"))
                } else {
                    (g.backward(&t.interior().apply(v)).expect("codomain set"), s.interior().apply(&pulled))
                };
                json!({ "v": y.render(v), "lhs": x.render(&lhs), "rhs": x.render(&rhs) })
            });
            let n = t.ground().powerset_size() as u64;
            Verdict::new(property, n, witness, vec![])
        }
        "idempotent" | "productive" | "fully-productive" => {
            let s = loaded!(load(need(inputs.space, "space", property)?, |l, d: SpaceDoc| l.space(&d)), property, json);
            let (i, g) = (s.interior(), s.ground());
            let n = g.powerset_size() as u64;
            let witness = match property {
                "idempotent" => i.is_idempotent().map_err(input)?.witness().map(|u| json!({ "u": g.render(u) })),
                "productive" => i
                    .is_productive()
                    .map_err(input)?
                    .witness()
                    .map(|(u, v)| json!({ "u": g.render(u), "v": g.render(v) })),
                _ => i
                    .is_fully_productive()
                    .map_err(input)?
                    .witness()
                    .map(|f| json!({ "family": f.iter().map(|u| g.render(u)).collect::<Vec<_>>() })),
            };
            Verdict::new(property, n, witness, vec![])
        }
        _ => initiality(inputs, bounds)?,
    };
    Ok(verdict.done("check", json))
}

fn initiality(inputs: &Inputs<'_>, bounds: &BoundArgs) -> Result<Verdict, CliError> {
    let property = "initiality";
    let src = match load(need(inputs.source, "source", property)?, |l, d: SourceDoc| l.source(&d))? {
        Ok(s) => s,
        Err(msg) => return Ok(Verdict::new(property, 0, Some(json!({ "invalid_input": msg })), vec![])),
    };
    let lift = match inputs.lift {
        Some(p) => match load(p, |l, d: SpaceDoc| l.space(&d))? {
            Ok(s) => s.interior().clone(),
            Err(msg) => return Ok(Verdict::new(property, 0, Some(json!({ "invalid_input": msg })), vec![])),
        },
        None => initial_from_source(&src).map_err(input)?,
    };
    let b = bounds.resolve()?;
    let mut gs: Vec<Ground> = grounds(&b);
    if !gs.contains(src.domain()) {
        gs.push(src.domain().clone());
    }
    let interiors = |z: &Ground| {
        all_interior_maps(z, &b).map_err(|e| fuzzint::continuity::ContinuityError::BoundsTooLarge(e.to_string()))
    };
    let family =
        TestFamily { grounds: &gs, morphisms: &morphisms, interiors: &interiors, strategy: Strategy::Principal };
    let report = verify_initiality(&src, &lift, &family).map_err(input)?;
    let notes = report
        .meet_interchange_failures
        .iter()
        .map(|(k, a, b)| format!("member {k}: backward image does not preserve the meet of {a} and {b}"))
        .collect();
    let witness = report.outcome.witness().map(|w| {
        json!({
            "direction": match w.direction {
                InitialityDirection::If => "composites continuous, morphism into the lift not",
                InitialityDirection::OnlyIf => "morphism into the lift continuous, some composite not",
            },
            "member": w.member,
            "test_space": space_doc(w.test_space.interior()).ok(),
            "morphism": morphism_doc(&w.morphism),
        })
    });
    Ok(Verdict::new(property, report.instances, witness, notes))
}

pub fn search(name: &str, bounds: &BoundArgs, out: Option<&Path>, json: bool) -> Result<Done, CliError> {
    let property: Property = name.parse().map_err(|_| {
        let mut known: Vec<&str> = LOCAL.to_vec();
        known.extend(Property::ALL.iter().map(|p| p.name()).filter(|n| !LOCAL.contains(n)));
        CliError(format!("unknown property {name:?}; known: {}", known.join(", ")))
    })?;
    let b = bounds.resolve()?;
    let result = search::search(property, &b).map_err(input)?;
    let bundle = result.bundle(&b);
    if let Some(path) = out {
        std::fs::write(path, bundle.to_json() + "\n")
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut notes = result.notes.clone();
    if property == Property::TrivialLiteral && !result.holds() {
        notes.push(TRIVIAL_NOTE.into());
    }
    let witness = result.witness.as_ref().map(|w| serde_json::to_value(w).expect("witness serializes"));
    let verdict = Verdict::new(property.name(), result.instances, witness, notes);
    Ok(verdict.done("search", json))
}

pub fn replay(path: &Path, json: bool) -> Result<Done, CliError> {
    let bundle = WitnessBundle::from_value(read(path)?).map_err(input)?;
    let out = search::replay(&bundle).map_err(input)?;
    let reproduced = !out.holds() == (bundle.witness.is_some());
    let mut notes = vec![if reproduced {
        "recorded verdict reproduced".to_string()
    } else {
        "recorded verdict NOT reproduced".to_string()
    }];
    if let Outcome::Fails(desc) = &out {
        notes.push(desc.clone());
    }
    let witness = match out {
        Outcome::Fails(_) => bundle.witness.as_ref().map(|w| serde_json::to_value(w).expect("witness serializes")),
        Outcome::Holds => None,
    };
    let v = Verdict::new(&bundle.property, 1, witness, notes);
    Ok(v.done("replay", json))
}
