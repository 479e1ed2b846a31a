use std::path::Path;

use fuzzint::outcome::Outcome;
use fuzzint::report::{describe_ground, Report};
use fuzzint::schema::{
    from_value, DocKind, FuzzySetDoc, GroundDoc, LatticeRef, Loader, MonoidDoc, MonoidKind, MorphismDoc, SchemaError,
    SourceDoc, SpaceDoc,
};
use fuzzint::search::WitnessBundle;

use crate::output::{classify, input, read, CliError, Done};

fn stage(e: &SchemaError) -> &'static str {
    match e {
        SchemaError::Lattice(_) => "lattice axioms",
        SchemaError::Cqml(_) => "CQML axioms",
        SchemaError::Gl(_) => "GL-monoid axioms",
        SchemaError::Ground(_) => "ground",
        SchemaError::Morphism(_) => "morphism",
        SchemaError::Interior(_) | SchemaError::Axiom(_) => "interior axioms",
        SchemaError::Continuity(_) => "source",
        _ => "input",
    }
}

fn yes_no<W>(o: &Outcome<W>, show: impl Fn(&W) -> String) -> String {
    match o {
        Outcome::Holds => "yes".into(),
        Outcome::Fails(w) => format!("no, {}", show(w)),
    }
}

pub fn run(path: &Path, json: bool) -> Result<Done, CliError> {
    let value = read(path)?;
    let kind =
        DocKind::detect(&value).ok_or_else(|| CliError(format!("{}: not a recognised document", path.display())))?;
    let mut report = Report::new("validate", format!("{} ({})", path.display(), kind.name()));
    let ld = Loader::for_file(path);
    let result = validate_doc(kind, value, &ld, &mut report);
    if let Err(e) = result {
        let name = stage(&e);
        let msg = classify(e)?;
        report.check(name, Outcome::Fails(msg));
    }
    let ok = report.ok();
    Ok(Done::new(if json { report.to_json() } else { report.render_text() }, ok))
}

fn validate_doc(kind: DocKind, value: serde_json::Value, ld: &Loader, r: &mut Report) -> Result<(), SchemaError> {
    match kind {
        DocKind::Lattice => {
            let l = ld.lattice(&LatticeRef::Inline(from_value(value)?))?;
            r.check("lattice axioms", Outcome::Holds);
            r.note(format!("{} elements, bottom {}, top {}", l.len(), l.name(l.bottom()), l.name(l.top())));
            r.note(match l.distributivity() {
                None => "distributive".to_string(),
                Some(v) => format!("not distributive: {v}"),
            });
        }
        DocKind::Monoid => {
            let doc: MonoidDoc = from_value(value)?;
            let wants_gl = match &doc {
                MonoidDoc::Explicit { kind, .. } => *kind == MonoidKind::Gl,
                _ => true,
            };
            let b = ld.basis(&doc)?;
            r.check("lattice axioms", Outcome::Holds);
            r.check("CQML axioms", Outcome::Holds);
            if wants_gl {
                r.check("GL-monoid axioms", Outcome::Holds);
            }
            r.note(format!("{} with {} elements", b.cqml.display_name(), b.cqml.lattice().len()));
        }
        DocKind::Ground => {
            let (g, _) = ld.ground(&from_value::<GroundDoc>(value)?)?;
            r.check("ground", Outcome::Holds);
            r.note(format!("{} with {} fuzzy sets", describe_ground(&g), g.powerset_size()));
        }
        DocKind::Morphism => {
            let g = ld.morphism(&from_value::<MorphismDoc>(value)?)?;
            r.check("morphism", Outcome::Holds);
            if g.domain().is_materializable() && g.codomain().is_materializable() {
                r.check(
                    "backward image has the right adjoint",
                    match g.verify_right_adjoint() {
                        Ok(()) => Outcome::Holds,
                        Err(e) => Outcome::Fails(e.to_string()),
                    },
                );
                if let Ok(Some((a, b))) = g.find_meet_interchange_failure() {
                    let y = g.codomain();
                    r.note(format!(
                        "backward image does not preserve the meet of {} and {}",
                        y.render_code(a),
                        y.render_code(b)
                    ));
                }
            }
        }
        DocKind::FuzzySet => {
            let (g, u) = ld.fuzzy_set_doc(&from_value::<FuzzySetDoc>(value)?, None)?;
            r.check("fuzzy set", Outcome::Holds);
            r.note(format!("{} on {}", g.render(&u), describe_ground(&g)));
        }
        DocKind::Space => {
            let s = ld.space(&from_value::<SpaceDoc>(value)?)?;
            let i = s.interior();
            let g = i.ground();
            r.check("interior axioms", Outcome::Holds);
            if i.is_tabulated() {
                r.note(format!(
                    "idempotent: {}",
                    yes_no(&i.is_idempotent().map_err(input_err)?, |u| format!("at {}", g.render(u)))
                ));
                r.note(format!(
                    "productive: {}",
                    yes_no(&i.is_productive().map_err(input_err)?, |(u, v)| format!(
                        "at {} and {}",
                        g.render(u),
                        g.render(v)
                    ))
                ));
                r.note(format!(
                    "fully productive: {}",
                    yes_no(&i.is_fully_productive().map_err(input_err)?, |f| {
                        format!("at {{{}}}", f.iter().map(|u| g.render(u)).collect::<Vec<_>>().join(", "))
                    })
                ));
            }
        }
        DocKind::Topology => {
            let (t, b) = ld.topology(&from_value::<SpaceDoc>(value)?)?;
            let g = t.ground();
            r.check("contains the top fuzzy set", Outcome::Holds);
            r.check("interior axioms", Outcome::Holds);
            r.note(format!("{} opens on {}", t.opens().len(), describe_ground(g)));
            r.note(format!(
                "closed under joins: {}",
                yes_no(&t.is_join_closed(), |w| format!("join {} is missing", g.render(&w.join)))
            ));
            if b.gl.is_none() {
                r.note("basis is not declared as a GL-monoid; closures are unavailable");
            }
        }
        DocKind::Source => {
            let s = ld.source(&from_value::<SourceDoc>(value)?)?;
            r.check("source", Outcome::Holds);
            r.note(format!("{} members on {}", s.members().len(), describe_ground(s.domain())));
        }
        DocKind::Bundle => {
            let b = WitnessBundle::from_value(value).map_err(|e| SchemaError::Shape(e.to_string()))?;
            let known =
                b.property.parse::<fuzzint::search::Property>().map_err(|e| SchemaError::Shape(e.to_string()))?;
            r.check("witness bundle", Outcome::Holds);
            r.note(format!(
                "property {known}, status {}, {} instances, {}",
                if b.witness.is_some() { "fail" } else { "ok" },
                b.instances_checked,
                if b.witness.is_some() { "replayable witness" } else { "summary only" }
            ));
        }
    }
    Ok(())
}

fn input_err(e: impl std::fmt::Display) -> SchemaError {
    SchemaError::Shape(input(e).0)
}
