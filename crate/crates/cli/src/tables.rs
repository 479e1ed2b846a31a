use std::path::Path;

use clap::ValueEnum;
use fuzzint::interior::ClosureMode;
use fuzzint::report::{
    closure_table, interior_table, powerset_op_table, residuum_table, tensor_table, PowersetOp, Table,
};
use fuzzint::schema::{from_value, DocKind, Loader, MonoidDoc, MorphismDoc, SpaceDoc};

use crate::output::{input, read, CliError, Done};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Residuum,
    Tensor,
    Interior,
    Closure,
    PowersetOp,
}

pub fn run(which: Which, path: &Path, op: Option<&str>, mode: Option<&str>, json: bool) -> Result<Done, CliError> {
    let value = read(path)?;
    let kind = DocKind::detect(&value);
    let ld = Loader::for_file(path);
    let expect = |k: &[DocKind]| -> Result<(), CliError> {
        match kind {
            Some(found) if k.contains(&found) => Ok(()),
            _ => Err(CliError(format!(
                "{} is not a {} file",
                path.display(),
                k.iter().map(|k| k.name()).collect::<Vec<_>>().join(" or ")
            ))),
        }
    };
    let tables: Vec<Table> = match which {
        Which::Residuum | Which::Tensor => {
            expect(&[DocKind::Monoid])?;
            let b = ld.basis(&from_value::<MonoidDoc>(value)?).map_err(input)?;
            if which == Which::Tensor {
                vec![tensor_table(&b.cqml)]
            } else {
                let m = b.gl.ok_or_else(|| CliError("residuum tables need a GL-monoid (kind \"gl\")".into()))?;
                vec![residuum_table(&m)]
            }
        }
        Which::Interior => {
            expect(&[DocKind::Space, DocKind::Topology])?;
            let s = ld.space(&from_value::<SpaceDoc>(value)?).map_err(input)?;
            vec![interior_table(s.interior()).map_err(input)?]
        }
        Which::Closure => {
            expect(&[DocKind::Topology])?;
            let (t, b) = ld.topology(&from_value::<SpaceDoc>(value)?).map_err(input)?;
            let m = b.gl.ok_or_else(|| CliError("closures need a GL-monoid basis (kind \"gl\")".into()))?;
            let modes = match mode {
                Some(s) => vec![s.parse::<ClosureMode>().map_err(input)?],
                None => vec![ClosureMode::Literal, ClosureMode::Extensional],
            };
            modes
                .into_iter()
                .map(|md| t.closure(&m, md).map(|c| closure_table(&c)).map_err(input))
                .collect::<Result<_, _>>()?
        }
        Which::PowersetOp => {
            expect(&[DocKind::Morphism])?;
            let g = ld.morphism(&from_value::<MorphismDoc>(value)?).map_err(input)?;
            let ops = match op {
                Some(s) => vec![s.parse::<PowersetOp>().map_err(input)?],
                None => PowersetOp::ALL.to_vec(),
            };
            ops.into_iter().map(|o| powerset_op_table(&g, o).map_err(input)).collect::<Result<_, _>>()?
        }
    };
    let out = if json {
        if tables.len() == 1 {
            tables[0].to_json()
        } else {
            serde_json::to_string_pretty(&tables).expect("tables serialize")
        }
    } else {
        tables.iter().map(Table::render_text).collect::<Vec<_>>().join("\n")
    };
    Ok(Done::new(out, true))
}
