//! Deterministic tables and verdict reports, in text and JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::interior::{ClosureMap, InteriorError, InteriorMap};
use crate::lattice::Elem;
use crate::monoid::{Cqml, GlMonoid};
use crate::outcome::Outcome;
use crate::powerset::{zadeh_backward, zadeh_forward, Code, ForwardPath, Ground, GroundMorphism, MorphismError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Left-aligned columns, two spaces apart.
    pub fn render_text(&self) -> String {
        let width = |k: usize| {
            self.rows.iter().map(|r| r[k].chars().count()).chain([self.columns[k].chars().count()]).max().unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.columns.len()).map(width).collect();
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (k, c) in cells.iter().enumerate() {
                if k + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    let pad = widths[k] - c.chars().count();
                    let _ = write!(s, "{c}{}  ", " ".repeat(pad));
                }
            }
            s
        };
        let mut out = format!("{}\n", self.title);
        out.push_str(&line(&self.columns));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }
}

fn elems(n: usize) -> impl Iterator<Item = Elem> {
    (0..n as u16).map(Elem)
}

/// `a → b` for every pair, in element order.
pub fn residuum_table(m: &GlMonoid) -> Table {
    let l = m.lattice();
    let mut t = Table::new(format!("residuum of {}", m.cqml().display_name()), &["a", "b", "a -> b"]);
    for a in elems(l.len()) {
        for b in elems(l.len()) {
            t.push(vec![l.name(a).into(), l.name(b).into(), l.name(m.residuum(a, b)).into()]);
        }
    }
    t
}

pub fn tensor_table(m: &Cqml) -> Table {
    let l = m.lattice();
    let mut t = Table::new(format!("tensor of {}", m.display_name()), &["a", "b", "a * b"]);
    for a in elems(l.len()) {
        for b in elems(l.len()) {
            t.push(vec![l.name(a).into(), l.name(b).into(), l.name(m.tensor(a, b)).into()]);
        }
    }
    t
}

fn code_rows(t: &mut Table, from: &Ground, to: &Ground, f: impl Fn(Code) -> Code) {
    for u in 0..from.powerset_size() as Code {
        t.push(vec![from.render_code(u), to.render_code(f(u))]);
    }
}

pub fn interior_table(i: &InteriorMap) -> Result<Table, InteriorError> {
    let g = i.ground();
    let table = i.require_table()?;
    let mut t = Table::new(format!("interior on {}", describe_ground(g)), &["u", "i(u)"]);
    code_rows(&mut t, g, g, |u| table[u as usize]);
    Ok(t)
}

pub fn closure_table(c: &ClosureMap) -> Table {
    let g = c.ground();
    let mut t = Table::new(format!("{} closure on {}", c.mode(), describe_ground(g)), &["u", "c(u)"]);
    code_rows(&mut t, g, g, |u| c.table()[u as usize]);
    t
}

pub fn describe_ground(g: &Ground) -> String {
    format!("{{{}}} over {}", g.points().join(","), g.basis().display_name())
}

/// The powerset operators a morphism induces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowersetOp {
    /// `(f,φ)→ : L^X → M^Y`.
    Forward,
    /// `(f,φ)← : M^Y → L^X`.
    Backward,
    /// `(f,φ)_* : L^X → M^Y`.
    RightAdjoint,
    /// `f→ : L^X → L^Y`.
    ZadehForward,
    /// `f← : L^Y → L^X`.
    ZadehBackward,
}

impl PowersetOp {
    pub const ALL: [PowersetOp; 5] = [
        PowersetOp::Forward,
        PowersetOp::Backward,
        PowersetOp::RightAdjoint,
        PowersetOp::ZadehForward,
        PowersetOp::ZadehBackward,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PowersetOp::Forward => "forward",
            PowersetOp::Backward => "backward",
            PowersetOp::RightAdjoint => "right-adjoint",
            PowersetOp::ZadehForward => "zadeh-forward",
            PowersetOp::ZadehBackward => "zadeh-backward",
        }
    }
}

impl FromStr for PowersetOp {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        PowersetOp::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<&str> = PowersetOp::ALL.iter().map(|p| p.name()).collect();
            format!("unknown powerset operator {s:?} (expected one of {})", names.join(", "))
        })
    }
}

pub fn powerset_op_table(g: &GroundMorphism, op: PowersetOp) -> Result<Table, MorphismError> {
    let (x, y) = (g.domain(), g.codomain());
    let y_over_l = Ground::new(y.points().to_vec(), x.basis().clone())?;
    let (from, to) = match op {
        PowersetOp::Forward | PowersetOp::RightAdjoint => (x, y),
        PowersetOp::Backward => (y, x),
        PowersetOp::ZadehForward => (x, &y_over_l),
        PowersetOp::ZadehBackward => (&y_over_l, x),
    };
    let (head, col) = match op {
        PowersetOp::Forward => ("forward image", "F(a)"),
        PowersetOp::Backward => ("backward image", "B(b)"),
        PowersetOp::RightAdjoint => ("right adjoint of the backward image", "R(a)"),
        PowersetOp::ZadehForward => ("Zadeh image", "f(a)"),
        PowersetOp::ZadehBackward => ("Zadeh preimage", "f^-1(b)"),
    };
    let arg = if from == x { "a" } else { "b" };
    let mut t = Table::new(format!("{head}: {} -> {}", describe_ground(from), describe_ground(to)), &[arg, col]);
    for c in 0..from.powerset_size() as Code {
        let u = from.decode(c);
        let image = match op {
            PowersetOp::Forward => g.forward(&u, ForwardPath::Auto)?,
            PowersetOp::Backward => g.backward(&u)?,
            PowersetOp::RightAdjoint => g.right_adjoint(&u)?,
            PowersetOp::ZadehForward => zadeh_forward(x.lattice(), g.map(), y.len(), &u),
            PowersetOp::ZadehBackward => zadeh_backward(g.map(), &u),
        };
        t.push(vec![from.render(&u), to.render(&image)]);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub outcome: Outcome<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, outcome: Outcome<String>) -> Self {
        Check { name: name.into(), outcome }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Fail,
}

/// Result of a `validate` or `check` run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub subject: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, subject: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            subject: subject.into(),
            verdict: Verdict::Ok,
            checks: Vec::new(),
            notes: Vec::new(),
            details: None,
        }
    }

    /// Adds a check; any failure turns the verdict to `Fail`.
    pub fn check(&mut self, name: impl Into<String>, outcome: Outcome<String>) -> &mut Self {
        if !outcome.holds() {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(Check::new(name, outcome));
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn ok(&self) -> bool {
        self.verdict == Verdict::Ok
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} {}: {}\n", self.command, self.subject, if self.ok() { "OK" } else { "FAIL" });
        for c in &self.checks {
            match &c.outcome {
                Outcome::Holds => {
                    let _ = writeln!(out, "  [ok]   {}", c.name);
                }
                Outcome::Fails(w) => {
                    let _ = writeln!(out, "  [FAIL] {}: {w}", c.name);
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
