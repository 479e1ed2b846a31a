//! Desk-scale versions of the worked examples: semicontinuous and compact
//! interiors over finite topological spaces, the power family on `[0,1]`, and
//! the interior and closure of an L-topology.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::interior::{ClosureMode, InteriorError, LTopology};
use crate::monoid::{builtin_chain, ChainKind, GlMonoid};
use crate::outcome::Outcome;
use crate::powerset::{Code, Ground};

/// Absolute tolerance for float comparisons.
pub const TOLERANCE: f64 = 1e-12;

/// Largest carrier for which every topology is enumerated.
pub const MAX_TOPOLOGY_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ExampleError {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("the carrier is empty")]
    EmptyCarrier,
    #[error("value {0} is not on the grid")]
    OffGrid(f64),
    #[error("value {0} is outside [0,1]")]
    OutOfRange(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("topologies are enumerated on at most {MAX_TOPOLOGY_POINTS} points, not {0}")]
    TooManyPoints(usize),
    #[error("power index must be at least 1")]
    ZeroPower,
    #[error(transparent)]
    Interior(#[from] InteriorError),
}

/// A value in `[0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct UnitValue(f64);

impl UnitValue {
    pub fn new(t: f64) -> Result<Self, ExampleError> {
        if (0.0..=1.0).contains(&t) {
            Ok(UnitValue(t))
        } else {
            Err(ExampleError::OutOfRange(t))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Finite sample of `[0,1]` containing both ends, strictly increasing.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Grid(Vec<f64>);

impl Grid {
    pub fn new(mut values: Vec<f64>) -> Result<Self, ExampleError> {
        if let Some(&t) = values.iter().find(|t| !(0.0..=1.0).contains(*t)) {
            return Err(ExampleError::OutOfRange(t));
        }
        values.sort_by(f64::total_cmp);
        values.dedup_by(|a, b| (*a - *b).abs() <= TOLERANCE);
        if values.first() != Some(&0.0) || values.last() != Some(&1.0) {
            return Err(ExampleError::InvalidGrid("a grid must contain 0 and 1".into()));
        }
        Ok(Grid(values))
    }

    /// `k/(n-1)` for `k = 0..n`.
    pub fn uniform(n: usize) -> Self {
        let n = n.max(2);
        Grid((0..n).map(|k| k as f64 / (n - 1) as f64).collect())
    }

    /// `{0, 1/2, 1}`.
    pub fn halves() -> Self {
        Grid::uniform(3)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, t: f64) -> Result<usize, ExampleError> {
        self.0.iter().position(|g| (g - t).abs() <= TOLERANCE).ok_or(ExampleError::OffGrid(t))
    }

    fn positions(&self, u: &[f64]) -> Result<Vec<usize>, ExampleError> {
        u.iter().map(|&t| self.position(t)).collect()
    }

    /// Every grid-valued map on `n` points, as grid positions, in
    /// lexicographic order with the first point slowest.
    fn maps(&self, n: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let k = self.len();
        let total = k.pow(n as u32);
        (0..total).map(move |mut c| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = c % k;
                c /= k;
            }
            v
        })
    }
}

/// A topology on `{0, …, n-1}` with opens stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopSpace {
    points: Vec<String>,
    opens: Vec<u32>,
}

impl FiniteTopSpace {
    pub fn new(points: Vec<String>, opens: Vec<u32>) -> Result<Self, ExampleError> {
        let n = points.len();
        if n > 31 {
            return Err(ExampleError::InvalidTopology(format!("{n} points is too many")));
        }
        let full = full_mask(n);
        let mut opens = opens;
        opens.sort_unstable();
        opens.dedup();
        if let Some(m) = opens.iter().find(|&&m| m & !full != 0) {
            return Err(ExampleError::InvalidTopology(format!("open set {m:#b} mentions a point outside the carrier")));
        }
        if opens.binary_search(&0).is_err() {
            return Err(ExampleError::InvalidTopology("the empty set must be open".into()));
        }
        if opens.binary_search(&full).is_err() {
            return Err(ExampleError::InvalidTopology("the whole carrier must be open".into()));
        }
        for &a in &opens {
            for &b in &opens {
                if opens.binary_search(&(a | b)).is_err() || opens.binary_search(&(a & b)).is_err() {
                    return Err(ExampleError::InvalidTopology(format!(
                        "{} and {} are open but their union or intersection is not",
                        render_mask(&points, a),
                        render_mask(&points, b)
                    )));
                }
            }
        }
        Ok(FiniteTopSpace { points, opens })
    }

    /// Opens given as lists of point indices.
    pub fn from_sets(points: Vec<String>, opens: &[Vec<usize>]) -> Result<Self, ExampleError> {
        let n = points.len();
        let masks = opens
            .iter()
            .map(|s| {
                s.iter().try_fold(0u32, |m, &i| {
                    if i < n {
                        Ok(m | (1 << i))
                    } else {
                        Err(ExampleError::InvalidTopology(format!("point index {i} out of range")))
                    }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteTopSpace::new(points, masks)
    }

    pub fn discrete(n: usize) -> Self {
        FiniteTopSpace { points: numbered(n), opens: (0..=full_mask(n)).collect() }
    }

    pub fn indiscrete(n: usize) -> Self {
        let mut opens = vec![0, full_mask(n)];
        opens.dedup();
        FiniteTopSpace { points: numbered(n), opens }
    }

    /// `{p, q}` with opens `∅, {p}, {p, q}`.
    pub fn sierpinski() -> Self {
        FiniteTopSpace { points: vec!["p".into(), "q".into()], opens: vec![0b00, 0b01, 0b11] }
    }

    /// Every topology on `n` numbered points, ordered by their sorted open lists.
    pub fn all(n: usize) -> Result<Vec<Self>, ExampleError> {
        if n > MAX_TOPOLOGY_POINTS {
            return Err(ExampleError::TooManyPoints(n));
        }
        let full = full_mask(n);
        // the middle subsets, i.e. neither empty nor full
        let middle: Vec<u32> = (1..full).collect();
        let mut out = Vec::new();
        for pick in 0u64..(1u64 << middle.len()) {
            let mut opens = vec![0];
            opens.extend(middle.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).map(|(_, &m)| m));
            opens.push(full);
            opens.dedup();
            let closed = opens.iter().all(|&a| {
                opens.iter().all(|&b| opens.binary_search(&(a | b)).is_ok() && opens.binary_search(&(a & b)).is_ok())
            });
            if closed {
                out.push(FiniteTopSpace { points: numbered(n), opens });
            }
        }
        out.sort_by(|a, b| a.opens.cmp(&b.opens));
        Ok(out)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn is_open(&self, mask: u32) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    /// Classical interior of a subset.
    pub fn interior(&self, mask: u32) -> u32 {
        self.opens.iter().filter(|&&o| o & !mask == 0).fold(0, |acc, &o| acc | o)
    }

    pub fn render_opens(&self) -> Vec<String> {
        self.opens.iter().map(|&m| render_mask(&self.points, m)).collect()
    }
}

fn full_mask(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn render_mask(points: &[String], m: u32) -> String {
    let names: Vec<&str> = (0..points.len()).filter(|i| m >> i & 1 == 1).map(|i| points[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

/// The largest lower semicontinuous grid-valued map below `u`.
pub fn lsc_interior(space: &FiniteTopSpace, grid: &Grid, u: &[f64]) -> Result<Vec<f64>, ExampleError> {
    if u.len() != space.len() {
        return Err(ExampleError::Arity { expected: space.len(), got: u.len() });
    }
    let pos = grid.positions(u)?;
    Ok(lsc_positions(space, grid.len(), &pos).into_iter().map(|k| grid.values()[k]).collect())
}

// v(x) = max{a : x ∈ int{u ≥ a}}; {v ≥ a} is then int{u ≥ a}, which is open.
fn lsc_positions(space: &FiniteTopSpace, levels: usize, u: &[usize]) -> Vec<usize> {
    let mut v = vec![0; u.len()];
    for a in 1..levels {
        let sup = u.iter().enumerate().filter(|(_, &k)| k >= a).fold(0u32, |m, (i, _)| m | (1 << i));
        let int = space.interior(sup);
        for (i, slot) in v.iter_mut().enumerate() {
            if int >> i & 1 == 1 {
                *slot = a;
            }
        }
    }
    v
}

/// The constant map at `min v`.
pub fn compact_min_interior(v: &[f64]) -> Result<Vec<f64>, ExampleError> {
    let m = v.iter().copied().reduce(f64::min).ok_or(ExampleError::EmptyCarrier)?;
    Ok(vec![m; v.len()])
}

fn min_positions(v: &[usize]) -> Vec<usize> {
    let m = v.iter().copied().min().unwrap_or(0);
    vec![m; v.len()]
}

/// A finite stand-in for `I1`–`I3` on grid-valued maps: contraction,
/// monotonicity over every comparable pair, and the top fixed.
fn grid_axioms(n: usize, grid: &Grid, op: impl Fn(&[usize]) -> Vec<usize>) -> Outcome<String> {
    let maps: Vec<Vec<usize>> = grid.maps(n).collect();
    let images: Vec<Vec<usize>> = maps.iter().map(|u| op(u)).collect();
    let show =
        |p: &[usize]| format!("({})", p.iter().map(|&k| fmt_value(grid.values()[k])).collect::<Vec<_>>().join(","));
    let top = vec![grid.len() - 1; n];
    if op(&top) != top {
        return Outcome::Fails(format!("top is not fixed: {}", show(&op(&top))));
    }
    for (u, iu) in maps.iter().zip(&images) {
        if iu.iter().zip(u).any(|(a, b)| a > b) {
            return Outcome::Fails(format!("i{} = {} is not below the input", show(u), show(iu)));
        }
    }
    for (u, iu) in maps.iter().zip(&images) {
        for (v, iv) in maps.iter().zip(&images) {
            if u.iter().zip(v).all(|(a, b)| a <= b) && iu.iter().zip(iv).any(|(a, b)| a > b) {
                return Outcome::Fails(format!("{} <= {} but the images are not ordered", show(u), show(v)));
            }
        }
    }
    Outcome::Holds
}

/// Decimal rendering that round-trips the grid values used here.
pub fn fmt_value(t: f64) -> String {
    let s = format!("{t:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() {
        "0".into()
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example1Params {
    pub grid: Grid,
    /// Largest carrier for the axiom and continuity scans.
    pub max_points: usize,
    /// Largest carrier for the crisp-input comparison.
    pub crisp_max_points: usize,
}

impl Default for Example1Params {
    fn default() -> Self {
        Example1Params { grid: Grid::halves(), max_points: 3, crisp_max_points: MAX_TOPOLOGY_POINTS }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceSummary {
    pub points: Vec<String>,
    pub opens: Vec<String>,
}

impl From<&FiniteTopSpace> for SpaceSummary {
    fn from(s: &FiniteTopSpace) -> Self {
        SpaceSummary { points: s.points.clone(), opens: s.render_opens() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrispCheck {
    pub spaces: usize,
    pub inputs: u64,
    pub agrees: Outcome<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub instances: u64,
    pub lsc: Outcome<String>,
    pub compact_min: Outcome<String>,
}

/// `f: X → Y` as images of the source points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapWitness {
    pub source: SpaceSummary,
    pub target: SpaceSummary,
    pub f: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IjCheck {
    pub maps: u64,
    pub fuzzy_sets: u64,
    pub all_continuous: Outcome<MapWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JiTargetRow {
    pub target: SpaceSummary,
    pub source_points: usize,
    pub maps: u64,
    pub continuous: u64,
    pub nonconstant_continuous: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JiCheck {
    pub maps: u64,
    pub nonconstant_continuous: u64,
    /// First non-constant JI-continuous map in enumeration order.
    pub first_nonconstant: Option<MapWitness>,
    pub rows: Vec<JiTargetRow>,
    pub finding: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example1Report {
    pub grid: Grid,
    pub sierpinski: Vec<[String; 2]>,
    pub crisp: CrispCheck,
    pub axioms: AxiomCheck,
    pub ij: IjCheck,
    pub ji: JiCheck,
}

impl Example1Report {
    pub fn passed(&self) -> bool {
        self.crisp.agrees.holds()
            && self.axioms.lsc.holds()
            && self.axioms.compact_min.holds()
            && self.ij.all_continuous.holds()
    }
}

/// Is `f` (as target indices) continuous from `(X, lsc)` to `(Y, min)`?
/// Returns a failing `v` as grid positions.
fn ij_failure(source: &FiniteTopSpace, levels: usize, grid: &Grid, f: &[usize], ny: usize) -> Option<Vec<usize>> {
    grid.maps(ny).find(|v| {
        let pulled: Vec<usize> = f.iter().map(|&y| v[y]).collect();
        let lhs = min_positions(v)[0];
        let rhs = lsc_positions(source, levels, &pulled);
        rhs.iter().any(|&r| lhs > r)
    })
}

/// Is `f` continuous from `(X, min)` to `(Y, lsc)`?
fn ji_holds(target: &FiniteTopSpace, levels: usize, grid: &Grid, f: &[usize]) -> bool {
    grid.maps(target.len()).all(|v| {
        let iv = lsc_positions(target, levels, &v);
        let m = f.iter().map(|&y| v[y]).min().unwrap_or(0);
        f.iter().all(|&y| iv[y] <= m)
    })
}

fn all_maps(nx: usize, ny: usize) -> Vec<Vec<usize>> {
    if ny == 0 {
        return if nx == 0 { vec![vec![]] } else { vec![] };
    }
    let total = ny.pow(nx as u32);
    (0..total)
        .map(|mut c| {
            let mut f = vec![0; nx];
            for slot in f.iter_mut().rev() {
                *slot = c % ny;
                c /= ny;
            }
            f
        })
        .collect()
}

fn witness(source: &FiniteTopSpace, target: &FiniteTopSpace, f: &[usize]) -> MapWitness {
    MapWitness {
        source: source.into(),
        target: target.into(),
        f: f.iter().map(|&y| target.points[y].clone()).collect(),
    }
}

pub fn example1(params: &Example1Params) -> Result<Example1Report, ExampleError> {
    let grid = &params.grid;
    let levels = grid.len();
    let sierpinski = {
        let s = FiniteTopSpace::sierpinski();
        let show = |u: &[f64]| format!("({})", u.iter().map(|&t| fmt_value(t)).collect::<Vec<_>>().join(","));
        grid.maps(2)
            .map(|p| {
                let u: Vec<f64> = p.iter().map(|&k| grid.values()[k]).collect();
                let iu = lsc_interior(&s, grid, &u).expect("grid values");
                [show(&u), show(&iu)]
            })
            .collect()
    };

    let mut crisp = CrispCheck { spaces: 0, inputs: 0, agrees: Outcome::Holds };
    'crisp: for n in 1..=params.crisp_max_points {
        for space in FiniteTopSpace::all(n)? {
            crisp.spaces += 1;
            for m in 0..=full_mask(n) {
                crisp.inputs += 1;
                let u: Vec<usize> = (0..n).map(|i| if m >> i & 1 == 1 { levels - 1 } else { 0 }).collect();
                let v = lsc_positions(&space, levels, &u);
                let got =
                    v.iter().enumerate().fold(0u32, |acc, (i, &k)| acc | if k == levels - 1 { 1 << i } else { 0 });
                if got != space.interior(m) || v.iter().any(|&k| k != 0 && k != levels - 1) {
                    crisp.agrees = Outcome::Fails(format!(
                        "on opens {:?} the input {} does not map to its interior",
                        space.render_opens(),
                        render_mask(&space.points, m)
                    ));
                    break 'crisp;
                }
            }
        }
    }

    let mut axioms = AxiomCheck { instances: 0, lsc: Outcome::Holds, compact_min: Outcome::Holds };
    for n in 1..=params.max_points {
        for space in FiniteTopSpace::all(n)? {
            axioms.instances += 1;
            if axioms.lsc.holds() {
                axioms.lsc = grid_axioms(n, grid, |u| lsc_positions(&space, levels, u));
            }
        }
        axioms.instances += 1;
        if axioms.compact_min.holds() {
            axioms.compact_min = grid_axioms(n, grid, min_positions);
        }
    }

    let mut ij = IjCheck { maps: 0, fuzzy_sets: 0, all_continuous: Outcome::Holds };
    'ij: for nx in 1..=params.max_points {
        for source in FiniteTopSpace::all(nx)? {
            for ny in 1..=params.max_points {
                let target = FiniteTopSpace::indiscrete(ny);
                for f in all_maps(nx, ny) {
                    ij.maps += 1;
                    ij.fuzzy_sets += levels.pow(ny as u32) as u64;
                    if ij_failure(&source, levels, grid, &f, ny).is_some() {
                        ij.all_continuous = Outcome::Fails(witness(&source, &target, &f));
                        break 'ij;
                    }
                }
            }
        }
    }

    let mut ji = JiCheck {
        maps: 0,
        nonconstant_continuous: 0,
        first_nonconstant: None,
        rows: Vec::new(),
        finding: String::new(),
    };
    for ny in 1..=params.max_points {
        for target in FiniteTopSpace::all(ny)? {
            for nx in 1..=params.max_points {
                let source = FiniteTopSpace::indiscrete(nx);
                let mut row = JiTargetRow {
                    target: (&target).into(),
                    source_points: nx,
                    maps: 0,
                    continuous: 0,
                    nonconstant_continuous: 0,
                };
                for f in all_maps(nx, ny) {
                    row.maps += 1;
                    if ji_holds(&target, levels, grid, &f) {
                        row.continuous += 1;
                        if f.iter().any(|&y| y != f[0]) {
                            row.nonconstant_continuous += 1;
                            if ji.first_nonconstant.is_none() {
                                ji.first_nonconstant = Some(witness(&source, &target, &f));
                            }
                        }
                    }
                }
                ji.maps += row.maps;
                ji.nonconstant_continuous += row.nonconstant_continuous;
                ji.rows.push(row);
            }
        }
    }
    ji.finding = if ji.nonconstant_continuous == 0 {
        "every JI-continuous map found is constant".into()
    } else {
        let discrete_ok = ji
            .rows
            .iter()
            .filter(|r| r.target.opens.len() == 1usize << r.target.points.len())
            .all(|r| r.nonconstant_continuous == 0);
        format!(
            "{} non-constant JI-continuous maps found; {}",
            ji.nonconstant_continuous,
            if discrete_ok {
                "into discrete targets only constant maps are JI-continuous"
            } else {
                "some have discrete targets"
            }
        )
    };

    Ok(Example1Report { grid: grid.clone(), sierpinski, crisp, axioms, ij, ji })
}

/// Exponent of the power family; `Infinity` is the pointwise limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PowerIndex {
    Finite(u32),
    Infinity,
}

impl fmt::Display for PowerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerIndex::Finite(n) => write!(f, "{n}"),
            PowerIndex::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for PowerIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `t^n`; for `Infinity`, 1 at `t = 1` and 0 elsewhere.
pub fn power_interior(n: PowerIndex, t: UnitValue) -> Result<UnitValue, ExampleError> {
    let t = t.get();
    let v = match n {
        PowerIndex::Finite(0) => return Err(ExampleError::ZeroPower),
        PowerIndex::Finite(n) => t.powi(n as i32),
        PowerIndex::Infinity => {
            if t == 1.0 {
                1.0
            } else {
                0.0
            }
        }
    };
    UnitValue::new(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdempotencyWitness {
    pub t: f64,
    pub once: f64,
    pub twice: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerRow {
    pub n: PowerIndex,
    pub axioms: Outcome<String>,
    pub idempotent: Outcome<IdempotencyWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example2Report {
    pub grid_points: usize,
    pub tolerance: f64,
    pub rows: Vec<PowerRow>,
    pub idempotent: Vec<PowerIndex>,
}

impl Example2Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.axioms.holds()) && self.idempotent == [PowerIndex::Finite(1), PowerIndex::Infinity]
    }
}

/// Scans `i_1 … i_{n_max}` and `i_inf` over the grid: `I1`–`I3` and
/// idempotency within [`TOLERANCE`].
pub fn example2_idempotency_scan(n_max: u32, grid: &Grid) -> Result<Example2Report, ExampleError> {
    let ts: Vec<UnitValue> = grid.values().iter().map(|&t| UnitValue::new(t)).collect::<Result<_, _>>()?;
    let indices = (1..=n_max).map(PowerIndex::Finite).chain(std::iter::once(PowerIndex::Infinity));
    let mut rows = Vec::new();
    for n in indices {
        let i = |t: UnitValue| power_interior(n, t).map(UnitValue::get);
        let mut axioms = Outcome::Holds;
        if (i(UnitValue(1.0))? - 1.0).abs() > TOLERANCE {
            axioms = Outcome::Fails("i(1) != 1".into());
        }
        let images: Vec<f64> = ts.iter().map(|&t| i(t)).collect::<Result<_, _>>()?;
        for (k, (&t, &it)) in ts.iter().zip(&images).enumerate() {
            if axioms.holds() && it > t.get() + TOLERANCE {
                axioms = Outcome::Fails(format!("i({}) = {} exceeds the input", fmt_value(t.get()), it));
            }
            if axioms.holds() && k > 0 && images[k - 1] > it + TOLERANCE {
                axioms = Outcome::Fails(format!(
                    "not monotone between {} and {}",
                    fmt_value(ts[k - 1].get()),
                    fmt_value(t.get())
                ));
            }
        }
        let mut idempotent = Outcome::Holds;
        for (&t, &once) in ts.iter().zip(&images) {
            let twice = i(UnitValue::new(once)?)?;
            if (twice - once).abs() > TOLERANCE {
                idempotent = Outcome::Fails(IdempotencyWitness { t: t.get(), once, twice });
                break;
            }
        }
        rows.push(PowerRow { n, axioms, idempotent });
    }
    let idempotent = rows.iter().filter(|r| r.idempotent.holds()).map(|r| r.n).collect();
    Ok(Example2Report { grid_points: grid.len(), tolerance: TOLERANCE, rows, idempotent })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureReport {
    pub mode: ClosureMode,
    pub table: Vec<[String; 2]>,
    pub extensive: Outcome<String>,
    pub monotone: Outcome<[String; 2]>,
    pub idempotent: Outcome<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example3Report {
    pub basis: String,
    pub points: Vec<String>,
    pub opens: Vec<String>,
    pub join_closed: bool,
    pub interior: Vec<[String; 2]>,
    pub interior_axioms: Outcome<String>,
    pub closures: Vec<ClosureReport>,
}

fn render_rows(g: &Ground, table: &[Code]) -> Vec<[String; 2]> {
    table.iter().enumerate().map(|(u, &c)| [g.render_code(u as Code), g.render_code(c)]).collect()
}

/// Interior and both closure readings of one L-topology.
pub fn example3_roundtrip(m: &GlMonoid, t: &LTopology) -> Result<Example3Report, ExampleError> {
    let g = t.ground();
    let interior = t.interior();
    let table = interior.require_table()?.to_vec();
    let interior_axioms = crate::interior::check_table(g, &table)?.map(|v| v.describe(g));
    let mut closures = Vec::new();
    for mode in [ClosureMode::Literal, ClosureMode::Extensional] {
        let c = t.closure(m, mode)?;
        let ax = c.axioms();
        closures.push(ClosureReport {
            mode,
            table: render_rows(g, c.table()),
            extensive: ax.extensive.map(|u| g.render(&u)),
            monotone: ax.monotone.map(|(u, v)| [g.render(&u), g.render(&v)]),
            idempotent: ax.idempotent.map(|u| g.render(&u)),
        });
    }
    Ok(Example3Report {
        basis: g.basis().display_name(),
        points: g.points().to_vec(),
        opens: t.opens().iter().map(|u| g.render(u)).collect(),
        join_closed: t.is_join_closed().holds(),
        interior: render_rows(g, &table),
        interior_axioms,
        closures,
    })
}

/// `τ = {0, 1_X}` on one point over the Gödel 3-chain.
pub fn example3_default() -> Result<Example3Report, ExampleError> {
    let m = builtin_chain(ChainKind::Godel, 3).map_err(|e| ExampleError::InvalidTopology(e.to_string()))?;
    let g = Ground::numbered(1, Arc::new(m.cqml().clone()));
    let t = LTopology::new(g.clone(), vec![g.bottom(), g.top()])?;
    example3_roundtrip(&m, &t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub basis: String,
    pub points: usize,
    pub families: u64,
    pub literal_extensive_failures: u64,
    pub extensional_extensive_failures: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example3Sweep {
    pub rows: Vec<SweepRow>,
    pub extensional_extensive: bool,
}

/// Every family of fuzzy sets containing `1_X` on at most `max_points`
/// points over the Gödel and Łukasiewicz chains with at most `max_chain`
/// elements, restricted to powersets of at most `max_powerset` elements.
pub fn example3_sweep(max_points: usize, max_chain: usize, max_powerset: usize) -> Result<Example3Sweep, ExampleError> {
    let mut rows = Vec::new();
    for n in 2..=max_chain {
        for kind in [ChainKind::Godel, ChainKind::Lukasiewicz] {
            if n == 2 && kind == ChainKind::Lukasiewicz {
                continue; // the two-element chains coincide
            }
            let m = builtin_chain(kind, n).map_err(|e| ExampleError::InvalidTopology(e.to_string()))?;
            for points in 1..=max_points {
                let g = Ground::numbered(points, Arc::new(m.cqml().clone()));
                let size = g.powerset_size();
                if size > max_powerset as u128 {
                    continue;
                }
                let idx = g.index().map_err(|e| ExampleError::InvalidTopology(e.to_string()))?;
                let top = idx.top();
                let others: Vec<Code> = idx.codes().filter(|&c| c != top).collect();
                let mut row = SweepRow {
                    basis: g.basis().display_name(),
                    points,
                    families: 0,
                    literal_extensive_failures: 0,
                    extensional_extensive_failures: 0,
                };
                for pick in 0u64..(1u64 << others.len()) {
                    let mut opens = vec![g.top()];
                    opens.extend(
                        others.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).map(|(_, &c)| g.decode(c)),
                    );
                    let t = LTopology::new(g.clone(), opens)?;
                    row.families += 1;
                    for (mode, slot) in [
                        (ClosureMode::Literal, &mut row.literal_extensive_failures),
                        (ClosureMode::Extensional, &mut row.extensional_extensive_failures),
                    ] {
                        if !t.closure(&m, mode)?.axioms().extensive.holds() {
                            *slot += 1;
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let extensional_extensive = rows.iter().all(|r| r.extensional_extensive_failures == 0);
    Ok(Example3Sweep { rows, extensional_extensive })
}
