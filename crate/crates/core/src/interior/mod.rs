//! Interior maps on a fuzzy powerset `L^X`, the complete lattice they form,
//! and the idempotency / productivity predicates.

mod topology;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::outcome::Outcome;
use crate::powerset::{Code, FuzzySet, Ground, GroundError, PowersetIndex};

pub use topology::{ClosureAxioms, ClosureMap, ClosureMode, JoinClosureWitness, LTopology};

/// Number of random probes used when a powerset is too large to tabulate.
pub const SAMPLE_PROBES: usize = 4096;
const SAMPLE_SEED: u64 = 0x1f2e_3d4c;

pub type Rule = Arc<dyn Fn(&FuzzySet) -> FuzzySet + Send + Sync>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InteriorError {
    #[error("{0}")]
    Axiom(AxiomViolation),
    #[error("maps live on different grounds")]
    GroundMismatch,
    #[error("empty family of interior maps")]
    EmptyFamily,
    #[error("|L|^|X| = {0} is too large for an exhaustive check")]
    GroundTooLarge(u128),
    #[error("table has {got} rows, expected {expected}")]
    TableShape { got: usize, expected: usize },
    #[error("1_X is not among the opens")]
    TopMissingFromTopology,
    #[error("closure needs the ground's basis to be the given GL-monoid")]
    NotGLGround,
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// First violated interior axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `i(u) ≰ u`.
    Contraction { u: FuzzySet, iu: FuzzySet },
    /// `u ≤ v` but `i(u) ≰ i(v)`.
    Monotonicity { u: FuzzySet, v: FuzzySet, iu: FuzzySet, iv: FuzzySet },
    /// `i(1_X) ≠ 1_X`.
    UpperBound { itop: FuzzySet },
}

impl AxiomViolation {
    pub fn describe(&self, g: &Ground) -> String {
        match self {
            AxiomViolation::Contraction { u, iu } => {
                format!("contraction fails at u={}: i(u)={}", g.render(u), g.render(iu))
            }
            AxiomViolation::Monotonicity { u, v, iu, iv } => format!(
                "monotonicity fails: u={} <= v={} but i(u)={} , i(v)={}",
                g.render(u),
                g.render(v),
                g.render(iu),
                g.render(iv)
            ),
            AxiomViolation::UpperBound { itop } => format!("upper bound fails: i(1_X)={}", g.render(itop)),
        }
    }

    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomViolation::Contraction { .. } => "contraction",
            AxiomViolation::Monotonicity { .. } => "monotonicity",
            AxiomViolation::UpperBound { .. } => "upper-bound",
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Contraction { u, .. } => write!(f, "contraction violated at {:?}", u.0),
            AxiomViolation::Monotonicity { u, v, .. } => write!(f, "monotonicity violated at {:?} <= {:?}", u.0, v.0),
            AxiomViolation::UpperBound { .. } => write!(f, "i(1_X) != 1_X"),
        }
    }
}

/// Checks I1 (contraction), I2 (monotonicity), I3 (upper bound) on a table
/// indexed by code. Monotonicity is checked along covering pairs, which is
/// equivalent by transitivity.
pub fn check_table(ground: &Ground, table: &[Code]) -> Result<Outcome<AxiomViolation>, InteriorError> {
    let idx = ground.index()?;
    if table.len() != idx.size() {
        return Err(InteriorError::TableShape { got: table.len(), expected: idx.size() });
    }
    Ok(check_indexed(ground, idx, table).into())
}

fn check_indexed(g: &Ground, idx: &PowersetIndex, t: &[Code]) -> Result<(), AxiomViolation> {
    for u in idx.codes() {
        if !idx.leq(t[u as usize], u) {
            return Err(AxiomViolation::Contraction { u: g.decode(u), iu: g.decode(t[u as usize]) });
        }
    }
    for &u in idx.linear_extension() {
        for &v in idx.lower_covers(u) {
            if !idx.leq(t[v as usize], t[u as usize]) {
                return Err(AxiomViolation::Monotonicity {
                    u: g.decode(v),
                    v: g.decode(u),
                    iu: g.decode(t[v as usize]),
                    iv: g.decode(t[u as usize]),
                });
            }
        }
    }
    let top = idx.top();
    if t[top as usize] != top {
        return Err(AxiomViolation::UpperBound { itop: g.decode(t[top as usize]) });
    }
    Ok(())
}

fn random_set(g: &Ground, rng: &mut ChaCha8Rng) -> FuzzySet {
    let n = g.lattice().len();
    FuzzySet((0..g.len()).map(|_| crate::lattice::Elem(rng.gen_range(0..n) as u16)).collect())
}

/// Checks I1–I3 for an arbitrary candidate map: exhaustively when `L^X` is
/// materializable, otherwise on [`SAMPLE_PROBES`] seeded random probes.
pub fn check_interior_axioms(ground: &Ground, candidate: impl Fn(&FuzzySet) -> FuzzySet) -> Outcome<AxiomViolation> {
    if let Ok(idx) = ground.index() {
        let table: Vec<Code> = idx.codes().map(|c| ground.encode(&candidate(&ground.decode(c)))).collect();
        return check_indexed(ground, idx, &table).into();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..SAMPLE_PROBES {
        let u = random_set(ground, &mut rng);
        let iu = candidate(&u);
        if !ground.leq(&iu, &u) {
            return Outcome::Fails(AxiomViolation::Contraction { u, iu });
        }
        let w = ground.meet(&u, &random_set(ground, &mut rng));
        let iw = candidate(&w);
        if !ground.leq(&iw, &iu) {
            return Outcome::Fails(AxiomViolation::Monotonicity { u: w, v: u, iu: iw, iv: iu });
        }
    }
    let itop = candidate(&ground.top());
    if itop != ground.top() {
        return Outcome::Fails(AxiomViolation::UpperBound { itop });
    }
    Outcome::Holds
}

#[derive(Clone)]
enum Repr {
    Table(Arc<[Code]>),
    Rule(Rule),
}

/// A validated interior map `i_XL : L^X → L^X`.
#[derive(Clone)]
pub struct InteriorMap {
    ground: Ground,
    repr: Repr,
}

impl fmt::Debug for InteriorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Table(t) => f.debug_struct("InteriorMap").field("ground", &self.ground).field("table", t).finish(),
            Repr::Rule(_) => f.debug_struct("InteriorMap").field("ground", &self.ground).field("rule", &"..").finish(),
        }
    }
}

impl PartialEq for InteriorMap {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Table(a), Repr::Table(b)) => self.ground == other.ground && a == b,
            _ => false,
        }
    }
}

impl InteriorMap {
    /// Validates a code-indexed table.
    pub fn from_table(ground: Ground, table: Vec<Code>) -> Result<Self, InteriorError> {
        match check_table(&ground, &table)? {
            Outcome::Holds => Ok(Self::new_unchecked(ground, table)),
            Outcome::Fails(w) => Err(InteriorError::Axiom(w)),
        }
    }

    /// Validates a rule; tabulated when `L^X` is materializable.
    pub fn from_rule(ground: Ground, rule: Rule) -> Result<Self, InteriorError> {
        if let Ok(idx) = ground.index() {
            let table = idx.codes().map(|c| ground.encode(&rule(&ground.decode(c)))).collect();
            return Self::from_table(ground, table);
        }
        match check_interior_axioms(&ground, |u| rule(u)) {
            Outcome::Holds => Ok(InteriorMap { ground, repr: Repr::Rule(rule) }),
            Outcome::Fails(w) => Err(InteriorError::Axiom(w)),
        }
    }

    pub(crate) fn new_unchecked(ground: Ground, table: Vec<Code>) -> Self {
        debug_assert!(check_table(&ground, &table).map(|o| o.holds()).unwrap_or(false));
        InteriorMap { ground, repr: Repr::Table(table.into()) }
    }

    pub(crate) fn tabulate_or_rule(ground: Ground, rule: Rule) -> Self {
        match ground.index() {
            Ok(idx) => {
                let table: Vec<Code> = idx.codes().map(|c| ground.encode(&rule(&ground.decode(c)))).collect();
                InteriorMap::new_unchecked(ground, table)
            }
            Err(_) => InteriorMap { ground, repr: Repr::Rule(rule) },
        }
    }

    /// The identity map: the largest interior map.
    pub fn discrete(ground: &Ground) -> Self {
        Self::tabulate_or_rule(ground.clone(), Arc::new(|u: &FuzzySet| u.clone()))
    }

    /// `1_X ↦ 1_X`, everything else `↦ 0_X`: the smallest interior map.
    pub fn least(ground: &Ground) -> Self {
        let g = ground.clone();
        Self::tabulate_or_rule(
            ground.clone(),
            Arc::new(move |u: &FuzzySet| if *u == g.top() { g.top() } else { g.bottom() }),
        )
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.repr, Repr::Table(_))
    }

    pub fn table(&self) -> Option<&[Code]> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            Repr::Rule(_) => None,
        }
    }

    pub fn require_table(&self) -> Result<&[Code], InteriorError> {
        self.table().ok_or(InteriorError::GroundTooLarge(self.ground.powerset_size()))
    }

    pub fn apply(&self, u: &FuzzySet) -> FuzzySet {
        match &self.repr {
            Repr::Table(t) => self.ground.decode(t[self.ground.encode(u) as usize]),
            Repr::Rule(r) => r(u),
        }
    }

    /// Table lookup by code. Panics on a rule-backed map.
    #[inline]
    pub fn apply_code(&self, u: Code) -> Code {
        match &self.repr {
            Repr::Table(t) => t[u as usize],
            Repr::Rule(_) => panic!("apply_code on a rule-backed interior map"),
        }
    }

    /// `(u, i(u))` rows in code order.
    pub fn rows(&self) -> Result<Vec<(FuzzySet, FuzzySet)>, InteriorError> {
        let t = self.require_table()?;
        Ok(t.iter().enumerate().map(|(u, &iu)| (self.ground.decode(u as Code), self.ground.decode(iu))).collect())
    }

    /// Pointwise order `self ≤ other`.
    pub fn leq(&self, other: &InteriorMap) -> Result<bool, InteriorError> {
        if self.ground != other.ground {
            return Err(InteriorError::GroundMismatch);
        }
        let (a, b) = (self.require_table()?, other.require_table()?);
        let idx = self.ground.index()?;
        Ok(a.iter().zip(b).all(|(&x, &y)| idx.leq(x, y)))
    }

    /// Checks `i(i(u)) = i(u)` for all `u`.
    pub fn is_idempotent(&self) -> Result<Outcome<FuzzySet>, InteriorError> {
        let t = self.require_table()?;
        for (u, &iu) in t.iter().enumerate() {
            if t[iu as usize] != iu {
                return Ok(Outcome::Fails(self.ground.decode(u as Code)));
            }
        }
        Ok(Outcome::Holds)
    }

    /// Checks `i(u ∧ v) = i(u) ∧ i(v)` for all pairs.
    pub fn is_productive(&self) -> Result<Outcome<(FuzzySet, FuzzySet)>, InteriorError> {
        let t = self.require_table()?;
        let idx = self.ground.index()?;
        let l = self.ground.lattice();
        for u in idx.codes() {
            for v in u..idx.size() as Code {
                if t[idx.meet(l, u, v) as usize] != idx.meet(l, t[u as usize], t[v as usize]) {
                    return Ok(Outcome::Fails((self.ground.decode(u), self.ground.decode(v))));
                }
            }
        }
        Ok(Outcome::Holds)
    }

    /// Checks `i(⋀ F) = ⋀ i(F)` for every family `F`. On a finite powerset
    /// every meet is an iterated binary meet or the empty meet `1_X`, so this
    /// is productivity together with `i(1_X) = 1_X`. The witness is the
    /// offending family.
    pub fn is_fully_productive(&self) -> Result<Outcome<Vec<FuzzySet>>, InteriorError> {
        let top = self.ground.top();
        if self.apply(&top) != top {
            return Ok(Outcome::Fails(Vec::new()));
        }
        Ok(self.is_productive()?.map(|(u, v)| vec![u, v]))
    }

    /// Fixed points `{u : i(u) = u}` in code order.
    pub fn open_sets(&self) -> Result<Vec<FuzzySet>, InteriorError> {
        Ok(self.open_codes()?.into_iter().map(|c| self.ground.decode(c)).collect())
    }

    pub fn open_codes(&self) -> Result<Vec<Code>, InteriorError> {
        let t = self.require_table()?;
        Ok((0..t.len() as Code).filter(|&u| t[u as usize] == u).collect())
    }
}

fn combine_family(family: &[InteriorMap], join: bool) -> Result<InteriorMap, InteriorError> {
    let first = family.first().ok_or(InteriorError::EmptyFamily)?;
    let g = first.ground.clone();
    if family.iter().any(|m| m.ground != g) {
        return Err(InteriorError::GroundMismatch);
    }
    if family.iter().all(InteriorMap::is_tabulated) {
        let idx = g.index()?;
        let l = g.lattice();
        let mut table = first.require_table()?.to_vec();
        for m in &family[1..] {
            for (acc, &x) in table.iter_mut().zip(m.require_table()?) {
                *acc = if join { idx.join(l, *acc, x) } else { idx.meet(l, *acc, x) };
            }
        }
        return InteriorMap::from_table(g, table);
    }
    let members: Vec<InteriorMap> = family.to_vec();
    let gg = g.clone();
    let rule: Rule = Arc::new(move |u: &FuzzySet| {
        let images: Vec<FuzzySet> = members.iter().map(|m| m.apply(u)).collect();
        if join {
            gg.join_all(&images)
        } else {
            gg.meet_all(&images)
        }
    });
    InteriorMap::from_rule(g, rule)
}

/// Pointwise join of a nonempty family.
pub fn join_interiors(family: &[InteriorMap]) -> Result<InteriorMap, InteriorError> {
    combine_family(family, true)
}

/// Pointwise meet of a nonempty family.
pub fn meet_interiors(family: &[InteriorMap]) -> Result<InteriorMap, InteriorError> {
    combine_family(family, false)
}

/// The displayed "trivial" operator taken literally: `0_X ↦ 0_X`, any other
/// `u ↦ 1_X`. It is not contractive; see [`InteriorMap::least`].
pub fn literal_trivial(ground: &Ground, u: &FuzzySet) -> FuzzySet {
    if *u == ground.bottom() {
        ground.bottom()
    } else {
        ground.top()
    }
}

#[cfg(test)]
mod tests;
