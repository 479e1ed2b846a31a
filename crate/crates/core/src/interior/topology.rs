use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use super::{InteriorError, InteriorMap, Rule};
use crate::monoid::GlMonoid;
use crate::outcome::Outcome;
use crate::powerset::{Code, FuzzySet, Ground};

/// A family `τ ⊆ L^X` of designated opens containing `1_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LTopology {
    ground: Ground,
    opens: Vec<FuzzySet>,
}

/// A subfamily of `τ` whose join is not in `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinClosureWitness {
    pub family: Vec<FuzzySet>,
    pub join: FuzzySet,
}

impl LTopology {
    /// Opens are deduplicated and kept in first-seen order.
    pub fn new(ground: Ground, opens: Vec<FuzzySet>) -> Result<Self, InteriorError> {
        let mut out: Vec<FuzzySet> = Vec::with_capacity(opens.len());
        for v in opens {
            ground.check(&v)?;
            if !out.contains(&v) {
                out.push(v);
            }
        }
        if !out.contains(&ground.top()) {
            return Err(InteriorError::TopMissingFromTopology);
        }
        Ok(LTopology { ground, opens: out })
    }

    /// `τ = {0_X, 1_X}`.
    pub fn indiscrete(ground: &Ground) -> Self {
        LTopology { ground: ground.clone(), opens: vec![ground.bottom(), ground.top()] }
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn opens(&self) -> &[FuzzySet] {
        &self.opens
    }

    /// Closure under arbitrary joins. On a finite family that is the empty
    /// join `0_X` plus binary joins.
    pub fn is_join_closed(&self) -> Outcome<JoinClosureWitness> {
        let bottom = self.ground.bottom();
        if !self.opens.contains(&bottom) {
            return Outcome::Fails(JoinClosureWitness { family: Vec::new(), join: bottom });
        }
        for (i, a) in self.opens.iter().enumerate() {
            for b in &self.opens[i + 1..] {
                let j = self.ground.join(a, b);
                if !self.opens.contains(&j) {
                    return Outcome::Fails(JoinClosureWitness { family: vec![a.clone(), b.clone()], join: j });
                }
            }
        }
        Outcome::Holds
    }

    /// `i(u) = ⋁{v ∈ τ : v ≤ u}`.
    pub fn interior(&self) -> InteriorMap {
        let g = self.ground.clone();
        let opens = self.opens.clone();
        let rule: Rule = Arc::new(move |u: &FuzzySet| g.join_all(opens.iter().filter(|v| g.leq(v, u))));
        InteriorMap::tabulate_or_rule(self.ground.clone(), rule)
    }

    /// Pointwise pseudo-complement `v → 0_X`.
    fn negate(&self, m: &GlMonoid, v: &FuzzySet) -> FuzzySet {
        let bot = m.lattice().bottom();
        FuzzySet(v.0.iter().map(|&a| m.residuum(a, bot)).collect())
    }

    /// The closure read off the opens with the pointwise residuum.
    /// `Literal`: `c(u) = ⋀{v → 0_X : v ∈ τ, u ≤ v}`.
    /// `Extensional`: `c(u) = ⋀{v → 0_X : v ∈ τ, u ≤ v → 0_X}`.
    pub fn closure(&self, m: &GlMonoid, mode: ClosureMode) -> Result<ClosureMap, InteriorError> {
        if **self.ground.basis() != *m.cqml() {
            return Err(InteriorError::NotGLGround);
        }
        let g = &self.ground;
        let idx = g.index().map_err(|_| InteriorError::GroundTooLarge(g.powerset_size()))?;
        let negs: Vec<(FuzzySet, FuzzySet)> = self.opens.iter().map(|v| (v.clone(), self.negate(m, v))).collect();
        let table = idx
            .codes()
            .map(|c| {
                let u = g.decode(c);
                let chosen = negs.iter().filter(|(v, nv)| match mode {
                    ClosureMode::Literal => g.leq(&u, v),
                    ClosureMode::Extensional => g.leq(&u, nv),
                });
                g.encode(&g.meet_all(chosen.map(|(_, nv)| nv)))
            })
            .collect();
        Ok(ClosureMap { ground: g.clone(), mode, table })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureMode {
    Literal,
    Extensional,
}

impl FromStr for ClosureMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "literal" => Ok(ClosureMode::Literal),
            "extensional" => Ok(ClosureMode::Extensional),
            other => Err(format!("unknown closure mode {other:?} (literal|extensional)")),
        }
    }
}

impl std::fmt::Display for ClosureMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClosureMode::Literal => "literal",
            ClosureMode::Extensional => "extensional",
        })
    }
}

/// A tabulated map `L^X → L^X` produced by [`LTopology::closure`]. Not
/// validated: which closure axioms hold is reported by [`ClosureMap::axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureMap {
    ground: Ground,
    mode: ClosureMode,
    table: Vec<Code>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureAxioms {
    /// `u ≤ c(u)`; witness `u`.
    pub extensive: Outcome<FuzzySet>,
    /// `u ≤ v ⇒ c(u) ≤ c(v)`; witness `(u, v)`.
    pub monotone: Outcome<(FuzzySet, FuzzySet)>,
    /// `c(c(u)) = c(u)`; witness `u`.
    pub idempotent: Outcome<FuzzySet>,
}

impl ClosureMap {
    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn mode(&self) -> ClosureMode {
        self.mode
    }

    pub fn table(&self) -> &[Code] {
        &self.table
    }

    pub fn apply(&self, u: &FuzzySet) -> FuzzySet {
        self.ground.decode(self.table[self.ground.encode(u) as usize])
    }

    pub fn rows(&self) -> Vec<(FuzzySet, FuzzySet)> {
        self.table.iter().enumerate().map(|(u, &c)| (self.ground.decode(u as Code), self.ground.decode(c))).collect()
    }

    pub fn axioms(&self) -> ClosureAxioms {
        let g = &self.ground;
        let idx = g.index().expect("closure maps are tabulated");
        let t = &self.table;
        let extensive = idx.codes().find(|&u| !idx.leq(u, t[u as usize])).map(|u| g.decode(u));
        let mut monotone = None;
        'outer: for &u in idx.linear_extension() {
            for &v in idx.lower_covers(u) {
                if !idx.leq(t[v as usize], t[u as usize]) {
                    monotone = Some((g.decode(v), g.decode(u)));
                    break 'outer;
                }
            }
        }
        let idempotent = idx.codes().find(|&u| t[t[u as usize] as usize] != t[u as usize]).map(|u| g.decode(u));
        ClosureAxioms {
            extensive: extensive.map_or(Outcome::Holds, Outcome::Fails),
            monotone: monotone.map_or(Outcome::Holds, Outcome::Fails),
            idempotent: idempotent.map_or(Outcome::Holds, Outcome::Fails),
        }
    }
}
