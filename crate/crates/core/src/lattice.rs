//! Finite complete lattices given by an explicit order relation.
//!
//! Elements are opaque string identifiers. Internally every element is a dense
//! index ([`Elem`]) and the order, join and meet are stored as flat tables so
//! that the inner loops of the exhaustive checks never touch strings.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on the number of lattice elements.
pub const DEFAULT_MAX_CARRIER: usize = 64;

/// Index of an element inside a [`FiniteLattice`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An order relation as read from a definition file, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawOrder {
    pub elements: Vec<String>,
    /// Pairs `[a, b]` meaning `a <= b`.
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    /// Take the reflexive-transitive closure of `leq` before validating.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub closure: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrderViolation {
    #[error("not reflexive at {0}")]
    NotReflexive(String),
    #[error("not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(String, String),
    #[error("not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(String, String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Join,
    Meet,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("element {0} listed twice")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("lattice has {size} elements, limit is {max}")]
    TooLarge { size: usize, max: usize },
    #[error("not a partial order: {0}")]
    NotAPartialOrder(OrderViolation),
    #[error("{a} and {b} have no {kind:?}")]
    MissingBound { a: String, b: String, kind: BoundKind },
    #[error("top equals bottom (a lattice needs at least two elements)")]
    TopEqualsBottom,
}

/// Witness that a lattice is not distributive:
/// `(a ∨ b) ∧ alpha = lhs` but `(a ∧ alpha) ∨ (b ∧ alpha) = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributivityViolation {
    pub alpha: String,
    pub a: String,
    pub b: String,
    pub lhs: String,
    pub rhs: String,
    /// Which frame law failed: `join` for (⋁A)∧α, `meet` for (⋀A)∨α.
    pub law: BoundKind,
}

impl fmt::Display for DistributivityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (outer, inner) = match self.law {
            BoundKind::Join => ("∨", "∧"),
            BoundKind::Meet => ("∧", "∨"),
        };
        write!(
            f,
            "({} {outer} {}) {inner} {} = {} but ({} {inner} {}) {outer} ({} {inner} {}) = {}",
            self.a, self.b, self.alpha, self.lhs, self.a, self.alpha, self.b, self.alpha, self.rhs
        )
    }
}

/// A validated finite lattice.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    top: Elem,
    bottom: Elem,
    height: Vec<u16>,
    distributivity: Option<DistributivityViolation>,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Validate a raw order with the default size limit.
    pub fn validate(raw: &RawOrder) -> Result<Self, LatticeError> {
        validate_lattice(raw, DEFAULT_MAX_CARRIER)
    }

    /// Chain `names[0] < names[1] < ...`.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                leq[i * n + j] = true;
            }
        }
        Self::from_matrix(names.iter().map(|s| s.as_ref().to_string()).collect(), leq, usize::MAX)
    }

    /// Build from a full `n × n` order matrix (row-major, `leq[a*n+b]` means `a <= b`).
    pub fn from_matrix(names: Vec<String>, leq: Vec<bool>, max: usize) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > max {
            return Err(LatticeError::TooLarge { size: n, max });
        }
        if n > u16::MAX as usize {
            return Err(LatticeError::TooLarge { size: n, max: u16::MAX as usize });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), Elem(i as u16)).is_some() {
                return Err(LatticeError::DuplicateElement(name.clone()));
            }
        }
        assert_eq!(leq.len(), n * n, "order matrix must be n×n");
        let at = |a: usize, b: usize| leq[a * n + b];

        if let Some(a) = (0..n).find(|&a| !at(a, a)) {
            return Err(LatticeError::NotAPartialOrder(OrderViolation::NotReflexive(names[a].clone())));
        }
        for a in 0..n {
            for b in a + 1..n {
                if at(a, b) && at(b, a) {
                    return Err(LatticeError::NotAPartialOrder(OrderViolation::NotAntisymmetric(
                        names[a].clone(),
                        names[b].clone(),
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !at(a, b) {
                    continue;
                }
                for c in 0..n {
                    if at(b, c) && !at(a, c) {
                        return Err(LatticeError::NotAPartialOrder(OrderViolation::NotTransitive(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        )));
                    }
                }
            }
        }

        let mut join = vec![Elem(0); n * n];
        let mut meet = vec![Elem(0); n * n];
        for a in 0..n {
            for b in a..n {
                let lub = least_of(n, &leq, (0..n).filter(|&u| at(a, u) && at(b, u)));
                let glb = greatest_of(n, &leq, (0..n).filter(|&l| at(l, a) && at(l, b)));
                let (Some(lub), Some(glb)) = (lub, glb) else {
                    return Err(LatticeError::MissingBound {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        kind: if lub.is_none() { BoundKind::Join } else { BoundKind::Meet },
                    });
                };
                for (x, y) in [(a, b), (b, a)] {
                    join[x * n + y] = Elem(lub as u16);
                    meet[x * n + y] = Elem(glb as u16);
                }
            }
        }
        let top = (0..n).fold(0, |acc, e| join[acc * n + e].index());
        let bottom = (0..n).fold(0, |acc, e| meet[acc * n + e].index());
        if top == bottom {
            return Err(LatticeError::TopEqualsBottom);
        }

        // Rank of every element: length of the longest chain down to bottom.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&e| (0..n).filter(|&d| at(d, e)).count());
        let mut height = vec![0u16; n];
        for &e in &order {
            height[e] = (0..n).filter(|&d| d != e && at(d, e)).map(|d| height[d] + 1).max().unwrap_or(0);
        }

        let mut lattice = FiniteLattice {
            names,
            index,
            leq,
            join,
            meet,
            top: Elem(top as u16),
            bottom: Elem(bottom as u16),
            height,
            distributivity: None,
        };
        lattice.distributivity = lattice.find_frame_law_violation();
        Ok(lattice)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> + Clone {
        (0..self.names.len() as u16).map(Elem)
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Result<Elem, LatticeError> {
        self.index.get(name).copied().ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn join2(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn meet2(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.names.len() + b.index()]
    }

    /// Join of an arbitrary (possibly empty) family; the empty join is bottom.
    pub fn join<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, e| self.join2(acc, e))
    }

    /// Meet of an arbitrary (possibly empty) family; the empty meet is top.
    pub fn meet<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, e| self.meet2(acc, e))
    }

    /// Join of a family of named elements.
    pub fn join_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Elem, LatticeError> {
        let elems = names.iter().map(|s| self.elem(s.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Ok(self.join(elems))
    }

    pub fn meet_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Elem, LatticeError> {
        let elems = names.iter().map(|s| self.elem(s.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Ok(self.meet(elems))
    }

    /// Length of the longest chain from bottom to `e`. Strictly increasing
    /// along the order, so sorting by height gives a linear extension.
    pub fn height(&self, e: Elem) -> u16 {
        self.height[e.index()]
    }

    /// `None` when the frame laws hold.
    pub fn distributivity(&self) -> Option<&DistributivityViolation> {
        self.distributivity.as_ref()
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity.is_none()
    }

    /// All pairs `(a, b)` with `a <= b`, listed as names. Used for serialization.
    pub fn order_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.leq(a, b) {
                    out.push((self.name(a).to_string(), self.name(b).to_string()));
                }
            }
        }
        out
    }

    pub fn to_raw(&self) -> RawOrder {
        RawOrder { elements: self.names.clone(), leq: self.order_pairs(), closure: false }
    }

    /// Covering pairs only, to be read back with `closure: true`.
    pub fn to_raw_covers(&self) -> RawOrder {
        let mut leq = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                let strict = |x: Elem, y: Elem| x != y && self.leq(x, y);
                if strict(a, b) && !self.elements().any(|m| strict(a, m) && strict(m, b)) {
                    leq.push((self.name(a).to_string(), self.name(b).to_string()));
                }
            }
        }
        RawOrder { elements: self.names.clone(), leq, closure: true }
    }

    // On a finite lattice both frame laws reduce to their binary instances:
    // the empty family is handled by bottom/top and larger families fold.
    fn find_frame_law_violation(&self) -> Option<DistributivityViolation> {
        for alpha in self.elements() {
            for a in self.elements() {
                for b in self.elements() {
                    let lhs = self.meet2(self.join2(a, b), alpha);
                    let rhs = self.join2(self.meet2(a, alpha), self.meet2(b, alpha));
                    if lhs != rhs {
                        return Some(self.violation(alpha, a, b, lhs, rhs, BoundKind::Join));
                    }
                }
            }
        }
        for alpha in self.elements() {
            for a in self.elements() {
                for b in self.elements() {
                    let lhs = self.join2(self.meet2(a, b), alpha);
                    let rhs = self.meet2(self.join2(a, alpha), self.join2(b, alpha));
                    if lhs != rhs {
                        return Some(self.violation(alpha, a, b, lhs, rhs, BoundKind::Meet));
                    }
                }
            }
        }
        None
    }

    fn violation(
        &self,
        alpha: Elem,
        a: Elem,
        b: Elem,
        lhs: Elem,
        rhs: Elem,
        law: BoundKind,
    ) -> DistributivityViolation {
        DistributivityViolation {
            alpha: self.name(alpha).to_string(),
            a: self.name(a).to_string(),
            b: self.name(b).to_string(),
            lhs: self.name(lhs).to_string(),
            rhs: self.name(rhs).to_string(),
            law,
        }
    }
}

fn least_of(n: usize, leq: &[bool], candidates: impl Iterator<Item = usize> + Clone) -> Option<usize> {
    let all = candidates.clone();
    candidates.into_iter().find(|&c| all.clone().all(|u| leq[c * n + u]))
}

fn greatest_of(n: usize, leq: &[bool], candidates: impl Iterator<Item = usize> + Clone) -> Option<usize> {
    let all = candidates.clone();
    candidates.into_iter().find(|&c| all.clone().all(|l| leq[l * n + c]))
}

/// Validate a raw order relation as a finite lattice.
///
/// With `closure: true` the listed pairs may be a covering relation; otherwise
/// they must already form the full (reflexive, transitive) order.
pub fn validate_lattice(raw: &RawOrder, max_carrier: usize) -> Result<FiniteLattice, LatticeError> {
    let n = raw.elements.len();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if n > max_carrier {
        return Err(LatticeError::TooLarge { size: n, max: max_carrier });
    }
    let mut index = HashMap::with_capacity(n);
    for (i, name) in raw.elements.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(LatticeError::DuplicateElement(name.clone()));
        }
    }
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| LatticeError::UnknownElement(s.to_string()));
    let mut leq = vec![false; n * n];
    for (a, b) in &raw.leq {
        leq[lookup(a)? * n + lookup(b)?] = true;
    }
    if raw.closure {
        for a in 0..n {
            leq[a * n + a] = true;
        }
        // Warshall.
        for k in 0..n {
            for a in 0..n {
                if leq[a * n + k] {
                    for b in 0..n {
                        if leq[k * n + b] {
                            leq[a * n + b] = true;
                        }
                    }
                }
            }
        }
    }
    FiniteLattice::from_matrix(raw.elements.clone(), leq, max_carrier)
}
