use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::lattice::{Elem, FiniteLattice, LatticeError};
use crate::monoid::Cqml;

/// Largest fuzzy powerset `L^X` that is materialized as an indexed table.
pub const MATERIALIZE_LIMIT: usize = 4096;

/// Dense index of a fuzzy set inside a materialized `L^X`:
/// `code(u) = Σ u(x_k) · |L|^k`.
pub type Code = u32;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("point {0} listed twice")]
    DuplicatePoint(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("no value given for point {0}")]
    MissingValue(String),
    #[error("fuzzy set has {got} values but the carrier has {expected} points")]
    CarrierMismatch { got: usize, expected: usize },
    #[error("|L|^|X| = {size} exceeds the materialization limit {limit}")]
    TooLarge { size: u128, limit: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An `L`-valued map on a finite carrier, stored as one value per point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FuzzySet(pub Vec<Elem>);

impl FuzzySet {
    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A ground object `(X, L)`: finite carrier and a CQML basis.
#[derive(Clone)]
pub struct Ground {
    points: Arc<[String]>,
    basis: Arc<Cqml>,
    index: Arc<OnceLock<Option<Arc<PowersetIndex>>>>,
}

impl PartialEq for Ground {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && (Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis)
    }
}

impl Eq for Ground {}

impl fmt::Debug for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ground({} pts, {})", self.points.len(), self.basis.display_name())
    }
}

impl Ground {
    pub fn new(points: Vec<String>, basis: Arc<Cqml>) -> Result<Self, GroundError> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(GroundError::DuplicatePoint(p.clone()));
            }
        }
        Ok(Ground { points: points.into(), basis, index: Arc::default() })
    }

    /// Carrier `{x1, …, xn}`.
    pub fn numbered(n: usize, basis: Arc<Cqml>) -> Self {
        Self::numbered_with(n, "x", basis)
    }

    pub fn numbered_with(n: usize, prefix: &str, basis: Arc<Cqml>) -> Self {
        let points = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(points, basis).expect("numbered points are distinct")
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, name: &str) -> Result<usize, GroundError> {
        self.points.iter().position(|p| p == name).ok_or_else(|| GroundError::UnknownPoint(name.to_string()))
    }

    /// `|X|`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn basis(&self) -> &Arc<Cqml> {
        &self.basis
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.basis.lattice()
    }

    /// `|L|^|X|`, saturating.
    pub fn powerset_size(&self) -> u128 {
        (self.lattice().len() as u128).saturating_pow(self.len() as u32)
    }

    pub fn is_materializable(&self) -> bool {
        self.powerset_size() <= MATERIALIZE_LIMIT as u128
    }

    /// The materialized index of `L^X`, built on first use and shared by clones.
    pub fn index(&self) -> Result<&Arc<PowersetIndex>, GroundError> {
        self.index
            .get_or_init(|| self.is_materializable().then(|| Arc::new(PowersetIndex::build(self))))
            .as_ref()
            .ok_or(GroundError::TooLarge { size: self.powerset_size(), limit: MATERIALIZE_LIMIT })
    }

    pub fn constant(&self, e: Elem) -> FuzzySet {
        FuzzySet(vec![e; self.len()])
    }

    /// `1_X`.
    pub fn top(&self) -> FuzzySet {
        self.constant(self.lattice().top())
    }

    /// `0_X`.
    pub fn bottom(&self) -> FuzzySet {
        self.constant(self.lattice().bottom())
    }

    pub fn check(&self, u: &FuzzySet) -> Result<(), GroundError> {
        if u.len() != self.len() {
            return Err(GroundError::CarrierMismatch { got: u.len(), expected: self.len() });
        }
        Ok(())
    }

    pub fn leq(&self, u: &FuzzySet, v: &FuzzySet) -> bool {
        let l = self.lattice();
        u.0.iter().zip(&v.0).all(|(&a, &b)| l.leq(a, b))
    }

    pub fn meet(&self, u: &FuzzySet, v: &FuzzySet) -> FuzzySet {
        let l = self.lattice();
        FuzzySet(u.0.iter().zip(&v.0).map(|(&a, &b)| l.meet2(a, b)).collect())
    }

    pub fn join(&self, u: &FuzzySet, v: &FuzzySet) -> FuzzySet {
        let l = self.lattice();
        FuzzySet(u.0.iter().zip(&v.0).map(|(&a, &b)| l.join2(a, b)).collect())
    }

    /// Pointwise join of a family; the empty join is `0_X`.
    pub fn join_all<'a, I: IntoIterator<Item = &'a FuzzySet>>(&self, family: I) -> FuzzySet {
        family.into_iter().fold(self.bottom(), |acc, u| self.join(&acc, u))
    }

    /// Pointwise meet of a family; the empty meet is `1_X`.
    pub fn meet_all<'a, I: IntoIterator<Item = &'a FuzzySet>>(&self, family: I) -> FuzzySet {
        family.into_iter().fold(self.top(), |acc, u| self.meet(&acc, u))
    }

    pub fn encode(&self, u: &FuzzySet) -> Code {
        let n = self.lattice().len() as u64;
        u.0.iter().rev().fold(0u64, |acc, e| acc * n + e.index() as u64) as Code
    }

    pub fn decode(&self, code: Code) -> FuzzySet {
        let n = self.lattice().len() as u32;
        let mut c = code;
        FuzzySet(
            (0..self.len())
                .map(|_| {
                    let e = Elem((c % n) as u16);
                    c /= n;
                    e
                })
                .collect(),
        )
    }

    /// Parse a fuzzy set given as one element name per point, in carrier order.
    pub fn fuzzy_set<S: AsRef<str>>(&self, values: &[S]) -> Result<FuzzySet, GroundError> {
        if values.len() != self.len() {
            return Err(GroundError::CarrierMismatch { got: values.len(), expected: self.len() });
        }
        let l = self.lattice();
        Ok(FuzzySet(values.iter().map(|v| l.elem(v.as_ref())).collect::<Result<_, _>>()?))
    }

    /// Parse a fuzzy set given as `point -> element` pairs; every point needs a value.
    pub fn fuzzy_set_from_pairs<'a, I>(&self, pairs: I) -> Result<FuzzySet, GroundError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut values: Vec<Option<Elem>> = vec![None; self.len()];
        for (p, v) in pairs {
            values[self.point_index(p)?] = Some(self.lattice().elem(v)?);
        }
        values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| GroundError::MissingValue(self.points[i].clone())))
            .collect::<Result<_, _>>()
            .map(FuzzySet)
    }

    /// Element names of a fuzzy set, in carrier order.
    pub fn names_of(&self, u: &FuzzySet) -> Vec<String> {
        u.0.iter().map(|&e| self.lattice().name(e).to_string()).collect()
    }

    /// `(a,b,…)` rendering used in tables and reports.
    pub fn render(&self, u: &FuzzySet) -> String {
        format!("({})", self.names_of(u).join(","))
    }

    pub fn render_code(&self, code: Code) -> String {
        self.render(&self.decode(code))
    }
}

/// All fuzzy sets of a materializable ground, with the pointwise order and
/// lattice operations precomputed on codes.
#[derive(Debug)]
pub struct PowersetIndex {
    size: usize,
    width: usize,
    sets: Vec<Elem>,
    leq: Vec<u64>,
    top: Code,
    bottom: Code,
    radix: Vec<u32>,
    linear: Vec<Code>,
    lower_covers: Vec<Vec<Code>>,
}

impl PowersetIndex {
    fn build(ground: &Ground) -> Self {
        let size = ground.powerset_size() as usize;
        let width = ground.len();
        let l = ground.lattice();
        let mut sets = Vec::with_capacity(size * width);
        for code in 0..size {
            sets.extend(ground.decode(code as Code).0);
        }
        let words = size.div_ceil(64);
        let mut leq = vec![0u64; size * words];
        for a in 0..size {
            let ua = &sets[a * width..(a + 1) * width];
            for b in 0..size {
                let ub = &sets[b * width..(b + 1) * width];
                if ua.iter().zip(ub).all(|(&x, &y)| l.leq(x, y)) {
                    leq[a * words + b / 64] |= 1 << (b % 64);
                }
            }
        }
        let n = l.len() as u32;
        let radix = (0..width).map(|k| n.pow(k as u32)).collect();
        let mut linear: Vec<Code> = (0..size as Code).collect();
        let rank = |c: Code| -> u32 {
            sets[c as usize * width..(c as usize + 1) * width].iter().map(|&e| l.height(e) as u32).sum()
        };
        linear.sort_by_key(|&c| (rank(c), c));
        let mut idx = PowersetIndex {
            size,
            width,
            sets,
            leq,
            top: ground.encode(&ground.top()),
            bottom: ground.encode(&ground.bottom()),
            radix,
            linear,
            lower_covers: Vec::new(),
        };
        // Lower covers of a tuple: lower exactly one coordinate to a lower cover in L.
        let elem_covers: Vec<Vec<Elem>> = l
            .elements()
            .map(|e| {
                let below: Vec<Elem> = l.elements().filter(|&d| d != e && l.leq(d, e)).collect();
                below.iter().copied().filter(|&d| !below.iter().any(|&m| m != d && l.leq(d, m))).collect()
            })
            .collect();
        idx.lower_covers = (0..size as Code)
            .map(|u| {
                let vals = idx.values(u).to_vec();
                let mut out = Vec::new();
                for (k, &e) in vals.iter().enumerate() {
                    for &d in &elem_covers[e.index()] {
                        out.push(u - (e.index() as u32 - d.index() as u32) * idx.radix[k]);
                    }
                }
                out.sort_unstable();
                out
            })
            .collect();
        idx
    }

    /// `|L^X|`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn codes(&self) -> std::ops::Range<Code> {
        0..self.size as Code
    }

    pub fn top(&self) -> Code {
        self.top
    }

    pub fn bottom(&self) -> Code {
        self.bottom
    }

    pub fn values(&self, c: Code) -> &[Elem] {
        &self.sets[c as usize * self.width..(c as usize + 1) * self.width]
    }

    #[inline]
    pub fn leq(&self, a: Code, b: Code) -> bool {
        let words = self.size.div_ceil(64);
        self.leq[a as usize * words + b as usize / 64] >> (b % 64) & 1 == 1
    }

    fn combine(&self, a: Code, b: Code, op: impl Fn(Elem, Elem) -> Elem) -> Code {
        self.values(a)
            .iter()
            .zip(self.values(b))
            .zip(&self.radix)
            .map(|((&x, &y), &r)| op(x, y).index() as u32 * r)
            .sum()
    }

    pub fn meet(&self, l: &FiniteLattice, a: Code, b: Code) -> Code {
        self.combine(a, b, |x, y| l.meet2(x, y))
    }

    pub fn join(&self, l: &FiniteLattice, a: Code, b: Code) -> Code {
        self.combine(a, b, |x, y| l.join2(x, y))
    }

    /// Codes sorted by total height, then code: a linear extension of the
    /// pointwise order.
    pub fn linear_extension(&self) -> &[Code] {
        &self.linear
    }

    /// Immediate predecessors of `u` in the pointwise order.
    pub fn lower_covers(&self, u: Code) -> &[Code] {
        &self.lower_covers[u as usize]
    }

    /// Codes `w` with `lo <= w <= hi`, in code order.
    pub fn interval(&self, lo: Code, hi: Code) -> impl Iterator<Item = Code> + '_ {
        self.codes().filter(move |&w| self.leq(lo, w) && self.leq(w, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{builtin_chain, ChainKind};

    fn g3(n: usize) -> Ground {
        Ground::numbered(n, Arc::new(builtin_chain(ChainKind::Godel, 3).unwrap().into_cqml()))
    }

    #[test]
    fn codes_round_trip_and_order() {
        let g = g3(2);
        let idx = g.index().unwrap().clone();
        assert_eq!(idx.size(), 9);
        for c in idx.codes() {
            assert_eq!(g.encode(&g.decode(c)), c);
            for d in idx.codes() {
                assert_eq!(idx.leq(c, d), g.leq(&g.decode(c), &g.decode(d)));
                assert_eq!(g.decode(idx.meet(g.lattice(), c, d)), g.meet(&g.decode(c), &g.decode(d)));
            }
        }
        assert_eq!(idx.top(), g.encode(&g.top()));
        // linear extension: predecessors first
        let pos: Vec<usize> = {
            let mut p = vec![0; idx.size()];
            for (i, &c) in idx.linear_extension().iter().enumerate() {
                p[c as usize] = i;
            }
            p
        };
        for a in idx.codes() {
            for b in idx.codes() {
                if a != b && idx.leq(a, b) {
                    assert!(pos[a as usize] < pos[b as usize]);
                }
            }
        }
    }

    #[test]
    fn parsing_fuzzy_sets() {
        let g = g3(2);
        let u = g.fuzzy_set(&["1/2", "1"]).unwrap();
        assert_eq!(g.render(&u), "(1/2,1)");
        let v = g.fuzzy_set_from_pairs([("x2", "1"), ("x1", "1/2")]).unwrap();
        assert_eq!(u, v);
        assert_eq!(g.fuzzy_set_from_pairs([("x1", "0")]), Err(GroundError::MissingValue("x2".into())));
        assert!(matches!(g.fuzzy_set(&["0"]), Err(GroundError::CarrierMismatch { .. })));
    }

    #[test]
    fn large_grounds_are_not_materialized() {
        let g = g3(8);
        assert!(matches!(g.index(), Err(GroundError::TooLarge { .. })));
    }
}
