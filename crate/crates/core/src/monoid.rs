//! Lattices enriched with a tensor: complete quasi-monoidal lattices (CQML)
//! and GL-monoids with their residuum.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{DistributivityViolation, Elem, FiniteLattice, LatticeError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CqmlError {
    #[error("tensor table has {got} entries, expected {expected}")]
    TensorShape { got: usize, expected: usize },
    #[error("tensor has no entry for ({0}, {1})")]
    TensorNotTotal(String, String),
    #[error("tensor lists ({0}, {1}) twice with different values")]
    TensorConflict(String, String),
    #[error("tensor is not isotone: {0}")]
    NotIsotone(Box<IsotoneViolation>),
    #[error("⊤ ⊗ ⊤ = {0}, not ⊤")]
    TopNotIdempotent(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `low <= high` but the tensor with `other` reverses the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotoneViolation {
    pub low: String,
    pub high: String,
    pub other: String,
    pub low_value: String,
    pub high_value: String,
    /// Which argument of ⊗ was varied.
    pub argument: u8,
}

impl fmt::Display for IsotoneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let IsotoneViolation { low, high, other, low_value, high_value, argument } = self;
        write!(
            f,
            "{low} <= {high} but {low} ⊗ {other} = {low_value} is not <= {high} ⊗ {other} = {high_value} (argument {argument})"
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GlError {
    #[error("lattice is not distributive: {0}")]
    NotDistributive(Box<DistributivityViolation>),
    #[error("not commutative: {0} ⊗ {1} != {1} ⊗ {0}")]
    NotCommutative(String, String),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("not integral: {0} ⊗ ⊤ != {0}")]
    NotIntegral(String),
    #[error("bottom is not a zero: {0} ⊗ ⊥ != ⊥")]
    NoZero(String),
    #[error("⊗ does not distribute over the join of {family:?} at {alpha}")]
    NotJoinDistributive { alpha: String, family: Vec<String> },
    #[error("not divisible: {0} <= {1} but no γ with {0} = {1} ⊗ γ")]
    NotDivisible(String, String),
    #[error("residuation fails at ({0}, {1}, {2})")]
    ResiduationFailed(String, String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("chain length must be at least 2, got {0}")]
    ChainTooShort(usize),
    #[error(transparent)]
    Cqml(#[from] CqmlError),
    #[error(transparent)]
    Gl(#[from] GlError),
}

/// A finite lattice with an isotone tensor for which ⊤ is idempotent.
#[derive(Clone, Debug)]
pub struct Cqml {
    lattice: FiniteLattice,
    tensor: Vec<Elem>,
    label: Option<String>,
}

impl PartialEq for Cqml {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.tensor == other.tensor
    }
}

impl Eq for Cqml {}

impl Cqml {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn tensor(&self, a: Elem, b: Elem) -> Elem {
        self.tensor[a.index() * self.lattice.len() + b.index()]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Short human name: the label if any, otherwise the element count.
    pub fn display_name(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("L{}", self.lattice.len()))
    }

    /// The tensor as named triples `(a, b, a ⊗ b)`.
    pub fn tensor_triples(&self) -> Vec<(String, String, String)> {
        let l = &self.lattice;
        let mut out = Vec::with_capacity(l.len() * l.len());
        for a in l.elements() {
            for b in l.elements() {
                out.push((l.name(a).into(), l.name(b).into(), l.name(self.tensor(a, b)).into()));
            }
        }
        out
    }

    /// The pointwise structure on `L^k`: tuples ordered componentwise with the
    /// tensor applied coordinate by coordinate.
    pub fn pointwise_power(&self, k: usize, max_carrier: usize) -> Result<Cqml, CqmlError> {
        let n = self.lattice.len();
        let size = n
            .checked_pow(k as u32)
            .filter(|&s| s <= max_carrier)
            .ok_or(LatticeError::TooLarge { size: n.saturating_pow(k as u32), max: max_carrier })?;
        let digits = |mut code: usize| {
            let mut out = vec![Elem(0); k];
            for d in out.iter_mut() {
                *d = Elem((code % n) as u16);
                code /= n;
            }
            out
        };
        let tuples: Vec<Vec<Elem>> = (0..size).map(digits).collect();
        let names = tuples
            .iter()
            .map(|t| format!("({})", t.iter().map(|&e| self.lattice.name(e)).collect::<Vec<_>>().join(",")))
            .collect();
        let mut leq = vec![false; size * size];
        for (i, a) in tuples.iter().enumerate() {
            for (j, b) in tuples.iter().enumerate() {
                leq[i * size + j] = a.iter().zip(b).all(|(&x, &y)| self.lattice.leq(x, y));
            }
        }
        let lattice = FiniteLattice::from_matrix(names, leq, max_carrier)?;
        let encode = |t: &[Elem]| t.iter().rev().fold(0usize, |acc, e| acc * n + e.index());
        let mut tensor = vec![Elem(0); size * size];
        for (i, a) in tuples.iter().enumerate() {
            for (j, b) in tuples.iter().enumerate() {
                let c: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| self.tensor(x, y)).collect();
                tensor[i * size + j] = Elem(encode(&c) as u16);
            }
        }
        let label = self.label.as_ref().map(|l| format!("{l}^{k}"));
        let mut out = validate_cqml(lattice, tensor)?;
        out.label = label;
        Ok(out)
    }
}

/// Resolve named `(a, b, a ⊗ b)` triples into a dense tensor table.
pub fn tensor_from_triples<S: AsRef<str>>(
    lattice: &FiniteLattice,
    triples: &[(S, S, S)],
) -> Result<Vec<Elem>, CqmlError> {
    let n = lattice.len();
    let mut table: Vec<Option<Elem>> = vec![None; n * n];
    for (a, b, c) in triples {
        let (ea, eb, ec) = (lattice.elem(a.as_ref())?, lattice.elem(b.as_ref())?, lattice.elem(c.as_ref())?);
        let slot = &mut table[ea.index() * n + eb.index()];
        match slot {
            Some(prev) if *prev != ec => {
                return Err(CqmlError::TensorConflict(a.as_ref().into(), b.as_ref().into()));
            }
            _ => *slot = Some(ec),
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            e.ok_or_else(|| {
                CqmlError::TensorNotTotal(
                    lattice.name(Elem((i / n) as u16)).into(),
                    lattice.name(Elem((i % n) as u16)).into(),
                )
            })
        })
        .collect()
}

/// Check the CQML axioms: isotone tensor, ⊤ ⊗ ⊤ = ⊤.
pub fn validate_cqml(lattice: FiniteLattice, tensor: Vec<Elem>) -> Result<Cqml, CqmlError> {
    let n = lattice.len();
    if tensor.len() != n * n {
        return Err(CqmlError::TensorShape { got: tensor.len(), expected: n * n });
    }
    if let Some(bad) = tensor.iter().find(|e| e.index() >= n) {
        return Err(LatticeError::UnknownElement(format!("#{}", bad.0)).into());
    }
    let t = |a: Elem, b: Elem| tensor[a.index() * n + b.index()];
    // Isotone in each argument separately is equivalent to jointly isotone.
    for low in lattice.elements() {
        for high in lattice.elements() {
            if low == high || !lattice.leq(low, high) {
                continue;
            }
            for other in lattice.elements() {
                for argument in [1u8, 2] {
                    let (lv, hv) =
                        if argument == 1 { (t(low, other), t(high, other)) } else { (t(other, low), t(other, high)) };
                    if !lattice.leq(lv, hv) {
                        let name = |e| lattice.name(e).to_string();
                        return Err(CqmlError::NotIsotone(Box::new(IsotoneViolation {
                            low: name(low),
                            high: name(high),
                            other: name(other),
                            low_value: name(lv),
                            high_value: name(hv),
                            argument,
                        })));
                    }
                }
            }
        }
    }
    let tt = t(lattice.top(), lattice.top());
    if tt != lattice.top() {
        return Err(CqmlError::TopNotIdempotent(lattice.name(tt).into()));
    }
    Ok(Cqml { lattice, tensor, label: None })
}

/// How join-distributivity of the tensor is checked.
#[derive(Clone, Copy, Debug)]
pub struct GlConfig {
    /// Check every subset when the carrier has at most this many elements.
    pub subset_limit: usize,
    /// Number of random families tried above the limit (in addition to all pairs).
    pub sampled_families: usize,
    pub seed: u64,
}

impl Default for GlConfig {
    fn default() -> Self {
        GlConfig { subset_limit: 12, sampled_families: 256, seed: 0x5eed }
    }
}

/// A GL-monoid together with its precomputed residuum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlMonoid {
    base: Cqml,
    residuum: Vec<Elem>,
    divisors: Vec<Option<Elem>>,
}

impl GlMonoid {
    pub fn cqml(&self) -> &Cqml {
        &self.base
    }

    pub fn into_cqml(self) -> Cqml {
        self.base
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.base.lattice()
    }

    #[inline]
    pub fn tensor(&self, a: Elem, b: Elem) -> Elem {
        self.base.tensor(a, b)
    }

    /// `a → b = ⋁{λ | a ⊗ λ <= b}`, read from the precomputed table.
    #[inline]
    pub fn residuum(&self, a: Elem, b: Elem) -> Elem {
        self.residuum[a.index() * self.lattice().len() + b.index()]
    }

    /// Residuum by element names.
    pub fn residuum_named(&self, a: &str, b: &str) -> Result<&str, LatticeError> {
        let l = self.lattice();
        Ok(l.name(self.residuum(l.elem(a)?, l.elem(b)?)))
    }

    /// The γ found when checking divisibility of `a <= b` (so `a = b ⊗ γ`).
    pub fn divisor(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.divisors[a.index() * self.lattice().len() + b.index()]
    }
}

/// `a → b` evaluated straight from the join formula.
pub fn residuum_by_join(m: &Cqml, a: Elem, b: Elem) -> Elem {
    let l = m.lattice();
    l.join(l.elements().filter(|&lam| l.leq(m.tensor(a, lam), b)))
}

/// Check the GL-monoid axioms (and the frame laws of the underlying lattice)
/// and precompute the residuum.
pub fn validate_gl(cqml: Cqml, config: &GlConfig) -> Result<GlMonoid, GlError> {
    let l = cqml.lattice();
    let name = |e: Elem| l.name(e).to_string();
    if let Some(w) = l.distributivity() {
        return Err(GlError::NotDistributive(Box::new(w.clone())));
    }
    for a in l.elements() {
        for b in l.elements() {
            if cqml.tensor(a, b) != cqml.tensor(b, a) {
                return Err(GlError::NotCommutative(name(a), name(b)));
            }
        }
    }
    for a in l.elements() {
        for b in l.elements() {
            for c in l.elements() {
                if cqml.tensor(cqml.tensor(a, b), c) != cqml.tensor(a, cqml.tensor(b, c)) {
                    return Err(GlError::NotAssociative(name(a), name(b), name(c)));
                }
            }
        }
    }
    for a in l.elements() {
        if cqml.tensor(a, l.top()) != a {
            return Err(GlError::NotIntegral(name(a)));
        }
    }
    for a in l.elements() {
        if cqml.tensor(a, l.bottom()) != l.bottom() {
            return Err(GlError::NoZero(name(a)));
        }
    }
    check_join_distributive(&cqml, config)?;

    let n = l.len();
    let mut divisors = vec![None; n * n];
    for a in l.elements() {
        for b in l.elements() {
            if !l.leq(a, b) {
                continue;
            }
            let gamma = l.elements().find(|&g| cqml.tensor(b, g) == a);
            if gamma.is_none() {
                return Err(GlError::NotDivisible(name(a), name(b)));
            }
            divisors[a.index() * n + b.index()] = gamma;
        }
    }

    let mut residuum = vec![Elem(0); n * n];
    for a in l.elements() {
        for b in l.elements() {
            residuum[a.index() * n + b.index()] = residuum_by_join(&cqml, a, b);
        }
    }
    for a in l.elements() {
        for b in l.elements() {
            for c in l.elements() {
                let lhs = l.leq(cqml.tensor(a, b), c);
                let rhs = l.leq(a, residuum[b.index() * n + c.index()]);
                if lhs != rhs {
                    return Err(GlError::ResiduationFailed(name(a), name(b), name(c)));
                }
            }
        }
    }
    Ok(GlMonoid { base: cqml, residuum, divisors })
}

fn check_join_distributive(cqml: &Cqml, config: &GlConfig) -> Result<(), GlError> {
    let l = cqml.lattice();
    let n = l.len();
    let check = |alpha: Elem, family: &[Elem]| -> Result<(), GlError> {
        let lhs = cqml.tensor(alpha, l.join(family.iter().copied()));
        let rhs = l.join(family.iter().map(|&b| cqml.tensor(alpha, b)));
        if lhs != rhs {
            return Err(GlError::NotJoinDistributive {
                alpha: l.name(alpha).into(),
                family: family.iter().map(|&e| l.name(e).to_string()).collect(),
            });
        }
        Ok(())
    };
    if n <= config.subset_limit {
        let elems: Vec<Elem> = l.elements().collect();
        let mut family = Vec::with_capacity(n);
        for mask in 0u64..(1u64 << n) {
            family.clear();
            family.extend(elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            for alpha in l.elements() {
                check(alpha, &family)?;
            }
        }
        return Ok(());
    }
    for alpha in l.elements() {
        check(alpha, &[])?;
        for a in l.elements() {
            for b in l.elements() {
                check(alpha, &[a, b])?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let elems: Vec<Elem> = l.elements().collect();
    for _ in 0..config.sampled_families {
        let k = rng.gen_range(0..=n);
        let family: Vec<Elem> = elems.choose_multiple(&mut rng, k).copied().collect();
        let alpha = elems[rng.gen_range(0..n)];
        check(alpha, &family)?;
    }
    Ok(())
}

/// Built-in families of chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    /// ⊗ = min.
    Godel,
    /// ⊗(a, b) = max(0, a + b − 1).
    Lukasiewicz,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainKind::Godel => "godel",
            ChainKind::Lukasiewicz => "lukasiewicz",
        })
    }
}

impl FromStr for ChainKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "godel" | "gödel" | "goedel" | "min" => Ok(ChainKind::Godel),
            "lukasiewicz" | "łukasiewicz" | "luk" => Ok(ChainKind::Lukasiewicz),
            other => Err(format!("unknown chain kind {other:?} (expected godel or lukasiewicz)")),
        }
    }
}

/// Name of `k/(n-1)` in lowest terms: `0`, `1`, `1/2`, `3/4`, ...
pub fn chain_value_name(k: usize, n: usize) -> String {
    let d = n - 1;
    if k == 0 {
        return "0".into();
    }
    if k == d {
        return "1".into();
    }
    let g = gcd(k, d);
    format!("{}/{}", k / g, d / g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The equidistant chain `0, 1/(n-1), …, 1` with the named tensor.
pub fn builtin_chain(kind: ChainKind, n: usize) -> Result<GlMonoid, MonoidError> {
    if n < 2 {
        return Err(MonoidError::ChainTooShort(n));
    }
    let names: Vec<String> = (0..n).map(|k| chain_value_name(k, n)).collect();
    let lattice = FiniteLattice::chain(&names).map_err(CqmlError::from)?;
    let top = n - 1;
    let mut tensor = vec![Elem(0); n * n];
    for a in 0..n {
        for b in 0..n {
            let c = match kind {
                ChainKind::Godel => a.min(b),
                ChainKind::Lukasiewicz => (a + b).saturating_sub(top),
            };
            tensor[a * n + b] = Elem(c as u16);
        }
    }
    let label = match (kind, n) {
        (_, 2) => "C2".to_string(),
        (ChainKind::Godel, n) => format!("G{n}"),
        (ChainKind::Lukasiewicz, n) => format!("Ł{n}"),
    };
    let cqml = validate_cqml(lattice, tensor)?.with_label(label);
    Ok(validate_gl(cqml, &GlConfig::default())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3_with(table: [[usize; 3]; 3]) -> Result<Cqml, CqmlError> {
        let l = FiniteLattice::chain(&["0", "1/2", "1"]).unwrap();
        let tensor = table.iter().flatten().map(|&c| Elem(c as u16)).collect();
        validate_cqml(l, tensor)
    }

    #[test]
    fn c3_min_is_cqml_and_gl() {
        let m = c3_with([[0, 0, 0], [0, 1, 1], [0, 1, 2]]).unwrap();
        assert!(validate_gl(m, &GlConfig::default()).is_ok());
    }

    #[test]
    fn constant_top_tensor_is_cqml_but_not_gl() {
        let m = c3_with([[2; 3]; 3]).unwrap();
        assert!(matches!(validate_gl(m, &GlConfig::default()), Err(GlError::NotIntegral(_))));
    }

    #[test]
    fn non_isotone_tensor_rejected() {
        // min everywhere except ½ ⊗ 1 = 1 and 1 ⊗ 1 = ½.
        let err = c3_with([[0, 0, 0], [0, 1, 2], [0, 1, 1]]).unwrap_err();
        assert!(matches!(err, CqmlError::NotIsotone(_)), "{err}");
    }

    #[test]
    fn top_must_be_idempotent() {
        let err = c3_with([[0, 0, 0], [0, 0, 0], [0, 0, 1]]).unwrap_err();
        assert_eq!(err, CqmlError::TopNotIdempotent("1/2".into()));
    }

    #[test]
    fn residuum_examples() {
        let g = builtin_chain(ChainKind::Godel, 3).unwrap();
        assert_eq!(g.residuum_named("1", "1/2").unwrap(), "1/2");
        let l = builtin_chain(ChainKind::Lukasiewicz, 3).unwrap();
        assert_eq!(l.residuum_named("1/2", "0").unwrap(), "1/2");
        for m in [&g, &l] {
            let lat = m.lattice();
            for a in lat.elements() {
                for b in lat.elements() {
                    if lat.leq(a, b) {
                        assert_eq!(m.residuum(a, b), lat.top());
                    }
                }
            }
        }
    }

    #[test]
    fn builtin_chain_shapes() {
        assert_eq!(builtin_chain(ChainKind::Godel, 1).unwrap_err(), MonoidError::ChainTooShort(1));
        let two = builtin_chain(ChainKind::Godel, 2).unwrap();
        let lat = two.lattice();
        assert_eq!(lat.names(), &["0".to_string(), "1".to_string()]);
        assert_eq!(two.tensor(lat.top(), lat.bottom()), lat.bottom());
        let l3 = builtin_chain(ChainKind::Lukasiewicz, 3).unwrap();
        let half = l3.lattice().elem("1/2").unwrap();
        assert_eq!(l3.lattice().name(l3.tensor(half, half)), "0");
        assert!(builtin_chain(ChainKind::Godel, 5).is_ok());
        assert_eq!(chain_value_name(2, 5), "1/2");
        assert_eq!(chain_value_name(3, 5), "3/4");
    }

    #[test]
    fn divisibility_witnesses_are_recorded() {
        let m = builtin_chain(ChainKind::Lukasiewicz, 5).unwrap();
        let l = m.lattice();
        for a in l.elements() {
            for b in l.elements() {
                if l.leq(a, b) {
                    let g = m.divisor(a, b).unwrap();
                    assert_eq!(m.tensor(b, g), a);
                }
            }
        }
    }

    #[test]
    fn sampled_join_distributivity_path() {
        // Force the pairs-plus-samples path on a small chain.
        let cfg = GlConfig { subset_limit: 2, ..GlConfig::default() };
        let m = builtin_chain(ChainKind::Godel, 6).unwrap().into_cqml();
        assert!(validate_gl(m, &cfg).is_ok());
    }

    #[test]
    fn tensor_triples_round_trip() {
        let m = builtin_chain(ChainKind::Lukasiewicz, 4).unwrap();
        let triples = m.cqml().tensor_triples();
        let t = tensor_from_triples(m.lattice(), &triples).unwrap();
        let again = validate_cqml(m.lattice().clone(), t).unwrap();
        assert_eq!(&again, m.cqml());
        let err = tensor_from_triples(m.lattice(), &triples[1..]).unwrap_err();
        assert!(matches!(err, CqmlError::TensorNotTotal(..)));
    }
}
