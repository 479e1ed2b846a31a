use std::sync::{Arc, OnceLock};

use thiserror::Error;

use super::ground::{Code, FuzzySet, Ground, GroundError};
use crate::lattice::{Elem, FiniteLattice};
use crate::monoid::Cqml;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("point map has {got} entries, domain has {expected} points")]
    PointMapShape { got: usize, expected: usize },
    #[error("point map sends {point} outside the codomain")]
    PointOutOfRange { point: String },
    #[error("phi_op has {got} entries, codomain basis has {expected} elements")]
    PhiShape { got: usize, expected: usize },
    #[error("phi_op does not preserve ⊤ (sends it to {0})")]
    TopNotPreserved(String),
    #[error("phi_op does not preserve the join of {family:?}: image of join {image_of_join}, join of images {join_of_images}")]
    JoinNotPreserved { family: Vec<String>, image_of_join: String, join_of_images: String },
    #[error("phi_op does not preserve {a} ⊗ {b}")]
    TensorNotPreserved { a: String, b: String },
    #[error("ground mismatch: {0}")]
    GroundMismatch(String),
    #[error("right adjoint fails the Galois condition at v = {v}, u = {u}")]
    AdjointConditionFailed { v: String, u: String },
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// A morphism `(f, φ): (X, L) → (Y, M)` of the ground category, stored by its
/// point map `f: X → Y` and the concrete lattice map `φᵒᵖ: M → L`.
#[derive(Clone)]
pub struct GroundMorphism {
    domain: Ground,
    codomain: Ground,
    map: Arc<[usize]>,
    phi_op: Arc<[Elem]>,
    tables: Arc<OnceLock<Option<Tables>>>,
}

struct Tables {
    backward: Vec<Code>,
    right_adjoint: Vec<Code>,
}

impl std::fmt::Debug for GroundMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroundMorphism")
            .field("domain", &self.domain)
            .field("codomain", &self.codomain)
            .field("map", &self.map)
            .field("phi_op", &self.phi_op)
            .finish()
    }
}

impl PartialEq for GroundMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.map == other.map
            && self.phi_op == other.phi_op
    }
}

impl Eq for GroundMorphism {}

/// Check that `φᵒᵖ: M → L` preserves ⊤, arbitrary joins and ⊗.
pub fn check_phi_op(l: &Cqml, m: &Cqml, phi_op: &[Elem]) -> Result<(), MorphismError> {
    let (ll, ml) = (l.lattice(), m.lattice());
    if phi_op.len() != ml.len() {
        return Err(MorphismError::PhiShape { got: phi_op.len(), expected: ml.len() });
    }
    let phi = |b: Elem| phi_op[b.index()];
    if phi(ml.top()) != ll.top() {
        return Err(MorphismError::TopNotPreserved(ll.name(phi(ml.top())).into()));
    }
    // On a finite lattice, preserving the empty join and binary joins is the
    // same as preserving every join.
    if phi(ml.bottom()) != ll.bottom() {
        return Err(MorphismError::JoinNotPreserved {
            family: vec![],
            image_of_join: ll.name(phi(ml.bottom())).into(),
            join_of_images: ll.name(ll.bottom()).into(),
        });
    }
    for a in ml.elements() {
        for b in ml.elements() {
            let lhs = phi(ml.join2(a, b));
            let rhs = ll.join2(phi(a), phi(b));
            if lhs != rhs {
                return Err(MorphismError::JoinNotPreserved {
                    family: vec![ml.name(a).into(), ml.name(b).into()],
                    image_of_join: ll.name(lhs).into(),
                    join_of_images: ll.name(rhs).into(),
                });
            }
        }
    }
    for a in ml.elements() {
        for b in ml.elements() {
            if phi(m.tensor(a, b)) != l.tensor(phi(a), phi(b)) {
                return Err(MorphismError::TensorNotPreserved { a: ml.name(a).into(), b: ml.name(b).into() });
            }
        }
    }
    Ok(())
}

/// Validate `(f, φᵒᵖ)` as a morphism `domain → codomain`.
pub fn validate_ground_morphism(
    domain: &Ground,
    codomain: &Ground,
    map: Vec<usize>,
    phi_op: Vec<Elem>,
) -> Result<GroundMorphism, MorphismError> {
    if map.len() != domain.len() {
        return Err(MorphismError::PointMapShape { got: map.len(), expected: domain.len() });
    }
    if let Some(x) = map.iter().position(|&y| y >= codomain.len()) {
        return Err(MorphismError::PointOutOfRange { point: domain.points()[x].clone() });
    }
    check_phi_op(domain.basis(), codomain.basis(), &phi_op)?;
    Ok(GroundMorphism::new_unchecked(domain.clone(), codomain.clone(), map, phi_op))
}

impl GroundMorphism {
    pub(crate) fn new_unchecked(domain: Ground, codomain: Ground, map: Vec<usize>, phi_op: Vec<Elem>) -> Self {
        GroundMorphism { domain, codomain, map: map.into(), phi_op: phi_op.into(), tables: Arc::default() }
    }

    /// Identity on a ground.
    pub fn identity(ground: &Ground) -> Self {
        let map = (0..ground.len()).collect();
        let phi = ground.lattice().elements().collect();
        Self::new_unchecked(ground.clone(), ground.clone(), map, phi)
    }

    pub fn domain(&self) -> &Ground {
        &self.domain
    }

    pub fn codomain(&self) -> &Ground {
        &self.codomain
    }

    /// Point map `f`, indexed by domain point.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `φᵒᵖ`, indexed by codomain basis element.
    pub fn phi_op(&self) -> &[Elem] {
        &self.phi_op
    }

    #[inline]
    pub fn phi(&self, b: Elem) -> Elem {
        self.phi_op[b.index()]
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen_pts = vec![false; self.codomain.len()];
        let mut seen_elems = vec![false; self.domain.lattice().len()];
        self.domain.len() == self.codomain.len()
            && self.domain.lattice().len() == self.codomain.lattice().len()
            && self.map.iter().all(|&y| !std::mem::replace(&mut seen_pts[y], true))
            && self.phi_op.iter().all(|&e| !std::mem::replace(&mut seen_elems[e.index()], true))
    }

    /// `(f, φ)←(b) = φᵒᵖ ∘ b ∘ f`.
    pub fn backward(&self, b: &FuzzySet) -> Result<FuzzySet, MorphismError> {
        self.codomain.check(b)?;
        Ok(FuzzySet(self.map.iter().map(|&y| self.phi(b.0[y])).collect()))
    }

    /// `(f, φ)_*(u)(y) = ⋁{β ∈ M | φᵒᵖ(β) <= ⋀_{f(x)=y} u(x)}`: the right
    /// adjoint of [`Self::backward`]. Empty fibres give ⊤.
    pub fn right_adjoint(&self, u: &FuzzySet) -> Result<FuzzySet, MorphismError> {
        self.domain.check(u)?;
        let (ll, ml) = (self.domain.lattice(), self.codomain.lattice());
        let values = (0..self.codomain.len())
            .map(|y| {
                let bound = ll.meet(self.map.iter().zip(&u.0).filter(|(&fx, _)| fx == y).map(|(_, &v)| v));
                ml.join(ml.elements().filter(|&beta| ll.leq(self.phi(beta), bound)))
            })
            .collect();
        Ok(FuzzySet(values))
    }

    /// `(f, φ)→(a) = ⋀{b ∈ M^Y | f_L→(a) <= ⟨φᵒᵖ⟩(b)}`.
    pub fn forward(&self, a: &FuzzySet, path: ForwardPath) -> Result<FuzzySet, MorphismError> {
        self.domain.check(a)?;
        let image = zadeh_forward(self.domain.lattice(), &self.map, self.codomain.len(), a);
        let enumerate = match path {
            ForwardPath::Enumerate => true,
            ForwardPath::Fiber => false,
            ForwardPath::Auto => {
                (self.codomain.lattice().len() as u128).saturating_pow(self.codomain.len() as u32) <= 4096
            }
        };
        if !enumerate {
            // Qualifying b form a product of per-point sets, so the meet is pointwise *φ.
            let values = image
                .0
                .iter()
                .map(|&alpha| star_phi(self.domain.lattice(), self.codomain.lattice(), &self.phi_op, alpha));
            return Ok(FuzzySet(values.collect()));
        }
        let ll = self.domain.lattice();
        let qualifies = |b: &FuzzySet| image.0.iter().zip(&b.0).all(|(&alpha, &beta)| ll.leq(alpha, self.phi(beta)));
        let n = self.codomain.powerset_size() as Code;
        let mut acc = self.codomain.top();
        for code in 0..n {
            let b = self.codomain.decode(code);
            if qualifies(&b) {
                acc = self.codomain.meet(&acc, &b);
            }
        }
        Ok(acc)
    }

    fn tables(&self) -> Result<&Tables, MorphismError> {
        let t = self.tables.get_or_init(|| {
            let (dx, cx) = (self.domain.index().ok()?, self.codomain.index().ok()?);
            let backward = cx
                .codes()
                .map(|c| self.domain.encode(&self.backward(&self.codomain.decode(c)).expect("same ground")))
                .collect();
            let right_adjoint = dx
                .codes()
                .map(|c| self.codomain.encode(&self.right_adjoint(&self.domain.decode(c)).expect("same ground")))
                .collect();
            Some(Tables { backward, right_adjoint })
        });
        match t {
            Some(t) => Ok(t),
            None => {
                let big = if self.domain.is_materializable() { &self.codomain } else { &self.domain };
                Err(big.index().expect_err("one side is too large").into())
            }
        }
    }

    /// `(f, φ)←` as a code table `M^Y → L^X`.
    pub fn backward_table(&self) -> Result<&[Code], MorphismError> {
        Ok(&self.tables()?.backward)
    }

    /// `(f, φ)_*` as a code table `L^X → M^Y`.
    pub fn right_adjoint_table(&self) -> Result<&[Code], MorphismError> {
        Ok(&self.tables()?.right_adjoint)
    }

    /// Check `(f,φ)←(v) <= u ⟺ v <= (f,φ)_*(u)` on every pair.
    pub fn verify_right_adjoint(&self) -> Result<(), MorphismError> {
        let (dx, cx) = (self.domain.index()?, self.codomain.index()?);
        let (bw, ra) = (self.backward_table()?, self.right_adjoint_table()?);
        for v in cx.codes() {
            for u in dx.codes() {
                if dx.leq(bw[v as usize], u) != cx.leq(v, ra[u as usize]) {
                    return Err(MorphismError::AdjointConditionFailed {
                        v: self.codomain.render_code(v),
                        u: self.domain.render_code(u),
                    });
                }
            }
        }
        Ok(())
    }

    /// Does `(f, φ)←` preserve binary meets and ⊤ (hence all meets)?
    /// Returns the first pair `(b1, b2)` where it does not.
    pub fn find_meet_interchange_failure(&self) -> Result<Option<(Code, Code)>, MorphismError> {
        let (dx, cx) = (self.domain.index()?, self.codomain.index()?);
        let bw = self.backward_table()?;
        let (ll, ml) = (self.domain.lattice(), self.codomain.lattice());
        if bw[cx.top() as usize] != dx.top() {
            return Ok(Some((cx.top(), cx.top())));
        }
        for a in cx.codes() {
            for b in a..cx.size() as Code {
                let lhs = bw[cx.meet(ml, a, b) as usize];
                let rhs = dx.meet(ll, bw[a as usize], bw[b as usize]);
                if lhs != rhs {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }
}

/// How [`GroundMorphism::forward`] evaluates its meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForwardPath {
    /// Meet over every qualifying `b ∈ M^Y`.
    Enumerate,
    /// Pointwise `*φ` of the Zadeh image.
    Fiber,
    /// Enumerate when `|M|^|Y| <= 4096`, otherwise the fibre formula.
    Auto,
}

/// `(f, φ) ∘ (g, ψ)`: first `first`, then `second`. The lattice maps compose
/// contravariantly, `ψᵒᵖ ∘ φᵒᵖ`, so that the backward operator of the
/// composite is `first← ∘ second←`.
pub fn compose(second: &GroundMorphism, first: &GroundMorphism) -> Result<GroundMorphism, MorphismError> {
    if first.codomain != second.domain {
        return Err(MorphismError::GroundMismatch(format!(
            "codomain {:?} of the first morphism differs from domain {:?} of the second",
            first.codomain, second.domain
        )));
    }
    let map = first.map.iter().map(|&y| second.map[y]).collect();
    let phi_op = second.phi_op.iter().map(|&b| first.phi(b)).collect();
    Ok(GroundMorphism::new_unchecked(first.domain.clone(), second.codomain.clone(), map, phi_op))
}

/// `f→(A) = {f(x) | x ∈ A}` for `A` given as a membership vector over `X`.
pub fn classical_image(map: &[usize], codomain_len: usize, a: &[bool]) -> Vec<bool> {
    let mut out = vec![false; codomain_len];
    for (x, &inside) in a.iter().enumerate() {
        if inside {
            out[map[x]] = true;
        }
    }
    out
}

/// `f←(B) = {x | f(x) ∈ B}`.
pub fn classical_preimage(map: &[usize], b: &[bool]) -> Vec<bool> {
    map.iter().map(|&y| b[y]).collect()
}

/// `f_L→(a)(y) = ⋁_{f(x)=y} a(x)`; empty fibres give ⊥.
pub fn zadeh_forward(lattice: &FiniteLattice, map: &[usize], codomain_len: usize, a: &FuzzySet) -> FuzzySet {
    let mut out = vec![lattice.bottom(); codomain_len];
    for (x, &y) in map.iter().enumerate() {
        out[y] = lattice.join2(out[y], a.0[x]);
    }
    FuzzySet(out)
}

/// `f_L←(b) = b ∘ f`.
pub fn zadeh_backward(map: &[usize], b: &FuzzySet) -> FuzzySet {
    FuzzySet(map.iter().map(|&y| b.0[y]).collect())
}

/// `*φ(α) = ⋀{β ∈ M | α <= φᵒᵖ(β)}`.
pub fn star_phi(l: &FiniteLattice, m: &FiniteLattice, phi_op: &[Elem], alpha: Elem) -> Elem {
    m.meet(m.elements().filter(|&beta| l.leq(alpha, phi_op[beta.index()])))
}

/// `⟨*φ⟩(a) = *φ ∘ a`.
pub fn lift_star_phi(l: &FiniteLattice, m: &FiniteLattice, phi_op: &[Elem], a: &FuzzySet) -> FuzzySet {
    FuzzySet(a.0.iter().map(|&alpha| star_phi(l, m, phi_op, alpha)).collect())
}

/// `⟨φᵒᵖ⟩(b) = φᵒᵖ ∘ b`.
pub fn lift_phi_op(phi_op: &[Elem], b: &FuzzySet) -> FuzzySet {
    FuzzySet(b.0.iter().map(|&beta| phi_op[beta.index()]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{builtin_chain, ChainKind};

    fn basis(kind: ChainKind, n: usize) -> Arc<Cqml> {
        Arc::new(builtin_chain(kind, n).unwrap().into_cqml())
    }

    fn e(i: u16) -> Elem {
        Elem(i)
    }

    #[test]
    fn identity_is_valid() {
        let g = Ground::numbered(2, basis(ChainKind::Godel, 3));
        let id = GroundMorphism::identity(&g);
        let checked = validate_ground_morphism(&g, &g, id.map().to_vec(), id.phi_op().to_vec()).unwrap();
        assert_eq!(checked, id);
        let u = g.fuzzy_set(&["1/2", "1"]).unwrap();
        assert_eq!(id.backward(&u).unwrap(), u);
        assert_eq!(id.right_adjoint(&u).unwrap(), u);
        for path in [ForwardPath::Enumerate, ForwardPath::Fiber] {
            assert_eq!(id.forward(&u, path).unwrap(), u);
        }
    }

    #[test]
    fn collapse_c3_onto_c2_is_valid() {
        // φᵒᵖ: C3 → C2 with 0, ½ ↦ 0 and 1 ↦ 1.
        let dom = Ground::numbered(1, basis(ChainKind::Godel, 2));
        let cod = Ground::numbered(1, basis(ChainKind::Godel, 3));
        let g = validate_ground_morphism(&dom, &cod, vec![0], vec![e(0), e(0), e(1)]).unwrap();
        let (l, m) = (dom.lattice(), cod.lattice());
        assert_eq!(star_phi(l, m, g.phi_op(), l.top()), m.top());
        assert_eq!(star_phi(l, m, g.phi_op(), l.bottom()), m.bottom());
    }

    #[test]
    fn swapped_bounds_do_not_preserve_top() {
        let g = Ground::numbered(1, basis(ChainKind::Godel, 3));
        let err = validate_ground_morphism(&g, &g, vec![0], vec![e(2), e(1), e(0)]).unwrap_err();
        assert_eq!(err, MorphismError::TopNotPreserved("0".into()));
    }

    #[test]
    fn tensor_and_join_failures() {
        // Łukasiewicz ½ ⊗ ½ = 0, but identity-on-names into Gödel keeps ½ ⊗ ½ = ½.
        let l = Ground::numbered(1, basis(ChainKind::Godel, 3));
        let m = Ground::numbered(1, basis(ChainKind::Lukasiewicz, 3));
        let err = validate_ground_morphism(&l, &m, vec![0], vec![e(0), e(1), e(2)]).unwrap_err();
        assert!(matches!(err, MorphismError::TensorNotPreserved { .. }));
        let err = validate_ground_morphism(&l, &l, vec![0], vec![e(1), e(1), e(2)]).unwrap_err();
        assert!(matches!(err, MorphismError::JoinNotPreserved { ref family, .. } if family.is_empty()));
    }

    #[test]
    fn classical_operators() {
        let map = [0usize, 0];
        assert_eq!(classical_image(&map, 2, &[true, true]), vec![true, false]);
        assert_eq!(classical_preimage(&map, &[false, false]), vec![false, false]);
        assert_eq!(classical_preimage(&map, &[false, true]), vec![false, false]);
    }

    #[test]
    fn zadeh_examples() {
        let l = builtin_chain(ChainKind::Godel, 3).unwrap();
        let lat = l.lattice();
        let a = FuzzySet(vec![e(1), e(2)]);
        assert_eq!(zadeh_forward(lat, &[0, 0], 1, &a), FuzzySet(vec![e(2)]));
        // injective map: relabel, ⊥ off the image
        assert_eq!(zadeh_forward(lat, &[2, 0], 3, &a), FuzzySet(vec![e(2), e(0), e(1)]));
        assert_eq!(zadeh_forward(lat, &[0, 1], 2, &FuzzySet(vec![e(0); 2])), FuzzySet(vec![e(0); 2]));
        assert_eq!(zadeh_backward(&[1, 1], &FuzzySet(vec![e(0), e(1)])), FuzzySet(vec![e(1), e(1)]));
    }

    #[test]
    fn vb_backward_on_a_fibre() {
        let m = basis(ChainKind::Godel, 3);
        let x = Ground::numbered(2, m.clone());
        let y = Ground::numbered_with(1, "y", m);
        let g = validate_ground_morphism(&x, &y, vec![0, 0], vec![e(0), e(1), e(2)]).unwrap();
        assert_eq!(g.backward(&FuzzySet(vec![e(1)])).unwrap(), FuzzySet(vec![e(1), e(1)]));
        assert_eq!(g.backward(&y.top()).unwrap(), x.top());
        // right adjoint: meet over the fibre, join of β below it
        assert_eq!(g.right_adjoint(&FuzzySet(vec![e(1), e(2)])).unwrap(), FuzzySet(vec![e(1)]));
        assert_eq!(g.forward(&x.bottom(), ForwardPath::Enumerate).unwrap(), y.bottom());
        g.verify_right_adjoint().unwrap();
    }

    #[test]
    fn empty_fibre_right_adjoint_is_top() {
        let m = basis(ChainKind::Godel, 3);
        let x = Ground::numbered(1, m.clone());
        let y = Ground::numbered_with(2, "y", m);
        let g = validate_ground_morphism(&x, &y, vec![0], vec![e(0), e(1), e(2)]).unwrap();
        let v = g.right_adjoint(&FuzzySet(vec![e(0)])).unwrap();
        assert_eq!(v, FuzzySet(vec![e(0), e(2)]));
    }

    #[test]
    fn composition_matches_backward() {
        let m = basis(ChainKind::Godel, 3);
        let x = Ground::numbered(2, m.clone());
        let y = Ground::numbered_with(1, "y", m.clone());
        let z = Ground::numbered_with(2, "z", m);
        let g1 = validate_ground_morphism(&x, &y, vec![0, 0], vec![e(0), e(2), e(2)]).unwrap();
        let g2 = validate_ground_morphism(&y, &z, vec![1], vec![e(0), e(1), e(2)]).unwrap();
        let c = compose(&g2, &g1).unwrap();
        for code in 0..9 {
            let w = z.decode(code);
            assert_eq!(c.backward(&w).unwrap(), g1.backward(&g2.backward(&w).unwrap()).unwrap());
        }
        assert!(compose(&g1, &g2).is_err());
        assert_eq!(compose(&GroundMorphism::identity(&y), &g1).unwrap(), g1);
    }
}
