//! Self-contained witness bundles and their replay.

use serde::{Deserialize, Serialize};

use crate::continuity::{
    compose_morphisms, exhaustive_case, initial_interior, is_continuous, is_open_morphism, VbSpace,
};
use crate::interior::{check_interior_axioms, check_table, literal_trivial, InteriorMap};
use crate::outcome::Outcome;
use crate::powerset::{
    lift_phi_op, lift_star_phi, validate_ground_morphism, zadeh_backward, zadeh_forward, ForwardPath, FuzzySet, Ground,
    GroundMorphism,
};
use crate::schema::{
    from_value, morphism_doc, parse_json, space_doc, GroundDoc, Loader, MorphismDoc, SchemaError, SourceDoc, SpaceDoc,
};

use super::{BasisFamily, Property, SearchBounds, SearchError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeOp {
    Join,
    Meet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjunctionKind {
    /// `f_L→ ⊣ f_L←`.
    Zadeh,
    /// `⟨*φ⟩ ⊣ ⟨φᵒᵖ⟩`.
    Lifts,
    /// `(f,φ)→ ⊣ (f,φ)←`.
    Forward,
    /// `(f,φ)← ⊣ (f,φ)_*`.
    RightAdjoint,
}

/// The falsifying instance of a property, with every structure inlined.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessDoc {
    /// The literal trivial operator violates an axiom at `u`.
    Candidate { ground: GroundDoc, u: Vec<String>, image: Vec<String> },
    /// The pointwise `op` of two interior maps is not interior.
    OperatorPair { op: LatticeOp, first: SpaceDoc, second: SpaceDoc },
    /// An interior map outside `[least, discrete]`.
    OperatorBound { map: SpaceDoc },
    /// `first: A → B`, `second: B → C` have the property, their composite
    /// fails it at `v`.
    Composition { open: bool, spaces: Vec<SpaceDoc>, first: MorphismDoc, second: MorphismDoc, v: Vec<String> },
    /// The lift is not initial for the source: `morphism` from `test_space`.
    Initiality { meet_lift: bool, source: SourceDoc, test_space: Option<SpaceDoc>, morphism: Option<MorphismDoc> },
    /// The initial interior of `morphism` into `target` loses the property.
    Preservation { full_productivity: bool, morphism: MorphismDoc, target: SpaceDoc },
    /// `v` open in the target, its preimage not open in the source.
    OpenPreimage { morphism: MorphismDoc, source: SpaceDoc, target: SpaceDoc, v: Vec<String> },
    /// `(f,φ)←(a ∧ b) ≠ (f,φ)←(a) ∧ (f,φ)←(b)`.
    MeetInterchange { morphism: MorphismDoc, a: Vec<String>, b: Vec<String> },
    /// Continuity disagrees with `i_X ≥ î`.
    Characterization { morphism: MorphismDoc, source: SpaceDoc, target: SpaceDoc },
    /// `morphism` is not open from its initial interior into `target`.
    LiftOpen { morphism: MorphismDoc, target: SpaceDoc },
    /// `F(p) ≤ q` and `p ≤ G(q)` disagree.
    Adjunction { adjunction: AdjunctionKind, morphism: MorphismDoc, p: Vec<String>, q: Vec<String> },
    /// A bijective continuous open morphism whose inverse is not.
    BijectiveInverse { morphism: MorphismDoc, source: SpaceDoc, target: SpaceDoc },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsDoc {
    pub max_x: usize,
    pub max_l: usize,
    pub max_tables: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget_secs: Option<f64>,
    pub family: String,
    pub max_members: usize,
}

impl From<&SearchBounds> for BoundsDoc {
    fn from(b: &SearchBounds) -> Self {
        BoundsDoc {
            max_x: b.max_points,
            max_l: b.max_lattice,
            max_tables: b.max_operator_tables,
            budget_secs: b.budget.map(|d| d.as_secs_f64()),
            family: match b.family {
                BasisFamily::Chains => "chains".into(),
                BasisFamily::Extended => "extended".into(),
            },
            max_members: b.max_source_members,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// Verdict report of one search; with a witness it replays standalone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessBundle {
    pub property: String,
    pub status: Status,
    pub instances_checked: u64,
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bounds: Option<BoundsDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl WitnessBundle {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SearchError> {
        parse_json(text).map_err(|e| SearchError::MalformedBundle(e.to_string()))
    }

    pub fn from_value(v: serde_json::Value) -> Result<Self, SearchError> {
        from_value(v).map_err(|e| SearchError::MalformedBundle(e.to_string()))
    }
}

fn malformed(e: SchemaError) -> SearchError {
    SearchError::MalformedBundle(e.to_string())
}

pub(crate) fn space(i: &InteriorMap) -> SpaceDoc {
    space_doc(i).expect("search interiors are tabulated")
}

/// Re-evaluates the property on the bundled witness. `Fails` carries a
/// description of the failure found again.
pub fn replay(bundle: &WitnessBundle) -> Result<Outcome<String>, SearchError> {
    let property: Property = bundle.property.parse()?;
    let w = bundle
        .witness
        .as_ref()
        .ok_or_else(|| SearchError::MalformedBundle("summary bundles carry no witness".into()))?;
    let ld = Loader::default();
    let set = |g: &Ground, v: &[String]| ld.fuzzy_set(g, v).map_err(malformed);
    let sp = |d: &SpaceDoc| ld.space(d).map_err(malformed);
    let mo = |d: &MorphismDoc| ld.morphism(d).map_err(malformed);
    let expect = |p: Property| {
        if p == property {
            Ok(())
        } else {
            Err(SearchError::MalformedBundle(format!("witness does not belong to property {}", property.name())))
        }
    };
    let out = match w {
        WitnessDoc::Candidate { ground, u, .. } => {
            expect(Property::TrivialLiteral)?;
            let (g, _) = ld.ground(ground).map_err(malformed)?;
            let u = set(&g, u)?;
            eval_trivial(&g, &u)
        }
        WitnessDoc::OperatorPair { op, first, second } => {
            expect(Property::OperatorLattice)?;
            eval_operator_pair(*op, sp(first)?.interior(), sp(second)?.interior())
        }
        WitnessDoc::OperatorBound { map } => {
            expect(Property::OperatorLattice)?;
            eval_operator_bound(sp(map)?.interior())
        }
        WitnessDoc::Composition { open, spaces, first, second, .. } => {
            expect(if *open { Property::OpennessComposition } else { Property::ContinuityComposition })?;
            if spaces.len() != 3 {
                return Err(SearchError::MalformedBundle("composition needs three spaces".into()));
            }
            let s: Vec<VbSpace> = spaces.iter().map(sp).collect::<Result<_, _>>()?;
            eval_composition(*open, &s[0], &s[1], &s[2], &mo(first)?, &mo(second)?)
        }
        WitnessDoc::Initiality { meet_lift, source, test_space, morphism } => {
            expect(if *meet_lift { Property::LiteralMeetInitiality } else { Property::Initiality })?;
            let s = ld.source(source).map_err(malformed)?;
            let test = match (test_space, morphism) {
                (Some(t), Some(m)) => Some((sp(t)?, mo(m)?)),
                (None, None) => None,
                _ => return Err(SearchError::MalformedBundle("test space and morphism go together".into())),
            };
            eval_initiality(*meet_lift, &s, test.as_ref().map(|(t, m)| (t, m)))
        }
        WitnessDoc::Preservation { full_productivity, morphism, target } => {
            expect(if *full_productivity {
                Property::PreserveFullProductivity
            } else {
                Property::PreserveIdempotency
            })?;
            eval_preservation(*full_productivity, &mo(morphism)?, &sp(target)?)
        }
        WitnessDoc::OpenPreimage { morphism, source, target, v } => {
            expect(Property::OpenPreimage)?;
            let t = sp(target)?;
            let v = set(t.ground(), v)?;
            eval_open_preimage(&mo(morphism)?, &sp(source)?, &t, &v)
        }
        WitnessDoc::MeetInterchange { morphism, a, b } => {
            expect(Property::MeetInterchange)?;
            let m = mo(morphism)?;
            let (a, b) = (set(m.codomain(), a)?, set(m.codomain(), b)?);
            eval_meet_interchange(&m, &a, &b)
        }
        WitnessDoc::Characterization { morphism, source, target } => {
            expect(Property::ContinuityCharacterization)?;
            eval_characterization(&mo(morphism)?, &sp(source)?, &sp(target)?)
        }
        WitnessDoc::LiftOpen { morphism, target } => {
            expect(Property::InitialLiftOpen)?;
            eval_lift_open(&mo(morphism)?, &sp(target)?)
        }
        WitnessDoc::Adjunction { adjunction, morphism, p, q } => {
            expect(Property::Adjunctions)?;
            let m = mo(morphism)?;
            eval_adjunction(*adjunction, &m, p, q).map_err(malformed)?
        }
        WitnessDoc::BijectiveInverse { morphism, source, target } => {
            expect(Property::BijectiveInverse)?;
            eval_bijective(&mo(morphism)?, &sp(source)?, &sp(target)?)
        }
    };
    Ok(out.map_or(Outcome::Holds, Outcome::Fails))
}

// Concrete evaluators: `Some(description)` when the witness falsifies.

pub(crate) fn eval_trivial(g: &Ground, u: &FuzzySet) -> Option<String> {
    let image = literal_trivial(g, u);
    if !g.leq(&image, u) {
        return Some(format!("contraction fails at u={}: image {}", g.render(u), g.render(&image)));
    }
    // a monotonicity or upper-bound failure elsewhere still refutes the candidate
    check_interior_axioms(g, |w| literal_trivial(g, w)).witness().map(|v| v.describe(g))
}

pub(crate) fn eval_operator_pair(op: LatticeOp, a: &InteriorMap, b: &InteriorMap) -> Option<String> {
    let g = a.ground();
    if g != b.ground() {
        return Some("maps on different grounds".into());
    }
    let (idx, l) = (g.index().ok()?, g.lattice());
    let (ta, tb) = (a.table()?, b.table()?);
    let t: Vec<_> = ta
        .iter()
        .zip(tb)
        .map(|(&x, &y)| match op {
            LatticeOp::Join => idx.join(l, x, y),
            LatticeOp::Meet => idx.meet(l, x, y),
        })
        .collect();
    check_table(g, &t).ok()?.witness().map(|v| v.describe(g))
}

pub(crate) fn eval_operator_bound(i: &InteriorMap) -> Option<String> {
    let g = i.ground();
    if !InteriorMap::least(g).leq(i).ok()? {
        return Some("not above the least interior map".into());
    }
    if !i.leq(&InteriorMap::discrete(g)).ok()? {
        return Some("not below the discrete interior map".into());
    }
    None
}

fn side_check(open: bool, g: &GroundMorphism, s: &VbSpace, t: &VbSpace) -> Option<Outcome<FuzzySet>> {
    if open {
        is_open_morphism(g, s, t).ok()
    } else {
        is_continuous(g, s, t).ok()
    }
}

pub(crate) fn eval_composition(
    open: bool,
    a: &VbSpace,
    b: &VbSpace,
    c: &VbSpace,
    g1: &GroundMorphism,
    g2: &GroundMorphism,
) -> Option<String> {
    let what = if open { "open" } else { "continuous" };
    if !side_check(open, g1, a, b)?.holds() || !side_check(open, g2, b, c)?.holds() {
        return None;
    }
    let h = compose_morphisms(g2, g1).ok()?;
    side_check(open, &h, a, c)?.witness().map(|v| format!("composite not {what} at v={}", c.ground().render(v)))
}

pub(crate) fn eval_initiality(
    meet_lift: bool,
    s: &crate::continuity::StructuredSource,
    test: Option<(&VbSpace, &GroundMorphism)>,
) -> Option<String> {
    let lift = if meet_lift {
        crate::continuity::meet_of_initials(s).ok()?
    } else {
        crate::continuity::initial_from_source(s).ok()?
    };
    let dom = s.domain();
    let lift_space = VbSpace::new(lift.clone());
    if let Some(w) = check_table(dom, lift.table()?).ok()?.witness() {
        return Some(format!("lift is not an interior map: {}", w.describe(dom)));
    }
    for (k, (f, t)) in s.members().iter().enumerate() {
        if let Some(v) = is_continuous(f, &lift_space, t).ok()?.witness() {
            return Some(format!("member {k} is not continuous from the lift (v={})", t.ground().render(v)));
        }
    }
    let (test_space, g) = test?;
    let composites: Vec<GroundMorphism> =
        s.members().iter().map(|(f, _)| compose_morphisms(f, g)).collect::<Result<_, _>>().ok()?;
    let w = exhaustive_case(s, &lift_space, g, &composites, test_space).ok()??;
    Some(match w.direction {
        crate::continuity::InitialityDirection::If => {
            "every composite is continuous but the morphism into the lift is not".to_string()
        }
        crate::continuity::InitialityDirection::OnlyIf => {
            format!("the morphism into the lift is continuous but composite {} is not", w.member.unwrap_or_default())
        }
    })
}

pub(crate) fn eval_preservation(full: bool, g: &GroundMorphism, target: &VbSpace) -> Option<String> {
    let hat = initial_interior(g, target).ok()?;
    let dom = g.domain();
    if full {
        if !target.interior().is_fully_productive().ok()?.holds() {
            return None;
        }
        hat.is_fully_productive().ok()?.witness().map(|fam| {
            let r: Vec<String> = fam.iter().map(|u| dom.render(u)).collect();
            format!("initial interior not fully productive on family [{}]", r.join(", "))
        })
    } else {
        if !target.interior().is_idempotent().ok()?.holds() {
            return None;
        }
        hat.is_idempotent().ok()?.witness().map(|u| format!("initial interior not idempotent at u={}", dom.render(u)))
    }
}

pub(crate) fn eval_open_preimage(g: &GroundMorphism, src: &VbSpace, dst: &VbSpace, v: &FuzzySet) -> Option<String> {
    match crate::continuity::preimage_of_open_is_open(g, src, dst, v).ok()? {
        Outcome::Holds => None,
        Outcome::Fails(pre) => {
            Some(format!("preimage {} of open {} is not open", src.ground().render(&pre), dst.ground().render(v)))
        }
    }
}

pub(crate) fn eval_meet_interchange(g: &GroundMorphism, a: &FuzzySet, b: &FuzzySet) -> Option<String> {
    let cod = g.codomain();
    let lhs = g.backward(&cod.meet(a, b)).ok()?;
    let rhs = g.domain().meet(&g.backward(a).ok()?, &g.backward(b).ok()?);
    (lhs != rhs).then(|| {
        format!(
            "backward of the meet is {} but the meet of backwards is {}",
            g.domain().render(&lhs),
            g.domain().render(&rhs)
        )
    })
}

pub(crate) fn eval_characterization(g: &GroundMorphism, src: &VbSpace, dst: &VbSpace) -> Option<String> {
    let cont = is_continuous(g, src, dst).ok()?.holds();
    let above = initial_interior(g, dst).ok()?.leq(src.interior()).ok()?;
    (cont != above).then(|| format!("continuous={cont} but above initial interior={above}"))
}

pub(crate) fn eval_lift_open(g: &GroundMorphism, target: &VbSpace) -> Option<String> {
    let hat = VbSpace::new(initial_interior(g, target).ok()?);
    is_open_morphism(g, &hat, target)
        .ok()?
        .witness()
        .map(|v| format!("not open from the initial interior at v={}", target.ground().render(v)))
}

/// Carriers of the two sides of an adjunction.
pub(crate) fn adjunction_grounds(
    kind: AdjunctionKind,
    g: &GroundMorphism,
) -> Result<(Ground, Ground), crate::powerset::GroundError> {
    let (dom, cod) = (g.domain(), g.codomain());
    Ok(match kind {
        AdjunctionKind::Zadeh => (dom.clone(), Ground::new(cod.points().to_vec(), dom.basis().clone())?),
        AdjunctionKind::Lifts => (dom.clone(), Ground::new(dom.points().to_vec(), cod.basis().clone())?),
        AdjunctionKind::Forward => (dom.clone(), cod.clone()),
        AdjunctionKind::RightAdjoint => (cod.clone(), dom.clone()),
    })
}

/// The left and right maps of an adjunction on concrete fuzzy sets.
pub(crate) type SetMap<'a> = Box<dyn Fn(&FuzzySet) -> FuzzySet + 'a>;

pub(crate) fn adjunction_maps<'a>(
    kind: AdjunctionKind,
    g: &'a GroundMorphism,
    qg: &'a Ground,
) -> (SetMap<'a>, SetMap<'a>) {
    let (l, m) = (g.domain().lattice(), g.codomain().lattice());
    match kind {
        AdjunctionKind::Zadeh => {
            (Box::new(move |a| zadeh_forward(l, g.map(), qg.len(), a)), Box::new(move |b| zadeh_backward(g.map(), b)))
        }
        AdjunctionKind::Lifts => {
            (Box::new(move |a| lift_star_phi(l, m, g.phi_op(), a)), Box::new(move |b| lift_phi_op(g.phi_op(), b)))
        }
        AdjunctionKind::Forward => (
            Box::new(move |a| g.forward(a, ForwardPath::Auto).expect("domain set")),
            Box::new(move |b| g.backward(b).expect("codomain set")),
        ),
        AdjunctionKind::RightAdjoint => (
            Box::new(move |b| g.backward(b).expect("codomain set")),
            Box::new(move |a| g.right_adjoint(a).expect("domain set")),
        ),
    }
}

pub(crate) fn eval_adjunction(
    kind: AdjunctionKind,
    g: &GroundMorphism,
    p: &[String],
    q: &[String],
) -> Result<Option<String>, SchemaError> {
    let (pg, qg) = adjunction_grounds(kind, g)?;
    let ld = Loader::default();
    let (pu, qu) = (ld.fuzzy_set(&pg, p)?, ld.fuzzy_set(&qg, q)?);
    let (left, right) = adjunction_maps(kind, g, &qg);
    let l = qg.leq(&left(&pu), &qu);
    let r = pg.leq(&pu, &right(&qu));
    Ok((l != r).then(|| format!("F(p) <= q is {l} but p <= G(q) is {r} at p={}, q={}", pg.render(&pu), qg.render(&qu))))
}

/// Inverse of a bijective ground morphism, unvalidated.
pub(crate) fn inverse(g: &GroundMorphism) -> Option<(Vec<usize>, Vec<crate::lattice::Elem>)> {
    if !g.is_bijective() {
        return None;
    }
    let mut map = vec![0; g.codomain().len()];
    for (x, &y) in g.map().iter().enumerate() {
        map[y] = x;
    }
    let mut phi = vec![crate::lattice::Elem(0); g.domain().lattice().len()];
    for (b, &a) in g.phi_op().iter().enumerate() {
        phi[a.index()] = crate::lattice::Elem(b as u16);
    }
    Some((map, phi))
}

pub(crate) fn eval_bijective(g: &GroundMorphism, src: &VbSpace, dst: &VbSpace) -> Option<String> {
    if !is_continuous(g, src, dst).ok()?.holds() || !is_open_morphism(g, src, dst).ok()?.holds() {
        return None;
    }
    let (map, phi) = inverse(g)?;
    let inv = match validate_ground_morphism(g.codomain(), g.domain(), map, phi) {
        Ok(h) => h,
        Err(e) => return Some(format!("inverse is not a ground morphism: {e}")),
    };
    if let Some(v) = is_continuous(&inv, dst, src).ok()?.witness() {
        return Some(format!("inverse not continuous at v={}", src.ground().render(v)));
    }
    if let Some(v) = is_open_morphism(&inv, dst, src).ok()?.witness() {
        return Some(format!("inverse not open at v={}", src.ground().render(v)));
    }
    let back = compose_morphisms(&inv, g).ok()?;
    (back != GroundMorphism::identity(g.domain())).then(|| "inverse does not compose to the identity".to_string())
}

pub(crate) fn mdoc(g: &GroundMorphism) -> MorphismDoc {
    morphism_doc(g)
}
