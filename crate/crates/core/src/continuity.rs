//! Continuity and openness of ground morphisms between interior spaces,
//! initial interior maps and initial lifts of structured sources.

use std::sync::Arc;

use thiserror::Error;

use crate::interior::{join_interiors, meet_interiors, InteriorError, InteriorMap, Rule};
use crate::outcome::Outcome;
use crate::powerset::{compose, Code, FuzzySet, Ground, GroundMorphism, MorphismError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ContinuityError {
    #[error("ground mismatch: {0}")]
    GroundMismatch(String),
    #[error("test bounds too large: {0}")]
    BoundsTooLarge(String),
    #[error("precondition failed: {0}")]
    PropertyPreconditionFailed(String),
    #[error("morphism is not continuous (witness v = {0})")]
    NotContinuous(String),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Interior(#[from] InteriorError),
}

/// A ground object with an interior map: `(X, L, i_XL)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VbSpace {
    interior: InteriorMap,
}

impl VbSpace {
    pub fn new(interior: InteriorMap) -> Self {
        VbSpace { interior }
    }

    pub fn discrete(ground: &Ground) -> Self {
        VbSpace::new(InteriorMap::discrete(ground))
    }

    pub fn least(ground: &Ground) -> Self {
        VbSpace::new(InteriorMap::least(ground))
    }

    pub fn ground(&self) -> &Ground {
        self.interior.ground()
    }

    pub fn interior(&self) -> &InteriorMap {
        &self.interior
    }
}

fn check_ends(g: &GroundMorphism, src: &Ground, dst: &Ground) -> Result<(), ContinuityError> {
    if g.domain() != src {
        return Err(ContinuityError::GroundMismatch("morphism domain differs from the source space".into()));
    }
    if g.codomain() != dst {
        return Err(ContinuityError::GroundMismatch("morphism codomain differs from the target space".into()));
    }
    Ok(())
}

/// Scan `v ∈ M^Y` for a failure of `lhs(v) ≤ rhs(v)` on codes of `L^X`.
fn scan(
    g: &GroundMorphism,
    src: &VbSpace,
    dst: &VbSpace,
    continuity: bool,
) -> Result<Outcome<FuzzySet>, ContinuityError> {
    check_ends(g, src.ground(), dst.ground())?;
    let (ix, iy) = (src.interior.require_table()?, dst.interior.require_table()?);
    let bw = g.backward_table()?;
    let dx = g.domain().index().map_err(MorphismError::from)?;
    for v in 0..bw.len() as Code {
        let up = bw[iy[v as usize] as usize];
        let inner = ix[bw[v as usize] as usize];
        let ok = if continuity { dx.leq(up, inner) } else { dx.leq(inner, up) };
        if !ok {
            return Ok(Outcome::Fails(g.codomain().decode(v)));
        }
    }
    Ok(Outcome::Holds)
}

/// `(f,φ)←(i_Y(v)) ≤ i_X((f,φ)←(v))` for every `v`; witness `v`.
pub fn is_continuous(g: &GroundMorphism, src: &VbSpace, dst: &VbSpace) -> Result<Outcome<FuzzySet>, ContinuityError> {
    scan(g, src, dst, true)
}

/// `i_X((f,φ)←(v)) ≤ (f,φ)←(i_Y(v))` for every `v`; witness `v`.
pub fn is_open_morphism(
    g: &GroundMorphism,
    src: &VbSpace,
    dst: &VbSpace,
) -> Result<Outcome<FuzzySet>, ContinuityError> {
    scan(g, src, dst, false)
}

/// Composite `second ∘ first`.
pub fn compose_morphisms(second: &GroundMorphism, first: &GroundMorphism) -> Result<GroundMorphism, ContinuityError> {
    compose(second, first).map_err(|e| match e {
        MorphismError::GroundMismatch(s) => ContinuityError::GroundMismatch(s),
        other => other.into(),
    })
}

/// `î = (f,φ)← ∘ i_Y ∘ (f,φ)_*`: the least interior map on the domain that
/// makes `g` continuous into `target`.
pub fn initial_interior(g: &GroundMorphism, target: &VbSpace) -> Result<InteriorMap, ContinuityError> {
    if g.codomain() != target.ground() {
        return Err(ContinuityError::GroundMismatch("morphism codomain differs from the target space".into()));
    }
    if let (Ok(bw), Ok(ra), Some(iy)) = (g.backward_table(), g.right_adjoint_table(), target.interior.table()) {
        let table = ra.iter().map(|&w| bw[iy[w as usize] as usize]).collect();
        return Ok(InteriorMap::new_unchecked(g.domain().clone(), table));
    }
    let (gg, iy) = (g.clone(), target.interior.clone());
    let rule: Rule = Arc::new(move |u: &FuzzySet| {
        let w = gg.right_adjoint(u).expect("domain checked");
        gg.backward(&iy.apply(&w)).expect("codomain checked")
    });
    Ok(InteriorMap::from_rule(g.domain().clone(), rule)?)
}

/// A family of morphisms out of one ground, each with a target space.
#[derive(Clone, Debug)]
pub struct StructuredSource {
    domain: Ground,
    members: Vec<(GroundMorphism, VbSpace)>,
}

impl StructuredSource {
    pub fn new(domain: Ground, members: Vec<(GroundMorphism, VbSpace)>) -> Result<Self, ContinuityError> {
        for (k, (g, t)) in members.iter().enumerate() {
            if g.domain() != &domain {
                return Err(ContinuityError::GroundMismatch(format!(
                    "member {k}: domain differs from the source domain"
                )));
            }
            if g.codomain() != t.ground() {
                return Err(ContinuityError::GroundMismatch(format!(
                    "member {k}: codomain differs from its target space"
                )));
            }
        }
        Ok(StructuredSource { domain, members })
    }

    pub fn domain(&self) -> &Ground {
        &self.domain
    }

    pub fn members(&self) -> &[(GroundMorphism, VbSpace)] {
        &self.members
    }

    fn initials(&self) -> Result<Vec<InteriorMap>, ContinuityError> {
        self.members.iter().map(|(g, t)| initial_interior(g, t)).collect()
    }
}

/// The initial lift: pointwise join of the members' initial interiors, the
/// least interior map making every member continuous. The empty source gives
/// the least interior map.
pub fn initial_from_source(s: &StructuredSource) -> Result<InteriorMap, ContinuityError> {
    let initials = s.initials()?;
    if initials.is_empty() {
        return Ok(InteriorMap::least(&s.domain));
    }
    Ok(join_interiors(&initials)?)
}

/// Pointwise meet of the members' initial interiors (discrete for the empty
/// source). Generally not initial; kept for comparison.
pub fn meet_of_initials(s: &StructuredSource) -> Result<InteriorMap, ContinuityError> {
    let initials = s.initials()?;
    if initials.is_empty() {
        return Ok(InteriorMap::discrete(&s.domain));
    }
    Ok(meet_interiors(&initials)?)
}

/// How [`verify_initiality`] ranges over test interiors `i_Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every interior map on every test ground.
    Exhaustive,
    /// Only the least interior maps making each side continuous. Sound
    /// because continuity into a fixed target is upward closed in `i_Z` with
    /// least element the initial interior.
    Principal,
}

/// Test objects for [`verify_initiality`]: grounds `(Z, N)` and, per test
/// ground, the morphisms `(Z, N) → (X, L)` into the source domain.
pub struct TestFamily<'a> {
    pub grounds: &'a [Ground],
    pub morphisms: &'a dyn Fn(&Ground, &Ground) -> Vec<GroundMorphism>,
    pub interiors: &'a dyn Fn(&Ground) -> Result<Vec<InteriorMap>, ContinuityError>,
    pub strategy: Strategy,
}

/// Which side of "g continuous into the lift ⟺ every composite continuous"
/// fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialityDirection {
    /// Composites continuous, `g` not.
    If,
    /// `g` continuous, some composite not.
    OnlyIf,
}

#[derive(Clone, Debug)]
pub struct InitialityWitness {
    pub test_space: VbSpace,
    pub morphism: GroundMorphism,
    pub direction: InitialityDirection,
    /// Index of a failing member (for `OnlyIf`).
    pub member: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct InitialityReport {
    pub outcome: Outcome<InitialityWitness>,
    pub instances: u64,
    /// Members whose backward operator fails to preserve some binary meet,
    /// with the offending pair rendered. Reported, never fatal.
    pub meet_interchange_failures: Vec<(usize, String, String)>,
}

/// Checks that for every test space `(Z, N, i_Z)` and morphism `g` into the
/// source domain, `g` is continuous into `(X, L, lift)` iff every composite
/// `f_λ ∘ g` is continuous into its target.
pub fn verify_initiality(
    s: &StructuredSource,
    lift: &InteriorMap,
    family: &TestFamily<'_>,
) -> Result<InitialityReport, ContinuityError> {
    if lift.ground() != s.domain() {
        return Err(ContinuityError::GroundMismatch("lift lives on another ground".into()));
    }
    let mut failures = Vec::new();
    for (k, (f, _)) in s.members.iter().enumerate() {
        if let Some((a, b)) = f.find_meet_interchange_failure()? {
            failures.push((k, f.codomain().render_code(a), f.codomain().render_code(b)));
        }
    }
    let lift_space = VbSpace::new(lift.clone());
    let mut instances = 0u64;
    for z in family.grounds {
        if !z.is_materializable() {
            return Err(ContinuityError::BoundsTooLarge(format!("test ground with |N|^|Z| = {}", z.powerset_size())));
        }
        for g in (family.morphisms)(z, s.domain()) {
            let composites: Vec<GroundMorphism> =
                s.members.iter().map(|(f, _)| compose_morphisms(f, &g)).collect::<Result<_, _>>()?;
            match family.strategy {
                Strategy::Exhaustive => {
                    for iz in (family.interiors)(z)? {
                        instances += 1;
                        let test = VbSpace::new(iz);
                        if let Some(w) = exhaustive_case(s, &lift_space, &g, &composites, &test)? {
                            return Ok(InitialityReport {
                                outcome: Outcome::Fails(w),
                                instances,
                                meet_interchange_failures: failures,
                            });
                        }
                    }
                }
                Strategy::Principal => {
                    instances += 1;
                    // least i_Z for each side; the sides agree for all i_Z iff these agree
                    let a = initial_interior(&g, &lift_space)?;
                    let bs: Vec<InteriorMap> = composites
                        .iter()
                        .zip(&s.members)
                        .map(|(h, (_, t))| initial_interior(h, t))
                        .collect::<Result<_, _>>()?;
                    let b = if bs.is_empty() { InteriorMap::least(z) } else { join_interiors(&bs)? };
                    for candidate in [b, a] {
                        let test = VbSpace::new(candidate);
                        if let Some(w) = exhaustive_case(s, &lift_space, &g, &composites, &test)? {
                            return Ok(InitialityReport {
                                outcome: Outcome::Fails(w),
                                instances,
                                meet_interchange_failures: failures,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(InitialityReport { outcome: Outcome::Holds, instances, meet_interchange_failures: failures })
}

pub(crate) fn exhaustive_case(
    s: &StructuredSource,
    lift: &VbSpace,
    g: &GroundMorphism,
    composites: &[GroundMorphism],
    test: &VbSpace,
) -> Result<Option<InitialityWitness>, ContinuityError> {
    let lhs = is_continuous(g, test, lift)?.holds();
    let mut failing = None;
    for (k, (h, (_, t))) in composites.iter().zip(&s.members).enumerate() {
        if !is_continuous(h, test, t)?.holds() {
            failing = Some(k);
            break;
        }
    }
    let direction = match (lhs, failing) {
        (true, Some(_)) => InitialityDirection::OnlyIf,
        (false, None) => InitialityDirection::If,
        _ => return Ok(None),
    };
    Ok(Some(InitialityWitness { test_space: test.clone(), morphism: g.clone(), direction, member: failing }))
}

fn require_holds<W>(o: Outcome<W>, what: &str) -> Result<(), ContinuityError> {
    if o.holds() {
        Ok(())
    } else {
        Err(ContinuityError::PropertyPreconditionFailed(what.into()))
    }
}

/// Idempotent target ⇒ idempotent initial interior; witness `u`.
pub fn preserves_idempotency_check(g: &GroundMorphism, target: &VbSpace) -> Result<Outcome<FuzzySet>, ContinuityError> {
    require_holds(target.interior.is_idempotent()?, "target interior is not idempotent")?;
    Ok(initial_interior(g, target)?.is_idempotent()?)
}

/// Fully productive target ⇒ fully productive initial interior; witness is
/// the offending family.
pub fn preserves_full_productivity_check(
    g: &GroundMorphism,
    target: &VbSpace,
) -> Result<Outcome<Vec<FuzzySet>>, ContinuityError> {
    require_holds(target.interior.is_fully_productive()?, "target interior is not fully productive")?;
    Ok(initial_interior(g, target)?.is_fully_productive()?)
}

/// For continuous `g` and `v` open in `dst`, `(f,φ)←(v)` is open in `src`.
/// The witness is the preimage that fails to be open.
pub fn preimage_of_open_is_open(
    g: &GroundMorphism,
    src: &VbSpace,
    dst: &VbSpace,
    v: &FuzzySet,
) -> Result<Outcome<FuzzySet>, ContinuityError> {
    if let Outcome::Fails(w) = is_continuous(g, src, dst)? {
        return Err(ContinuityError::NotContinuous(dst.ground().render(&w)));
    }
    if dst.interior.apply(v) != *v {
        return Err(ContinuityError::PropertyPreconditionFailed(format!("{} is not open", dst.ground().render(v))));
    }
    let pre = g.backward(v)?;
    if src.interior.apply(&pre) == pre {
        Ok(Outcome::Holds)
    } else {
        Ok(Outcome::Fails(pre))
    }
}

/// The largest interior map on the domain for which `g` is open into
/// `target`, or `None` when no interior map makes `g` open. Openness is
/// downward closed in the domain interior, and the bound at `w = (f,φ)←(v)`
/// is `(f,φ)←(i_Y(v))`.
pub fn largest_open_interior(g: &GroundMorphism, target: &VbSpace) -> Result<Option<InteriorMap>, ContinuityError> {
    if g.codomain() != target.ground() {
        return Err(ContinuityError::GroundMismatch("morphism codomain differs from the target space".into()));
    }
    let dom = g.domain();
    let dx = dom.index().map_err(MorphismError::from)?;
    let l = dom.lattice();
    let bw = g.backward_table()?;
    let iy = target.interior.require_table()?;
    let mut cap: Vec<Code> = vec![dx.top(); dx.size()];
    for v in 0..bw.len() {
        let w = bw[v] as usize;
        cap[w] = dx.meet(l, cap[w], bw[iy[v] as usize]);
    }
    // M(u) = u ∧ ⋀{cap(w) : w ≥ u}: fold caps downward along the order.
    let mut up = cap.clone();
    for &u in dx.linear_extension().iter().rev() {
        for &c in dx.lower_covers(u) {
            up[c as usize] = dx.meet(l, up[c as usize], up[u as usize]);
        }
    }
    let table: Vec<Code> = dx.codes().map(|u| dx.meet(l, u, up[u as usize])).collect();
    if table[dx.top() as usize] != dx.top() {
        return Ok(None);
    }
    Ok(Some(InteriorMap::new_unchecked(dom.clone(), table)))
}

#[cfg(test)]
mod tests;
