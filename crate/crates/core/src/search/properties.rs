use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::continuity::{
    compose_morphisms, initial_interior, is_continuous, is_open_morphism, largest_open_interior, StructuredSource,
    VbSpace,
};
use crate::interior::{check_interior_axioms, check_table, literal_trivial, InteriorMap};
use crate::outcome::Outcome;
use crate::powerset::{Code, Ground, GroundMorphism, PowersetIndex};
use crate::schema::source_doc;

use super::bundle::{self, space, AdjunctionKind, LatticeOp, WitnessBundle, WitnessDoc};
use super::{all_interior_maps, grounds, morphisms, SearchBounds, SearchError};

/// A registered refutation target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    TrivialLiteral,
    OperatorLattice,
    ContinuityComposition,
    OpennessComposition,
    Initiality,
    LiteralMeetInitiality,
    PreserveIdempotency,
    PreserveFullProductivity,
    OpenPreimage,
    MeetInterchange,
    ContinuityCharacterization,
    InitialLiftOpen,
    Adjunctions,
    BijectiveInverse,
}

/// What a search over the default bounds is expected to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Holds,
    Counterexample,
    /// Reported, not asserted.
    Measured,
}

impl Property {
    pub const ALL: [Property; 14] = [
        Property::TrivialLiteral,
        Property::OperatorLattice,
        Property::ContinuityComposition,
        Property::OpennessComposition,
        Property::Initiality,
        Property::LiteralMeetInitiality,
        Property::PreserveIdempotency,
        Property::PreserveFullProductivity,
        Property::OpenPreimage,
        Property::MeetInterchange,
        Property::ContinuityCharacterization,
        Property::InitialLiftOpen,
        Property::Adjunctions,
        Property::BijectiveInverse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::TrivialLiteral => "trivial-literal",
            Property::OperatorLattice => "operator-lattice",
            Property::ContinuityComposition => "continuity-composition",
            Property::OpennessComposition => "openness-composition",
            Property::Initiality => "initiality",
            Property::LiteralMeetInitiality => "literal-meet-initiality",
            Property::PreserveIdempotency => "preserve-idempotency",
            Property::PreserveFullProductivity => "preserve-full-productivity",
            Property::OpenPreimage => "open-preimage",
            Property::MeetInterchange => "meet-interchange",
            Property::ContinuityCharacterization => "continuity-characterization",
            Property::InitialLiftOpen => "initial-lift-open",
            Property::Adjunctions => "adjunctions",
            Property::BijectiveInverse => "bijective-inverse",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Property::TrivialLiteral => "the literal trivial operator (0 -> 0, else -> 1_X) satisfies I1-I3",
            Property::OperatorLattice => {
                "pointwise joins and meets of interior maps are interior; least <= i <= discrete"
            }
            Property::ContinuityComposition => "composites of continuous morphisms are continuous",
            Property::OpennessComposition => "composites of open morphisms are open",
            Property::Initiality => "the join of initial interiors is an initial lift of every source",
            Property::LiteralMeetInitiality => "the meet of initial interiors is an initial lift of every source",
            Property::PreserveIdempotency => "initial interiors of idempotent targets are idempotent",
            Property::PreserveFullProductivity => "initial interiors of fully productive targets are fully productive",
            Property::OpenPreimage => "preimages of open sets under continuous morphisms are open",
            Property::MeetInterchange => "backward operators preserve binary meets",
            Property::ContinuityCharacterization => {
                "a morphism is continuous iff the domain interior is above the initial one"
            }
            Property::InitialLiftOpen => "a morphism is open from its initial interior",
            Property::Adjunctions => "the four powerset adjunctions hold",
            Property::BijectiveInverse => "inverses of bijective continuous open morphisms are continuous and open",
        }
    }

    pub fn expectation(self) -> Expectation {
        match self {
            Property::TrivialLiteral | Property::LiteralMeetInitiality => Expectation::Counterexample,
            Property::InitialLiftOpen => Expectation::Measured,
            _ => Expectation::Holds,
        }
    }

    fn needs_interiors(self) -> bool {
        !matches!(self, Property::TrivialLiteral | Property::MeetInterchange | Property::Adjunctions)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = SearchError;
    fn from_str(s: &str) -> Result<Self, SearchError> {
        Property::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| SearchError::UnknownProperty(s.to_string()))
    }
}

/// Outcome of [`search`].
#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub property: Property,
    pub instances: u64,
    pub witness: Option<WitnessDoc>,
    pub notes: Vec<String>,
}

impl SearchResult {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn bundle(&self, bounds: &SearchBounds) -> WitnessBundle {
        WitnessBundle {
            property: self.property.name().to_string(),
            status: if self.holds() { bundle::Status::Ok } else { bundle::Status::Fail },
            instances_checked: self.instances,
            witness: self.witness.clone(),
            bounds: Some(bounds.into()),
            notes: self.notes.clone(),
        }
    }
}

#[derive(Default)]
struct Unit {
    instances: u64,
    witness: Option<WitnessDoc>,
    notes: Vec<String>,
}

struct Ctx {
    bounds: SearchBounds,
    grounds: Vec<Ground>,
    interiors: Vec<Vec<InteriorMap>>,
    deadline: Option<Instant>,
}

impl Ctx {
    fn tick(&self, instances: u64) -> Result<(), SearchError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(SearchError::BudgetExhausted { instances }),
            _ => Ok(()),
        }
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.grounds.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    }

    fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.grounds.len();
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect()
    }
}

#[cfg(feature = "parallel")]
fn run_units<U: Sync>(
    units: &[U],
    f: impl Fn(&U) -> Result<Unit, SearchError> + Sync + Send,
) -> Result<Unit, SearchError> {
    use rayon::prelude::*;
    let results: Vec<Result<Unit, SearchError>> = units.par_iter().map(f).collect();
    merge(results)
}

#[cfg(not(feature = "parallel"))]
fn run_units<U>(units: &[U], f: impl Fn(&U) -> Result<Unit, SearchError>) -> Result<Unit, SearchError> {
    let mut results = Vec::new();
    for u in units {
        let r = f(u);
        let stop = matches!(&r, Ok(Unit { witness: Some(_), .. }) | Err(_));
        results.push(r);
        if stop {
            break;
        }
    }
    merge(results)
}

/// Sums units in order up to the first witness, which wins.
fn merge(results: Vec<Result<Unit, SearchError>>) -> Result<Unit, SearchError> {
    let mut acc = Unit::default();
    for r in results {
        let u = r?;
        acc.instances += u.instances;
        acc.notes.extend(u.notes);
        if u.witness.is_some() {
            acc.witness = u.witness;
            break;
        }
    }
    Ok(acc)
}

/// Runs one property over every instance within the bounds. The verdict is
/// the first counterexample in enumeration order, whatever the worker count.
pub fn search(property: Property, bounds: &SearchBounds) -> Result<SearchResult, SearchError> {
    bounds.validate()?;
    let deadline = bounds.budget.map(|d| Instant::now() + d);
    let gs = grounds(bounds);
    let interiors = if property.needs_interiors() {
        gs.iter().map(|g| all_interior_maps(g, bounds)).collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let ctx = Ctx { bounds: bounds.clone(), grounds: gs, interiors, deadline };
    let unit = match property {
        Property::TrivialLiteral => trivial_literal(&ctx),
        Property::OperatorLattice => operator_lattice(&ctx),
        Property::ContinuityComposition => composition(&ctx, false),
        Property::OpennessComposition => composition(&ctx, true),
        Property::Initiality => initiality(&ctx, false),
        Property::LiteralMeetInitiality => initiality(&ctx, true),
        Property::PreserveIdempotency => preservation(&ctx, false),
        Property::PreserveFullProductivity => preservation(&ctx, true),
        Property::OpenPreimage => open_preimage(&ctx),
        Property::MeetInterchange => meet_interchange(&ctx),
        Property::ContinuityCharacterization => characterization(&ctx),
        Property::InitialLiftOpen => lift_open(&ctx),
        Property::Adjunctions => adjunctions(&ctx),
        Property::BijectiveInverse => bijective(&ctx),
    }?;
    Ok(SearchResult { property, instances: unit.instances, witness: unit.witness, notes: unit.notes })
}

fn trivial_literal(ctx: &Ctx) -> Result<Unit, SearchError> {
    let mut unit = Unit::default();
    for g in &ctx.grounds {
        unit.instances += 1;
        if let Outcome::Fails(v) = check_interior_axioms(g, |u| literal_trivial(g, u)) {
            let u = match &v {
                crate::interior::AxiomViolation::Contraction { u, .. } => u.clone(),
                crate::interior::AxiomViolation::Monotonicity { u, .. } => u.clone(),
                crate::interior::AxiomViolation::UpperBound { .. } => g.top(),
            };
            let image = literal_trivial(g, &u);
            unit.notes.push(format!("on {}: {}", crate::report::describe_ground(g), v.describe(g)));
            unit.witness = Some(WitnessDoc::Candidate {
                ground: crate::schema::ground_doc(g),
                u: g.names_of(&u),
                image: g.names_of(&image),
            });
            return Ok(unit);
        }
    }
    Ok(unit)
}

fn operator_lattice(ctx: &Ctx) -> Result<Unit, SearchError> {
    let units: Vec<usize> = (0..ctx.grounds.len()).collect();
    run_units(&units, |&k| {
        let g = &ctx.grounds[k];
        let maps = &ctx.interiors[k];
        let mut unit = Unit::default();
        unit.notes.push(format!(
            "{} interior maps on {} points over {}",
            maps.len(),
            g.len(),
            g.basis().display_name()
        ));
        let (least, disc) = (InteriorMap::least(g), InteriorMap::discrete(g));
        let idx = g.index().map_err(|e| SearchError::BoundsExceeded(e.to_string()))?;
        let l = g.lattice();
        for (a, ia) in maps.iter().enumerate() {
            unit.instances += 1;
            if !least.leq(ia).unwrap_or(false) || !ia.leq(&disc).unwrap_or(false) {
                unit.witness = Some(WitnessDoc::OperatorBound { map: space(ia) });
                return Ok(unit);
            }
            let ta = ia.table().expect("tabulated");
            for ib in &maps[a..] {
                let tb = ib.table().expect("tabulated");
                for op in [LatticeOp::Join, LatticeOp::Meet] {
                    unit.instances += 1;
                    let t: Vec<Code> = ta
                        .iter()
                        .zip(tb)
                        .map(|(&x, &y)| if op == LatticeOp::Join { idx.join(l, x, y) } else { idx.meet(l, x, y) })
                        .collect();
                    if !check_table(g, &t).map(|o| o.holds()).unwrap_or(false) {
                        unit.witness = Some(WitnessDoc::OperatorPair { op, first: space(ia), second: space(ib) });
                        return Ok(unit);
                    }
                }
            }
            ctx.tick(unit.instances)?;
        }
        Ok(unit)
    })
}

fn composition(ctx: &Ctx, open: bool) -> Result<Unit, SearchError> {
    let units = ctx.triples();
    run_units(&units, |&(a, b, c)| {
        let mut unit = Unit::default();
        let (ga, gb, gc) = (&ctx.grounds[a], &ctx.grounds[b], &ctx.grounds[c]);
        let (m1, m2) = (morphisms(ga, gb), morphisms(gb, gc));
        if m1.is_empty() || m2.is_empty() {
            return Ok(unit);
        }
        let comps: Vec<Vec<GroundMorphism>> =
            m1.iter().map(|g1| m2.iter().map(|g2| compose_morphisms(g2, g1).expect("composable")).collect()).collect();
        let bw2: Vec<&[Code]> = m2.iter().map(|g| g.backward_table().expect("tabulated")).collect();
        let bwc: Vec<Vec<&[Code]>> =
            comps.iter().map(|row| row.iter().map(|h| h.backward_table().expect("tabulated")).collect()).collect();
        let (ib_idx, ia_idx) = (gb.index().expect("tabulated"), ga.index().expect("tabulated"));
        // continuity: the least i_A making g1 continuous; openness: the largest making it open
        let sources: Vec<Vec<Option<Vec<Code>>>> = ctx.interiors[b]
            .iter()
            .map(|ib| {
                let sb = VbSpace::new(ib.clone());
                m1.iter()
                    .map(|g1| {
                        if open {
                            largest_open_interior(g1, &sb)
                                .expect("matching grounds")
                                .map(|m| m.table().expect("tabulated").to_vec())
                        } else {
                            Some(initial_table(g1, ib.table().expect("tabulated")))
                        }
                    })
                    .collect()
            })
            .collect();
        for (k2, g2) in m2.iter().enumerate() {
            for ic in &ctx.interiors[c] {
                let tc = ic.table().expect("tabulated");
                for (jb, ib) in ctx.interiors[b].iter().enumerate() {
                    if scan_codes(bw2[k2], ib.table().expect("tabulated"), tc, ib_idx, open).is_some() {
                        continue;
                    }
                    for (k1, g1) in m1.iter().enumerate() {
                        let Some(ta) = &sources[jb][k1] else { continue };
                        unit.instances += 1;
                        if let Some(v) = scan_codes(bwc[k1][k2], ta, tc, ia_idx, open) {
                            let sa = VbSpace::new(InteriorMap::new_unchecked(ga.clone(), ta.clone()));
                            let (sb, sc) = (VbSpace::new(ib.clone()), VbSpace::new(ic.clone()));
                            debug_assert!(bundle::eval_composition(open, &sa, &sb, &sc, g1, g2).is_some());
                            unit.witness = Some(WitnessDoc::Composition {
                                open,
                                spaces: vec![space(sa.interior()), space(ib), space(ic)],
                                first: bundle::mdoc(g1),
                                second: bundle::mdoc(g2),
                                v: gc.names_of(&gc.decode(v)),
                            });
                            return Ok(unit);
                        }
                    }
                }
                ctx.tick(unit.instances)?;
            }
        }
        Ok(unit)
    })
}

/// First `v` where continuity (or openness) of a morphism with backward table
/// `bw` fails between the tables `ix` and `iy`.
fn scan_codes(bw: &[Code], ix: &[Code], iy: &[Code], dx: &PowersetIndex, open: bool) -> Option<Code> {
    (0..bw.len() as Code).find(|&v| {
        let (up, inner) = (bw[iy[v as usize] as usize], ix[bw[v as usize] as usize]);
        !if open { dx.leq(inner, up) } else { dx.leq(up, inner) }
    })
}

/// Code-level `î = g← ∘ i ∘ g_*`.
fn initial_table(g: &GroundMorphism, target: &[Code]) -> Vec<Code> {
    let (bw, ra) = (g.backward_table().expect("tabulated"), g.right_adjoint_table().expect("tabulated"));
    ra.iter().map(|&w| bw[target[w as usize] as usize]).collect()
}

struct Class {
    rep: (usize, usize, usize),
    count: u64,
    hat: Vec<Code>,
    tests: Vec<Vec<Code>>,
}

fn initiality(ctx: &Ctx, meet_lift: bool) -> Result<Unit, SearchError> {
    if ctx.bounds.max_source_members > 2 {
        return Err(SearchError::BoundsExceeded("sources with more than two members are not enumerated".into()));
    }
    let units: Vec<usize> = (0..ctx.grounds.len()).collect();
    run_units(&units, |&x| {
        let mut unit = Unit::default();
        let gx = &ctx.grounds[x];
        let idx = gx.index().map_err(|e| SearchError::BoundsExceeded(e.to_string()))?;
        let l = gx.lattice();
        let tests: Vec<(usize, GroundMorphism)> = (0..ctx.grounds.len())
            .flat_map(|z| morphisms(&ctx.grounds[z], gx).into_iter().map(move |g| (z, g)))
            .collect();
        let targets: Vec<Vec<GroundMorphism>> = ctx.grounds.iter().map(|gy| morphisms(gx, gy)).collect();
        let mut interchange = 0usize;
        let mut classes: Vec<Class> = Vec::new();
        let mut seen: HashMap<(Vec<Code>, Vec<Vec<Code>>), usize> = HashMap::new();
        for (y, fs) in targets.iter().enumerate() {
            for (k, f) in fs.iter().enumerate() {
                if f.find_meet_interchange_failure().expect("tabulated").is_some() {
                    interchange += 1;
                }
                let comps: Vec<GroundMorphism> =
                    tests.iter().map(|(_, g)| compose_morphisms(f, g).expect("composable")).collect();
                for (j, iy) in ctx.interiors[y].iter().enumerate() {
                    let t = iy.table().expect("tabulated");
                    let hat = initial_table(f, t);
                    let per_test: Vec<Vec<Code>> = comps.iter().map(|h| initial_table(h, t)).collect();
                    let key = (hat, per_test);
                    match seen.get(&key) {
                        Some(&c) => classes[c].count += 1,
                        None => {
                            seen.insert(key.clone(), classes.len());
                            classes.push(Class { rep: (y, k, j), count: 1, hat: key.0, tests: key.1 });
                        }
                    }
                }
            }
            ctx.tick(unit.instances)?;
        }
        drop(seen);
        if interchange > 0 {
            unit.notes.push(format!(
                "{interchange} source morphisms out of {} points over {} have a backward operator that does not preserve meets",
                gx.len(),
                gx.basis().display_name()
            ));
        }
        let nt = tests.len() as u64;
        let combine = |a: &[Code], b: &[Code], meet: bool| -> Vec<Code> {
            a.iter().zip(b).map(|(&p, &q)| if meet { idx.meet(l, p, q) } else { idx.join(l, p, q) }).collect()
        };
        let member = |c: &Class| -> (GroundMorphism, VbSpace) {
            let (y, k, j) = c.rep;
            (targets[y][k].clone(), VbSpace::new(ctx.interiors[y][j].clone()))
        };
        // A source is initial for all test interiors iff, per test morphism, the
        // least interiors making each side continuous coincide.
        let check_source = |members: &[&Class], unit: &mut Unit, mult: u64| -> Result<bool, SearchError> {
            unit.instances += mult * nt.max(1);
            let lift: Vec<Code> = match members {
                [] if meet_lift => idx.codes().collect(),
                [] => InteriorMap::least(gx).table().expect("tabulated").to_vec(),
                [a] => a.hat.clone(),
                [a, b] => combine(&a.hat, &b.hat, meet_lift),
                _ => unreachable!(),
            };
            let source = || {
                StructuredSource::new(gx.clone(), members.iter().map(|c| member(c)).collect())
                    .expect("matching grounds")
            };
            let lift_ok = check_table(gx, &lift).map(|o| o.holds()).unwrap_or(false);
            let lift_space = lift_ok.then(|| VbSpace::new(InteriorMap::new_unchecked(gx.clone(), lift.clone())));
            let members_ok = lift_space.as_ref().is_some_and(|ls| {
                members.iter().all(|c| {
                    let (f, t) = member(c);
                    is_continuous(&f, ls, &t).expect("matching grounds").holds()
                })
            });
            if !members_ok {
                let s = source();
                debug_assert!(bundle::eval_initiality(meet_lift, &s, None).is_some());
                unit.witness = Some(WitnessDoc::Initiality {
                    meet_lift,
                    source: source_doc(&s).expect("tabulated"),
                    test_space: None,
                    morphism: None,
                });
                return Ok(false);
            }
            for (ti, (z, g)) in tests.iter().enumerate() {
                let a = initial_table(g, &lift);
                let b: Vec<Code> = match members {
                    [] => InteriorMap::least(&ctx.grounds[*z]).table().expect("tabulated").to_vec(),
                    [m] => m.tests[ti].clone(),
                    [m, n] => {
                        let gz = &ctx.grounds[*z];
                        let iz = gz.index().expect("tabulated");
                        m.tests[ti].iter().zip(&n.tests[ti]).map(|(&p, &q)| iz.join(gz.lattice(), p, q)).collect()
                    }
                    _ => unreachable!(),
                };
                if a != b {
                    let s = source();
                    let gz = &ctx.grounds[*z];
                    for cand in [b, a] {
                        let test = VbSpace::new(InteriorMap::new_unchecked(gz.clone(), cand));
                        if bundle::eval_initiality(meet_lift, &s, Some((&test, g))).is_some() {
                            unit.witness = Some(WitnessDoc::Initiality {
                                meet_lift,
                                source: source_doc(&s).expect("tabulated"),
                                test_space: Some(space(test.interior())),
                                morphism: Some(bundle::mdoc(g)),
                            });
                            return Ok(false);
                        }
                    }
                    unreachable!("differing least interiors always yield a concrete witness");
                }
            }
            Ok(true)
        };
        for c in &classes {
            if !check_source(&[c], &mut unit, c.count)? {
                return Ok(unit);
            }
        }
        if ctx.bounds.max_source_members >= 2 {
            for (i, c) in classes.iter().enumerate() {
                if c.count >= 2 && !check_source(&[c, c], &mut unit, c.count * (c.count - 1) / 2)? {
                    return Ok(unit);
                }
                for d in &classes[i + 1..] {
                    if !check_source(&[c, d], &mut unit, c.count * d.count)? {
                        return Ok(unit);
                    }
                }
                ctx.tick(unit.instances)?;
            }
        }
        check_source(&[], &mut unit, 1)?;
        Ok(unit)
    })
}

fn preservation(ctx: &Ctx, full: bool) -> Result<Unit, SearchError> {
    let units = ctx.pairs();
    run_units(&units, |&(x, y)| {
        let mut unit = Unit::default();
        let fs = morphisms(&ctx.grounds[x], &ctx.grounds[y]);
        for iy in &ctx.interiors[y] {
            let has = if full {
                iy.is_fully_productive().expect("tabulated").holds()
            } else {
                iy.is_idempotent().expect("tabulated").holds()
            };
            if !has {
                continue;
            }
            let t = VbSpace::new(iy.clone());
            for f in &fs {
                unit.instances += 1;
                let hat = initial_interior(f, &t).expect("matching grounds");
                let ok = if full {
                    hat.is_fully_productive().expect("tabulated").holds()
                } else {
                    hat.is_idempotent().expect("tabulated").holds()
                };
                if !ok {
                    unit.witness = Some(WitnessDoc::Preservation {
                        full_productivity: full,
                        morphism: bundle::mdoc(f),
                        target: space(iy),
                    });
                    return Ok(unit);
                }
            }
            ctx.tick(unit.instances)?;
        }
        Ok(unit)
    })
}

fn open_preimage(ctx: &Ctx) -> Result<Unit, SearchError> {
    let units = ctx.pairs();
    run_units(&units, |&(x, y)| {
        let mut unit = Unit::default();
        let fs = morphisms(&ctx.grounds[x], &ctx.grounds[y]);
        for f in &fs {
            let bw = f.backward_table().expect("tabulated");
            for iy in &ctx.interiors[y] {
                let opens = iy.open_codes().expect("tabulated");
                let t = VbSpace::new(iy.clone());
                for ix in &ctx.interiors[x] {
                    let s = VbSpace::new(ix.clone());
                    if !is_continuous(f, &s, &t).expect("matching grounds").holds() {
                        continue;
                    }
                    for &v in &opens {
                        unit.instances += 1;
                        let pre = bw[v as usize];
                        if ix.apply_code(pre) != pre {
                            unit.witness = Some(WitnessDoc::OpenPreimage {
                                morphism: bundle::mdoc(f),
                                source: space(ix),
                                target: space(iy),
                                v: ctx.grounds[y].names_of(&ctx.grounds[y].decode(v)),
                            });
                            return Ok(unit);
                        }
                    }
                }
                ctx.tick(unit.instances)?;
            }
        }
        Ok(unit)
    })
}

fn meet_interchange(ctx: &Ctx) -> Result<Unit, SearchError> {
    let units = ctx.pairs();
    run_units(&units, |&(x, y)| {
        let mut unit = Unit::default();
        let (gx, gy) = (&ctx.grounds[x], &ctx.grounds[y]);
        if !gx.is_materializable() || !gy.is_materializable() {
            return Err(SearchError::BoundsExceeded(format!("|L|^|X| too large on {} points", gx.len().max(gy.len()))));
        }
        for f in morphisms(gx, gy) {
            unit.instances += 1;
            if let Some((a, b)) = f.find_meet_interchange_failure().expect("tabulated") {
                unit.witness = Some(WitnessDoc::MeetInterchange {
                    morphism: bundle::mdoc(&f),
                    a: gy.names_of(&gy.decode(a)),
                    b: gy.names_of(&gy.decode(b)),
                });
                return Ok(unit);
            }
        }
        Ok(unit)
    })
}

fn characterization(ctx: &Ctx) -> Result<Unit, SearchError> {
    let units = ctx.pairs();
    run_units(&units, |&(x, y)| {
        let mut unit = Unit::default();
        for f in morphisms(&ctx.grounds[x], &ctx.grounds[y]) {
            for iy in &ctx.interiors[y] {
                let t = VbSpace::new(iy.clone());
                let hat = initial_interior(&f, &t).expect("matching grounds");
                for ix in &ctx.interiors[x] {
                    unit.instances += 1;
                    let s = VbSpace::new(ix.clone());
                    let cont = is_continuous(&f, &s, &t).expect("matching grounds").holds();
                    if cont != hat.leq(ix).expect("same ground") {
                        unit.witness = Some(WitnessDoc::Characterization {
                            morphism: bundle::mdoc(&f),
                            source: space(ix),
                            target: space(iy),
                        });
                        return Ok(unit);
                    }
                }
                ctx.tick(unit.instances)?;
            }
        }
        Ok(unit)
    })
}

fn lift_open(ctx: &Ctx) -> Result<Unit, SearchError> {
    let units = ctx.pairs();
    let result = run_units(&units, |&(x, y)| {
        let mut unit = Unit::default();
        for f in morphisms(&ctx.grounds[x], &ctx.grounds[y]) {
            for iy in &ctx.interiors[y] {
                unit.instances += 1;
                let t = VbSpace::new(iy.clone());
                let hat = VbSpace::new(initial_interior(&f, &t).expect("matching grounds"));
                if !is_open_morphism(&f, &hat, &t).expect("matching grounds").holds() {
                    unit.witness = Some(WitnessDoc::LiftOpen { morphism: bundle::mdoc(&f), target: space(iy) });
                    return Ok(unit);
                }
            }
        }
        Ok(unit)
    })?;
    Ok(result)
}

fn adjunctions(ctx: &Ctx) -> Result<Unit, SearchError> {
    let units = ctx.pairs();
    run_units(&units, |&(x, y)| {
        let mut unit = Unit::default();
        let (gx, gy) = (&ctx.grounds[x], &ctx.grounds[y]);
        for f in morphisms(gx, gy) {
            for kind in
                [AdjunctionKind::Zadeh, AdjunctionKind::Lifts, AdjunctionKind::Forward, AdjunctionKind::RightAdjoint]
            {
                let (pg, qg) = bundle::adjunction_grounds(kind, &f).expect("points");
                let (pi, qi) = match (pg.index(), qg.index()) {
                    (Ok(p), Ok(q)) => (p.clone(), q.clone()),
                    _ => return Err(SearchError::BoundsExceeded("powerset too large for the adjunction suite".into())),
                };
                let (left, right) = bundle::adjunction_maps(kind, &f, &qg);
                let lt: Vec<Code> = pi.codes().map(|p| qg.encode(&left(&pg.decode(p)))).collect();
                let rt: Vec<Code> = qi.codes().map(|q| pg.encode(&right(&qg.decode(q)))).collect();
                let ps: Vec<Code> = pi.codes().collect();
                let qs: Vec<Code> = qi.codes().collect();
                let verdict = crate::powerset::verify_adjunction(
                    &ps,
                    &qs,
                    |a, b| pi.leq(*a, *b),
                    |a, b| qi.leq(*a, *b),
                    |p| lt[*p as usize],
                    |q| rt[*q as usize],
                );
                unit.instances += (ps.len() * qs.len()) as u64;
                if let crate::powerset::AdjunctionVerdict::Fails(w) = verdict {
                    unit.witness = Some(WitnessDoc::Adjunction {
                        adjunction: kind,
                        morphism: bundle::mdoc(&f),
                        p: pg.names_of(&pg.decode(w.p)),
                        q: qg.names_of(&qg.decode(w.q)),
                    });
                    return Ok(unit);
                }
            }
            ctx.tick(unit.instances)?;
        }
        Ok(unit)
    })
}

fn bijective(ctx: &Ctx) -> Result<Unit, SearchError> {
    let units = ctx.pairs();
    run_units(&units, |&(x, y)| {
        let mut unit = Unit::default();
        for f in morphisms(&ctx.grounds[x], &ctx.grounds[y]).into_iter().filter(GroundMorphism::is_bijective) {
            for ix in &ctx.interiors[x] {
                let s = VbSpace::new(ix.clone());
                for iy in &ctx.interiors[y] {
                    let t = VbSpace::new(iy.clone());
                    if !is_continuous(&f, &s, &t).expect("matching grounds").holds()
                        || !is_open_morphism(&f, &s, &t).expect("matching grounds").holds()
                    {
                        continue;
                    }
                    unit.instances += 1;
                    if bundle::eval_bijective(&f, &s, &t).is_some() {
                        unit.witness = Some(WitnessDoc::BijectiveInverse {
                            morphism: bundle::mdoc(&f),
                            source: space(ix),
                            target: space(iy),
                        });
                        return Ok(unit);
                    }
                }
                ctx.tick(unit.instances)?;
            }
        }
        Ok(unit)
    })
}
