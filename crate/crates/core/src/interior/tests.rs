use std::sync::Arc;

use super::*;
use crate::monoid::{builtin_chain, ChainKind, GlMonoid};

fn gl(kind: ChainKind, n: usize) -> GlMonoid {
    builtin_chain(kind, n).unwrap()
}

fn ground(n: usize, m: &GlMonoid) -> Ground {
    Ground::numbered(n, Arc::new(m.cqml().clone()))
}

fn table_from(g: &Ground, rows: &[(&[&str], &[&str])]) -> Vec<Code> {
    let idx = g.index().unwrap();
    let mut t = vec![u32::MAX; idx.size()];
    for (u, iu) in rows {
        t[g.encode(&g.fuzzy_set(u).unwrap()) as usize] = g.encode(&g.fuzzy_set(iu).unwrap());
    }
    t
}

#[test]
fn axiom_examples_single_point() {
    let m = gl(ChainKind::Godel, 3);
    let g = ground(1, &m);
    let ok = table_from(&g, &[(&["0"], &["0"]), (&["1/2"], &["0"]), (&["1"], &["1"])]);
    assert!(check_table(&g, &ok).unwrap().holds());
    let bad = table_from(&g, &[(&["0"], &["0"]), (&["1/2"], &["1"]), (&["1"], &["1"])]);
    match check_table(&g, &bad).unwrap() {
        Outcome::Fails(AxiomViolation::Contraction { u, .. }) => assert_eq!(g.render(&u), "(1/2)"),
        other => panic!("{other:?}"),
    }
    assert!(check_interior_axioms(&g, |u| u.clone()).holds());
}

#[test]
fn literal_trivial_fails_contraction_least_passes() {
    let m = gl(ChainKind::Godel, 3);
    let g = ground(1, &m);
    match check_interior_axioms(&g, |u| literal_trivial(&g, u)) {
        Outcome::Fails(AxiomViolation::Contraction { u, iu }) => {
            assert_eq!(g.render(&u), "(1/2)");
            assert_eq!(g.render(&iu), "(1)");
        }
        other => panic!("{other:?}"),
    }
    let least = InteriorMap::least(&g);
    let rows: Vec<String> =
        least.rows().unwrap().iter().map(|(u, iu)| format!("{}->{}", g.render(u), g.render(iu))).collect();
    assert_eq!(rows, ["(0)->(0)", "(1/2)->(0)", "(1)->(1)"]);
}

#[test]
fn monotonicity_and_upper_bound_witnesses() {
    let m = gl(ChainKind::Godel, 3);
    let g = ground(1, &m);
    let t = table_from(&g, &[(&["0"], &["0"]), (&["1/2"], &["1/2"]), (&["1"], &["0"])]);
    assert!(matches!(check_table(&g, &t).unwrap(), Outcome::Fails(AxiomViolation::Monotonicity { .. })));
    let g2 = ground(1, &gl(ChainKind::Godel, 2));
    let t = vec![0, 0];
    assert!(matches!(check_table(&g2, &t).unwrap(), Outcome::Fails(AxiomViolation::UpperBound { .. })));
    assert!(matches!(check_table(&g2, &[0]), Err(InteriorError::TableShape { .. })));
}

#[test]
fn join_and_meet_examples() {
    let m = gl(ChainKind::Godel, 3);
    let g = ground(1, &m);
    let a =
        InteriorMap::from_table(g.clone(), table_from(&g, &[(&["0"], &["0"]), (&["1/2"], &["0"]), (&["1"], &["1"])]))
            .unwrap();
    let b = InteriorMap::discrete(&g);
    let j = join_interiors(&[a.clone(), b.clone()]).unwrap();
    assert_eq!(j, b);
    assert_eq!(meet_interiors(&[b.clone(), a.clone()]).unwrap(), a);
    assert_eq!(join_interiors(std::slice::from_ref(&a)).unwrap(), a);
    assert_eq!(join_interiors(&[]), Err(InteriorError::EmptyFamily));
    let other = InteriorMap::discrete(&ground(2, &m));
    assert_eq!(join_interiors(&[a, other]), Err(InteriorError::GroundMismatch));
}

#[test]
fn predicates_on_small_maps() {
    let m = gl(ChainKind::Godel, 3);
    let g = ground(1, &m);
    let d = InteriorMap::discrete(&g);
    assert!(d.is_idempotent().unwrap().holds());
    assert!(d.is_fully_productive().unwrap().holds());
    assert_eq!(d.open_sets().unwrap().len(), 3);
    let l = InteriorMap::least(&g);
    assert!(l.is_idempotent().unwrap().holds());
    assert!(l.is_fully_productive().unwrap().holds());
    let opens: Vec<String> = l.open_sets().unwrap().iter().map(|u| g.render(u)).collect();
    assert_eq!(opens, ["(0)", "(1)"]);
}

#[test]
fn productivity_failure_on_two_points() {
    // i(u) = u when u is crisp-ish top on one coordinate pattern; build from a topology
    // whose opens are not meet-closed: τ = {(1,0)?} use (1,1/2),(1/2,1) and 1_X.
    let m = gl(ChainKind::Godel, 3);
    let g = ground(2, &m);
    let t = LTopology::new(
        g.clone(),
        vec![g.top(), g.fuzzy_set(&["1", "1/2"]).unwrap(), g.fuzzy_set(&["1/2", "1"]).unwrap()],
    )
    .unwrap();
    let i = t.interior();
    match i.is_productive().unwrap() {
        Outcome::Fails((u, v)) => {
            let lhs = i.apply(&g.meet(&u, &v));
            let rhs = g.meet(&i.apply(&u), &i.apply(&v));
            assert_ne!(lhs, rhs);
        }
        Outcome::Holds => panic!("expected a productivity witness"),
    }
}

fn all_subsets_fully_productive(i: &InteriorMap) -> bool {
    let g = i.ground();
    let idx = g.index().unwrap();
    let n = idx.size();
    assert!(n <= 16);
    (0u32..1 << n).all(|mask| {
        let fam: Vec<FuzzySet> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| g.decode(k as Code)).collect();
        let images: Vec<FuzzySet> = fam.iter().map(|u| i.apply(u)).collect();
        i.apply(&g.meet_all(&fam)) == g.meet_all(&images)
    })
}

fn naive_interiors(g: &Ground) -> Vec<Vec<Code>> {
    let idx = g.index().unwrap();
    let n = idx.size();
    let mut out = Vec::new();
    let mut t = vec![0 as Code; n];
    loop {
        if check_table(g, &t).unwrap().holds() {
            out.push(t.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            t[k] += 1;
            if (t[k] as usize) < n {
                break;
            }
            t[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn full_productivity_matches_subset_oracle() {
    for m in [gl(ChainKind::Godel, 2), gl(ChainKind::Godel, 3)] {
        for pts in 1..=2 {
            let g = ground(pts, &m);
            if g.powerset_size() > 4 {
                continue;
            }
            for t in naive_interiors(&g) {
                let i = InteriorMap::from_table(g.clone(), t).unwrap();
                assert_eq!(i.is_fully_productive().unwrap().holds(), all_subsets_fully_productive(&i));
            }
        }
    }
    let g = ground(1, &gl(ChainKind::Lukasiewicz, 3));
    for t in naive_interiors(&g) {
        let i = InteriorMap::from_table(g.clone(), t).unwrap();
        assert_eq!(i.is_fully_productive().unwrap().holds(), all_subsets_fully_productive(&i));
    }
}

#[test]
fn interior_count_two_point_boolean() {
    let g = ground(2, &gl(ChainKind::Godel, 2));
    let all = naive_interiors(&g);
    assert_eq!(all.len(), 4);
    let least = InteriorMap::least(&g);
    let disc = InteriorMap::discrete(&g);
    for t in all {
        let i = InteriorMap::from_table(g.clone(), t).unwrap();
        assert!(least.leq(&i).unwrap() && i.leq(&disc).unwrap());
        assert_eq!(i.apply(&g.bottom()), g.bottom());
    }
}

#[test]
fn topology_interior_examples() {
    let m = gl(ChainKind::Godel, 3);
    let g = ground(1, &m);
    let t = LTopology::indiscrete(&g);
    let i = t.interior();
    assert_eq!(i, InteriorMap::least(&g));
    assert_eq!(i.apply(&g.fuzzy_set(&["1/2"]).unwrap()), g.bottom());
    let full = LTopology::new(g.clone(), g.index().unwrap().codes().map(|c| g.decode(c)).collect()).unwrap();
    assert_eq!(full.interior(), InteriorMap::discrete(&g));
    assert_eq!(LTopology::new(g.clone(), vec![g.bottom()]), Err(InteriorError::TopMissingFromTopology));
}

#[test]
fn join_closed_topology_opens_round_trip() {
    let m = gl(ChainKind::Godel, 3);
    let g = ground(2, &m);
    let opens = vec![g.bottom(), g.fuzzy_set(&["1/2", "0"]).unwrap(), g.fuzzy_set(&["1", "1/2"]).unwrap(), g.top()];
    let t = LTopology::new(g.clone(), opens.clone()).unwrap();
    assert!(t.is_join_closed().holds());
    let i = t.interior();
    assert!(i.is_idempotent().unwrap().holds());
    let mut got = i.open_sets().unwrap();
    let mut want = opens;
    got.sort();
    want.sort();
    assert_eq!(got, want);
    let t2 =
        LTopology::new(g.clone(), vec![g.fuzzy_set(&["1", "0"]).unwrap(), g.fuzzy_set(&["0", "1"]).unwrap(), g.top()])
            .unwrap();
    assert!(!t2.is_join_closed().holds());
}

#[test]
fn closure_modes_on_godel_c3() {
    let m = gl(ChainKind::Godel, 3);
    let g = ground(1, &m);
    let t = LTopology::indiscrete(&g);
    let ext = t.closure(&m, ClosureMode::Extensional).unwrap();
    let render: Vec<String> = ext.rows().iter().map(|(u, c)| format!("{}->{}", g.render(u), g.render(c))).collect();
    assert_eq!(render, ["(0)->(0)", "(1/2)->(1)", "(1)->(1)"]);
    assert!(ext.axioms().extensive.holds());
    let lit = t.closure(&m, ClosureMode::Literal).unwrap();
    assert_eq!(lit.apply(&g.fuzzy_set(&["1/2"]).unwrap()), g.bottom());
    assert!(!lit.axioms().extensive.holds());
    let luk = gl(ChainKind::Lukasiewicz, 3);
    assert_eq!(t.closure(&luk, ClosureMode::Literal), Err(InteriorError::NotGLGround));
}

#[test]
fn extensional_closure_is_extensive_exhaustively() {
    for m in [gl(ChainKind::Godel, 3), gl(ChainKind::Lukasiewicz, 3)] {
        for pts in 1..=2 {
            let g = ground(pts, &m);
            let codes: Vec<Code> = g.index().unwrap().codes().collect();
            // every topology generated by at most two extra opens
            for &a in &codes {
                for &b in &codes {
                    let t = LTopology::new(g.clone(), vec![g.decode(a), g.decode(b), g.top()]).unwrap();
                    assert!(t.closure(&m, ClosureMode::Extensional).unwrap().axioms().extensive.holds());
                }
            }
        }
    }
}

#[test]
fn rule_backed_maps_on_large_grounds() {
    let m = gl(ChainKind::Godel, 5);
    let g = ground(6, &m);
    assert!(!g.is_materializable());
    let d = InteriorMap::discrete(&g);
    assert!(!d.is_tabulated());
    assert!(matches!(d.is_idempotent(), Err(InteriorError::GroundTooLarge(_))));
    let least = InteriorMap::least(&g);
    let j = join_interiors(&[d.clone(), least.clone()]).unwrap();
    let u = g.fuzzy_set(&["1/4", "1", "0", "1/2", "3/4", "1"]).unwrap();
    assert_eq!(j.apply(&u), u);
    assert_eq!(meet_interiors(&[d, least]).unwrap().apply(&u), g.bottom());
    let bad: Rule = {
        let gg = g.clone();
        Arc::new(move |u: &FuzzySet| literal_trivial(&gg, u))
    };
    assert!(matches!(InteriorMap::from_rule(g, bad), Err(InteriorError::Axiom(AxiomViolation::Contraction { .. }))));
}
