use std::collections::BTreeSet;

use super::*;
use crate::interior::check_table;
use crate::powerset::{Code, Ground};

fn by_label(b: &SearchBounds, label: &str, n: usize) -> Ground {
    let basis = basis_catalog(b).into_iter().find(|c| c.label() == Some(label)).unwrap();
    Ground::numbered(n, basis)
}

/// Generate-and-filter in code order with pairwise rejection of partial tables.
fn oracle(g: &Ground) -> BTreeSet<Vec<Code>> {
    let idx = g.index().unwrap().clone();
    let n = idx.size();
    let mut out = BTreeSet::new();
    fn rec(idx: &crate::powerset::PowersetIndex, t: &mut Vec<Code>, out: &mut BTreeSet<Vec<Code>>, g: &Ground) {
        let k = t.len();
        if k == idx.size() {
            if check_table(g, t).unwrap().holds() {
                out.insert(t.clone());
            }
            return;
        }
        for w in idx.codes() {
            if !idx.leq(w, k as Code) {
                continue;
            }
            let ok = (0..k).all(|j| {
                (!idx.leq(j as Code, k as Code) || idx.leq(t[j], w))
                    && (!idx.leq(k as Code, j as Code) || idx.leq(w, t[j]))
            });
            if ok {
                t.push(w);
                rec(idx, t, out, g);
                t.pop();
            }
        }
    }
    let mut t = Vec::with_capacity(n);
    rec(&idx, &mut t, &mut out, g);
    out
}

#[test]
fn interior_counts_match_oracle() {
    let b = SearchBounds::default();
    for (label, pts, expect) in [("C2", 1, 1), ("G3", 1, 2), ("Ł3", 1, 2), ("C2", 2, 4), ("G3", 2, 400), ("Ł3", 2, 400)]
    {
        let g = by_label(&b, label, pts);
        let got: Vec<Vec<Code>> =
            enumerate_interior_maps(&g, &b).unwrap().map(|m| m.table().unwrap().to_vec()).collect();
        let set: BTreeSet<Vec<Code>> = got.iter().cloned().collect();
        assert_eq!(set.len(), got.len(), "duplicates for {label}/{pts}");
        assert_eq!(set, oracle(&g), "{label}/{pts}");
        assert_eq!(got.len(), expect, "{label}/{pts}");
    }
}

#[test]
fn bounds_reject_large_operator_spaces() {
    let b = SearchBounds { max_lattice: 4, ..SearchBounds::default() };
    let g = by_label(&b, "G4", 2);
    assert!(matches!(enumerate_interior_maps(&g, &b), Err(SearchError::BoundsExceeded(_))));
    let g1 = by_label(&b, "G4", 1);
    // i(a) in {0,a}, i(b) in [i(a), b]
    assert_eq!(enumerate_interior_maps(&g1, &b).unwrap().count(), 5);
}

#[test]
fn catalog_and_grounds() {
    let b = SearchBounds::default();
    let labels: Vec<String> = basis_catalog(&b).iter().map(|c| c.display_name()).collect();
    assert_eq!(labels, ["C2", "G3", "Ł3"]);
    assert_eq!(grounds(&b).len(), 6);
    let ext = SearchBounds { family: BasisFamily::Extended, max_lattice: 4, ..b };
    let labels: Vec<String> = basis_catalog(&ext).iter().filter_map(|c| c.label().map(String::from)).collect();
    assert_eq!(labels, ["C2", "G3", "Ł3", "T3", "G4", "Ł4", "D4", "T4"]);
}

#[test]
fn morphism_counts() {
    let b = SearchBounds::default();
    let g3 = by_label(&b, "G3", 2);
    assert_eq!(morphisms(&g3, &g3).len(), 12);
    let c2 = by_label(&b, "C2", 1);
    // (X,G3) -> (Y,C2): φᵒᵖ: C2 -> G3 must be 0->0, 1->1
    assert_eq!(morphisms(&g3, &c2).len(), 1);
    // (Y,C2) -> (X,G3): φᵒᵖ: G3 -> C2 sends 1/2 to 0 or 1
    assert_eq!(morphisms(&c2, &g3).len(), 2 * 2);
    let l3 = by_label(&b, "Ł3", 1);
    // φᵒᵖ: G3 -> Ł3 needs φ(1/2) = φ(1/2) ⊗ φ(1/2), so 1/2 is excluded
    assert_eq!(morphisms(&l3, &by_label(&b, "G3", 1)).len(), 2);
}

#[test]
fn bounds_validation() {
    assert!(SearchBounds::default().validate().is_ok());
    assert!(SearchBounds { max_points: 0, ..SearchBounds::default() }.validate().is_err());
    assert!(SearchBounds { max_lattice: 1, ..SearchBounds::default() }.validate().is_err());
}

fn small() -> SearchBounds {
    SearchBounds { max_points: 1, ..SearchBounds::default() }
}

#[test]
fn property_names_round_trip() {
    for p in Property::ALL {
        assert_eq!(p.name().parse::<Property>().unwrap(), p);
    }
    assert!(matches!("nope".parse::<Property>(), Err(SearchError::UnknownProperty(_))));
}

#[test]
fn trivial_literal_counterexample_is_first_three_element_chain() {
    let r = search(Property::TrivialLiteral, &SearchBounds::default()).unwrap();
    match r.witness.as_ref().unwrap() {
        WitnessDoc::Candidate { ground, u, image } => {
            assert_eq!(ground.points.len(), 1);
            assert_eq!(u, &vec!["1/2".to_string()]);
            assert_eq!(image, &vec!["1".to_string()]);
        }
        w => panic!("unexpected witness {w:?}"),
    }
    assert_eq!(r.instances, 2);
}

#[test]
fn expected_verdicts_on_one_point() {
    for p in Property::ALL {
        let r = search(p, &small()).unwrap();
        match p.expectation() {
            Expectation::Holds => assert!(r.holds(), "{p}: {:?}", r.witness),
            Expectation::Counterexample => assert!(!r.holds(), "{p}"),
            Expectation::Measured => {}
        }
        assert!(r.instances > 0, "{p}");
    }
}

#[test]
fn search_is_deterministic() {
    let b = small();
    for p in [Property::LiteralMeetInitiality, Property::InitialLiftOpen, Property::OperatorLattice] {
        let a = search(p, &b).unwrap();
        let c = search(p, &b).unwrap();
        assert_eq!(a, c);
        assert_eq!(a.bundle(&b).to_json(), c.bundle(&b).to_json());
    }
}

#[test]
fn witnesses_replay_after_json_round_trip() {
    let b = SearchBounds::default();
    for p in [Property::TrivialLiteral, Property::LiteralMeetInitiality, Property::InitialLiftOpen] {
        let bundle = search(p, &b).unwrap().bundle(&b);
        assert_eq!(bundle.status, Status::Fail);
        let back = WitnessBundle::from_json(&bundle.to_json()).unwrap();
        assert_eq!(back, bundle);
        assert!(!replay(&back).unwrap().holds(), "{p}");
    }
}

#[test]
fn summary_bundles_do_not_replay() {
    let b = small();
    let bundle = search(Property::MeetInterchange, &b).unwrap().bundle(&b);
    assert!(bundle.witness.is_none());
    assert!(matches!(replay(&bundle), Err(SearchError::MalformedBundle(_))));
}

#[test]
fn mismatched_witness_is_malformed() {
    let b = SearchBounds::default();
    let mut bundle = search(Property::TrivialLiteral, &b).unwrap().bundle(&b);
    bundle.property = "initiality".into();
    assert!(matches!(replay(&bundle), Err(SearchError::MalformedBundle(_))));
}

#[test]
fn bound_overrides() {
    let mut b = SearchBounds::default();
    b.apply_overrides("max-x=1, max-l=4,budget=1.5s,max-tables=1e6,family=extended,max-members=1").unwrap();
    assert_eq!((b.max_points, b.max_lattice, b.max_source_members), (1, 4, 1));
    assert_eq!(b.budget, Some(std::time::Duration::from_millis(1500)));
    assert_eq!(b.family, BasisFamily::Extended);
    assert_eq!(b.max_operator_tables, 1e6);
    assert!(b.clone().apply_overrides("max-x").is_err());
    assert!(b.clone().apply_overrides("colour=red").is_err());
    assert!(b.clone().apply_overrides("budget=-3").is_err());
    assert_eq!(parse_duration("2m"), Some(std::time::Duration::from_secs(120)));
}

#[test]
fn tiny_budget_is_reported() {
    let b = SearchBounds { budget: Some(std::time::Duration::from_nanos(1)), ..SearchBounds::default() };
    std::thread::sleep(std::time::Duration::from_millis(1));
    assert!(matches!(search(Property::ContinuityComposition, &b), Err(SearchError::BudgetExhausted { .. })));
}
