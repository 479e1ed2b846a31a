use std::sync::Arc;

use super::*;
use crate::lattice::Elem;
use crate::monoid::{builtin_chain, ChainKind};
use crate::powerset::validate_ground_morphism;
use crate::search::{all_interior_maps, grounds, morphisms, SearchBounds};

fn g3(n: usize) -> Ground {
    Ground::numbered(n, Arc::new(builtin_chain(ChainKind::Godel, 3).unwrap().into_cqml()))
}

fn id_phi(n: usize) -> Vec<Elem> {
    (0..n as u16).map(Elem).collect()
}

#[test]
fn continuity_examples() {
    let x = g3(1);
    let id = GroundMorphism::identity(&x);
    let disc = VbSpace::discrete(&x);
    let least = VbSpace::least(&x);
    assert!(is_continuous(&id, &disc, &disc).unwrap().holds());
    assert!(is_continuous(&id, &least, &least).unwrap().holds());
    match is_continuous(&id, &least, &disc).unwrap() {
        Outcome::Fails(v) => assert_eq!(x.render(&v), "(1/2)"),
        Outcome::Holds => panic!(),
    }
    match is_open_morphism(&id, &disc, &least).unwrap() {
        Outcome::Fails(v) => assert_eq!(x.render(&v), "(1/2)"),
        Outcome::Holds => panic!(),
    }
    assert!(is_open_morphism(&id, &least, &least).unwrap().holds());
    let y = g3(2);
    assert!(matches!(is_continuous(&id, &VbSpace::discrete(&y), &disc), Err(ContinuityError::GroundMismatch(_))));
}

#[test]
fn initial_interior_examples() {
    let x = g3(2);
    let y = g3(1);
    let f = validate_ground_morphism(&x, &y, vec![0, 0], id_phi(3)).unwrap();
    assert_eq!(initial_interior(&f, &VbSpace::least(&y)).unwrap(), InteriorMap::least(&x));
    let id = GroundMorphism::identity(&x);
    let b = SearchBounds::default();
    for i in all_interior_maps(&x, &b).unwrap().into_iter().step_by(37) {
        assert_eq!(initial_interior(&id, &VbSpace::new(i.clone())).unwrap(), i);
    }
    // discrete target: î = back ∘ right_adjoint, below the identity
    let hat = initial_interior(&f, &VbSpace::discrete(&y)).unwrap();
    for (u, iu) in hat.rows().unwrap() {
        assert_eq!(iu, f.backward(&f.right_adjoint(&u).unwrap()).unwrap());
        assert!(x.leq(&iu, &u));
    }
}

/// g continuous from (X, i_X) ⟺ i_X ≥ initial_interior(g, target).
#[test]
fn continuity_characterization_brute_force() {
    let b = SearchBounds::default();
    let gs = grounds(&b);
    let mut checked = 0;
    for x in &gs {
        let ix_all = all_interior_maps(x, &b).unwrap();
        for y in &gs {
            if x.powerset_size() * y.powerset_size() > 81 * 9 {
                continue;
            }
            let iy_all = all_interior_maps(y, &b).unwrap();
            for g in morphisms(x, y) {
                for iy in &iy_all {
                    let t = VbSpace::new(iy.clone());
                    let hat = initial_interior(&g, &t).unwrap();
                    for ix in &ix_all {
                        let cont = is_continuous(&g, &VbSpace::new(ix.clone()), &t).unwrap().holds();
                        assert_eq!(cont, hat.leq(ix).unwrap());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10_000, "{checked}");
}

#[test]
fn largest_open_interior_brute_force() {
    let b = SearchBounds::default();
    let gs = grounds(&b);
    for x in &gs {
        let ix_all = all_interior_maps(x, &b).unwrap();
        for y in &gs {
            if x.powerset_size() * y.powerset_size() > 81 * 9 {
                continue;
            }
            let iy_all = all_interior_maps(y, &b).unwrap();
            for g in morphisms(x, y) {
                for iy in &iy_all {
                    let t = VbSpace::new(iy.clone());
                    let big = largest_open_interior(&g, &t).unwrap();
                    for ix in &ix_all {
                        let open = is_open_morphism(&g, &VbSpace::new(ix.clone()), &t).unwrap().holds();
                        let below = big.as_ref().is_some_and(|m| ix.leq(m).unwrap());
                        assert_eq!(open, below);
                    }
                    if let Some(m) = big {
                        assert!(is_open_morphism(&g, &VbSpace::new(m), &t).unwrap().holds());
                    }
                }
            }
        }
    }
}

#[test]
fn meet_of_initials_is_not_initial_but_join_is() {
    let x = g3(1);
    let id = GroundMorphism::identity(&x);
    let s =
        StructuredSource::new(x.clone(), vec![(id.clone(), VbSpace::discrete(&x)), (id.clone(), VbSpace::least(&x))])
            .unwrap();
    let meet = meet_of_initials(&s).unwrap();
    assert_eq!(meet, InteriorMap::least(&x));
    assert!(!is_continuous(&id, &VbSpace::new(meet), &VbSpace::discrete(&x)).unwrap().holds());
    let join = initial_from_source(&s).unwrap();
    assert_eq!(join, InteriorMap::discrete(&x));
    for (g, t) in s.members() {
        assert!(is_continuous(g, &VbSpace::new(join.clone()), t).unwrap().holds());
    }
    let empty = StructuredSource::new(x.clone(), vec![]).unwrap();
    assert_eq!(initial_from_source(&empty).unwrap(), InteriorMap::least(&x));
    assert_eq!(meet_of_initials(&empty).unwrap(), InteriorMap::discrete(&x));
}

fn family<'a>(
    gs: &'a [Ground],
    b: &'a SearchBounds,
    strategy: Strategy,
    interiors: &'a dyn Fn(&Ground) -> Result<Vec<InteriorMap>, ContinuityError>,
) -> TestFamily<'a> {
    let _ = b;
    TestFamily { grounds: gs, morphisms: &|z, x| morphisms(z, x), interiors, strategy }
}

#[test]
fn verify_initiality_strategies_agree() {
    let b = SearchBounds::default();
    let gs = grounds(&b);
    let small: Vec<Ground> = gs.iter().filter(|g| g.powerset_size() <= 9).cloned().collect();
    let interiors = |z: &Ground| all_interior_maps(z, &b).map_err(|e| ContinuityError::BoundsTooLarge(e.to_string()));
    let x = g3(1);
    let y = g3(2);
    let mut n = 0;
    for f in morphisms(&x, &y).into_iter().take(4) {
        for iy in all_interior_maps(&y, &b).unwrap().into_iter().step_by(53) {
            let s = StructuredSource::new(x.clone(), vec![(f.clone(), VbSpace::new(iy))]).unwrap();
            let lift = initial_from_source(&s).unwrap();
            for strat in [Strategy::Exhaustive, Strategy::Principal] {
                let r = verify_initiality(&s, &lift, &family(&small, &b, strat, &interiors)).unwrap();
                assert!(r.outcome.holds());
            }
            // the discrete lift fails whenever the source forces something smaller
            let disc = InteriorMap::discrete(&x);
            let ex = verify_initiality(&s, &disc, &family(&small, &b, Strategy::Exhaustive, &interiors)).unwrap();
            let pr = verify_initiality(&s, &disc, &family(&small, &b, Strategy::Principal, &interiors)).unwrap();
            assert_eq!(ex.outcome.holds(), lift == disc);
            assert_eq!(pr.outcome.holds(), lift == disc);
            if let Outcome::Fails(w) = ex.outcome {
                assert_eq!(w.direction, InitialityDirection::If);
            }
            n += 1;
        }
    }
    assert!(n >= 8);
    let s = StructuredSource::new(x.clone(), vec![]).unwrap();
    let r = verify_initiality(&s, &InteriorMap::least(&x), &family(&[], &b, Strategy::Exhaustive, &interiors)).unwrap();
    assert!(r.outcome.holds());
    assert_eq!(r.instances, 0);
}

#[test]
fn preservation_and_open_preimages() {
    let b = SearchBounds::default();
    let x = g3(2);
    let y = g3(1);
    let f = validate_ground_morphism(&x, &y, vec![0, 0], id_phi(3)).unwrap();
    for iy in all_interior_maps(&y, &b).unwrap() {
        let t = VbSpace::new(iy);
        assert!(preserves_idempotency_check(&f, &t).unwrap().holds());
        assert!(preserves_full_productivity_check(&f, &t).unwrap().holds());
        let src = VbSpace::new(initial_interior(&f, &t).unwrap());
        for v in t.interior().open_sets().unwrap() {
            assert!(preimage_of_open_is_open(&f, &src, &t, &v).unwrap().holds());
        }
    }
    let non_idem =
        all_interior_maps(&x, &b).unwrap().into_iter().find(|i| !i.is_idempotent().unwrap().holds()).unwrap();
    let id = GroundMorphism::identity(&x);
    assert!(matches!(
        preserves_idempotency_check(&id, &VbSpace::new(non_idem)),
        Err(ContinuityError::PropertyPreconditionFailed(_))
    ));
    let err = preimage_of_open_is_open(&id, &VbSpace::least(&x), &VbSpace::discrete(&x), &x.top());
    assert!(matches!(err, Err(ContinuityError::NotContinuous(_))));
}

#[test]
fn composition_and_adjoint_functoriality() {
    let b = SearchBounds::default();
    let gs = grounds(&b);
    for a in &gs {
        for bb in &gs {
            for c in &gs {
                if a.len() + bb.len() + c.len() > 5 {
                    continue;
                }
                for g1 in morphisms(a, bb) {
                    for g2 in morphisms(bb, c) {
                        let h = compose_morphisms(&g2, &g1).unwrap();
                        validate_ground_morphism(a, c, h.map().to_vec(), h.phi_op().to_vec()).unwrap();
                        let (b1, b2, bh) =
                            (g1.backward_table().unwrap(), g2.backward_table().unwrap(), h.backward_table().unwrap());
                        for v in 0..bh.len() {
                            assert_eq!(bh[v], b1[b2[v] as usize]);
                        }
                        let (r1, r2, rh) = (
                            g1.right_adjoint_table().unwrap(),
                            g2.right_adjoint_table().unwrap(),
                            h.right_adjoint_table().unwrap(),
                        );
                        for u in 0..rh.len() {
                            assert_eq!(rh[u], r2[r1[u] as usize]);
                        }
                    }
                }
            }
        }
    }
}
