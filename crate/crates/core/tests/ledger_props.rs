use floerdim::ledger::*;
use floerdim::triangle::*;
use proptest::prelude::*;

#[test]
fn window_identity_exhaustive() {
    for y in 0..=1000 {
        for g in 0..=50 {
            let w = window(y, g).unwrap();
            assert_eq!(w.i_max - w.i_min, y - 1 + 2 * g);
            assert_eq!(w.tau == 0, y % 2 == 1);
        }
    }
}

#[test]
fn essential_gradings_stay_inside() {
    for g in 0..=4 {
        for q in 1..=6 {
            for y in q + 2 * g..q + 2 * g + 12 {
                let w = window(y, g).unwrap();
                let e = decomposition_windows(q, g, &w).unwrap();
                assert_eq!(e.len() as i64, q);
                for x in &e {
                    assert!(w.i_min + 2 * g <= x.grading && x.grading <= w.i_max - 2 * g);
                    assert_eq!(x.grading, w.i_max - 2 * g - x.index);
                }
                for (i, j) in q_cyclic_pairs(q, g, &w).unwrap() {
                    assert_eq!(i - j, q);
                    assert!(w.i_min + 2 * g <= j && i <= w.i_max - 2 * g);
                }
            }
            let short = window(q + 2 * g - 1, g).unwrap();
            assert!(decomposition_windows(q, g, &short).is_err());
        }
    }
}

#[test]
fn surgery_model_identities() {
    for g in 0..=3i64 {
        for d in 1..=5u64 {
            for seed in 0..6u64 {
                let middle: Vec<Dim> =
                    (0..(2 * g - 1).max(0)).map(|k| Dim::Known((seed * 7 + k as u64 * 3) % 6)).collect();
                for n in 2 * g + 1..=2 * g + 30 {
                    let a = surgery_model(d, g, &middle, n).unwrap();
                    let b = surgery_model(d, g, &middle, n + 1).unwrap();
                    assert_eq!(b.total().0 - a.total().0, d);
                    for i in 0..n - 2 * g {
                        assert_eq!(a.summands[i as usize], b.summands[i as usize + 1]);
                    }
                    let sum: u64 = a.dims().unwrap().gradings.values().sum();
                    assert!(partition_check(&a.dims().unwrap(), sum).ok);
                    if g >= 1 {
                        let mid: u64 = middle.iter().map(|m| if let Dim::Known(v) = m { *v } else { 0 }).sum();
                        assert_eq!(a.total().0, (n - 2 * g + 1) as u64 * d + mid);
                    } else {
                        assert_eq!(a.total().0, n as u64 * d);
                    }
                }
            }
        }
    }
}

#[test]
fn lens_profile() {
    let m = surgery_model(1, 1, &[Dim::Known(1)], 5).unwrap();
    assert!(m.summands.iter().all(|s| *s == Dim::Known(1)));
    assert_eq!(m.total().0, 5);
}

#[test]
fn lemma_goals_are_derived_and_confirmed_by_enumeration() {
    for (q, g, qn) in [(1, 0, 1), (1, 0, 2), (2, 0, 2), (1, 1, 3), (1, 1, 4), (2, 1, 4), (3, 0, 3)] {
        for dir in [Direction::Plus, Direction::Minus] {
            let facts = dimension_lemma(q, g, qn, dir).unwrap();
            let report = triangle_solve(&facts).unwrap();
            assert!(report.contradiction.is_none());
            assert!(report.goals.iter().all(|r| r.status == GoalStatus::Derived), "{q} {g} {qn}: {report:?}");
            let e = brute_force(&facts, 4).unwrap();
            assert!(e.solutions > 0);
            assert!(e.goal_holds.iter().all(|&h| h));
        }
    }
    for (q, g, qn) in [(3, 2, 9), (5, 3, 12), (4, 1, 30)] {
        let report = triangle_solve(&dimension_lemma(q, g, qn, Direction::Plus).unwrap()).unwrap();
        assert!(report.goals.iter().all(|r| r.status == GoalStatus::Derived));
    }
}

#[test]
fn headline_needs_the_vanishing_map() {
    let mut facts = dimension_lemma(1, 1, 3, Direction::Plus).unwrap();
    facts.triangles[2].maps.clear();
    let report = triangle_solve(&facts).unwrap();
    assert_eq!(report.goals[0].status, GoalStatus::Underdetermined);
    assert!(!brute_force(&facts, 4).unwrap().goal_holds[0]);
}

#[test]
fn known_values_propagate() {
    let mut facts = dimension_lemma(2, 1, 4, Direction::Plus).unwrap();
    facts.known.push(Known { object: "delta".into(), grading: 0, value: 3 });
    let report = triangle_solve(&facts).unwrap();
    assert_eq!(report.goals[0].value, Some(3));
    facts.known.push(Known { object: "delta".into(), grading: 0, value: 4 });
    let c = triangle_solve(&facts).unwrap().contradiction.unwrap();
    assert!(c.message.contains("inconsistent"));
}

#[derive(Debug, Clone)]
struct RandomSystem(Facts);

fn random_system() -> impl Strategy<Value = RandomSystem> {
    let object = (0i64..3).prop_map(|len| (0, len));
    let slot = (0usize..3, -1i64..=3, prop_oneof![Just(-1i64), Just(1)]);
    let map = (0usize..3, 0usize..4, 0usize..4, 0u8..3);
    let triangle = (proptest::collection::vec(slot, 3), 1usize..4, proptest::collection::vec(map, 0..3), any::<bool>());
    let known = (0usize..3, 0i64..3, 0u64..4);
    let goal = (0usize..3, 0usize..3, 0i64..3);
    (
        proptest::collection::vec(object, 3),
        proptest::collection::vec(triangle, 1..3),
        proptest::collection::vec(known, 0..3),
        proptest::collection::vec(goal, 1..4),
    )
        .prop_map(|(objs, tris, known, goals)| {
            let name = |i: usize| ["A", "B", "C"][i].to_string();
            let objects =
                objs.iter().enumerate().map(|(i, &(min, max))| ObjectSpec { name: name(i), min, max }).collect();
            let triangles = tris
                .into_iter()
                .map(|(slots, rows, maps, graded)| TriangleFact {
                    label: String::new(),
                    slots: [0, 1, 2].map(|k| Slot {
                        object: name(slots[k].0),
                        start: Some(slots[k].1),
                        step: slots[k].2,
                    }),
                    rows: graded.then_some(rows),
                    maps: maps
                        .into_iter()
                        .map(|(m, a, b, kind)| MapFact {
                            map: m,
                            rows: Some([a.min(b), a.max(b)]),
                            kind: [MapKind::Zero, MapKind::Iso, MapKind::Unknown][kind as usize],
                        })
                        .collect(),
                })
                .collect();
            let known = known
                .into_iter()
                .map(|(o, g, v)| Known { object: name(o), grading: g.min(objs[o].1), value: v })
                .collect();
            let goals = goals
                .into_iter()
                .map(|(a, b, gr)| Goal {
                    label: String::new(),
                    lhs: vec![Term::block(&name(a), gr, gr)],
                    rhs: vec![Term::whole(&name(b))],
                })
                .collect();
            RandomSystem(Facts { objects, known, triangles, goals })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_is_sound(sys in random_system()) {
        let facts = sys.0;
        let report = triangle_solve(&facts).unwrap();
        let e = brute_force(&facts, 4).unwrap();
        if report.contradiction.is_some() {
            prop_assert_eq!(e.solutions, 0);
        } else if e.solutions > 0 {
            for (r, holds) in report.goals.iter().zip(&e.goal_holds) {
                if r.status == GoalStatus::Derived {
                    prop_assert!(*holds, "{}", r.label);
                }
            }
        }
    }

    #[test]
    fn refuted_goals_never_hold(sys in random_system()) {
        let facts = sys.0;
        let report = triangle_solve(&facts).unwrap();
        prop_assume!(report.contradiction.is_none());
        let e = brute_force(&facts, 4).unwrap();
        for (r, met) in report.goals.iter().zip(&e.goal_met) {
            if r.status == GoalStatus::Refuted {
                prop_assert!(!met, "{}", r.label);
            }
        }
    }

    #[test]
    fn window_width(y in 0i64..100_000, g in 0i64..1000) {
        let w = window(y, g).unwrap();
        prop_assert_eq!(w.width(), y + 2 * g);
    }

    #[test]
    fn facts_json_round_trip(sys in random_system()) {
        let text = serde_json::to_string(&sys.0).unwrap();
        prop_assert_eq!(Facts::from_json(&text).unwrap(), sys.0);
    }
}
