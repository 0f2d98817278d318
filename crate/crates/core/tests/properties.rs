use std::sync::Arc;

use actalab_core::axioms::{emit_axioms, first_failure};
use actalab_core::conditions::{check_condition, is_violation, Condition, Instance, Witness};
use actalab_core::congruence::{congruence_closure, quotient_act};
use actalab_core::flatness::{check_pwf, check_wf};
use actalab_core::tensor::TossingSearch;
use actalab_core::zoo;
use actalab_core::{Act, FiniteMonoid, PairSubact, RightIdeal, Side, TensorProduct};
use proptest::prelude::*;

fn zoo_monoid() -> impl Strategy<Value = Arc<FiniteMonoid>> {
    (0..zoo::ZOO_SET.len()).prop_map(|i| Arc::new(zoo::ZOO_SET[i].build().unwrap()))
}

/// `k` disjoint copies of the regular act, as a carrier of pairs `(copy, x)`.
fn copies(m: &Arc<FiniteMonoid>, side: Side, k: usize) -> Act {
    let n = m.len();
    let names = (0..k * n).map(|i| format!("{}_{}", i / n, m.element_name(i % n))).collect();
    let action = m
        .elements()
        .map(|s| {
            (0..k * n)
                .map(|i| {
                    let (copy, x) = (i / n, i % n);
                    let y = match side {
                        Side::Left => m.mul(s, x),
                        Side::Right => m.mul(x, s),
                    };
                    copy * n + y
                })
                .collect()
        })
        .collect();
    Act::new(m.clone(), side, names, action).unwrap()
}

/// Every finite act generated by `k` elements is such a quotient.
fn quotient_of_copies(side: Side) -> impl Strategy<Value = Act> {
    (zoo_monoid(), 1usize..=2)
        .prop_flat_map(move |(m, k)| {
            let size = m.len() * k;
            (Just(m), Just(k), prop::collection::vec((0..size, 0..size), 0..4))
        })
        .prop_map(move |(m, k, seeds)| {
            let free = copies(&m, side, k);
            let rho = congruence_closure(&free, &seeds);
            quotient_act(&free, &rho).0
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn quotients_are_acts_and_the_projection_is_a_morphism(side in prop_oneof![Just(Side::Left), Just(Side::Right)], seed in 0usize..1000) {
        let m = Arc::new(zoo::ZOO_SET[seed % zoo::ZOO_SET.len()].build().unwrap());
        let free = copies(&m, side, 2);
        let n = free.len();
        let seeds = [(seed % n, (seed / 7) % n)];
        let rho = congruence_closure(&free, &seeds);
        prop_assert!(rho.is_compatible(&free));
        prop_assert!(rho.related(seeds[0].0, seeds[0].1));
        let (q, projection) = quotient_act(&free, &rho);
        prop_assert!(projection.is_morphism());
        prop_assert_eq!(q.len(), rho.block_count());
        let rows: Vec<Vec<usize>> = m.elements().map(|s| q.row(s).to_vec()).collect();
        prop_assert!(Act::new(m.clone(), side, q.names().to_vec(), rows).is_ok());
    }

    #[test]
    fn tensor_classes_match_tossing_search(a in quotient_of_copies(Side::Right), pick in 0usize..64) {
        let m = a.monoid_arc().clone();
        let b = copies(&m, Side::Left, 1);
        let t = TensorProduct::new(&a, &b).unwrap();
        let source = (pick % a.len(), (pick / 3) % b.len());
        let search = TossingSearch::new(&a, &b, source).unwrap();
        for x in a.elements() {
            for y in b.elements() {
                let equal = t.equal(source.0, source.1, x, y).unwrap();
                match search.tossing_to((x, y)) {
                    Some(tossing) => prop_assert!(equal && tossing.validate(&a, &b)),
                    None => prop_assert!(!equal),
                }
            }
        }
    }

    #[test]
    fn equational_checks_agree_with_instance_brute_force(b in quotient_of_copies(Side::Left)) {
        let m = b.monoid();
        for condition in Condition::INTERPOLATION {
            let report = check_condition(&b, condition);
            let any_violation = m.elements().any(|s| m.elements().any(|t| b.elements().any(|a| {
                b.elements().any(|y| is_violation(&b, condition, Instance { s, t, a, b: y }))
            })));
            prop_assert_eq!(report.holds(), !any_violation, "{}", condition);
            if let Some(Witness::Instance { instance, .. }) = report.witness {
                prop_assert!(is_violation(&b, condition, instance));
            }
        }
    }

    #[test]
    fn axioms_agree_with_checks(b in quotient_of_copies(Side::Left)) {
        for class in [Condition::TorsionFree, Condition::P, Condition::E, Condition::Ep, Condition::W, Condition::Pwp] {
            let axioms = emit_axioms(b.monoid(), class);
            prop_assert_eq!(first_failure(&b, &axioms).is_none(), check_condition(&b, class).holds(), "{}", class);
        }
    }

    #[test]
    fn weak_flatness_splits(b in quotient_of_copies(Side::Left)) {
        let wf = check_wf(&b).holds();
        let pwf = check_pwf(&b).holds();
        let w = check_condition(&b, Condition::W).holds();
        prop_assert_eq!(wf, pwf && w);
    }

    #[test]
    fn solution_sets_are_symmetric_and_regenerated(m in zoo_monoid(), s in 0usize..8, t in 0usize..8) {
        let (s, t) = (s % m.len(), t % m.len());
        let forward = m.solutions(s, t);
        let swapped: std::collections::BTreeSet<_> = m.solutions(t, s).pairs.iter().map(|&(u, v)| (v, u)).collect();
        prop_assert_eq!(&forward.pairs, &swapped);
        prop_assert_eq!(m.equalizer(s, t), m.equalizer(t, s));
        prop_assert!(forward.is_closed(&m));

        let gens = forward.min_generators(&m);
        prop_assert_eq!(&PairSubact::generated_by(&m, gens.as_slice()).pairs, &forward.pairs);
        // dropping any generator loses something
        for skip in 0..gens.len() {
            let rest: Vec<_> = gens.as_slice().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &g)| g).collect();
            prop_assert_ne!(&PairSubact::generated_by(&m, &rest).pairs, &forward.pairs);
        }

        let ideal = m.ideal_intersection(s, t);
        let igens = ideal.min_generators(&m);
        prop_assert_eq!(&RightIdeal::generated_by(&m, igens.as_slice()).members, &ideal.members);
        for u in ideal.members.iter() {
            prop_assert!(m.principal_right_ideal(s).contains(*u) && m.principal_right_ideal(t).contains(*u));
        }
    }
}
