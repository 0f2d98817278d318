//! Flatness-type conditions: injectivity of `K ⊗ B → S ⊗ B` for principal
//! and arbitrary right ideals `K`, and a bounded refutation search for
//! flatness through standard tossings.
//!
//! The bounded search only looks at skeletons up to a fixed length, so a
//! clean run is reported as [`Verdict::PassesUpToBound`], never as a proof.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::act::{Act, Side};
use crate::conditions::{Condition, ConditionReport, Verdict, Witness};
use crate::monoid::FiniteMonoid;
use crate::standard::standard_tossing_act;
use crate::tensor::{eval_gamma, Skeleton, TensorProduct};

fn report(condition: Condition, verdict: Verdict, witness: Option<Witness>) -> ConditionReport {
    ConditionReport {
        condition,
        verdict,
        witness,
        interpolants: Vec::new(),
    }
}

/// Checks that `K ⊗ B → S ⊗ B` is injective. On failure returns two pairs of
/// `K × B` (with `K` elements given as monoid elements) that are merged in
/// `S ⊗ B` but not in `K ⊗ B`.
fn ideal_embedding_clash(
    b: &Act,
    regular: &Act,
    full: &TensorProduct,
    ideal: &BTreeSet<usize>,
) -> Option<((usize, usize), (usize, usize))> {
    let (k, embed) = regular.restrict(ideal).expect("right ideals are closed");
    let sub = TensorProduct::new(&k, b).expect("sides and monoid agree");
    // the S ⊗ B class reached by each K ⊗ B class, with a representative pair
    let mut image: Vec<Option<(usize, (usize, usize))>> = alloc::vec![None; full.class_count()];
    let mut seen_class = alloc::vec![false; sub.class_count()];
    for x in k.elements() {
        for y in b.elements() {
            let c = sub.class_of(x, y);
            if seen_class[c] {
                continue;
            }
            seen_class[c] = true;
            let target = full.class_of(embed[x], y);
            match image[target] {
                None => image[target] = Some((c, (embed[x], y))),
                Some((other, pair)) if other != c => return Some((pair, (embed[x], y))),
                Some(_) => {}
            }
        }
    }
    None
}

fn check_ideals(b: &Act, condition: Condition, ideals: Vec<(Vec<usize>, BTreeSet<usize>)>) -> ConditionReport {
    assert_eq!(b.side(), Side::Left, "flatness is stated for left acts");
    let regular = Act::regular(b.monoid_arc().clone(), Side::Right);
    let full = TensorProduct::new(&regular, b).expect("sides and monoid agree");
    for (generators, ideal) in ideals {
        if let Some((first, second)) = ideal_embedding_clash(b, &regular, &full, &ideal) {
            let witness = Witness::Ideal {
                generators,
                first,
                second,
            };
            return report(condition, Verdict::Fails, Some(witness));
        }
    }
    report(condition, Verdict::Holds, None)
}

/// Principal weak flatness: `aS ⊗ B → S ⊗ B` is injective for every `a`.
pub fn check_pwf(b: &Act) -> ConditionReport {
    let m = b.monoid();
    let ideals = m
        .elements()
        .map(|a| (alloc::vec![a], m.principal_right_ideal(a).members))
        .collect();
    check_ideals(b, Condition::PrincipallyWeaklyFlat, ideals)
}

/// Weak flatness: `K ⊗ B → S ⊗ B` is injective for every non-empty right
/// ideal `K`.
pub fn check_wf(b: &Act) -> ConditionReport {
    let m = b.monoid();
    let ideals = m
        .right_ideals()
        .into_iter()
        .map(|k| {
            let gens = k.min_generators(m).as_slice().to_vec();
            (gens, k.members)
        })
        .collect();
    check_ideals(b, Condition::WeaklyFlat, ideals)
}

/// The part of a standard tossing that the bounded flatness check needs:
/// the subact `[x]S ∪ [x']S` and the positions of `[x]` and `[x']` in it.
#[derive(Debug, Clone)]
struct Probe {
    skeleton: Skeleton,
    endpoints: Act,
    first: usize,
    last: usize,
}

/// Standard tossings for every skeleton up to a length bound, built once
/// and reused across many acts over the same monoid.
#[derive(Debug, Clone)]
pub struct FlatnessProbe {
    monoid: Arc<FiniteMonoid>,
    bound: usize,
    probes: Vec<Probe>,
}

impl FlatnessProbe {
    pub fn new(monoid: Arc<FiniteMonoid>, bound: usize) -> Self {
        let probes = Skeleton::all_up_to(monoid.len(), bound)
            .map(|sk| {
                let st = standard_tossing_act(monoid.clone(), &sk);
                let (endpoints, embed) = st.act.restrict(&st.endpoint_subact()).expect("generated subacts are closed");
                let position = |class: usize| embed.iter().position(|&c| c == class).expect("handle lies in the subact");
                Probe {
                    first: position(st.first()),
                    last: position(st.last()),
                    skeleton: sk,
                    endpoints,
                }
            })
            .collect();
        FlatnessProbe { monoid, bound, probes }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    /// For every probed skeleton and every `b, b'` with `γ(b, b')` in `B`,
    /// requires `([x], b)` and `([x'], b')` to meet in `([x]S ∪ [x']S) ⊗ B`.
    pub fn check(&self, b: &Act) -> ConditionReport {
        assert_eq!(b.side(), Side::Left, "flatness is stated for left acts");
        assert!(b.monoid() == &*self.monoid, "act is over a different monoid");
        for probe in &self.probes {
            let mut tensor = None;
            for y in b.elements() {
                for y2 in b.elements() {
                    if eval_gamma(b, &probe.skeleton, y, y2).is_none() {
                        continue;
                    }
                    let t = tensor.get_or_insert_with(|| {
                        TensorProduct::new(&probe.endpoints, b).expect("sides and monoid agree")
                    });
                    if t.class_of(probe.first, y) != t.class_of(probe.last, y2) {
                        let witness = Witness::Skeleton {
                            skeleton: probe.skeleton.clone(),
                            b: y,
                            b2: y2,
                        };
                        return report(Condition::Flat, Verdict::Fails, Some(witness));
                    }
                }
            }
        }
        report(Condition::Flat, Verdict::PassesUpToBound, None)
    }
}

/// Bounded flatness refutation over all skeletons of length `1..=bound`.
pub fn check_flat_bounded(b: &Act, bound: usize) -> ConditionReport {
    FlatnessProbe::new(b.monoid_arc().clone(), bound).check(b)
}
