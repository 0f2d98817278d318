//! Replacement skeletons: for an act in one of the axiomatisable classes,
//! every tossing over `S` and `B` of a fixed trigger shape can be traded for
//! a tossing whose skeleton comes from a finite list computed from `S` alone.
//!
//! | class | trigger hypothesis | endpoints            | replacement skeletons            |
//! |-------|--------------------|----------------------|----------------------------------|
//! | P     | `sa = tb`          | `(s, a)`, `(t, b)`   | `(u, v)`, generators of R(s,t)   |
//! | E     | `sa = ta`          | `(s, a)`, `(t, a)`   | `(u, u)`, generators of r(s,t)   |
//! | EP    | `sa = ta`          | `(s, a)`, `(t, a)`   | `(u, v)`, generators of R(s,t)   |
//! | W     | `sa = tb`          | `(s, a)`, `(t, b)`   | `(1, s, u, u, t, 1)`, generators of sS ∩ tS |
//! | PWP   | `ta = tb`          | `(t, a)`, `(t, b)`   | `(u, v)`, generators of R(t,t)   |

use alloc::vec::Vec;
use core::fmt;

use crate::act::{Act, Side};
use crate::axioms::GeneratorData;
use crate::conditions::{check_condition, Condition};
use crate::monoid::FiniteMonoid;
use crate::tensor::{tossing_with_skeleton, Skeleton, Tossing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementSet {
    pub class: Condition,
    pub s: usize,
    pub t: usize,
    /// The shape being replaced: `(1, s, t, 1)`.
    pub trigger: Skeleton,
    pub skeletons: Vec<Skeleton>,
    pub generators: GeneratorData,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplacementError {
    /// Only P, E, EP, W and PWP have replacement sets.
    Unsupported(Condition),
    /// The PWP trigger needs `s = t`.
    NeedsEqualPair,
    /// The act is not in the class, so the corollary says nothing.
    Inapplicable(Condition),
    NotLeftAct,
}

impl fmt::Display for ReplacementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplacementError::Unsupported(c) => write!(f, "no replacement skeletons for condition {c}"),
            ReplacementError::NeedsEqualPair => write!(f, "the pwp trigger needs s = t"),
            ReplacementError::Inapplicable(c) => write!(f, "act does not satisfy condition {c}; replacement is inapplicable"),
            ReplacementError::NotLeftAct => write!(f, "replacement is stated for left acts"),
        }
    }
}

impl core::error::Error for ReplacementError {}

fn sk(entries: Vec<usize>) -> Skeleton {
    Skeleton::new(entries).expect("even and non-empty")
}

pub fn replacement_skeletons(
    m: &FiniteMonoid,
    s: usize,
    t: usize,
    class: Condition,
) -> Result<ReplacementSet, ReplacementError> {
    let e = m.identity();
    let (skeletons, generators) = match class {
        Condition::P | Condition::Ep => {
            let gens = m.solutions(s, t).min_generators(m).as_slice().to_vec();
            (gens.iter().map(|&(u, v)| sk(alloc::vec![u, v])).collect(), GeneratorData::Pairs(gens))
        }
        Condition::Pwp => {
            if s != t {
                return Err(ReplacementError::NeedsEqualPair);
            }
            let gens = m.solutions(t, t).min_generators(m).as_slice().to_vec();
            (gens.iter().map(|&(u, v)| sk(alloc::vec![u, v])).collect(), GeneratorData::Pairs(gens))
        }
        Condition::E => {
            let gens = m.equalizer(s, t).min_generators(m).as_slice().to_vec();
            (gens.iter().map(|&u| sk(alloc::vec![u, u])).collect(), GeneratorData::Elements(gens))
        }
        Condition::W => {
            let gens = m.ideal_intersection(s, t).min_generators(m).as_slice().to_vec();
            (
                gens.iter().map(|&u| sk(alloc::vec![e, s, u, u, t, e])).collect(),
                GeneratorData::Elements(gens),
            )
        }
        other => return Err(ReplacementError::Unsupported(other)),
    };
    Ok(ReplacementSet {
        class,
        s,
        t,
        trigger: sk(alloc::vec![e, s, t, e]),
        skeletons,
        generators,
    })
}

impl ReplacementSet {
    /// Membership and shape of every skeleton, re-checked by multiplication.
    pub fn is_sound(&self, m: &FiniteMonoid) -> bool {
        let (s, t, e) = (self.s, self.t, m.identity());
        self.skeletons.iter().all(|k| {
            let x = k.entries();
            match self.class {
                Condition::P | Condition::Ep => x.len() == 2 && m.mul(s, x[0]) == m.mul(t, x[1]),
                Condition::Pwp => x.len() == 2 && m.mul(t, x[0]) == m.mul(t, x[1]),
                Condition::E => x.len() == 2 && x[0] == x[1] && m.mul(s, x[0]) == m.mul(t, x[0]),
                Condition::W => {
                    x.len() == 6
                        && [x[0], x[1], x[4], x[5]] == [e, s, t, e]
                        && x[2] == x[3]
                        && m.principal_right_ideal(s).contains(x[2])
                        && m.principal_right_ideal(t).contains(x[2])
                }
                _ => false,
            }
        })
    }

    /// The trigger endpoints `(start, end)` for act elements `a, b`, if
    /// `(a, b)` is a trigger instance in `b_act`.
    pub fn trigger_instance(&self, b_act: &Act, a: usize, b: usize) -> Option<((usize, usize), (usize, usize))> {
        let (s, t) = (self.s, self.t);
        match self.class {
            Condition::P | Condition::W => (b_act.apply(s, a) == b_act.apply(t, b)).then_some(((s, a), (t, b))),
            Condition::E | Condition::Ep => {
                (a == b && b_act.apply(s, a) == b_act.apply(t, a)).then_some(((s, a), (t, a)))
            }
            Condition::Pwp => (b_act.apply(t, a) == b_act.apply(t, b)).then_some(((t, a), (t, b))),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replaced {
    pub a: usize,
    pub b: usize,
    /// Index into the replacement set's skeletons.
    pub skeleton: usize,
    pub tossing: Tossing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementReport {
    pub set: ReplacementSet,
    pub replaced: Vec<Replaced>,
    /// A trigger instance no replacement skeleton handles. Never expected.
    pub unreplaced: Option<(usize, usize)>,
}

impl ReplacementReport {
    pub fn succeeded(&self) -> bool {
        self.unreplaced.is_none()
    }
}

/// Finds, for every trigger instance in `b_act`, a replacement skeleton and
/// a validated tossing over `S` and `B` with that skeleton.
pub fn verify_replacement(
    b_act: &Act,
    s: usize,
    t: usize,
    class: Condition,
) -> Result<ReplacementReport, ReplacementError> {
    if b_act.side() != Side::Left {
        return Err(ReplacementError::NotLeftAct);
    }
    let m = b_act.monoid();
    let set = replacement_skeletons(m, s, t, class)?;
    if !check_condition(b_act, class).holds() {
        return Err(ReplacementError::Inapplicable(class));
    }
    Ok(replace_all(b_act, set))
}

/// The search behind [`verify_replacement`], for callers that already know
/// `b_act` lies in the class.
pub fn replace_all(b_act: &Act, set: ReplacementSet) -> ReplacementReport {
    let class = set.class;
    let s = set.s;
    let regular = Act::regular(b_act.monoid_arc().clone(), Side::Right);
    let mut report = ReplacementReport {
        set,
        replaced: Vec::new(),
        unreplaced: None,
    };
    for a in b_act.elements() {
        for b in b_act.elements() {
            let Some((start, end)) = report.set.trigger_instance(b_act, a, b) else {
                continue;
            };
            let found = report.set.skeletons.iter().enumerate().find_map(|(i, k)| {
                let tossing = tossing_with_skeleton(&regular, b_act, k, start, end)?;
                if !tossing.validate(&regular, b_act) {
                    return None;
                }
                if class == Condition::W {
                    // sa = tb = u d, checked directly as well
                    let u = k.s(1);
                    let target = b_act.apply(s, a);
                    if !b_act.elements().any(|d| b_act.apply(u, d) == target) {
                        return None;
                    }
                }
                Some(Replaced {
                    a,
                    b,
                    skeleton: i,
                    tossing,
                })
            });
            match found {
                Some(r) => report.replaced.push(r),
                None => {
                    report.unreplaced = Some((a, b));
                    return report;
                }
            }
        }
    }
    report
}
