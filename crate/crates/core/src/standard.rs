//! The standard tossing attached to a skeleton: the finitely presented right
//! act `F/ρ`, where `F` is free on `x = x1, x2, …, x(m+1) = x'` and `ρ` is
//! generated by `(x_i s_i, x_(i+1) t_i)`, together with the morphism it
//! induces into any right act where the same chain equations are witnessed.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::act::Act;
use crate::congruence::{congruence_closure, quotient_act, ActCongruence, ActMorphism};
use crate::monoid::FiniteMonoid;
use crate::tensor::Skeleton;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTossing {
    pub skeleton: Skeleton,
    /// `F` before the quotient.
    pub free: Act,
    pub congruence: ActCongruence,
    /// `F/ρ`.
    pub act: Act,
    /// The classes `[x1], …, [x(m+1)]`.
    pub handles: Vec<usize>,
}

impl StandardTossing {
    pub fn first(&self) -> usize {
        self.handles[0]
    }

    pub fn last(&self) -> usize {
        self.handles[self.handles.len() - 1]
    }

    /// The carrier of `[x]S ∪ [x']S`.
    pub fn endpoint_subact(&self) -> BTreeSet<usize> {
        self.act.subact_generated(&[self.first(), self.last()])
    }
}

pub fn standard_tossing_act(monoid: Arc<FiniteMonoid>, skeleton: &Skeleton) -> StandardTossing {
    let m = skeleton.len();
    let n = monoid.len();
    let free = Act::free_right(monoid.clone(), m + 1);
    let seeds: Vec<(usize, usize)> = (0..m)
        .map(|i| (i * n + skeleton.s(i), (i + 1) * n + skeleton.t(i)))
        .collect();
    let congruence = congruence_closure(&free, &seeds);
    let (act, _) = quotient_act(&free, &congruence);
    let e = monoid.identity();
    let handles = (0..=m).map(|i| congruence.block_of(i * n + e)).collect();
    StandardTossing {
        skeleton: skeleton.clone(),
        free,
        congruence,
        act,
        handles,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessesInvalid {
    /// Expected `m + 1` column entries.
    WrongLength(usize),
    OutOfRange(usize),
    /// `a_i s_i != a_(i+1) t_i` at this zero-based row.
    ChainBreaks(usize),
    SideOrMonoidMismatch,
}

impl fmt::Display for WitnessesInvalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessesInvalid::WrongLength(n) => write!(f, "expected skeleton length + 1 witnesses, got {n}"),
            WitnessesInvalid::OutOfRange(a) => write!(f, "witness {a} is not in the target act"),
            WitnessesInvalid::ChainBreaks(i) => write!(f, "chain equation {} fails", i + 1),
            WitnessesInvalid::SideOrMonoidMismatch => write!(f, "target must be a right act over the same monoid"),
        }
    }
}

impl core::error::Error for WitnessesInvalid {}

/// Given `a = a1, a2, …, a(m+1) = a'` in a right act with
/// `a_i s_i = a_(i+1) t_i`, the morphism `F/ρ → target` sending `[x_i]` to
/// `a_i`. It is defined on `F` by `x_i·s ↦ a_i·s`, checked to be constant on
/// `ρ`-classes, and then read off on class representatives.
pub fn induced_morphism(
    standard: &StandardTossing,
    target: &Act,
    column: &[usize],
) -> Result<ActMorphism, WitnessesInvalid> {
    let sk = &standard.skeleton;
    let m = sk.len();
    if target.side() != standard.act.side() || !target.same_monoid(&standard.act) {
        return Err(WitnessesInvalid::SideOrMonoidMismatch);
    }
    if column.len() != m + 1 {
        return Err(WitnessesInvalid::WrongLength(column.len()));
    }
    if let Some(&bad) = column.iter().find(|&&a| a >= target.len()) {
        return Err(WitnessesInvalid::OutOfRange(bad));
    }
    if let Some(i) = (0..m).find(|&i| target.apply(sk.s(i), column[i]) != target.apply(sk.t(i), column[i + 1])) {
        return Err(WitnessesInvalid::ChainBreaks(i));
    }
    let n = target.monoid().len();
    let on_free: Vec<usize> = standard
        .free
        .elements()
        .map(|w| target.apply(w % n, column[w / n]))
        .collect();
    let blocks = standard.congruence.blocks();
    for block in &blocks {
        // ρ ⊆ ker ψ; cannot fail once the chain equations hold
        if block.iter().any(|&w| on_free[w] != on_free[block[0]]) {
            return Err(WitnessesInvalid::ChainBreaks(m));
        }
    }
    Ok(ActMorphism {
        source: standard.act.clone(),
        target: target.clone(),
        map: blocks.iter().map(|block| on_free[block[0]]).collect(),
    })
}
