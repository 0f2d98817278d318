//! Act congruences, quotients and S-morphisms.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use crate::act::Act;
use crate::unionfind::UnionFind;

/// A partition of an act's carrier compatible with the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActCongruence {
    // block id per carrier element, numbered by first occurrence
    block_of: Vec<usize>,
    blocks: usize,
}

impl ActCongruence {
    pub fn discrete(n: usize) -> Self {
        ActCongruence {
            block_of: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn block_of(&self, a: usize) -> usize {
        self.block_of[a]
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Blocks as sorted element lists, in block-id order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.blocks];
        for (a, &b) in self.block_of.iter().enumerate() {
            out[b].push(a);
        }
        out
    }

    /// `a ~ b ⇒ s·a ~ s·b` for every `s`.
    pub fn is_compatible(&self, act: &Act) -> bool {
        let blocks = self.blocks();
        blocks.iter().all(|block| {
            act.monoid().elements().all(|s| {
                let first = self.block_of[act.apply(s, block[0])];
                block.iter().all(|&a| self.block_of[act.apply(s, a)] == first)
            })
        })
    }
}

/// The least act congruence containing `seeds`. Each merge schedules the
/// images of the merged pair under every monoid element.
pub fn congruence_closure(act: &Act, seeds: &[(usize, usize)]) -> ActCongruence {
    let mut uf = UnionFind::new(act.len());
    let mut pending: VecDeque<(usize, usize)> = seeds.iter().copied().collect();
    while let Some((a, b)) = pending.pop_front() {
        if uf.union(a, b) {
            for s in act.monoid().elements() {
                pending.push_back((act.apply(s, a), act.apply(s, b)));
            }
        }
    }
    let (block_of, blocks) = uf.canonical_labels();
    ActCongruence { block_of, blocks }
}

/// A map between acts over the same monoid on the same side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActMorphism {
    pub source: Act,
    pub target: Act,
    pub map: Vec<usize>,
}

impl ActMorphism {
    pub fn image(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `(s·a)θ = s·(aθ)` for every `s`, `a` (written on the act's side).
    pub fn is_morphism(&self) -> bool {
        if self.map.len() != self.source.len()
            || self.source.side() != self.target.side()
            || !self.source.same_monoid(&self.target)
            || self.map.iter().any(|&x| x >= self.target.len())
        {
            return false;
        }
        self.source.monoid().elements().all(|s| {
            self.source
                .elements()
                .all(|a| self.map[self.source.apply(s, a)] == self.target.apply(s, self.map[a]))
        })
    }
}

/// The quotient act with its projection. Block labels are `[label]` of the
/// block's lowest element.
pub fn quotient_act(act: &Act, congruence: &ActCongruence) -> (Act, ActMorphism) {
    let blocks = congruence.blocks();
    let names = blocks.iter().map(|b| format!("[{}]", act.name(b[0]))).collect();
    let mut table = Vec::with_capacity(act.monoid().len() * blocks.len());
    for s in act.monoid().elements() {
        for block in &blocks {
            table.push(congruence.block_of(act.apply(s, block[0])));
        }
    }
    let quotient = Act::from_parts(act.monoid_arc().clone(), act.side(), names, table);
    let projection = ActMorphism {
        source: act.clone(),
        target: quotient.clone(),
        map: (0..act.len()).map(|a| congruence.block_of(a)).collect(),
    };
    (quotient, projection)
}
