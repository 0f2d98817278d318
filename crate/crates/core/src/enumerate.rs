//! Exhaustive enumeration of finite acts.
//!
//! Action tables are filled cell by cell (rows of non-identity elements in
//! index order, carrier elements within a row) and every law instance whose
//! cells are all known is checked after each assignment. Tables come out in
//! lexicographic order, carrier sizes ascending. Carriers are labelled
//! `c0, c1, …`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::act::{Act, Side};
use crate::monoid::FiniteMonoid;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumOptions {
    /// Keep only the lexicographically least table of each isomorphism class.
    pub up_to_iso: bool,
}

/// All acts with carrier sizes `1..=max_size`.
pub fn enumerate_acts(
    monoid: Arc<FiniteMonoid>,
    side: Side,
    max_size: usize,
    options: EnumOptions,
) -> impl Iterator<Item = Act> {
    (1..=max_size).flat_map(move |n| ActEnumerator::new(monoid.clone(), side, n, options))
}

/// All acts with exactly `size` carrier elements.
pub fn acts_of_size(monoid: Arc<FiniteMonoid>, side: Side, size: usize, options: EnumOptions) -> ActEnumerator {
    ActEnumerator::new(monoid, side, size, options)
}

/// Streams the acts of one carrier size.
#[derive(Debug, Clone)]
pub struct ActEnumerator {
    monoid: Arc<FiniteMonoid>,
    side: Side,
    size: usize,
    options: EnumOptions,
    names: Vec<String>,
    cells: Vec<usize>,
    table: Vec<usize>,
    // cells below this position are fixed by a shard prefix
    floor: usize,
    fresh: bool,
    exhausted: bool,
}

impl ActEnumerator {
    pub fn new(monoid: Arc<FiniteMonoid>, side: Side, size: usize, options: EnumOptions) -> Self {
        let n = size;
        let e = monoid.identity();
        let mut table = alloc::vec![UNSET; monoid.len() * n];
        for a in 0..n {
            table[e * n + a] = a;
        }
        let cells = monoid
            .elements()
            .filter(|&s| s != e)
            .flat_map(|s| (0..n).map(move |a| s * n + a))
            .collect();
        ActEnumerator {
            names: (0..n).map(|i| format!("c{i}")).collect(),
            monoid,
            side,
            size,
            options,
            cells,
            table,
            floor: 0,
            fresh: true,
            exhausted: size == 0,
        }
    }

    /// The consistent rows for the first non-identity element; each one
    /// seeds an independent shard via [`ActEnumerator::shard`].
    pub fn first_row_shards(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let width = n.min(self.cells.len());
        let mut probe = self.clone();
        probe.cells.truncate(width);
        let mut rows = Vec::new();
        while probe.advance() {
            rows.push(probe.cells.iter().map(|&c| probe.table[c]).collect());
        }
        rows
    }

    /// Restricts the enumeration to tables whose first non-identity row is
    /// `row`. Returns `None` if the row breaks a law on its own.
    pub fn shard(mut self, row: &[usize]) -> Option<Self> {
        if row.len() != self.size.min(self.cells.len()) || row.iter().any(|&v| v >= self.size) {
            return None;
        }
        for (i, &v) in row.iter().enumerate() {
            self.table[self.cells[i]] = v;
        }
        if !self.consistent() {
            return None;
        }
        self.floor = row.len();
        Some(self)
    }

    fn consistent(&self) -> bool {
        let m = &*self.monoid;
        let n = self.size;
        let t = &self.table;
        for p in m.elements() {
            for q in m.elements() {
                let pq = m.mul(p, q);
                for x in 0..n {
                    let (first, second) = match self.side {
                        Side::Left => (q, p),
                        Side::Right => (p, q),
                    };
                    let y = t[first * n + x];
                    if y == UNSET {
                        continue;
                    }
                    let z = t[second * n + y];
                    let w = t[pq * n + x];
                    if z != UNSET && w != UNSET && z != w {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        let len = self.cells.len();
        let mut resume = !self.fresh;
        let mut i = if self.fresh { self.floor } else { len };
        self.fresh = false;
        if resume {
            if len == self.floor {
                self.exhausted = true;
                return false;
            }
            i -= 1;
        }
        loop {
            if i == len {
                return true;
            }
            let cell = self.cells[i];
            let start = if resume { self.table[cell] + 1 } else { 0 };
            resume = false;
            let mut found = false;
            for v in start..self.size {
                self.table[cell] = v;
                if self.consistent() {
                    found = true;
                    break;
                }
            }
            if found {
                i += 1;
            } else {
                self.table[cell] = UNSET;
                if i == self.floor {
                    self.exhausted = true;
                    return false;
                }
                i -= 1;
                resume = true;
            }
        }
    }

    fn is_canonical(&self) -> bool {
        let n = self.size;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut relabelled = alloc::vec![0; self.table.len()];
        loop {
            for (cell, &v) in self.table.iter().enumerate() {
                let (s, a) = (cell / n, cell % n);
                relabelled[s * n + perm[a]] = perm[v];
            }
            if relabelled < self.table {
                return false;
            }
            if !next_permutation(&mut perm) {
                return true;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Iterator for ActEnumerator {
    type Item = Act;

    fn next(&mut self) -> Option<Act> {
        while self.advance() {
            if self.options.up_to_iso && !self.is_canonical() {
                continue;
            }
            return Some(Act::from_parts(
                self.monoid.clone(),
                self.side,
                self.names.clone(),
                self.table.clone(),
            ));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use alloc::collections::BTreeSet;

    fn count(m: &FiniteMonoid, side: Side, n: usize) -> usize {
        acts_of_size(Arc::new(m.clone()), side, n, EnumOptions::default()).count()
    }

    // Oracle: try every table and keep those passing full validation.
    fn brute_force(m: &FiniteMonoid, side: Side, n: usize) -> BTreeSet<Vec<usize>> {
        let k = m.len();
        let cells = k * n;
        let mut out = BTreeSet::new();
        let total = n.pow(cells as u32);
        for code in 0..total {
            let mut c = code;
            let mut action = alloc::vec![alloc::vec![0; n]; k];
            for s in 0..k {
                for a in 0..n {
                    action[s][a] = c % n;
                    c /= n;
                }
            }
            let names = (0..n).map(|i| format!("c{i}")).collect();
            if let Ok(act) = Act::new(Arc::new(m.clone()), side, names, action) {
                out.insert(act.flat_table().to_vec());
            }
        }
        out
    }

    #[test]
    fn trivial_monoid_has_one_act_per_size() {
        let m = zoo::trivial();
        for n in 1..5 {
            assert_eq!(count(&m, Side::Left, n), 1);
        }
    }

    #[test]
    fn z2_on_two_points() {
        assert_eq!(count(&zoo::cyclic_group(2), Side::Left, 2), 2);
    }

    #[test]
    fn size_one_is_unique() {
        for m in zoo::zoo_set() {
            assert_eq!(count(&m, Side::Left, 1), 1);
            assert_eq!(count(&m, Side::Right, 1), 1);
        }
    }

    #[test]
    fn matches_brute_force() {
        for m in [zoo::cyclic_group(2), zoo::inverse_omega_chain(2), zoo::null_adjoined(2)] {
            for side in [Side::Left, Side::Right] {
                for n in 1..=3 {
                    let got: Vec<Vec<usize>> = acts_of_size(Arc::new(m.clone()), side, n, EnumOptions::default())
                        .map(|a| a.flat_table().to_vec())
                        .collect();
                    let mut sorted = got.clone();
                    sorted.sort();
                    assert_eq!(got, sorted, "deterministic lexicographic order");
                    let expected = brute_force(&m, side, n);
                    assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expected, "{} {side:?} {n}", m.name());
                }
            }
        }
    }

    #[test]
    fn every_enumerated_act_validates() {
        for m in zoo::zoo_set() {
            let m = Arc::new(m);
            for act in enumerate_acts(m.clone(), Side::Left, 3, EnumOptions::default()) {
                let action = m.elements().map(|s| act.row(s).to_vec()).collect();
                assert!(Act::new(m.clone(), Side::Left, act.names().to_vec(), action).is_ok());
            }
        }
    }

    #[test]
    fn shards_partition_the_stream() {
        let m = Arc::new(zoo::nat_min_adjoined(3));
        let all: Vec<Act> = acts_of_size(m.clone(), Side::Left, 3, EnumOptions::default()).collect();
        let base = acts_of_size(m.clone(), Side::Left, 3, EnumOptions::default());
        let mut joined = Vec::new();
        for row in base.first_row_shards() {
            joined.extend(base.clone().shard(&row).unwrap());
        }
        assert_eq!(joined, all);
    }

    #[test]
    fn iso_pruning_keeps_one_per_class() {
        let m = Arc::new(zoo::cyclic_group(2));
        // Z2 on 3 points: identity or one of three transpositions; two classes
        let raw = acts_of_size(m.clone(), Side::Left, 3, EnumOptions::default()).count();
        let pruned = acts_of_size(m, Side::Left, 3, EnumOptions { up_to_iso: true }).count();
        assert_eq!(raw, 4);
        assert_eq!(pruned, 2);
    }
}
