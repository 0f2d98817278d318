//! Finite left and right S-acts.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::ActError;
use crate::monoid::FiniteMonoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// A finite S-act. `apply(s, a)` is `sa` for a left act and `as` for a right
/// act. The carrier is never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Act {
    monoid: Arc<FiniteMonoid>,
    side: Side,
    names: Vec<String>,
    // table[s * n + a]
    table: Vec<usize>,
}

impl Act {
    /// Validates `action[s][a]` against the identity and compatibility laws.
    pub fn new(
        monoid: Arc<FiniteMonoid>,
        side: Side,
        names: Vec<String>,
        action: Vec<Vec<usize>>,
    ) -> Result<Act, ActError> {
        let n = names.len();
        if n == 0 {
            return Err(ActError::EmptyCarrier);
        }
        let mut seen = BTreeSet::new();
        for label in &names {
            if !seen.insert(label.as_str()) {
                return Err(ActError::DuplicateName(label.clone()));
            }
        }
        if action.len() != monoid.len() || action.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(ActError::NotTotal);
        }
        let act = Act {
            monoid,
            side,
            names,
            table: action.into_iter().flatten().collect(),
        };
        act.check_laws()?;
        Ok(act)
    }

    /// Builds from a flat table already known to satisfy the act laws.
    pub(crate) fn from_parts(monoid: Arc<FiniteMonoid>, side: Side, names: Vec<String>, table: Vec<usize>) -> Act {
        debug_assert_eq!(table.len(), monoid.len() * names.len());
        Act {
            monoid,
            side,
            names,
            table,
        }
    }

    /// Carrier elements are named `c0, c1, …`.
    pub fn from_fn(
        monoid: Arc<FiniteMonoid>,
        side: Side,
        size: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Act, ActError> {
        let names = (0..size).map(|i| format!("c{i}")).collect();
        let action = monoid.elements().map(|s| (0..size).map(|a| f(s, a)).collect()).collect();
        Act::new(monoid, side, names, action)
    }

    fn check_laws(&self) -> Result<(), ActError> {
        let m = &*self.monoid;
        let e = m.identity();
        if let Some(a) = self.elements().find(|&a| self.apply(e, a) != a) {
            return Err(ActError::IdentityLawFail(a));
        }
        for s in m.elements() {
            for t in m.elements() {
                let st = m.mul(s, t);
                for a in self.elements() {
                    let ok = match self.side {
                        Side::Left => self.apply(s, self.apply(t, a)) == self.apply(st, a),
                        Side::Right => self.apply(t, self.apply(s, a)) == self.apply(st, a),
                    };
                    if !ok {
                        return Err(ActError::CompatibilityFail(s, t, a));
                    }
                }
            }
        }
        Ok(())
    }

    /// The monoid acting on itself by multiplication.
    pub fn regular(monoid: Arc<FiniteMonoid>, side: Side) -> Act {
        let names = monoid.element_names().to_vec();
        let n = monoid.len();
        let mut table = Vec::with_capacity(n * n);
        for s in monoid.elements() {
            for a in monoid.elements() {
                table.push(match side {
                    Side::Left => monoid.mul(s, a),
                    Side::Right => monoid.mul(a, s),
                });
            }
        }
        Act::from_parts(monoid, side, names, table)
    }

    /// The one-element act.
    pub fn singleton(monoid: Arc<FiniteMonoid>, side: Side) -> Act {
        let table = alloc::vec![0; monoid.len()];
        Act::from_parts(monoid, side, alloc::vec![String::from("θ")], table)
    }

    /// The free right act on `k` generators: `k` disjoint copies of `S`, with
    /// `(i, s)·t = (i, st)`. Element `(i, s)` has index `i·|S| + s` and label
    /// `x{i+1}#{s}`; the base points are `(i, 1)`.
    pub fn free_right(monoid: Arc<FiniteMonoid>, k: usize) -> Act {
        let n = monoid.len();
        let mut names = Vec::with_capacity(k * n);
        for i in 0..k {
            for s in monoid.elements() {
                names.push(format!("x{}#{}", i + 1, monoid.element_name(s)));
            }
        }
        let mut table = Vec::with_capacity(n * k * n);
        for t in monoid.elements() {
            for i in 0..k {
                for s in monoid.elements() {
                    table.push(i * n + monoid.mul(s, t));
                }
            }
        }
        Act::from_parts(monoid, Side::Right, names, table)
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn monoid_arc(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn same_monoid(&self, other: &Act) -> bool {
        Arc::ptr_eq(&self.monoid, &other.monoid) || *self.monoid == *other.monoid
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    /// `sa` for left acts, `as` for right acts.
    #[inline]
    pub fn apply(&self, s: usize, a: usize) -> usize {
        self.table[s * self.names.len() + a]
    }

    /// The action row of `s`, indexed by carrier element.
    pub fn row(&self, s: usize) -> &[usize] {
        let n = self.names.len();
        &self.table[s * n..(s + 1) * n]
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// The same act with a new carrier labelling.
    pub fn relabelled(mut self, names: Vec<String>) -> Result<Act, ActError> {
        if names.len() != self.names.len() {
            return Err(ActError::NotTotal);
        }
        let mut seen = BTreeSet::new();
        for label in &names {
            if !seen.insert(label.as_str()) {
                return Err(ActError::DuplicateName(label.clone()));
            }
        }
        self.names = names;
        Ok(self)
    }

    /// Smallest action-closed superset of `subset`.
    pub fn subact_generated(&self, subset: &[usize]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &a in subset {
            for s in self.monoid.elements() {
                out.insert(self.apply(s, a));
            }
        }
        out
    }

    pub fn is_closed(&self, subset: &BTreeSet<usize>) -> bool {
        subset
            .iter()
            .all(|&a| self.monoid.elements().all(|s| subset.contains(&self.apply(s, a))))
    }

    /// The subact on a closed subset, with the inclusion map (new index to old).
    /// Returns `None` if the subset is empty or not closed.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> Option<(Act, Vec<usize>)> {
        if subset.is_empty() || !self.is_closed(subset) {
            return None;
        }
        let embed: Vec<usize> = subset.iter().copied().collect();
        let mut position = alloc::vec![usize::MAX; self.len()];
        for (i, &a) in embed.iter().enumerate() {
            position[a] = i;
        }
        let names = embed.iter().map(|&a| self.names[a].clone()).collect();
        let mut table = Vec::with_capacity(self.monoid.len() * embed.len());
        for s in self.monoid.elements() {
            for &a in &embed {
                table.push(position[self.apply(s, a)]);
            }
        }
        Some((Act::from_parts(self.monoid.clone(), self.side, names, table), embed))
    }
}
