//! Finite monoids given by a multiplication table, together with the right
//! ideals and pair subacts whose finite generation decides axiomatisability:
//! `sS`, `sS ∩ tS`, the equalizer ideal `{u : su = tu}` and the solution set
//! `{(u, v) : su = tv}`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::MonoidError;
use crate::generation::{self, Generators};

/// A finite monoid. Elements are indices `0..len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    name: String,
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
}

impl FiniteMonoid {
    /// Validates an index-based table. `table[i][j]` is the index of `i·j`.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
    ) -> Result<Self, MonoidError> {
        let n = names.len();
        if n == 0 {
            return Err(MonoidError::Empty);
        }
        let mut seen = BTreeSet::new();
        for label in &names {
            if !seen.insert(label.as_str()) {
                return Err(MonoidError::DuplicateName(label.clone()));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(MonoidError::NotTotal);
        }
        if identity >= n {
            return Err(MonoidError::NotTotal);
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = FiniteMonoid {
            name: name.into(),
            names,
            table: flat,
            identity,
        };
        if let Some((i, j, k)) = m.first_non_associative() {
            return Err(MonoidError::NonAssociative(i, j, k));
        }
        if let Some(i) = (0..n).find(|&i| m.mul(identity, i) != i || m.mul(i, identity) != i) {
            return Err(MonoidError::BadIdentity(i));
        }
        Ok(m)
    }

    /// Validates a table given by labels, as read from a file.
    pub fn from_labels(
        name: impl Into<String>,
        names: Vec<String>,
        table: &[Vec<String>],
        identity: &str,
    ) -> Result<Self, MonoidError> {
        let lookup = |label: &str| names.iter().position(|n| n == label);
        let id = lookup(identity).ok_or_else(|| MonoidError::UnknownIdentity(identity.into()))?;
        let mut rows = Vec::with_capacity(table.len());
        for row in table {
            let mut out = Vec::with_capacity(row.len());
            for label in row {
                out.push(lookup(label).ok_or(MonoidError::NotTotal)?);
            }
            rows.push(out);
        }
        FiniteMonoid::new(name, names, rows, id)
    }

    fn first_non_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.names.len() + j]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    /// Product of a word, evaluated left to right.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity, |acc, &s| self.mul(acc, s))
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.len()
    }

    /// `true` iff `sa = sb` forces `a = b`.
    pub fn is_left_cancellable(&self, s: usize) -> bool {
        let mut seen = alloc::vec![false; self.len()];
        for a in self.elements() {
            let p = self.mul(s, a);
            if seen[p] {
                return false;
            }
            seen[p] = true;
        }
        true
    }

    pub fn left_cancellable(&self) -> Vec<usize> {
        self.elements().filter(|&s| self.is_left_cancellable(s)).collect()
    }

    /// `aS`; always contains `a`.
    pub fn principal_right_ideal(&self, a: usize) -> RightIdeal {
        RightIdeal {
            members: self.elements().map(|s| self.mul(a, s)).collect(),
        }
    }

    /// `sS ∩ tS`, possibly empty.
    pub fn ideal_intersection(&self, s: usize, t: usize) -> RightIdeal {
        let a = self.principal_right_ideal(s);
        let b = self.principal_right_ideal(t);
        RightIdeal {
            members: a.members.intersection(&b.members).copied().collect(),
        }
    }

    /// The equalizer ideal `{u : su = tu}`, possibly empty.
    pub fn equalizer(&self, s: usize, t: usize) -> RightIdeal {
        RightIdeal {
            members: self
                .elements()
                .filter(|&u| self.mul(s, u) == self.mul(t, u))
                .collect(),
        }
    }

    /// The solution set `{(u, v) : su = tv}`, a subact of `S × S` or empty.
    pub fn solutions(&self, s: usize, t: usize) -> PairSubact {
        let mut pairs = BTreeSet::new();
        for u in self.elements() {
            let su = self.mul(s, u);
            for v in self.elements() {
                if su == self.mul(t, v) {
                    pairs.insert((u, v));
                }
            }
        }
        PairSubact { pairs }
    }

    /// Every non-empty right ideal of the monoid, as unions of principal
    /// right ideals, without duplicates, in a deterministic order.
    pub fn right_ideals(&self) -> Vec<RightIdeal> {
        let principals: Vec<BTreeSet<usize>> = self
            .elements()
            .map(|a| self.principal_right_ideal(a).members)
            .collect();
        let mut found: BTreeSet<BTreeSet<usize>> = principals.iter().cloned().collect();
        // close under pairwise union until stable
        loop {
            let current: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for ideal in &current {
                for p in &principals {
                    if !p.is_subset(ideal) {
                        let u: BTreeSet<usize> = ideal.union(p).copied().collect();
                        grew |= found.insert(u);
                    }
                }
            }
            if !grew {
                break;
            }
        }
        found.into_iter().map(|members| RightIdeal { members }).collect()
    }

    /// Two-sided inverse of `s` inside the whole monoid, if any.
    pub fn inverse(&self, s: usize) -> Option<usize> {
        let e = self.identity;
        self.elements().find(|&u| self.mul(s, u) == e && self.mul(u, s) == e)
    }

    pub fn is_group(&self) -> bool {
        self.elements().all(|s| self.inverse(s).is_some())
    }
}

/// A set of monoid elements closed under right multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RightIdeal {
    pub members: BTreeSet<usize>,
}

impl RightIdeal {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.contains(&u)
    }

    pub fn is_closed(&self, m: &FiniteMonoid) -> bool {
        self.members
            .iter()
            .all(|&u| m.elements().all(|s| self.members.contains(&m.mul(u, s))))
    }

    pub fn min_generators(&self, m: &FiniteMonoid) -> Generators<usize> {
        generation::minimum_generators(&self.members, m.len(), |u, s| m.mul(u, s))
    }

    /// `gens·S`.
    pub fn generated_by(m: &FiniteMonoid, gens: &[usize]) -> RightIdeal {
        RightIdeal {
            members: generation::closure(gens, m.len(), |u, s| m.mul(u, s)),
        }
    }
}

/// A set of pairs of monoid elements closed under `(u, v)·s = (us, vs)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairSubact {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl PairSubact {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.pairs.contains(&(u, v))
    }

    pub fn is_closed(&self, m: &FiniteMonoid) -> bool {
        self.pairs.iter().all(|&(u, v)| {
            m.elements()
                .all(|s| self.pairs.contains(&(m.mul(u, s), m.mul(v, s))))
        })
    }

    pub fn min_generators(&self, m: &FiniteMonoid) -> Generators<(usize, usize)> {
        generation::minimum_generators(&self.pairs, m.len(), |(u, v), s| (m.mul(u, s), m.mul(v, s)))
    }

    /// `gens·S`.
    pub fn generated_by(m: &FiniteMonoid, gens: &[(usize, usize)]) -> PairSubact {
        PairSubact {
            pairs: generation::closure(gens, m.len(), |(u, v), s| (m.mul(u, s), m.mul(v, s))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use alloc::string::ToString;
    use alloc::vec;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn trivial_table_is_a_monoid() {
        let m = FiniteMonoid::new("triv", names(&["e"]), vec![vec![0]], 0).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.is_group());
    }

    #[test]
    fn z2_is_a_monoid() {
        let m = FiniteMonoid::new("z2", names(&["1", "g"]), vec![vec![0, 1], vec![1, 0]], 0).unwrap();
        assert_eq!(m.mul(1, 1), 0);
    }

    // Oracle: every triple of the table below, checked by hand in index order;
    // (0,0,1): (0·0)·1 = 1·1 = 0 but 0·(0·1) = 0·0 = 1.
    #[test]
    fn non_associative_table_names_first_triple() {
        let err = FiniteMonoid::new("bad", names(&["a", "b"]), vec![vec![1, 0], vec![0, 0]], 0)
            .unwrap_err();
        let table = [[1usize, 0], [0, 0]];
        let mut first = None;
        'outer: for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        first = Some((i, j, k));
                        break 'outer;
                    }
                }
            }
        }
        let (i, j, k) = first.unwrap();
        assert_eq!(err, MonoidError::NonAssociative(i, j, k));
    }

    #[test]
    fn bad_identity_and_duplicates() {
        let err = FiniteMonoid::new("m", names(&["a", "b"]), vec![vec![0, 0], vec![0, 0]], 1).unwrap_err();
        assert_eq!(err, MonoidError::BadIdentity(1));
        let err = FiniteMonoid::new("m", names(&["a", "a"]), vec![vec![0, 1], vec![1, 0]], 0).unwrap_err();
        assert_eq!(err, MonoidError::DuplicateName("a".to_string()));
        let err = FiniteMonoid::new("m", names(&["a"]), vec![vec![0, 0]], 0).unwrap_err();
        assert_eq!(err, MonoidError::NotTotal);
    }

    fn set(m: &FiniteMonoid, labels: &[&str]) -> BTreeSet<usize> {
        labels.iter().map(|l| m.index_of(l).unwrap()).collect()
    }

    #[test]
    fn principal_ideals() {
        let g = zoo::cyclic_group(3);
        for a in g.elements() {
            assert_eq!(g.principal_right_ideal(a).len(), 3);
        }
        let n = zoo::null_adjoined(2);
        assert_eq!(n.principal_right_ideal(n.index_of("x1").unwrap()).members, set(&n, &["x1", "0"]));
        let m = zoo::nat_min_adjoined(3);
        assert_eq!(m.principal_right_ideal(m.index_of("2").unwrap()).members, set(&m, &["1", "2"]));
    }

    #[test]
    fn intersections() {
        let g = zoo::cyclic_group(4);
        assert_eq!(g.ideal_intersection(1, 2).len(), 4);
        let n = zoo::null_adjoined(2);
        let (x, z) = (n.index_of("x1").unwrap(), n.index_of("0").unwrap());
        assert_eq!(n.ideal_intersection(x, z).members, set(&n, &["0"]));
        let n3 = zoo::null_adjoined(3);
        let (x1, x2) = (n3.index_of("x1").unwrap(), n3.index_of("x2").unwrap());
        assert_eq!(n3.ideal_intersection(x1, x2).members, set(&n3, &["0"]));
        let m = zoo::nat_min_adjoined(3);
        let (two, three) = (m.index_of("2").unwrap(), m.index_of("3").unwrap());
        assert_eq!(m.ideal_intersection(two, three).members, set(&m, &["1", "2"]));
    }

    #[test]
    fn equalizers() {
        let g = zoo::cyclic_group(2);
        assert!(g.equalizer(0, 1).is_empty());
        for n in 2..5 {
            let m = zoo::null_adjoined(n);
            let t: BTreeSet<usize> = m.elements().filter(|&u| u != m.identity()).collect();
            for s in t.iter().copied() {
                for u in t.iter().copied().filter(|&u| u != s) {
                    assert_eq!(m.equalizer(s, u).members, t);
                }
            }
        }
        let m = zoo::nat_min_adjoined(3);
        let (one, two) = (m.index_of("1").unwrap(), m.index_of("2").unwrap());
        assert_eq!(m.equalizer(one, two).members, set(&m, &["1"]));
    }

    #[test]
    fn solution_sets() {
        let m = zoo::nat_min_adjoined(3);
        let e = m.identity();
        let diag: BTreeSet<(usize, usize)> = m.elements().map(|u| (u, u)).collect();
        assert_eq!(m.solutions(e, e).pairs, diag);

        let g = zoo::cyclic_group(2);
        let expected: BTreeSet<(usize, usize)> = [(1, 0), (0, 1)].into_iter().collect();
        assert_eq!(g.solutions(0, 1).pairs, expected);

        let n = zoo::null_adjoined(2);
        let x = n.index_of("x1").unwrap();
        let e = n.identity();
        let t: Vec<usize> = n.elements().filter(|&u| u != e).collect();
        let mut expected: BTreeSet<(usize, usize)> = BTreeSet::new();
        expected.insert((e, e));
        for &u in &t {
            for &v in &t {
                expected.insert((u, v));
            }
        }
        assert_eq!(n.solutions(x, x).pairs, expected);
    }

    #[test]
    fn null_adjoined_solution_set_generators() {
        let m = zoo::null_adjoined(3);
        let (x1, x2) = (m.index_of("x1").unwrap(), m.index_of("x2").unwrap());
        let r = m.solutions(x1, x2);
        assert_eq!(r.min_generators(&m).len(), 8);
    }

    #[test]
    fn nat_min_solution_set_generator() {
        let m = zoo::nat_min_adjoined(3);
        let (one, two) = (m.index_of("1").unwrap(), m.index_of("2").unwrap());
        let gens = m.solutions(one, two).min_generators(&m);
        assert_eq!(gens, Generators::Finite(vec![(m.identity(), one)]));
    }

    #[test]
    fn left_cancellable_elements() {
        let g = zoo::cyclic_group(3);
        assert!(g.elements().all(|s| g.is_left_cancellable(s)));
        for n in 2..5 {
            let m = zoo::null_adjoined(n);
            assert!(!m.is_left_cancellable(m.index_of("0").unwrap()));
            assert!(m.is_left_cancellable(m.identity()));
        }
    }

    #[test]
    fn right_ideals_are_closed_and_distinct() {
        for m in zoo::zoo_set() {
            let ideals = m.right_ideals();
            for i in &ideals {
                assert!(i.is_closed(&m));
                assert!(!i.is_empty());
            }
            let distinct: BTreeSet<_> = ideals.iter().map(|i| i.members.clone()).collect();
            assert_eq!(distinct.len(), ideals.len());
            // brute force: every closed non-empty subset is listed
            let n = m.len();
            let mut count = 0;
            for mask in 1u32..(1 << n) {
                let members: BTreeSet<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                if (RightIdeal { members }).is_closed(&m) {
                    count += 1;
                }
            }
            assert_eq!(count, ideals.len(), "{}", m.name());
        }
    }
}
