//! Generating sets of finite sets closed under a right monoid action.
//!
//! For an action-closed set `X` over a finite monoid, `x` is generated by `y`
//! when `x ∈ y·S`. This is a preorder; its maximal classes are exactly the
//! classes nothing outside them can reach, so any generating set must meet
//! every maximal class and one representative per maximal class suffices.
//! Picking the lowest-ordered member of each maximal class gives a
//! deterministic minimum-cardinality generating set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

/// Either the structure is empty or it is generated by the listed elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generators<T> {
    Empty,
    Finite(Vec<T>),
}

impl<T> Generators<T> {
    pub fn is_empty(&self) -> bool {
        matches!(self, Generators::Empty)
    }

    /// Number of generators; zero for the empty structure.
    pub fn len(&self) -> usize {
        match self {
            Generators::Empty => 0,
            Generators::Finite(v) => v.len(),
        }
    }

    pub fn as_slice(&self) -> &[T] {
        match self {
            Generators::Empty => &[],
            Generators::Finite(v) => v,
        }
    }
}

/// Minimum generating set of `elements` (assumed closed under `act`) where
/// `act(x, s)` is the right action of monoid element `s` on `x` and the monoid
/// has `monoid_len` elements.
pub fn minimum_generators<T, F>(elements: &BTreeSet<T>, monoid_len: usize, act: F) -> Generators<T>
where
    T: Ord + Copy,
    F: Fn(T, usize) -> T,
{
    if elements.is_empty() {
        return Generators::Empty;
    }
    let items: Vec<T> = elements.iter().copied().collect();
    let index: BTreeMap<T, usize> = items.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = items.len();

    // reach[y][x]: x ∈ y·S
    let mut reach = alloc::vec![false; n * n];
    for (y, &item) in items.iter().enumerate() {
        for s in 0..monoid_len {
            let x = index[&act(item, s)];
            reach[y * n + x] = true;
        }
    }

    let mut generators = Vec::new();
    for y in 0..n {
        let maximal = (0..n).all(|z| !reach[z * n + y] || reach[y * n + z]);
        if !maximal {
            continue;
        }
        // lowest member of the class
        let lowest = (0..n)
            .find(|&z| reach[z * n + y] && reach[y * n + z])
            .unwrap_or(y);
        if lowest == y {
            generators.push(items[y]);
        }
    }
    Generators::Finite(generators)
}

/// Smallest action-closed set containing `seeds`.
pub fn closure<T, F>(seeds: &[T], monoid_len: usize, act: F) -> BTreeSet<T>
where
    T: Ord + Copy,
    F: Fn(T, usize) -> T,
{
    let mut out = BTreeSet::new();
    for &seed in seeds {
        for s in 0..monoid_len {
            out.insert(act(seed, s));
        }
    }
    out
}
