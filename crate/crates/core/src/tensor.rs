//! Tensor products `A ⊗ B` of a right act and a left act, tossings (the
//! two-column witness schemes for `a ⊗ b = a' ⊗ b'`) and the chain formulas
//! that split a tossing into its right-act half and its left-act half.
//!
//! A tossing with skeleton `(s1, t1, …, sm, tm)` connecting `(a, b)` to
//! `(a', b')` consists of `a2, …, am ∈ A` and `b1, …, bm ∈ B` with
//!
//! ```text
//!                    b      = s1 b1
//! a  s1 = a2 t1      t1 b1  = s2 b2
//! a2 s2 = a3 t2      t2 b2  = s3 b3
//!       …                   …
//! am sm = a' tm      tm bm  = b'
//! ```

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::act::{Act, Side};
use crate::error::TensorError;
use crate::unionfind::UnionFind;

/// The partition of `A × B` into tensor classes. Pair `(a, b)` has index
/// `a·|B| + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorProduct {
    right_len: usize,
    left_len: usize,
    class_of: Vec<usize>,
    classes: usize,
}

fn check_factors(a: &Act, b: &Act) -> Result<(), TensorError> {
    if a.side() != Side::Right || b.side() != Side::Left {
        return Err(TensorError::SideMismatch);
    }
    if !a.same_monoid(b) {
        return Err(TensorError::MonoidMismatch);
    }
    Ok(())
}

impl TensorProduct {
    pub fn new(a: &Act, b: &Act) -> Result<TensorProduct, TensorError> {
        check_factors(a, b)?;
        let nb = b.len();
        let mut uf = UnionFind::new(a.len() * nb);
        for s in a.monoid().elements() {
            for x in a.elements() {
                let xs = a.apply(s, x);
                for y in b.elements() {
                    uf.union(xs * nb + y, x * nb + b.apply(s, y));
                }
            }
        }
        let (class_of, classes) = uf.canonical_labels();
        Ok(TensorProduct {
            right_len: a.len(),
            left_len: b.len(),
            class_of,
            classes,
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, a: usize, b: usize) -> usize {
        self.class_of[a * self.left_len + b]
    }

    /// `a ⊗ b = a' ⊗ b'`.
    pub fn equal(&self, a: usize, b: usize, a2: usize, b2: usize) -> Result<bool, TensorError> {
        for (x, bound) in [(a, self.right_len), (a2, self.right_len), (b, self.left_len), (b2, self.left_len)] {
            if x >= bound {
                return Err(TensorError::ElementNotFound(x));
            }
        }
        Ok(self.class_of(a, b) == self.class_of(a2, b2))
    }

    /// Pairs grouped by class, in class-id order.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = alloc::vec![Vec::new(); self.classes];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push((i / self.left_len, i % self.left_len));
        }
        out
    }
}

/// `(s1, t1, …, sm, tm)` with `m ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Skeleton(Vec<usize>);

impl Skeleton {
    pub fn new(entries: Vec<usize>) -> Result<Skeleton, TensorError> {
        if entries.is_empty() || !entries.len().is_multiple_of(2) {
            return Err(TensorError::BadSkeleton(entries.len()));
        }
        Ok(Skeleton(entries))
    }

    /// Length `m`: the number of `(s, t)` pairs.
    pub fn len(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `s_{i+1}` (zero-based).
    pub fn s(&self, i: usize) -> usize {
        self.0[2 * i]
    }

    /// `t_{i+1}` (zero-based).
    pub fn t(&self, i: usize) -> usize {
        self.0[2 * i + 1]
    }

    /// Every skeleton of length `m` over a monoid with `order` elements, in
    /// lexicographic order.
    pub fn all_of_length(order: usize, m: usize) -> impl Iterator<Item = Skeleton> {
        let width = 2 * m;
        let total = if m == 0 { 0 } else { order.pow(width as u32) };
        (0..total).map(move |mut code| {
            let mut entries = alloc::vec![0; width];
            for slot in entries.iter_mut().rev() {
                *slot = code % order;
                code /= order;
            }
            Skeleton(entries)
        })
    }

    /// Every skeleton of length `1..=max_len`.
    pub fn all_up_to(order: usize, max_len: usize) -> impl Iterator<Item = Skeleton> {
        (1..=max_len).flat_map(move |m| Skeleton::all_of_length(order, m))
    }
}

/// A fully witnessed tossing. `a_witnesses` holds `a2, …, am` and
/// `b_witnesses` holds `b1, …, bm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tossing {
    pub skeleton: Skeleton,
    pub start: (usize, usize),
    pub end: (usize, usize),
    pub a_witnesses: Vec<usize>,
    pub b_witnesses: Vec<usize>,
}

impl Tossing {
    /// `a, a2, …, am, a'`.
    pub fn a_column(&self) -> Vec<usize> {
        let mut col = alloc::vec![self.start.0];
        col.extend_from_slice(&self.a_witnesses);
        col.push(self.end.0);
        col
    }

    /// Checks all defining equations in `A` (right) and `B` (left).
    pub fn validate(&self, a: &Act, b: &Act) -> bool {
        if check_factors(a, b).is_err() {
            return false;
        }
        let m = self.skeleton.len();
        if self.a_witnesses.len() + 1 != m || self.b_witnesses.len() != m {
            return false;
        }
        let col = self.a_column();
        let bw = &self.b_witnesses;
        let in_range = col.iter().all(|&x| x < a.len())
            && bw.iter().all(|&y| y < b.len())
            && self.start.1 < b.len()
            && self.end.1 < b.len()
            && self.skeleton.entries().iter().all(|&s| s < a.monoid().len());
        if !in_range {
            return false;
        }
        let sk = &self.skeleton;
        if b.apply(sk.s(0), bw[0]) != self.start.1 || b.apply(sk.t(m - 1), bw[m - 1]) != self.end.1 {
            return false;
        }
        (0..m).all(|i| a.apply(sk.s(i), col[i]) == a.apply(sk.t(i), col[i + 1]))
            && (0..m - 1).all(|i| b.apply(sk.t(i), bw[i]) == b.apply(sk.s(i + 1), bw[i + 1]))
    }
}

/// Assembles a tossing from separately found column witnesses.
pub fn tossing_from_witnesses(
    skeleton: Skeleton,
    start: (usize, usize),
    end: (usize, usize),
    a_witnesses: Vec<usize>,
    b_witnesses: Vec<usize>,
) -> Tossing {
    Tossing {
        skeleton,
        start,
        end,
        a_witnesses,
        b_witnesses,
    }
}

#[derive(Debug, Clone, Copy)]
enum Step {
    // (x, s·y) -> (x·s, y)
    Left(usize),
    // (x·t, y) -> (x, t·y)
    Right(usize),
}

/// Breadth-first search over the elementary-step graph on `A × B` from one
/// source pair. Answers tossing queries for every target.
pub struct TossingSearch<'a> {
    a: &'a Act,
    b: &'a Act,
    source: (usize, usize),
    parent: Vec<Option<(usize, Step)>>,
    seen: Vec<bool>,
}

impl<'a> TossingSearch<'a> {
    pub fn new(a: &'a Act, b: &'a Act, source: (usize, usize)) -> Result<Self, TensorError> {
        check_factors(a, b)?;
        if source.0 >= a.len() {
            return Err(TensorError::ElementNotFound(source.0));
        }
        if source.1 >= b.len() {
            return Err(TensorError::ElementNotFound(source.1));
        }
        let (na, nb) = (a.len(), b.len());
        let k = a.monoid().len();
        // preimages: a_pre[s][p] = {x : x·s = p}, b_pre[s][q] = {y : s·y = q}
        let mut a_pre = alloc::vec![Vec::new(); k * na];
        let mut b_pre = alloc::vec![Vec::new(); k * nb];
        for s in 0..k {
            for x in 0..na {
                a_pre[s * na + a.apply(s, x)].push(x);
            }
            for y in 0..nb {
                b_pre[s * nb + b.apply(s, y)].push(y);
            }
        }
        let start = source.0 * nb + source.1;
        let mut parent: Vec<Option<(usize, Step)>> = alloc::vec![None; na * nb];
        let mut seen = alloc::vec![false; na * nb];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            let (p, q) = (node / nb, node % nb);
            for s in 0..k {
                for &y in &b_pre[s * nb + q] {
                    let next = a.apply(s, p) * nb + y;
                    if !seen[next] {
                        seen[next] = true;
                        parent[next] = Some((node, Step::Left(s)));
                        queue.push_back(next);
                    }
                }
                for &x in &a_pre[s * na + p] {
                    let next = x * nb + b.apply(s, q);
                    if !seen[next] {
                        seen[next] = true;
                        parent[next] = Some((node, Step::Right(s)));
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(TossingSearch { a, b, source, parent, seen })
    }

    /// A tossing from the source to `target`, or `None` if the two pairs
    /// lie in different tensor classes.
    pub fn tossing_to(&self, target: (usize, usize)) -> Option<Tossing> {
        let nb = self.b.len();
        if target.0 >= self.a.len() || target.1 >= nb || !self.seen[target.0 * nb + target.1] {
            return None;
        }
        let mut path = Vec::new();
        let mut node = target.0 * nb + target.1;
        while let Some((prev, step)) = self.parent[node] {
            path.push((step, (node / nb, node % nb)));
            node = prev;
        }
        path.reverse();
        Some(self.normalize(&path, target))
    }

    // Lays the step path out in two columns: Left and Right steps must
    // alternate, starting with Left and ending with Right, so identity steps
    // (which leave the pair unchanged) fill the gaps.
    fn normalize(&self, path: &[(Step, (usize, usize))], target: (usize, usize)) -> Tossing {
        let e = self.a.monoid().identity();
        let mut laid: Vec<(Step, (usize, usize))> = Vec::with_capacity(path.len() + 2);
        let mut here = self.source;
        for &(step, next) in path {
            let want_left = laid.len().is_multiple_of(2);
            match (step, want_left) {
                (Step::Left(_), false) => laid.push((Step::Right(e), here)),
                (Step::Right(_), true) => laid.push((Step::Left(e), here)),
                _ => {}
            }
            laid.push((step, next));
            here = next;
        }
        if laid.is_empty() {
            laid.push((Step::Left(e), here));
        }
        if laid.len() % 2 == 1 {
            laid.push((Step::Right(e), here));
        }
        let mut entries = Vec::with_capacity(laid.len());
        let mut a_witnesses = Vec::new();
        let mut b_witnesses = Vec::new();
        for (step, (x, y)) in laid {
            match step {
                Step::Left(s) => {
                    entries.push(s);
                    b_witnesses.push(y);
                }
                Step::Right(t) => {
                    entries.push(t);
                    a_witnesses.push(x);
                }
            }
        }
        // the last Right step lands on a'
        a_witnesses.pop();
        Tossing {
            skeleton: Skeleton(entries),
            start: self.source,
            end: target,
            a_witnesses,
            b_witnesses,
        }
    }
}

/// A tossing connecting `(a, b)` to `(a2, b2)`, if they are tensor-equal.
pub fn find_tossing(a: &Act, b: &Act, start: (usize, usize), end: (usize, usize)) -> Result<Option<Tossing>, TensorError> {
    if end.0 >= a.len() {
        return Err(TensorError::ElementNotFound(end.0));
    }
    if end.1 >= b.len() {
        return Err(TensorError::ElementNotFound(end.1));
    }
    Ok(TossingSearch::new(a, b, start)?.tossing_to(end))
}

/// Witnesses `a2, …, am` for `a s1 = a2 t1, …, am sm = a' tm` in a right act,
/// found by propagating candidate sets left to right.
pub fn eval_delta(a: &Act, sk: &Skeleton, start: usize, end: usize) -> Option<Vec<usize>> {
    debug_assert_eq!(a.side(), Side::Right);
    let n = a.len();
    let m = sk.len();
    // layers[i][x] = predecessor of candidate x for a_{i+2}
    let mut layers: Vec<Vec<Option<usize>>> = Vec::with_capacity(m);
    let mut current = alloc::vec![false; n];
    current[start] = true;
    for i in 0..m - 1 {
        let mut reach: Vec<Option<usize>> = alloc::vec![None; n];
        let mut value_from = alloc::vec![None; n];
        for x in 0..n {
            if current[x] {
                let v = a.apply(sk.s(i), x);
                value_from[v].get_or_insert(x);
            }
        }
        for y in 0..n {
            if let Some(x) = value_from[a.apply(sk.t(i), y)] {
                reach[y] = Some(x);
            }
        }
        current = reach.iter().map(Option::is_some).collect();
        layers.push(reach);
    }
    let target = a.apply(sk.t(m - 1), end);
    let mut last = (0..n).find(|&x| current[x] && a.apply(sk.s(m - 1), x) == target)?;
    let mut witnesses = alloc::vec![0; m - 1];
    for i in (0..m - 1).rev() {
        witnesses[i] = last;
        last = layers[i][last].expect("candidate has a predecessor");
    }
    Some(witnesses)
}

/// Witnesses `b1, …, bm` for `b = s1 b1, ti bi = s(i+1) b(i+1), tm bm = b'`
/// in a left act.
pub fn eval_gamma(b: &Act, sk: &Skeleton, start: usize, end: usize) -> Option<Vec<usize>> {
    debug_assert_eq!(b.side(), Side::Left);
    let n = b.len();
    let m = sk.len();
    let mut layers: Vec<Vec<Option<usize>>> = Vec::with_capacity(m);
    // layer 0: b1 with s1 b1 = b; the predecessor slot is unused
    let first: Vec<Option<usize>> = (0..n)
        .map(|y| (b.apply(sk.s(0), y) == start).then_some(start))
        .collect();
    layers.push(first);
    for i in 1..m {
        let prev = &layers[i - 1];
        let mut value_from = alloc::vec![None; n];
        for y in 0..n {
            if prev[y].is_some() {
                value_from[b.apply(sk.t(i - 1), y)].get_or_insert(y);
            }
        }
        let reach = (0..n).map(|z| value_from[b.apply(sk.s(i), z)]).collect();
        layers.push(reach);
    }
    let mut last = (0..n).find(|&y| layers[m - 1][y].is_some() && b.apply(sk.t(m - 1), y) == end)?;
    let mut witnesses = alloc::vec![0; m];
    for i in (0..m).rev() {
        witnesses[i] = last;
        if i > 0 {
            last = layers[i][last].expect("candidate has a predecessor");
        }
    }
    Some(witnesses)
}

/// Both chain formulas at once: a tossing with skeleton `sk` from `start` to
/// `end`, if one exists.
pub fn tossing_with_skeleton(
    a: &Act,
    b: &Act,
    sk: &Skeleton,
    start: (usize, usize),
    end: (usize, usize),
) -> Option<Tossing> {
    let a_w = eval_delta(a, sk, start.0, end.0)?;
    let b_w = eval_gamma(b, sk, start.1, end.1)?;
    Some(tossing_from_witnesses(sk.clone(), start, end, a_w, b_w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{acts_of_size, EnumOptions};
    use crate::zoo;
    use alloc::sync::Arc;
    use alloc::vec;

    #[test]
    fn trivial_monoid_has_singleton_classes() {
        let m = Arc::new(zoo::trivial());
        let a = Act::from_fn(m.clone(), Side::Right, 3, |_, x| x).unwrap();
        let b = Act::from_fn(m, Side::Left, 2, |_, y| y).unwrap();
        let t = TensorProduct::new(&a, &b).unwrap();
        assert_eq!(t.class_count(), 6);
        assert!(!t.equal(0, 0, 0, 1).unwrap());
        assert_eq!(find_tossing(&a, &b, (0, 0), (0, 1)).unwrap(), None);
    }

    #[test]
    fn regular_right_factor_is_neutral() {
        for m in zoo::zoo_set() {
            let m = Arc::new(m);
            let s = Act::regular(m.clone(), Side::Right);
            let b = Act::regular(m.clone(), Side::Left);
            let t = TensorProduct::new(&s, &b).unwrap();
            assert_eq!(t.class_count(), b.len());
            for x in m.elements() {
                for y in b.elements() {
                    assert!(t.equal(x, y, m.identity(), b.apply(x, y)).unwrap());
                }
            }
        }
    }

    #[test]
    fn singleton_over_z2() {
        let m = Arc::new(zoo::cyclic_group(2));
        let theta = Act::singleton(m.clone(), Side::Right);
        let b = Act::regular(m, Side::Left);
        assert_eq!(TensorProduct::new(&theta, &b).unwrap().class_count(), 1);
    }

    #[test]
    fn side_and_monoid_mismatch() {
        let m = Arc::new(zoo::cyclic_group(2));
        let l = Act::regular(m.clone(), Side::Left);
        let r = Act::regular(m, Side::Right);
        assert_eq!(TensorProduct::new(&l, &r), Err(TensorError::SideMismatch));
        let other = Act::regular(Arc::new(zoo::cyclic_group(3)), Side::Left);
        assert_eq!(TensorProduct::new(&r, &other), Err(TensorError::MonoidMismatch));
        let t = TensorProduct::new(&r, &l).unwrap();
        assert_eq!(t.equal(0, 0, 5, 0), Err(TensorError::ElementNotFound(5)));
    }

    #[test]
    fn length_two_connection_through_the_monoid() {
        // sa = tb in B, A = S: (s, a) and (t, b) are connected with skeleton (1, s, t, 1)
        let m = Arc::new(zoo::nat_min_adjoined(3));
        let a = Act::regular(m.clone(), Side::Right);
        let b = Act::regular(m.clone(), Side::Left);
        let (s, t) = (m.index_of("2").unwrap(), m.index_of("3").unwrap());
        let (x, y) = (m.index_of("3").unwrap(), m.index_of("2").unwrap());
        assert_eq!(b.apply(s, x), b.apply(t, y));
        let e = m.identity();
        let sk = Skeleton::new(vec![e, s, t, e]).unwrap();
        let found = tossing_with_skeleton(&a, &b, &sk, (s, x), (t, y)).unwrap();
        assert!(found.validate(&a, &b));
        assert_eq!(eval_delta(&a, &sk, s, t), Some(vec![e]));
        let bfs = find_tossing(&a, &b, (s, x), (t, y)).unwrap().unwrap();
        assert!(bfs.validate(&a, &b));
    }

    #[test]
    fn length_one_connection() {
        // su = tv, a = uc, b = vc
        let m = Arc::new(zoo::null_adjoined(3));
        let a = Act::regular(m.clone(), Side::Right);
        let b = Act::regular(m.clone(), Side::Left);
        let (x1, x2, zero) = (m.index_of("x1").unwrap(), m.index_of("x2").unwrap(), m.index_of("0").unwrap());
        let (u, v, c) = (x2, x1, m.identity());
        assert_eq!(m.mul(x1, u), m.mul(x2, v));
        let sk = Skeleton::new(vec![u, v]).unwrap();
        let tossing = tossing_with_skeleton(&a, &b, &sk, (x1, m.mul(u, c)), (x2, m.mul(v, c))).unwrap();
        assert_eq!(tossing.b_witnesses, vec![c]);
        assert!(tossing.validate(&a, &b));
        assert_eq!(eval_gamma(&b, &sk, zero, zero), Some(vec![zero]));
    }

    #[test]
    fn identity_tossing_and_corruption() {
        let m = Arc::new(zoo::cyclic_group(3));
        let a = Act::regular(m.clone(), Side::Right);
        let b = Act::regular(m.clone(), Side::Left);
        let e = m.identity();
        let t = tossing_from_witnesses(Skeleton::new(vec![e, e]).unwrap(), (1, 2), (1, 2), vec![], vec![2]);
        assert!(t.validate(&a, &b));
        let mut bad = t.clone();
        bad.b_witnesses[0] = 0;
        assert!(!bad.validate(&a, &b));
        let same = find_tossing(&a, &b, (1, 2), (1, 2)).unwrap().unwrap();
        assert!(same.validate(&a, &b));
        assert_eq!(same.skeleton.len(), 1);
    }

    #[test]
    fn one_element_acts_satisfy_every_chain() {
        let m = Arc::new(zoo::nat_min_adjoined(2));
        let a = Act::singleton(m.clone(), Side::Right);
        let b = Act::singleton(m.clone(), Side::Left);
        for sk in Skeleton::all_up_to(m.len(), 2) {
            assert!(eval_delta(&a, &sk, 0, 0).is_some());
            assert!(eval_gamma(&b, &sk, 0, 0).is_some());
        }
    }

    #[test]
    fn bad_skeletons() {
        assert_eq!(Skeleton::new(vec![]), Err(TensorError::BadSkeleton(0)));
        assert_eq!(Skeleton::new(vec![0, 1, 2]), Err(TensorError::BadSkeleton(3)));
        assert_eq!(Skeleton::all_of_length(3, 2).count(), 81);
    }

    // Oracle: brute force over all witness tuples.
    fn brute_delta(a: &Act, sk: &Skeleton, x: usize, x2: usize) -> bool {
        let m = sk.len();
        let n = a.len();
        (0..n.pow((m - 1) as u32)).any(|mut code| {
            let mut col = vec![x];
            for _ in 0..m - 1 {
                col.push(code % n);
                code /= n;
            }
            col.push(x2);
            (0..m).all(|i| a.apply(sk.s(i), col[i]) == a.apply(sk.t(i), col[i + 1]))
        })
    }

    fn brute_gamma(b: &Act, sk: &Skeleton, y: usize, y2: usize) -> bool {
        let m = sk.len();
        let n = b.len();
        (0..n.pow(m as u32)).any(|mut code| {
            let mut w = vec![];
            for _ in 0..m {
                w.push(code % n);
                code /= n;
            }
            b.apply(sk.s(0), w[0]) == y
                && b.apply(sk.t(m - 1), w[m - 1]) == y2
                && (0..m - 1).all(|i| b.apply(sk.t(i), w[i]) == b.apply(sk.s(i + 1), w[i + 1]))
        })
    }

    #[test]
    fn chain_formulas_match_brute_force() {
        let m = Arc::new(zoo::null_adjoined(2));
        let rights: Vec<Act> = acts_of_size(m.clone(), Side::Right, 3, EnumOptions::default()).collect();
        let lefts: Vec<Act> = acts_of_size(m.clone(), Side::Left, 3, EnumOptions::default()).collect();
        for sk in Skeleton::all_up_to(m.len(), 2) {
            for a in &rights {
                for x in 0..3 {
                    for x2 in 0..3 {
                        let got = eval_delta(a, &sk, x, x2);
                        assert_eq!(got.is_some(), brute_delta(a, &sk, x, x2));
                    }
                }
            }
            for b in &lefts {
                for y in 0..3 {
                    for y2 in 0..3 {
                        let got = eval_gamma(b, &sk, y, y2);
                        assert_eq!(got.is_some(), brute_gamma(b, &sk, y, y2));
                    }
                }
            }
        }
    }

    #[test]
    fn bfs_agrees_with_tensor_classes() {
        let m = Arc::new(zoo::inverse_omega_chain(2));
        let rights: Vec<Act> = acts_of_size(m.clone(), Side::Right, 2, EnumOptions::default()).collect();
        let lefts: Vec<Act> = acts_of_size(m.clone(), Side::Left, 3, EnumOptions::default()).collect();
        for a in &rights {
            for b in &lefts {
                let t = TensorProduct::new(a, b).unwrap();
                for x in a.elements() {
                    for y in b.elements() {
                        let search = TossingSearch::new(a, b, (x, y)).unwrap();
                        for x2 in a.elements() {
                            for y2 in b.elements() {
                                let found = search.tossing_to((x2, y2));
                                assert_eq!(found.is_some(), t.equal(x, y, x2, y2).unwrap());
                                if let Some(tossing) = found {
                                    assert!(tossing.validate(a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
