//! Interpolation conditions on finite left acts, decided by exhaustive
//! quantifier search.
//!
//! Every condition here has the shape "an equation between two translates
//! forces a common interpolant". A violated instance is recorded as an
//! [`Instance`] `(s, t, a, b)`, read per condition as:
//!
//! | condition | hypothesis     | required interpolant                          |
//! |-----------|----------------|-----------------------------------------------|
//! | TF        | `sa = sb`      | `a = b` (only for left cancellable `s`)       |
//! | P         | `sa = tb`      | `a = uc, b = vc, su = tv`                     |
//! | E         | `sa = ta`      | `a = uc, su = tu`                             |
//! | EP        | `sa = ta`      | `a = uc = vc, su = tv`                        |
//! | W         | `sa = tb`      | `sa = uc` with `u ∈ sS ∩ tS`                  |
//! | PWP       | `ta = tb`      | `a = uc, b = vc, tu = tv`                     |

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::act::{Act, Side};
use crate::flatness;
use crate::tensor::Skeleton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    TorsionFree,
    P,
    E,
    Ep,
    W,
    Pwp,
    StronglyFlat,
    PrincipallyWeaklyFlat,
    WeaklyFlat,
    Flat,
}

impl Condition {
    pub const ALL: [Condition; 10] = [
        Condition::TorsionFree,
        Condition::P,
        Condition::E,
        Condition::Ep,
        Condition::W,
        Condition::Pwp,
        Condition::StronglyFlat,
        Condition::PrincipallyWeaklyFlat,
        Condition::WeaklyFlat,
        Condition::Flat,
    ];

    /// The conditions with an equational interpolation form.
    pub const INTERPOLATION: [Condition; 6] = [
        Condition::TorsionFree,
        Condition::P,
        Condition::E,
        Condition::Ep,
        Condition::W,
        Condition::Pwp,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Condition::TorsionFree => "tf",
            Condition::P => "p",
            Condition::E => "e",
            Condition::Ep => "ep",
            Condition::W => "w",
            Condition::Pwp => "pwp",
            Condition::StronglyFlat => "sf",
            Condition::PrincipallyWeaklyFlat => "pwf",
            Condition::WeaklyFlat => "wf",
            Condition::Flat => "flat",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownCondition(pub String);

impl fmt::Display for UnknownCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown condition {:?}", self.0)
    }
}

impl core::error::Error for UnknownCondition {}

impl FromStr for Condition {
    type Err = UnknownCondition;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Condition::ALL
            .into_iter()
            .find(|c| c.as_str() == lower)
            .ok_or_else(|| UnknownCondition(String::from(s)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    /// No refutation up to the search bound; inconclusive.
    PassesUpToBound,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::PassesUpToBound => "passes-up-to-bound",
        }
    }

    pub fn failed(&self) -> bool {
        *self == Verdict::Fails
    }
}

/// Monoid elements `s, t` and act elements `a, b` of one hypothesis
/// instance; see the module table for their meaning per condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instance {
    pub s: usize,
    pub t: usize,
    pub a: usize,
    pub b: usize,
}

/// `u, v ∈ S` and `c ∈ B` resolving one instance. For TF all three are
/// unused and set to the instance's `a`; for E and W, `v = u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interpolant {
    pub instance: Instance,
    pub u: usize,
    pub v: usize,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A violated hypothesis instance of `condition`.
    Instance { condition: Condition, instance: Instance },
    /// `K ⊗ B → S ⊗ B` identifies `(k, b)` and `(k2, b2)` although they are
    /// distinct in `K ⊗ B`, for `K` generated by `generators`.
    Ideal {
        generators: Vec<usize>,
        first: (usize, usize),
        second: (usize, usize),
    },
    /// `γ(b, b2)` holds for this skeleton, yet `([x], b)` and `([x'], b2)`
    /// are distinct in `([x]S ∪ [x']S) ⊗ B`.
    Skeleton { skeleton: Skeleton, b: usize, b2: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: Condition,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Filled for equational conditions that hold, when requested.
    pub interpolants: Vec<Interpolant>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub interpolants: bool,
    /// Skeleton length bound for [`Condition::Flat`].
    pub flat_bound: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            interpolants: false,
            flat_bound: 2,
        }
    }
}

/// Decides any condition on a left act.
pub fn check(b: &Act, condition: Condition, options: CheckOptions) -> ConditionReport {
    assert_eq!(b.side(), Side::Left, "conditions are stated for left acts");
    match condition {
        Condition::StronglyFlat => {
            let p = check(b, Condition::P, options);
            let e = check(b, Condition::E, options);
            let mut report = match (p.holds(), e.holds()) {
                (true, true) => ConditionReport {
                    condition,
                    verdict: Verdict::Holds,
                    witness: None,
                    interpolants: p.interpolants,
                },
                (false, _) => p,
                (true, false) => e,
            };
            report.condition = condition;
            if !report.holds() {
                report.interpolants.clear();
            }
            report
        }
        Condition::PrincipallyWeaklyFlat => flatness::check_pwf(b),
        Condition::WeaklyFlat => flatness::check_wf(b),
        Condition::Flat => flatness::check_flat_bounded(b, options.flat_bound),
        _ => check_equational(b, condition, options.interpolants),
    }
}

/// Shorthand for [`check`] with default options.
pub fn check_condition(b: &Act, condition: Condition) -> ConditionReport {
    check(b, condition, CheckOptions::default())
}

// For each (s, t), the pairs (a, b) that have an interpolant, with one
// interpolant per pair.
fn covered(b: &Act, condition: Condition, s: usize, t: usize) -> Vec<Option<(usize, usize, usize)>> {
    let m = b.monoid();
    let n = b.len();
    let mut out = alloc::vec![None; n * n];
    let mut mark = |x: usize, y: usize, u: usize, v: usize, c: usize| {
        out[x * n + y].get_or_insert((u, v, c));
    };
    match condition {
        Condition::P => {
            for &(u, v) in &m.solutions(s, t).pairs {
                for c in b.elements() {
                    mark(b.apply(u, c), b.apply(v, c), u, v, c);
                }
            }
        }
        Condition::Pwp => {
            for &(u, v) in &m.solutions(t, t).pairs {
                for c in b.elements() {
                    mark(b.apply(u, c), b.apply(v, c), u, v, c);
                }
            }
        }
        Condition::E => {
            for &u in &m.equalizer(s, t).members {
                for c in b.elements() {
                    let x = b.apply(u, c);
                    mark(x, x, u, u, c);
                }
            }
        }
        Condition::Ep => {
            for &(u, v) in &m.solutions(s, t).pairs {
                for c in b.elements() {
                    let x = b.apply(u, c);
                    if x == b.apply(v, c) {
                        mark(x, x, u, v, c);
                    }
                }
            }
        }
        Condition::W => {
            // indexed by (sa, sa): the common value must lie in (sS ∩ tS)B
            for &u in &m.ideal_intersection(s, t).members {
                for c in b.elements() {
                    let x = b.apply(u, c);
                    mark(x, x, u, u, c);
                }
            }
        }
        _ => unreachable!("not an interpolation condition"),
    }
    out
}

fn check_equational(b: &Act, condition: Condition, want_interpolants: bool) -> ConditionReport {
    let m = b.monoid();
    let n = b.len();
    let mut interpolants = Vec::new();
    let fail = |instance: Instance| ConditionReport {
        condition,
        verdict: Verdict::Fails,
        witness: Some(Witness::Instance { condition, instance }),
        interpolants: Vec::new(),
    };
    if condition == Condition::TorsionFree {
        for s in m.left_cancellable() {
            for x in 0..n {
                for y in 0..n {
                    if x != y && b.apply(s, x) == b.apply(s, y) {
                        return fail(Instance { s, t: s, a: x, b: y });
                    }
                }
            }
        }
        return ConditionReport {
            condition,
            verdict: Verdict::Holds,
            witness: None,
            interpolants,
        };
    }
    for s in m.elements() {
        for t in m.elements() {
            if condition == Condition::Pwp && s != t {
                continue;
            }
            let cover = covered(b, condition, s, t);
            for x in 0..n {
                for y in 0..n {
                    let instance = Instance { s, t, a: x, b: y };
                    let (hypothesis, key) = match condition {
                        Condition::P => (b.apply(s, x) == b.apply(t, y), (x, y)),
                        Condition::Pwp => (b.apply(t, x) == b.apply(t, y), (x, y)),
                        Condition::E | Condition::Ep => (x == y && b.apply(s, x) == b.apply(t, x), (x, x)),
                        Condition::W => {
                            let v = b.apply(s, x);
                            (v == b.apply(t, y), (v, v))
                        }
                        _ => unreachable!(),
                    };
                    if !hypothesis {
                        continue;
                    }
                    match cover[key.0 * n + key.1] {
                        None => return fail(instance),
                        Some((u, v, c)) if want_interpolants => interpolants.push(Interpolant { instance, u, v, c }),
                        Some(_) => {}
                    }
                }
            }
        }
    }
    ConditionReport {
        condition,
        verdict: Verdict::Holds,
        witness: None,
        interpolants,
    }
}

/// Re-checks one instance from scratch: true iff the hypothesis holds and
/// no interpolant exists. Independent of the search in [`check`].
pub fn is_violation(b: &Act, condition: Condition, inst: Instance) -> bool {
    let m = b.monoid();
    let Instance { s, t, a, b: y } = inst;
    let elems = || m.elements();
    let carrier = || b.elements();
    match condition {
        Condition::TorsionFree => m.is_left_cancellable(s) && a != y && b.apply(s, a) == b.apply(s, y),
        Condition::P => {
            b.apply(s, a) == b.apply(t, y)
                && !elems().any(|u| {
                    elems().any(|v| {
                        m.mul(s, u) == m.mul(t, v)
                            && carrier().any(|c| b.apply(u, c) == a && b.apply(v, c) == y)
                    })
                })
        }
        Condition::E => {
            b.apply(s, a) == b.apply(t, a)
                && !elems().any(|u| m.mul(s, u) == m.mul(t, u) && carrier().any(|c| b.apply(u, c) == a))
        }
        Condition::Ep => {
            b.apply(s, a) == b.apply(t, a)
                && !elems().any(|u| {
                    elems().any(|v| {
                        m.mul(s, u) == m.mul(t, v)
                            && carrier().any(|c| b.apply(u, c) == a && b.apply(v, c) == a)
                    })
                })
        }
        Condition::W => {
            let ideal: BTreeSet<usize> = m.ideal_intersection(s, t).members;
            b.apply(s, a) == b.apply(t, y)
                && !ideal.iter().any(|&u| carrier().any(|c| b.apply(u, c) == b.apply(s, a)))
        }
        Condition::Pwp => {
            b.apply(t, a) == b.apply(t, y)
                && !elems().any(|u| {
                    elems().any(|v| {
                        m.mul(t, u) == m.mul(t, v)
                            && carrier().any(|c| b.apply(u, c) == a && b.apply(v, c) == y)
                    })
                })
        }
        _ => false,
    }
}

/// True iff the interpolant really resolves its instance.
pub fn interpolant_is_valid(b: &Act, condition: Condition, ip: &Interpolant) -> bool {
    let m = b.monoid();
    let Instance { s, t, a, b: y } = ip.instance;
    let (u, v, c) = (ip.u, ip.v, ip.c);
    match condition {
        Condition::P => m.mul(s, u) == m.mul(t, v) && b.apply(u, c) == a && b.apply(v, c) == y,
        Condition::E => m.mul(s, u) == m.mul(t, u) && b.apply(u, c) == a,
        Condition::Ep => m.mul(s, u) == m.mul(t, v) && b.apply(u, c) == a && b.apply(v, c) == a,
        Condition::W => {
            m.ideal_intersection(s, t).contains(u) && b.apply(u, c) == b.apply(s, a) && b.apply(s, a) == b.apply(t, y)
        }
        Condition::Pwp => m.mul(t, u) == m.mul(t, v) && b.apply(u, c) == a && b.apply(v, c) == y,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_acts, EnumOptions};
    use crate::zoo;
    use alloc::sync::Arc;

    // Oracle: scan every instance with the independent re-check.
    fn brute(b: &Act, c: Condition) -> bool {
        let m = b.monoid();
        !m.elements().any(|s| {
            m.elements().any(|t| {
                b.elements().any(|x| b.elements().any(|y| is_violation(b, c, Instance { s, t, a: x, b: y })))
            })
        })
    }

    #[test]
    fn regular_act_has_w_and_pwp() {
        for m in zoo::zoo_set() {
            let s = Act::regular(Arc::new(m), Side::Left);
            assert!(check_condition(&s, Condition::W).holds());
            assert!(check_condition(&s, Condition::Pwp).holds());
        }
    }

    #[test]
    fn trivial_monoid_satisfies_p() {
        let m = Arc::new(zoo::trivial());
        for b in enumerate_acts(m, Side::Left, 3, EnumOptions::default()) {
            assert!(check_condition(&b, Condition::P).holds());
        }
    }

    #[test]
    fn pwp_fails_somewhere_over_null_adjoined() {
        let m = Arc::new(zoo::null_adjoined(2));
        let failing = enumerate_acts(m, Side::Left, 3, EnumOptions::default())
            .map(|b| (check_condition(&b, Condition::Pwp), b))
            .find(|(r, _)| r.failed());
        let (report, b) = failing.expect("a PWP counterexample exists");
        let Some(Witness::Instance { instance, .. }) = report.witness else {
            panic!("instance witness expected")
        };
        assert!(is_violation(&b, Condition::Pwp, instance));
    }

    #[test]
    fn verdicts_match_brute_force_and_witnesses_recheck() {
        for m in zoo::zoo_set() {
            let m = Arc::new(m);
            for b in enumerate_acts(m.clone(), Side::Left, 3, EnumOptions::default()) {
                for c in Condition::INTERPOLATION {
                    let report = check(&b, c, CheckOptions { interpolants: true, flat_bound: 1 });
                    assert_eq!(report.holds(), brute(&b, c), "{} {c}", m.name());
                    match &report.witness {
                        Some(Witness::Instance { instance, .. }) => assert!(is_violation(&b, c, *instance)),
                        Some(_) => panic!("unexpected witness kind"),
                        None => {
                            for ip in &report.interpolants {
                                assert!(interpolant_is_valid(&b, c, ip));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn strong_flatness_is_p_and_e() {
        let m = Arc::new(zoo::nat_min_adjoined(3));
        for b in enumerate_acts(m, Side::Left, 3, EnumOptions::default()) {
            let sf = check_condition(&b, Condition::StronglyFlat).holds();
            let p = check_condition(&b, Condition::P).holds();
            let e = check_condition(&b, Condition::E).holds();
            assert_eq!(sf, p && e);
        }
    }

    #[test]
    fn condition_names_round_trip() {
        for c in Condition::ALL {
            assert_eq!(c.as_str().parse::<Condition>(), Ok(c));
        }
        assert!("wp".parse::<Condition>().is_err());
    }
}
