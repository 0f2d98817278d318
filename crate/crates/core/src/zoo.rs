//! Finite instances and finite truncations of the standard example monoids,
//! and growth reports for the minimum generating sets of their solution sets,
//! equalizer ideals and principal-ideal intersections.
//!
//! The infinite monoid on `Z × Z` with an adjoined identity has no finite
//! truncation closed under its multiplication, so it has no family here.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::monoid::FiniteMonoid;

/// The example families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilySpec {
    /// The one-element monoid.
    Trivial,
    /// `Z_n`: `e, g, g2, …`.
    CyclicGroup(usize),
    /// `{e0, …, en}` with `ei·ej = e_max(i,j)`.
    InverseOmegaChain(usize),
    /// A null semigroup `T = {0, x1, …, x(n-1)}` (`|T| = n`) with an adjoined
    /// identity `e`.
    NullAdjoined(usize),
    /// Semilattice `{0 < 1}` of cyclic groups `G1 = Z_k1` (`a0 … `, the top,
    /// containing the identity) and `G0 = Z_k0` (`b0 …`) with trivial
    /// connecting homomorphism.
    SemilatticeOfGroups(usize, usize),
    /// `({1, …, n}, min)` with an adjoined identity `e`.
    NatMinAdjoined(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadParams(pub String);

impl fmt::Display for BadParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad family parameters: {}", self.0)
    }
}

impl core::error::Error for BadParams {}

impl FamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Trivial => "trivial",
            FamilySpec::CyclicGroup(_) => "cyclic_group",
            FamilySpec::InverseOmegaChain(_) => "inverse_omega_chain",
            FamilySpec::NullAdjoined(_) => "null_adjoined",
            FamilySpec::SemilatticeOfGroups(..) => "semilattice_of_groups",
            FamilySpec::NatMinAdjoined(_) => "nat_min_adjoined",
        }
    }

    /// The family member at size parameter `n`. Semilattices use `Z_n` for
    /// both components.
    pub fn with_param(family: &str, n: usize) -> Result<FamilySpec, BadParams> {
        Ok(match family {
            "trivial" => FamilySpec::Trivial,
            "cyclic_group" => FamilySpec::CyclicGroup(n),
            "inverse_omega_chain" => FamilySpec::InverseOmegaChain(n),
            "null_adjoined" => FamilySpec::NullAdjoined(n),
            "semilattice_of_groups" => FamilySpec::SemilatticeOfGroups(n, n),
            "nat_min_adjoined" => FamilySpec::NatMinAdjoined(n),
            other => return Err(BadParams(format!("unknown family {other:?}"))),
        })
    }

    pub fn build(&self) -> Result<FiniteMonoid, BadParams> {
        match *self {
            FamilySpec::Trivial => Ok(cyclic(1).renamed("trivial")),
            FamilySpec::CyclicGroup(n) if n >= 1 => Ok(cyclic(n)),
            FamilySpec::InverseOmegaChain(n) if n >= 1 => Ok(omega_chain(n)),
            FamilySpec::NullAdjoined(n) if n >= 1 => Ok(null_adj(n)),
            FamilySpec::SemilatticeOfGroups(a, b) if a >= 1 && b >= 1 => Ok(semilattice(a, b)),
            FamilySpec::NatMinAdjoined(n) if n >= 1 => Ok(nat_min(n)),
            other => Err(BadParams(format!("{other}: sizes must be at least 1"))),
        }
    }

    /// The `(s, t)` pair tracked by growth reports: the generator pair for
    /// groups, the two lowest non-zero elements for null semigroups (the one
    /// non-zero element twice when only one exists), `(1, 1)` for the min
    /// chain, `(e1, en)` for the omega chain and `(b0, a1)` for semilattices.
    pub fn designated_pair(&self, m: &FiniteMonoid) -> (usize, usize) {
        let idx = |l: &str| m.index_of(l).expect("designated label exists");
        match *self {
            FamilySpec::Trivial => (0, 0),
            FamilySpec::CyclicGroup(n) => (0, if n > 1 { 1 } else { 0 }),
            FamilySpec::InverseOmegaChain(n) => (idx("e1"), idx(&format!("e{n}"))),
            FamilySpec::NullAdjoined(n) => match n {
                1 => (idx("0"), idx("0")),
                2 => (idx("x1"), idx("x1")),
                _ => (idx("x1"), idx("x2")),
            },
            FamilySpec::SemilatticeOfGroups(k1, _) => {
                (idx("b0"), if k1 > 1 { idx("a1") } else { idx("a0") })
            }
            FamilySpec::NatMinAdjoined(_) => (idx("1"), idx("1")),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Trivial => write!(f, "trivial"),
            FamilySpec::CyclicGroup(n)
            | FamilySpec::InverseOmegaChain(n)
            | FamilySpec::NullAdjoined(n)
            | FamilySpec::NatMinAdjoined(n) => write!(f, "{}({n})", self.family_name()),
            FamilySpec::SemilatticeOfGroups(a, b) => write!(f, "{}({a},{b})", self.family_name()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = BadParams;

    /// Parses the names produced by `Display`, e.g. `null_adjoined(3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(FamilySpec::Trivial);
        }
        let open = s.find('(').ok_or_else(|| BadParams(format!("{s:?}: expected family(params)")))?;
        if !s.ends_with(')') {
            return Err(BadParams(format!("{s:?}: expected family(params)")));
        }
        let family = &s[..open];
        let params: Result<Vec<usize>, _> = s[open + 1..s.len() - 1]
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect();
        let params = params.map_err(|_| BadParams(format!("{s:?}: parameters must be integers")))?;
        match (family, params.as_slice()) {
            ("semilattice_of_groups", [a, b]) => Ok(FamilySpec::SemilatticeOfGroups(*a, *b)),
            (f, [n]) if f != "semilattice_of_groups" => FamilySpec::with_param(f, *n),
            _ => Err(BadParams(format!("{s:?}: wrong number of parameters"))),
        }
    }
}

fn build_table(
    name: String,
    names: Vec<String>,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> FiniteMonoid {
    let n = names.len();
    let table = (0..n).map(|i| (0..n).map(|j| mul(i, j)).collect()).collect();
    FiniteMonoid::new(name, names, table, identity).expect("family tables are monoids")
}

fn cyclic(n: usize) -> FiniteMonoid {
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    build_table(format!("cyclic_group({n})"), names, 0, |i, j| (i + j) % n)
}

fn omega_chain(n: usize) -> FiniteMonoid {
    let names = (0..=n).map(|i| format!("e{i}")).collect();
    build_table(format!("inverse_omega_chain({n})"), names, 0, |i, j| i.max(j))
}

// index 0 = e, 1 = zero, 2.. = x1..
fn null_adj(n: usize) -> FiniteMonoid {
    let mut names = alloc::vec!["e".to_string(), "0".to_string()];
    names.extend((1..n).map(|i| format!("x{i}")));
    build_table(format!("null_adjoined({n})"), names, 0, |i, j| match (i, j) {
        (0, j) => j,
        (i, 0) => i,
        _ => 1,
    })
}

// indices 0..k1 = G1 (a0 = identity), k1..k1+k0 = G0
fn semilattice(k1: usize, k0: usize) -> FiniteMonoid {
    let mut names: Vec<String> = (0..k1).map(|i| format!("a{i}")).collect();
    names.extend((0..k0).map(|i| format!("b{i}")));
    build_table(format!("semilattice_of_groups({k1},{k0})"), names, 0, |i, j| {
        match (i < k1, j < k1) {
            (true, true) => (i + j) % k1,
            (false, false) => k1 + ((i - k1) + (j - k1)) % k0,
            (true, false) => j,
            (false, true) => i,
        }
    })
}

// index 0 = e, index i = the number i
fn nat_min(n: usize) -> FiniteMonoid {
    let mut names = alloc::vec!["e".to_string()];
    names.extend((1..=n).map(|i| i.to_string()));
    build_table(format!("nat_min_adjoined({n})"), names, 0, |i, j| match (i, j) {
        (0, j) => j,
        (i, 0) => i,
        (i, j) => i.min(j),
    })
}

pub fn trivial() -> FiniteMonoid {
    FamilySpec::Trivial.build().unwrap()
}

pub fn cyclic_group(n: usize) -> FiniteMonoid {
    FamilySpec::CyclicGroup(n).build().unwrap()
}

pub fn inverse_omega_chain(n: usize) -> FiniteMonoid {
    FamilySpec::InverseOmegaChain(n).build().unwrap()
}

pub fn null_adjoined(n: usize) -> FiniteMonoid {
    FamilySpec::NullAdjoined(n).build().unwrap()
}

pub fn semilattice_of_groups(k1: usize, k0: usize) -> FiniteMonoid {
    FamilySpec::SemilatticeOfGroups(k1, k0).build().unwrap()
}

pub fn nat_min_adjoined(n: usize) -> FiniteMonoid {
    FamilySpec::NatMinAdjoined(n).build().unwrap()
}

/// The sweep set used by the exhaustive checks.
pub const ZOO_SET: [FamilySpec; 7] = [
    FamilySpec::Trivial,
    FamilySpec::CyclicGroup(2),
    FamilySpec::CyclicGroup(3),
    FamilySpec::InverseOmegaChain(2),
    FamilySpec::NullAdjoined(2),
    FamilySpec::SemilatticeOfGroups(2, 2),
    FamilySpec::NatMinAdjoined(3),
];

pub fn zoo_set() -> Vec<FiniteMonoid> {
    ZOO_SET.iter().map(|f| f.build().unwrap()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Constant,
    StrictlyIncreasing,
    NonDecreasing,
    NonMonotone,
}

impl Monotonicity {
    pub fn of(values: &[usize]) -> Monotonicity {
        let pairs = || values.windows(2).map(|w| (w[0], w[1]));
        if pairs().all(|(a, b)| a == b) {
            Monotonicity::Constant
        } else if pairs().all(|(a, b)| a < b) {
            Monotonicity::StrictlyIncreasing
        } else if pairs().all(|(a, b)| a <= b) {
            Monotonicity::NonDecreasing
        } else {
            Monotonicity::NonMonotone
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Monotonicity::Constant => "constant",
            Monotonicity::StrictlyIncreasing => "strictly increasing",
            Monotonicity::NonDecreasing => "non-decreasing",
            Monotonicity::NonMonotone => "not monotone",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub spec: FamilySpec,
    pub monoid_size: usize,
    pub s: String,
    pub t: String,
    /// Minimum generator counts; 0 means the set is empty.
    pub solutions: usize,
    pub equalizer: usize,
    pub intersection: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub family: String,
    pub rows: Vec<ReportRow>,
    pub solutions_trend: Monotonicity,
    pub equalizer_trend: Monotonicity,
    pub intersection_trend: Monotonicity,
}

/// Generator-count growth across `params` for the family's designated pair.
pub fn family_report(family: &str, params: impl IntoIterator<Item = usize>) -> Result<FamilyReport, BadParams> {
    let mut rows = Vec::new();
    for n in params {
        let spec = FamilySpec::with_param(family, n)?;
        let m = spec.build()?;
        let (s, t) = spec.designated_pair(&m);
        rows.push(ReportRow {
            spec,
            monoid_size: m.len(),
            s: m.element_name(s).into(),
            t: m.element_name(t).into(),
            solutions: m.solutions(s, t).min_generators(&m).len(),
            equalizer: m.equalizer(s, t).min_generators(&m).len(),
            intersection: m.ideal_intersection(s, t).min_generators(&m).len(),
        });
    }
    let col = |f: fn(&ReportRow) -> usize| Monotonicity::of(&rows.iter().map(f).collect::<Vec<_>>());
    Ok(FamilyReport {
        family: family.into(),
        solutions_trend: col(|r| r.solutions),
        equalizer_trend: col(|r| r.equalizer),
        intersection_trend: col(|r| r.intersection),
        rows,
    })
}
