//! End-to-end acceptance checks. Runs as a plain binary (`harness = false`)
//! so that every criterion prints exactly one PASS/FAIL line.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::thread;
use std::time::Instant;

use actalab_core::axioms::{emit_axioms, first_failure};
use actalab_core::conditions::{check_condition, Condition};
use actalab_core::enumerate::{enumerate_acts, EnumOptions};
use actalab_core::flatness::{check_pwf, check_wf, FlatnessProbe};
use actalab_core::generation::closure;
use actalab_core::monoid::PairSubact;
use actalab_core::replacement::{replace_all, replacement_skeletons};
use actalab_core::standard::{induced_morphism, standard_tossing_act};
use actalab_core::tensor::{eval_delta, eval_gamma, TossingSearch};
use actalab_core::zoo::{self, FamilySpec};
use actalab_core::{Act, FiniteMonoid, Side, Skeleton, TensorProduct};

type Outcome = Result<String, String>;
type Timed = (Outcome, f64);

fn zoo_set() -> Vec<Arc<FiniteMonoid>> {
    zoo::zoo_set().into_iter().map(Arc::new).collect()
}

fn acts(m: &Arc<FiniteMonoid>, side: Side, max: usize) -> Vec<Act> {
    enumerate_acts(m.clone(), side, max, EnumOptions::default()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tossing_oracle() -> Outcome {
    let mut queries = 0u64;
    for m in zoo_set() {
        let rights = acts(&m, Side::Right, 3);
        let lefts = acts(&m, Side::Left, 3);
        for a in &rights {
            for b in &lefts {
                let t = TensorProduct::new(a, b).unwrap();
                for x in a.elements() {
                    for y in b.elements() {
                        let search = TossingSearch::new(a, b, (x, y)).unwrap();
                        for x2 in a.elements() {
                            for y2 in b.elements() {
                                queries += 1;
                                let equal = t.equal(x, y, x2, y2).unwrap();
                                match search.tossing_to((x2, y2)) {
                                    Some(tossing) => {
                                        ensure(equal, || format!("{}: tossing between unequal pairs", m.name()))?;
                                        ensure(tossing.validate(a, b), || format!("{}: invalid tossing", m.name()))?;
                                    }
                                    None => ensure(!equal, || format!("{}: equal pairs without tossing", m.name()))?,
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{queries} pair queries"))
}

// Direct search for a full witness set, without the chain formulas.
fn tossing_exists(a: &Act, b: &Act, sk: &Skeleton, start: (usize, usize), end: (usize, usize)) -> bool {
    let m = sk.len();
    let (na, nb) = (a.len(), b.len());
    let a_tuples = na.pow((m - 1) as u32);
    let b_tuples = nb.pow(m as u32);
    (0..a_tuples).any(|code_a| {
        let mut col = vec![start.0];
        let mut c = code_a;
        for _ in 0..m - 1 {
            col.push(c % na);
            c /= na;
        }
        col.push(end.0);
        (0..m).all(|i| a.apply(sk.s(i), col[i]) == a.apply(sk.t(i), col[i + 1]))
            && (0..b_tuples).any(|code_b| {
                let mut w = Vec::with_capacity(m);
                let mut c = code_b;
                for _ in 0..m {
                    w.push(c % nb);
                    c /= nb;
                }
                b.apply(sk.s(0), w[0]) == start.1
                    && b.apply(sk.t(m - 1), w[m - 1]) == end.1
                    && (0..m - 1).all(|i| b.apply(sk.t(i), w[i]) == b.apply(sk.s(i + 1), w[i + 1]))
            })
    })
}

fn skeleton_factorization() -> Outcome {
    let mut checked = 0u64;
    for m in [zoo::cyclic_group(2), zoo::null_adjoined(2)] {
        let m = Arc::new(m);
        let rights = acts(&m, Side::Right, 3);
        let lefts = acts(&m, Side::Left, 3);
        for sk in Skeleton::all_up_to(m.len(), 2) {
            // delta and gamma tables per act, then every combination
            let deltas: Vec<Vec<bool>> = rights
                .iter()
                .map(|a| {
                    let n = a.len();
                    (0..n * n).map(|i| eval_delta(a, &sk, i / n, i % n).is_some()).collect()
                })
                .collect();
            let gammas: Vec<Vec<bool>> = lefts
                .iter()
                .map(|b| {
                    let n = b.len();
                    (0..n * n).map(|i| eval_gamma(b, &sk, i / n, i % n).is_some()).collect()
                })
                .collect();
            for (a, delta) in rights.iter().zip(&deltas) {
                for (b, gamma) in lefts.iter().zip(&gammas) {
                    let (na, nb) = (a.len(), b.len());
                    for x in 0..na {
                        for x2 in 0..na {
                            for y in 0..nb {
                                for y2 in 0..nb {
                                    checked += 1;
                                    let split = delta[x * na + x2] && gamma[y * nb + y2];
                                    let joint = tossing_exists(a, b, &sk, (x, y), (x2, y2));
                                    ensure(split == joint, || {
                                        format!("{}: skeleton {:?} disagrees", m.name(), sk.entries())
                                    })?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} skeleton instances"))
}

const SCHEMA_CLASSES: [Condition; 5] = [Condition::P, Condition::E, Condition::Ep, Condition::W, Condition::Pwp];

fn axiomatisation() -> Outcome {
    let mut checked = 0u64;
    for m in zoo_set() {
        let sets: Vec<_> = SCHEMA_CLASSES.iter().map(|&c| (c, emit_axioms(&m, c))).collect();
        for b in enumerate_acts(m.clone(), Side::Left, 4, EnumOptions::default()) {
            for (class, set) in &sets {
                checked += 1;
                let by_check = check_condition(&b, *class).holds();
                let by_axioms = first_failure(&b, set).is_none();
                ensure(by_check == by_axioms, || {
                    format!("{} {class}: condition {by_check}, axioms {by_axioms} on {:?}", m.name(), b.flat_table())
                })?;
            }
        }
    }
    Ok(format!("{checked} act/class comparisons"))
}

struct Flags {
    p: bool,
    e: bool,
    ep: bool,
    w: bool,
    pwp: bool,
    sf: bool,
    pwf: bool,
    wf: bool,
}

fn flags(b: &Act) -> Flags {
    let h = |c| check_condition(b, c).holds();
    Flags {
        p: h(Condition::P),
        e: h(Condition::E),
        ep: h(Condition::Ep),
        w: h(Condition::W),
        pwp: h(Condition::Pwp),
        sf: h(Condition::StronglyFlat),
        pwf: check_pwf(b).holds(),
        wf: check_wf(b).holds(),
    }
}

fn implication_lattice_and_wf() -> (Outcome, Outcome) {
    let mut acts_seen = 0u64;
    let mut flat_probes = 0u64;
    let mut lattice: Result<(), String> = Ok(());
    let mut decomposition: Result<(), String> = Ok(());
    for m in zoo_set() {
        let probe = FlatnessProbe::new(m.clone(), 2);
        for b in enumerate_acts(m.clone(), Side::Left, 4, EnumOptions::default()) {
            acts_seen += 1;
            let f = flags(&b);
            let table = || format!("{} {:?}", m.name(), b.flat_table());
            if lattice.is_ok() {
                let rules = [
                    ("SF => P and E", !f.sf || (f.p && f.e)),
                    ("P => EP", !f.p || f.ep),
                    ("E => EP", !f.e || f.ep),
                    ("P => W", !f.p || f.w),
                    ("P => PWP", !f.p || f.pwp),
                    ("WF => PWF", !f.wf || f.pwf),
                ];
                if let Some((rule, _)) = rules.iter().find(|(_, ok)| !ok) {
                    lattice = Err(format!("{rule} violated on {}", table()));
                } else if f.sf {
                    flat_probes += 1;
                    if probe.check(&b).failed() {
                        lattice = Err(format!("strongly flat act refuted as flat: {}", table()));
                    }
                }
            }
            if decomposition.is_ok() && f.wf != (f.pwf && f.w) {
                decomposition = Err(format!("WF {} but PWF {} and W {} on {}", f.wf, f.pwf, f.w, table()));
            }
        }
    }
    (
        lattice.map(|_| format!("{acts_seen} acts, {flat_probes} strongly flat acts probed to length 2")),
        decomposition.map(|_| format!("{acts_seen} acts")),
    )
}

fn monoid_as_act() -> Outcome {
    for m in zoo_set() {
        let s = Act::regular(m.clone(), Side::Left);
        for c in [Condition::W, Condition::Pwp] {
            ensure(check_condition(&s, c).holds(), || format!("{} fails {c}", m.name()))?;
        }
        ensure(check_pwf(&s).holds(), || format!("{} not PWF", m.name()))?;
        ensure(check_wf(&s).holds(), || format!("{} not WF", m.name()))?;
    }
    Ok(String::from("7 monoids"))
}

fn groups() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        let m = Arc::new(zoo::cyclic_group(n));
        for s in m.elements() {
            for t in m.elements() {
                let gens = m.solutions(s, t).min_generators(&m);
                ensure(gens.len() == 1, || format!("Z{n}: R({s},{t}) needs {} generators", gens.len()))?;
                ensure(s == t || m.equalizer(s, t).is_empty(), || format!("Z{n}: r({s},{t}) non-empty"))?;
            }
        }
        let probe = FlatnessProbe::new(m.clone(), 2);
        for b in acts(&m, Side::Left, 3) {
            count += 1;
            ensure(check_pwf(&b).holds(), || format!("Z{n}: act not PWF"))?;
            ensure(check_wf(&b).holds(), || format!("Z{n}: act not WF"))?;
            ensure(!probe.check(&b).failed(), || format!("Z{n}: act refuted as flat"))?;
        }
    }
    Ok(format!("Z2..Z5, {count} acts"))
}

// Smallest subset whose generated closure is everything, by exhaustive
// search over subsets in order of size.
fn minimal_subset_size(m: &FiniteMonoid, set: &PairSubact) -> usize {
    let items: Vec<(usize, usize)> = set.pairs.iter().copied().collect();
    let act = |(u, v): (usize, usize), s: usize| (m.mul(u, s), m.mul(v, s));
    (0..=items.len())
        .find(|&k| {
            (0u64..1 << items.len()).filter(|mask| mask.count_ones() as usize == k).any(|mask| {
                let seeds: Vec<_> = (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect();
                closure(&seeds, m.len(), act) == set.pairs
            })
        })
        .unwrap()
}

fn null_growth() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=4 {
        let spec = FamilySpec::NullAdjoined(n);
        let m = spec.build().unwrap();
        let (s, t) = spec.designated_pair(&m);
        let r = m.solutions(s, t);
        let count = r.min_generators(&m).len();
        ensure(count == n * n - 1, || format!("n={n}: {count} generators, expected {}", n * n - 1))?;
        if n <= 3 {
            let oracle = minimal_subset_size(&m, &r);
            ensure(oracle == count, || format!("n={n}: exhaustive minimum {oracle}, preorder {count}"))?;
        }
        counts.push(count);
    }
    Ok(format!("counts {counts:?}"))
}

fn union_of_generated(m: &FiniteMonoid, gens: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    PairSubact::generated_by(m, gens).pairs
}

fn semilattice_identities() -> Outcome {
    let m = zoo::semilattice_of_groups(2, 2);
    let idx = |l: &str| m.index_of(l).unwrap();
    let (e, eps) = (idx("a0"), idx("b0"));
    let g1 = [idx("a0"), idx("a1")];
    let g0 = [idx("b0"), idx("b1")];
    // inverse inside the group component containing x
    let inv = |x: usize| {
        let group = if g1.contains(&x) { g1 } else { g0 };
        let unit = group[0];
        *group.iter().find(|&&y| m.mul(x, y) == unit).unwrap()
    };
    let group_pairs = |s: usize, t: usize| -> Vec<(usize, usize)> {
        g1.iter()
            .flat_map(|&u| g1.iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| m.mul(s, u) == m.mul(t, v))
            .collect()
    };
    let mut cases = 0;
    for &s in &g0 {
        for &t in &g0 {
            let mut gens = vec![(e, m.mul(inv(t), s)), (m.mul(inv(s), t), e)];
            gens.extend(group_pairs(s, t));
            ensure(m.solutions(s, t).pairs == union_of_generated(&m, &gens), || format!("case s,t in G0 at ({s},{t})"))?;
            cases += 1;
        }
    }
    for &s in &g0 {
        for &t in &g1 {
            let mut gens = vec![(m.mul(inv(s), t), eps), (e, m.mul(inv(t), s))];
            gens.extend(group_pairs(s, t));
            ensure(m.solutions(s, t).pairs == union_of_generated(&m, &gens), || format!("case s in G0, t in G1 at ({s},{t})"))?;
            cases += 1;
        }
    }
    for &s in &g1 {
        for &t in &g1 {
            let gens = vec![(eps, eps), (m.mul(inv(s), t), e)];
            ensure(m.solutions(s, t).pairs == union_of_generated(&m, &gens), || format!("case s,t in G1 at ({s},{t})"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (s, t) pairs across the three cases"))
}

fn min_chain() -> Outcome {
    let mut counts = Vec::new();
    for n in 3..=5 {
        let m = zoo::nat_min_adjoined(n);
        let eps = m.identity();
        let k = |i: usize| m.index_of(&i.to_string()).unwrap();
        for s in 1..=n {
            for t in s + 1..=n {
                let expected = union_of_generated(&m, &[(k(s), k(s)), (eps, k(s))]);
                ensure(m.solutions(k(s), k(t)).pairs == expected, || format!("n={n}: R({s},{t})"))?;
                let below: BTreeSet<usize> = (1..=s).map(k).collect();
                ensure(m.equalizer(k(s), k(t)).members == below, || format!("n={n}: r({s},{t})"))?;
            }
        }
        counts.push(m.solutions(k(1), k(1)).min_generators(&m).len());
    }
    ensure(counts.windows(2).all(|w| w[0] < w[1]), || format!("R(1,1) counts not increasing: {counts:?}"))?;
    Ok(format!("R(1,1) generator counts {counts:?}"))
}

fn replacement() -> Outcome {
    let mut instances = 0usize;
    for m in zoo_set() {
        for class in SCHEMA_CLASSES {
            let sets: Vec<_> = m
                .elements()
                .flat_map(|s| m.elements().map(move |t| (s, t)))
                .filter(|&(s, t)| class != Condition::Pwp || s == t)
                .map(|(s, t)| {
                    let set = replacement_skeletons(&m, s, t, class).unwrap();
                    (set.is_sound(&m), set)
                })
                .collect();
            ensure(sets.iter().all(|(sound, _)| *sound), || format!("{} {class}: unsound set", m.name()))?;
            for b in acts(&m, Side::Left, 3) {
                if !check_condition(&b, class).holds() {
                    continue;
                }
                for (_, set) in &sets {
                    let report = replace_all(&b, set.clone());
                    ensure(report.succeeded(), || {
                        format!("{} {class}: instance {:?} unreplaced", m.name(), report.unreplaced)
                    })?;
                    instances += report.replaced.len();
                }
            }
        }
    }
    Ok(format!("{instances} trigger instances replaced"))
}

fn condition_free() -> Outcome {
    let mut instances = 0u64;
    for m in [zoo::cyclic_group(2), zoo::nat_min_adjoined(3)] {
        let m = Arc::new(m);
        let targets = acts(&m, Side::Right, 4);
        for sk in Skeleton::all_up_to(m.len(), 2) {
            let standard = standard_tossing_act(m.clone(), &sk);
            for target in &targets {
                for a in target.elements() {
                    for a2 in target.elements() {
                        let Some(inner) = eval_delta(target, &sk, a, a2) else {
                            continue;
                        };
                        instances += 1;
                        let mut column = vec![a];
                        column.extend(inner);
                        column.push(a2);
                        let nu = induced_morphism(&standard, target, &column).map_err(|e| e.to_string())?;
                        ensure(nu.is_morphism(), || format!("{}: not a morphism", m.name()))?;
                        ensure(nu.image(standard.first()) == a && nu.image(standard.last()) == a2, || {
                            format!("{}: endpoints not preserved", m.name())
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{instances} witnessed instances"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let results: Vec<(usize, &str, Outcome, f64)> = thread::scope(|scope| {
        let timed = |f: fn() -> Outcome| {
            move || {
                let t = Instant::now();
                let r = f();
                (r, t.elapsed().as_secs_f64())
            }
        };
        let singles: Vec<(usize, &str, thread::ScopedJoinHandle<'_, Timed>)> = vec![
            (1, "tossing oracle", scope.spawn(timed(tossing_oracle))),
            (2, "skeleton factorization", scope.spawn(timed(skeleton_factorization))),
            (3, "axiomatisation equivalence", scope.spawn(timed(axiomatisation))),
            (6, "monoid as an act", scope.spawn(timed(monoid_as_act))),
            (7, "groups", scope.spawn(timed(groups))),
            (8, "null semigroup growth", scope.spawn(timed(null_growth))),
            (9, "semilattice of groups identities", scope.spawn(timed(semilattice_identities))),
            (10, "min chain identities and growth", scope.spawn(timed(min_chain))),
            (11, "replacement skeletons", scope.spawn(timed(replacement))),
            (12, "induced morphism from the standard tossing", scope.spawn(timed(condition_free))),
        ];
        let sweep = scope.spawn(|| {
            let t = Instant::now();
            let r = implication_lattice_and_wf();
            (r, t.elapsed().as_secs_f64())
        });
        let mut out: Vec<(usize, &str, Outcome, f64)> = singles
            .into_iter()
            .map(|(i, name, h)| {
                let (r, secs) = h.join().unwrap_or_else(|_| (Err(String::from("panicked")), 0.0));
                (i, name, r, secs)
            })
            .collect();
        let ((lattice, decomposition), secs) = sweep
            .join()
            .unwrap_or_else(|_| ((Err(String::from("panicked")), Err(String::from("panicked"))), 0.0));
        out.push((4, "implication lattice", lattice, secs));
        out.push((5, "weak flatness decomposition", decomposition, secs));
        out.sort_by_key(|r| r.0);
        out
    });
    let mut failed = 0;
    for (i, name, outcome, secs) in &results {
        match outcome {
            Ok(detail) => println!("criterion {i:>2} PASS  {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {i:>2} FAIL  {name}: {why} ({secs:.1}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
