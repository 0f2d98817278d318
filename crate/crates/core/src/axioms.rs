//! First-order axiom schemas for the interpolation conditions over a fixed
//! finite monoid, and a brute-force model checker for them.
//!
//! Sentences live in a small fragment: a universal prefix over a body that
//! is an equation, an inequation, or an implication from a conjunction of
//! equations to an existentially quantified disjunction of conjunctions.
//! Terms are `s1 s2 … sk x`, read as `s1(s2(…(sk x)))`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::act::{Act, Side};
use crate::conditions::{check_condition, Condition};
use crate::enumerate::{enumerate_acts, EnumOptions};
use crate::monoid::{FiniteMonoid, PairSubact};

pub type Var = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub word: Vec<usize>,
    pub var: Var,
}

impl Term {
    pub fn var(var: Var) -> Term {
        Term { word: Vec::new(), var }
    }

    pub fn scaled(s: usize, var: Var) -> Term {
        Term {
            word: alloc::vec![s],
            var,
        }
    }

    pub fn eval<T: ActTable + ?Sized>(&self, act: &T, assignment: &[usize]) -> usize {
        self.word
            .iter()
            .rev()
            .fold(assignment[self.var], |value, &s| act.apply(s, value))
    }
}

pub type Equation = (Term, Term);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Body {
    Equation(Equation),
    Inequation(Equation),
    /// `⋀ antecedent → (∃ exists)(⋁ ⋀ disjunct)`. An empty `exists` list
    /// means no existential prefix.
    Implication {
        antecedent: Vec<Equation>,
        exists: Vec<Var>,
        disjuncts: Vec<Vec<Equation>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sentence {
    pub universals: Vec<Var>,
    pub body: Body,
}

/// Where a sentence came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// One of the act laws `1x = x`, `s(tx) = (st)x`.
    ActLaw,
    /// Torsion-freeness at a left cancellable element.
    Cancellable(usize),
    /// The sentence for `(s, t)`, built from these generators (empty when
    /// the underlying set is empty).
    Pair { s: usize, t: usize, generators: GeneratorData },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorData {
    Pairs(Vec<(usize, usize)>),
    Elements(Vec<usize>),
}

impl GeneratorData {
    pub fn is_empty(&self) -> bool {
        match self {
            GeneratorData::Pairs(p) => p.is_empty(),
            GeneratorData::Elements(e) => e.is_empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSet {
    pub class: Condition,
    pub monoid: String,
    pub monoid_order: usize,
    pub sentences: Vec<Sentence>,
    /// Parallel to `sentences`.
    pub provenance: Vec<Provenance>,
}

/// Anything that looks like a left action table; unlike [`Act`] it need not
/// satisfy the act laws.
pub trait ActTable {
    fn carrier_len(&self) -> usize;
    fn apply(&self, s: usize, a: usize) -> usize;
}

impl ActTable for Act {
    fn carrier_len(&self) -> usize {
        self.len()
    }

    fn apply(&self, s: usize, a: usize) -> usize {
        Act::apply(self, s, a)
    }
}

/// An unchecked table `table[s * n + a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    pub carrier_len: usize,
    pub table: Vec<usize>,
}

impl ActTable for RawTable {
    fn carrier_len(&self) -> usize {
        self.carrier_len
    }

    fn apply(&self, s: usize, a: usize) -> usize {
        self.table[s * self.carrier_len + a]
    }
}

const X: Var = 0;
const Y: Var = 1;
const Z: Var = 2;

fn eq(l: Term, r: Term) -> Equation {
    (l, r)
}

/// `1x = x` and `s(tx) = (st)x` for all `s, t`.
pub fn act_laws(m: &FiniteMonoid) -> Vec<Sentence> {
    let mut out = alloc::vec![Sentence {
        universals: alloc::vec![X],
        body: Body::Equation(eq(Term::scaled(m.identity(), X), Term::var(X))),
    }];
    for s in m.elements() {
        for t in m.elements() {
            out.push(Sentence {
                universals: alloc::vec![X],
                body: Body::Equation(eq(
                    Term {
                        word: alloc::vec![s, t],
                        var: X,
                    },
                    Term::scaled(m.mul(s, t), X),
                )),
            });
        }
    }
    out
}

// The pair generators used for the EP sentence: the minimum generating set
// of R(s, t) if it regenerates every solution, else all of R(s, t).
fn ep_generators(m: &FiniteMonoid, solutions: &PairSubact) -> Vec<(usize, usize)> {
    let gens = solutions.min_generators(m).as_slice().to_vec();
    if PairSubact::generated_by(m, &gens) == *solutions {
        gens
    } else {
        solutions.pairs.iter().copied().collect()
    }
}

/// The schema axiomatising `class` among left acts over `m`, preceded by the
/// act laws. Supported classes: TF, P, E, EP, W, PWP.
pub fn emit_axioms(m: &FiniteMonoid, class: Condition) -> AxiomSet {
    let mut sentences = act_laws(m);
    let mut provenance = alloc::vec![Provenance::ActLaw; sentences.len()];
    let mut push = |sentence: Sentence, origin: Provenance| {
        sentences.push(sentence);
        provenance.push(origin);
    };
    let binary = |body: Body| Sentence {
        universals: alloc::vec![X, Y],
        body,
    };
    match class {
        Condition::TorsionFree => {
            for s in m.left_cancellable() {
                let body = Body::Implication {
                    antecedent: alloc::vec![eq(Term::scaled(s, X), Term::scaled(s, Y))],
                    exists: Vec::new(),
                    disjuncts: alloc::vec![alloc::vec![eq(Term::var(X), Term::var(Y))]],
                };
                push(binary(body), Provenance::Cancellable(s));
            }
        }
        Condition::P | Condition::Pwp => {
            for s in m.elements() {
                for t in m.elements() {
                    if class == Condition::Pwp && s != t {
                        continue;
                    }
                    let gens = m.solutions(s, t).min_generators(m).as_slice().to_vec();
                    let hypothesis = eq(Term::scaled(s, X), Term::scaled(t, Y));
                    let body = if gens.is_empty() {
                        Body::Inequation(hypothesis)
                    } else {
                        Body::Implication {
                            antecedent: alloc::vec![hypothesis],
                            exists: alloc::vec![Z],
                            disjuncts: gens
                                .iter()
                                .map(|&(u, v)| {
                                    alloc::vec![eq(Term::var(X), Term::scaled(u, Z)), eq(Term::var(Y), Term::scaled(v, Z))]
                                })
                                .collect(),
                        }
                    };
                    push(
                        binary(body),
                        Provenance::Pair {
                            s,
                            t,
                            generators: GeneratorData::Pairs(gens),
                        },
                    );
                }
            }
        }
        Condition::E | Condition::Ep => {
            for s in m.elements() {
                for t in m.elements() {
                    let hypothesis = eq(Term::scaled(s, X), Term::scaled(t, X));
                    let (disjuncts, generators) = if class == Condition::E {
                        let gens = m.equalizer(s, t).min_generators(m).as_slice().to_vec();
                        let d = gens
                            .iter()
                            .map(|&u| alloc::vec![eq(Term::var(X), Term::scaled(u, Z))])
                            .collect::<Vec<_>>();
                        (d, GeneratorData::Elements(gens))
                    } else {
                        let gens = ep_generators(m, &m.solutions(s, t));
                        let d = gens
                            .iter()
                            .map(|&(u, v)| {
                                alloc::vec![eq(Term::var(X), Term::scaled(u, Z)), eq(Term::var(X), Term::scaled(v, Z))]
                            })
                            .collect::<Vec<_>>();
                        (d, GeneratorData::Pairs(gens))
                    };
                    let body = if disjuncts.is_empty() {
                        Body::Inequation(hypothesis)
                    } else {
                        Body::Implication {
                            antecedent: alloc::vec![hypothesis],
                            exists: alloc::vec![Z],
                            disjuncts,
                        }
                    };
                    push(
                        Sentence {
                            universals: alloc::vec![X],
                            body,
                        },
                        Provenance::Pair { s, t, generators },
                    );
                }
            }
        }
        Condition::W => {
            for s in m.elements() {
                for t in m.elements() {
                    let gens = m.ideal_intersection(s, t).min_generators(m).as_slice().to_vec();
                    let hypothesis = eq(Term::scaled(s, X), Term::scaled(t, Y));
                    let body = if gens.is_empty() {
                        Body::Inequation(hypothesis)
                    } else {
                        Body::Implication {
                            antecedent: alloc::vec![hypothesis],
                            exists: alloc::vec![Z],
                            disjuncts: gens
                                .iter()
                                .map(|&u| {
                                    alloc::vec![
                                        eq(Term::scaled(s, X), Term::scaled(u, Z)),
                                        eq(Term::scaled(t, Y), Term::scaled(u, Z))
                                    ]
                                })
                                .collect(),
                        }
                    };
                    push(
                        binary(body),
                        Provenance::Pair {
                            s,
                            t,
                            generators: GeneratorData::Elements(gens),
                        },
                    );
                }
            }
        }
        other => panic!("no axiom schema for condition {other}"),
    }
    AxiomSet {
        class,
        monoid: String::from(m.name()),
        monoid_order: m.len(),
        sentences,
        provenance,
    }
}

/// Classes that [`emit_axioms`] supports.
pub const AXIOMATISED: [Condition; 6] = [
    Condition::TorsionFree,
    Condition::P,
    Condition::E,
    Condition::Ep,
    Condition::W,
    Condition::Pwp,
];

fn max_var(sentence: &Sentence) -> usize {
    let mut top = sentence.universals.iter().copied().max().unwrap_or(0);
    if let Body::Implication { exists, .. } = &sentence.body {
        top = top.max(exists.iter().copied().max().unwrap_or(0));
    }
    top
}

fn holds_all<T: ActTable + ?Sized>(act: &T, eqs: &[Equation], assignment: &[usize]) -> bool {
    eqs.iter().all(|(l, r)| l.eval(act, assignment) == r.eval(act, assignment))
}

// Advances `assignment` at the positions `vars` like an odometer.
fn next_assignment(assignment: &mut [usize], vars: &[Var], n: usize) -> bool {
    for &v in vars.iter().rev() {
        assignment[v] += 1;
        if assignment[v] < n {
            return true;
        }
        assignment[v] = 0;
    }
    false
}

/// Brute-force satisfaction. On failure returns the universal assignment
/// (indexed by variable id) that refutes the sentence.
pub fn model_check<T: ActTable + ?Sized>(act: &T, sentence: &Sentence) -> Result<(), Vec<usize>> {
    let n = act.carrier_len();
    let mut assignment = alloc::vec![0; max_var(sentence) + 1];
    loop {
        let ok = match &sentence.body {
            Body::Equation((l, r)) => l.eval(act, &assignment) == r.eval(act, &assignment),
            Body::Inequation((l, r)) => l.eval(act, &assignment) != r.eval(act, &assignment),
            Body::Implication {
                antecedent,
                exists,
                disjuncts,
            } => {
                !holds_all(act, antecedent, &assignment) || {
                    let mut inner = assignment.clone();
                    for &v in exists {
                        inner[v] = 0;
                    }
                    loop {
                        if disjuncts.iter().any(|d| holds_all(act, d, &inner)) {
                            break true;
                        }
                        if !next_assignment(&mut inner, exists, n) {
                            break false;
                        }
                    }
                }
            }
        };
        if !ok {
            let mut counterexample = alloc::vec![0; assignment.len()];
            for &v in &sentence.universals {
                counterexample[v] = assignment[v];
            }
            return Err(counterexample);
        }
        if !next_assignment(&mut assignment, &sentence.universals, n) {
            return Ok(());
        }
    }
}

/// The first sentence of `set` that fails in `act`, with its index and the
/// refuting assignment.
pub fn first_failure<T: ActTable + ?Sized>(act: &T, set: &AxiomSet) -> Option<(usize, Vec<usize>)> {
    set.sentences
        .iter()
        .enumerate()
        .find_map(|(i, s)| model_check(act, s).err().map(|cex| (i, cex)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub act: Act,
    pub condition_holds: bool,
    pub axioms_hold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub class: Condition,
    pub monoid: String,
    pub max_size: usize,
    pub acts_checked: usize,
    pub in_class: usize,
    pub divergences: Vec<Divergence>,
}

impl VerificationReport {
    pub fn agrees(&self) -> bool {
        self.divergences.is_empty()
    }
}

/// Compares the decision procedure with the schema on one act.
pub fn compare_on(act: &Act, class: Condition, axioms: &AxiomSet) -> Result<bool, Divergence> {
    let condition_holds = check_condition(act, class).holds();
    let axioms_hold = first_failure(act, axioms).is_none();
    if condition_holds == axioms_hold {
        Ok(condition_holds)
    } else {
        Err(Divergence {
            act: act.clone(),
            condition_holds,
            axioms_hold,
        })
    }
}

/// Runs [`compare_on`] over every left act with at most `max_size`
/// elements.
pub fn verify_axiomatisation(m: &alloc::sync::Arc<FiniteMonoid>, class: Condition, max_size: usize) -> VerificationReport {
    let axioms = emit_axioms(m, class);
    let mut report = VerificationReport {
        class,
        monoid: String::from(m.name()),
        max_size,
        acts_checked: 0,
        in_class: 0,
        divergences: Vec::new(),
    };
    for act in enumerate_acts(m.clone(), Side::Left, max_size, EnumOptions::default()) {
        report.acts_checked += 1;
        match compare_on(&act, class, &axioms) {
            Ok(inside) => report.in_class += usize::from(inside),
            Err(d) => report.divergences.push(d),
        }
    }
    report
}

fn var_name(v: Var) -> String {
    match v {
        X => String::from("x"),
        Y => String::from("y"),
        Z => String::from("z"),
        other => format!("v{other}"),
    }
}

fn render_term(m: &FiniteMonoid, term: &Term) -> String {
    let mut out = String::new();
    for &s in &term.word {
        let _ = write!(out, "{}·", m.element_name(s));
    }
    out.push_str(&var_name(term.var));
    out
}

fn render_conj(m: &FiniteMonoid, eqs: &[Equation]) -> String {
    let parts: Vec<String> = eqs
        .iter()
        .map(|(l, r)| format!("{} = {}", render_term(m, l), render_term(m, r)))
        .collect();
    parts.join(" ∧ ")
}

/// UTF-8 rendering such as `(∀x)(∀y)(s·x = t·y → (∃z)(x = u·z ∧ y = v·z))`.
pub fn render(m: &FiniteMonoid, sentence: &Sentence) -> String {
    let mut out = String::new();
    for &v in &sentence.universals {
        let _ = write!(out, "(∀{})", var_name(v));
    }
    out.push('(');
    match &sentence.body {
        Body::Equation((l, r)) => {
            let _ = write!(out, "{} = {}", render_term(m, l), render_term(m, r));
        }
        Body::Inequation((l, r)) => {
            let _ = write!(out, "{} ≠ {}", render_term(m, l), render_term(m, r));
        }
        Body::Implication {
            antecedent,
            exists,
            disjuncts,
        } => {
            out.push_str(&render_conj(m, antecedent));
            out.push_str(" → ");
            for &v in exists {
                let _ = write!(out, "(∃{})", var_name(v));
            }
            let ds: Vec<String> = if disjuncts.len() > 1 {
                disjuncts.iter().map(|d| format!("({})", render_conj(m, d))).collect()
            } else {
                disjuncts.iter().map(|d| render_conj(m, d)).collect()
            };
            let joined = if ds.is_empty() { String::from("⊥") } else { ds.join(" ∨ ") };
            if exists.is_empty() {
                out.push_str(&joined);
            } else {
                let _ = write!(out, "({joined})");
            }
        }
    }
    out.push(')');
    out
}
