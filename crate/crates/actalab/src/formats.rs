//! JSON file formats. Everything on disk names elements by label; the core
//! types work with indices, so each format converts in both directions and
//! reports unknown labels as validation errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use actalab_core::axioms::{AxiomSet, Body, Equation, GeneratorData, Provenance, Sentence, Term, Var};
use actalab_core::conditions::Condition;
use actalab_core::{Act, FiniteMonoid, MonoidError, Side, Skeleton};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidFile {
    pub name: String,
    pub elements: Vec<String>,
    pub identity: String,
    pub table: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActFile {
    pub monoid: String,
    pub side: String,
    pub elements: Vec<String>,
    /// Rows keyed by monoid label, listing images in carrier order.
    pub action: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonFile {
    pub skeleton: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Outermost scalar first: `["s", "t"]` with `x` is `s·t·x`.
    pub word: Vec<String>,
    pub var: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    pub lhs: TermJson,
    pub rhs: TermJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BodyJson {
    Equation(EquationJson),
    Inequation(EquationJson),
    Implication {
        antecedent: Vec<EquationJson>,
        exists: Vec<String>,
        disjuncts: Vec<Vec<EquationJson>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProvenanceJson {
    ActLaw,
    Cancellable { s: String },
    Pair {
        s: String,
        t: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pairs: Option<Vec<(String, String)>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        elements: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceJson {
    /// Rendered form, for reading. Ignored when loading.
    pub text: String,
    pub universals: Vec<String>,
    pub body: BodyJson,
    pub provenance: ProvenanceJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFile {
    pub class: String,
    pub monoid: String,
    pub monoid_order: usize,
    pub sentences: Vec<SentenceJson>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("formats serialize");
    out.push('\n');
    out
}

fn label_index(labels: &[String], label: &str, what: &str) -> Result<usize, CliError> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| CliError::Invalid(format!("unknown {what} label {label:?}")))
}

fn monoid_label(m: &FiniteMonoid, label: &str) -> Result<usize, CliError> {
    label_index(m.element_names(), label, "monoid element")
}

/// Names the failing elements by label rather than index.
pub fn describe_monoid_error(names: &[String], err: &MonoidError) -> String {
    let n = |i: usize| names.get(i).map(String::as_str).unwrap_or("?");
    match err {
        MonoidError::NonAssociative(i, j, k) => format!(
            "table is not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c}) for ({a}, {b}, {c})",
            a = n(*i),
            b = n(*j),
            c = n(*k)
        ),
        MonoidError::BadIdentity(i) => format!("identity is not neutral for element {}", n(*i)),
        other => other.to_string(),
    }
}

impl MonoidFile {
    pub fn from_monoid(m: &FiniteMonoid) -> MonoidFile {
        let names = m.element_names();
        MonoidFile {
            name: m.name().to_string(),
            elements: names.to_vec(),
            identity: names[m.identity()].clone(),
            table: m
                .elements()
                .map(|i| m.elements().map(|j| names[m.mul(i, j)].clone()).collect())
                .collect(),
        }
    }

    pub fn to_monoid(&self) -> Result<FiniteMonoid, CliError> {
        // check labels first so errors name them
        for row in &self.table {
            for label in row {
                label_index(&self.elements, label, "table entry")?;
            }
        }
        FiniteMonoid::from_labels(self.name.clone(), self.elements.clone(), &self.table, &self.identity)
            .map_err(|e| CliError::Invalid(describe_monoid_error(&self.elements, &e)))
    }
}

pub fn parse_side(s: &str) -> Result<Side, CliError> {
    match s {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(CliError::Invalid(format!("side must be \"left\" or \"right\", got {other:?}"))),
    }
}

impl ActFile {
    pub fn from_act(act: &Act) -> ActFile {
        let m = act.monoid();
        let names = act.names();
        ActFile {
            monoid: m.name().to_string(),
            side: act.side().as_str().to_string(),
            elements: names.to_vec(),
            action: m
                .elements()
                .map(|s| {
                    let row = act.row(s).iter().map(|&a| names[a].clone()).collect();
                    (m.element_name(s).to_string(), row)
                })
                .collect(),
        }
    }

    pub fn to_act(&self, m: Arc<FiniteMonoid>) -> Result<Act, CliError> {
        if self.monoid != m.name() {
            return Err(CliError::Invalid(format!(
                "act is over monoid {:?} but monoid {:?} was supplied",
                self.monoid,
                m.name()
            )));
        }
        let side = parse_side(&self.side)?;
        for key in self.action.keys() {
            monoid_label(&m, key)?;
        }
        let rows = m
            .element_names()
            .iter()
            .map(|s| {
                let row = self
                    .action
                    .get(s)
                    .ok_or_else(|| CliError::Invalid(format!("action has no row for monoid element {s:?}")))?;
                if row.len() != self.elements.len() {
                    return Err(CliError::Invalid(format!(
                        "row {s:?} has {} entries for {} carrier elements",
                        row.len(),
                        self.elements.len()
                    )));
                }
                row.iter().map(|a| label_index(&self.elements, a, "carrier")).collect()
            })
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        let names = self.elements.clone();
        Act::new(m, side, names.clone(), rows).map_err(|e| CliError::Invalid(describe_act_error(&names, &e)))
    }
}

fn describe_act_error(names: &[String], err: &actalab_core::ActError) -> String {
    use actalab_core::ActError;
    let n = |i: usize| names.get(i).map(String::as_str).unwrap_or("?");
    match err {
        ActError::IdentityLawFail(a) => format!("identity law fails at carrier element {}", n(*a)),
        ActError::CompatibilityFail(s, t, a) => {
            format!("compatibility fails for monoid indices ({s}, {t}) at carrier element {}", n(*a))
        }
        other => other.to_string(),
    }
}

impl SkeletonFile {
    pub fn from_skeleton(m: &FiniteMonoid, sk: &Skeleton) -> SkeletonFile {
        SkeletonFile {
            skeleton: sk.entries().iter().map(|&s| m.element_name(s).to_string()).collect(),
        }
    }

    pub fn to_skeleton(&self, m: &FiniteMonoid) -> Result<Skeleton, CliError> {
        let entries = self
            .skeleton
            .iter()
            .map(|l| monoid_label(m, l))
            .collect::<Result<Vec<_>, _>>()?;
        Skeleton::new(entries).map_err(|e| CliError::Invalid(e.to_string()))
    }
}

fn var_label(v: Var) -> String {
    match v {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        other => format!("v{other}"),
    }
}

fn parse_var(label: &str) -> Result<Var, CliError> {
    match label {
        "x" => Ok(0),
        "y" => Ok(1),
        "z" => Ok(2),
        other => other
            .strip_prefix('v')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| CliError::Invalid(format!("unknown variable {other:?}"))),
    }
}

fn term_json(m: &FiniteMonoid, t: &Term) -> TermJson {
    TermJson {
        word: t.word.iter().map(|&s| m.element_name(s).to_string()).collect(),
        var: var_label(t.var),
    }
}

fn eq_json(m: &FiniteMonoid, (l, r): &Equation) -> EquationJson {
    EquationJson {
        lhs: term_json(m, l),
        rhs: term_json(m, r),
    }
}

fn term_from(m: &FiniteMonoid, t: &TermJson) -> Result<Term, CliError> {
    Ok(Term {
        word: t.word.iter().map(|l| monoid_label(m, l)).collect::<Result<_, _>>()?,
        var: parse_var(&t.var)?,
    })
}

fn eq_from(m: &FiniteMonoid, e: &EquationJson) -> Result<Equation, CliError> {
    Ok((term_from(m, &e.lhs)?, term_from(m, &e.rhs)?))
}

fn eqs_from(m: &FiniteMonoid, eqs: &[EquationJson]) -> Result<Vec<Equation>, CliError> {
    eqs.iter().map(|e| eq_from(m, e)).collect()
}

fn vars_from(labels: &[String]) -> Result<Vec<Var>, CliError> {
    labels.iter().map(|l| parse_var(l)).collect()
}

impl AxiomFile {
    pub fn from_axioms(m: &FiniteMonoid, set: &AxiomSet) -> AxiomFile {
        let name = |s: usize| m.element_name(s).to_string();
        let sentences = set
            .sentences
            .iter()
            .zip(&set.provenance)
            .map(|(sentence, prov)| {
                let body = match &sentence.body {
                    Body::Equation(e) => BodyJson::Equation(eq_json(m, e)),
                    Body::Inequation(e) => BodyJson::Inequation(eq_json(m, e)),
                    Body::Implication {
                        antecedent,
                        exists,
                        disjuncts,
                    } => BodyJson::Implication {
                        antecedent: antecedent.iter().map(|e| eq_json(m, e)).collect(),
                        exists: exists.iter().map(|&v| var_label(v)).collect(),
                        disjuncts: disjuncts.iter().map(|d| d.iter().map(|e| eq_json(m, e)).collect()).collect(),
                    },
                };
                let provenance = match prov {
                    Provenance::ActLaw => ProvenanceJson::ActLaw,
                    Provenance::Cancellable(s) => ProvenanceJson::Cancellable { s: name(*s) },
                    Provenance::Pair { s, t, generators } => {
                        let (pairs, elements) = match generators {
                            GeneratorData::Pairs(p) => (Some(p.iter().map(|&(u, v)| (name(u), name(v))).collect()), None),
                            GeneratorData::Elements(e) => (None, Some(e.iter().map(|&u| name(u)).collect())),
                        };
                        ProvenanceJson::Pair {
                            s: name(*s),
                            t: name(*t),
                            pairs,
                            elements,
                        }
                    }
                };
                SentenceJson {
                    text: actalab_core::axioms::render(m, sentence),
                    universals: sentence.universals.iter().map(|&v| var_label(v)).collect(),
                    body,
                    provenance,
                }
            })
            .collect();
        AxiomFile {
            class: set.class.as_str().to_string(),
            monoid: set.monoid.clone(),
            monoid_order: set.monoid_order,
            sentences,
        }
    }

    pub fn to_axioms(&self, m: &FiniteMonoid) -> Result<AxiomSet, CliError> {
        if self.monoid != m.name() || self.monoid_order != m.len() {
            return Err(CliError::Invalid(format!(
                "sentences are over monoid {:?} of order {}, not {:?} of order {}",
                self.monoid,
                self.monoid_order,
                m.name(),
                m.len()
            )));
        }
        let class: Condition = self.class.parse().map_err(|e: actalab_core::conditions::UnknownCondition| CliError::Invalid(e.to_string()))?;
        let mut sentences = Vec::with_capacity(self.sentences.len());
        let mut provenance = Vec::with_capacity(self.sentences.len());
        for s in &self.sentences {
            let body = match &s.body {
                BodyJson::Equation(e) => Body::Equation(eq_from(m, e)?),
                BodyJson::Inequation(e) => Body::Inequation(eq_from(m, e)?),
                BodyJson::Implication {
                    antecedent,
                    exists,
                    disjuncts,
                } => Body::Implication {
                    antecedent: eqs_from(m, antecedent)?,
                    exists: vars_from(exists)?,
                    disjuncts: disjuncts.iter().map(|d| eqs_from(m, d)).collect::<Result<_, _>>()?,
                },
            };
            sentences.push(Sentence {
                universals: vars_from(&s.universals)?,
                body,
            });
            provenance.push(match &s.provenance {
                ProvenanceJson::ActLaw => Provenance::ActLaw,
                ProvenanceJson::Cancellable { s } => Provenance::Cancellable(monoid_label(m, s)?),
                ProvenanceJson::Pair { s, t, pairs, elements } => {
                    let generators = match (pairs, elements) {
                        (Some(p), None) => GeneratorData::Pairs(
                            p.iter()
                                .map(|(u, v)| Ok((monoid_label(m, u)?, monoid_label(m, v)?)))
                                .collect::<Result<_, CliError>>()?,
                        ),
                        (None, Some(e)) => {
                            GeneratorData::Elements(e.iter().map(|u| monoid_label(m, u)).collect::<Result<_, _>>()?)
                        }
                        _ => {
                            return Err(CliError::Invalid(String::from(
                                "pair provenance needs exactly one of \"pairs\" or \"elements\"",
                            )))
                        }
                    };
                    Provenance::Pair {
                        s: monoid_label(m, s)?,
                        t: monoid_label(m, t)?,
                        generators,
                    }
                }
            });
        }
        Ok(AxiomSet {
            class,
            monoid: self.monoid.clone(),
            monoid_order: self.monoid_order,
            sentences,
            provenance,
        })
    }
}
