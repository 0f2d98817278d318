//! One function per verb. Each returns an [`Output`] holding both renderings
//! of its result; `main` picks one and maps the status to an exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use actalab_core::axioms::{compare_on, emit_axioms, first_failure, render, Divergence, AXIOMATISED};
use actalab_core::conditions::{check, CheckOptions, Condition, ConditionReport, Verdict, Witness};
use actalab_core::enumerate::{acts_of_size, EnumOptions};
use actalab_core::replacement::{replace_all, replacement_skeletons, ReplacementError, ReplacementReport};
use actalab_core::standard::standard_tossing_act;
use actalab_core::tensor::{Tossing, TossingSearch};
use actalab_core::zoo::{self, FamilySpec, Monotonicity};
use actalab_core::{Act, FiniteMonoid, Side, Skeleton, TensorProduct};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli::*;
use crate::error::CliError;
use crate::formats::{parse_side, read_json, to_pretty, ActFile, AxiomFile, MonoidFile, SkeletonFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A condition, search or comparison came out negative.
    Fails,
}

#[derive(Debug)]
pub struct Output {
    pub status: Status,
    pub text: String,
    pub json: Value,
    /// Artifact requested with `-o`.
    pub file: Option<(PathBuf, String)>,
}

impl Output {
    fn new(status: Status, text: String, json: Value) -> Output {
        Output {
            status,
            text,
            json,
            file: None,
        }
    }

    fn with_file(mut self, path: Option<PathBuf>, contents: String) -> Output {
        self.file = path.map(|p| (p, contents));
        self
    }
}

pub const DEFAULT_MAX_CELLS: u128 = 100_000_000;

/// The cap from `ACTALAB_MAX_CELLS`, accepting plain integers and `1e8`.
pub fn max_cells() -> Result<u128, CliError> {
    match std::env::var("ACTALAB_MAX_CELLS") {
        Err(_) => Ok(DEFAULT_MAX_CELLS),
        Ok(raw) => {
            let raw = raw.trim();
            raw.parse::<u128>()
                .ok()
                .or_else(|| raw.parse::<f64>().ok().filter(|f| f.is_finite() && *f >= 0.0).map(|f| f as u128))
                .ok_or_else(|| CliError::usage("ACTALAB_MAX_CELLS", format!("not a cell count: {raw:?}")))
        }
    }
}

/// Rejects work estimated at `|S|²·|A|·|B|` cells above the cap.
fn guard(monoid: usize, a: usize, b: usize) -> Result<(), CliError> {
    let cap = max_cells()?;
    let estimate = (monoid as u128).pow(2) * a as u128 * b as u128;
    if estimate > cap {
        return Err(CliError::TooLarge {
            estimate,
            cap,
            detail: format!("|S| = {monoid}, |A| = {a}, |B| = {b}"),
        });
    }
    Ok(())
}

fn pool(threads: u16) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads as usize)
        .build()
        .expect("thread pool starts")
}

fn parse_condition(s: &str) -> Result<Condition, CliError> {
    Condition::from_str(s).map_err(|e| CliError::usage("--condition", e.to_string()))
}

fn parse_class(s: &str) -> Result<Condition, CliError> {
    let c = Condition::from_str(s).map_err(|e| CliError::usage("--class", e.to_string()))?;
    Ok(c)
}

fn load_monoid_spec(spec: &str) -> Result<FiniteMonoid, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        let file: MonoidFile = read_json(path)?;
        return file.to_monoid();
    }
    let family = FamilySpec::from_str(spec).map_err(|e| {
        CliError::usage("--monoid", format!("{spec:?} is neither a readable file nor a family name ({e})"))
    })?;
    family.build().map_err(|e| CliError::usage("--monoid", e.to_string()))
}

fn require_monoid(source: &MonoidSource) -> Result<Arc<FiniteMonoid>, CliError> {
    match &source.monoid {
        Some(spec) => Ok(Arc::new(load_monoid_spec(spec)?)),
        None => Err(CliError::usage("--monoid", "a monoid file or family name is required")),
    }
}

/// Loads an act, resolving its monoid from `--monoid` or, failing that, from
/// the family name recorded in the file.
fn load_act(path: &Path, source: &MonoidSource) -> Result<Act, CliError> {
    let file: ActFile = read_json(path)?;
    let monoid = match &source.monoid {
        Some(spec) => load_monoid_spec(spec)?,
        None => FamilySpec::from_str(&file.monoid)
            .ok()
            .and_then(|f| f.build().ok())
            .ok_or_else(|| {
                CliError::usage(
                    "--monoid",
                    format!("{}: act refers to monoid {:?}; pass its file with --monoid", path.display(), file.monoid),
                )
            })?,
    };
    file.to_act(Arc::new(monoid))
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn load_left_act(path: &Path, source: &MonoidSource) -> Result<Act, CliError> {
    let act = load_act(path, source)?;
    if act.side() != Side::Left {
        return Err(CliError::Invalid(format!("{}: expected a left act", path.display())));
    }
    Ok(act)
}

fn label_pair(act: &Act, spec: &str, flag: &'static str) -> Result<usize, CliError> {
    act.index_of(spec.trim())
        .ok_or_else(|| CliError::usage(flag, format!("no carrier element {:?}", spec.trim())))
}

fn parse_point(a: &Act, b: &Act, spec: &str, flag: &'static str) -> Result<(usize, usize), CliError> {
    let (x, y) = spec
        .split_once(',')
        .ok_or_else(|| CliError::usage(flag, format!("expected `a,b`, got {spec:?}")))?;
    Ok((label_pair(a, x, flag)?, label_pair(b, y, flag)?))
}

fn monoid_element(m: &FiniteMonoid, label: &str, flag: &'static str) -> Result<usize, CliError> {
    m.index_of(label)
        .ok_or_else(|| CliError::usage(flag, format!("no element {label:?} in {}", m.name())))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Monoid(MonoidCmd::Validate { file }) => monoid_validate(file),
        Command::Act(cmd) => act(cmd),
        Command::Tensor(args) => tensor(args),
        Command::Tossing(TossingCmd::Find {
            right,
            left,
            from,
            to,
            monoid,
        }) => tossing_find(right, left, from, to, monoid),
        Command::Tossing(TossingCmd::Standard {
            monoid,
            skeleton,
            entries,
            output,
        }) => tossing_standard(monoid, skeleton.as_deref(), entries.as_deref(), output.clone()),
        Command::Check(args) => check_cmd(args),
        Command::Axioms(cmd) => axioms(cmd, cli.threads),
        Command::Replace(cmd) => replace(cmd),
        Command::Zoo(cmd) => zoo_cmd(cmd, cli.threads),
        Command::Enumerate(args) => enumerate(args, cli.threads),
    }
}

fn monoid_validate(path: &Path) -> Result<Output, CliError> {
    let file: MonoidFile = read_json(path)?;
    let m = file
        .to_monoid()
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let names = m.element_names();
    let cancellable: Vec<&str> = m.left_cancellable().into_iter().map(|s| names[s].as_str()).collect();
    let text = format!(
        "{}: valid monoid {:?} of order {}, identity {}{}\nleft cancellable: {}\n",
        path.display(),
        m.name(),
        m.len(),
        names[m.identity()],
        if m.is_group() { ", a group" } else { "" },
        cancellable.join(" ")
    );
    let json = json!({
        "valid": true,
        "name": m.name(),
        "order": m.len(),
        "identity": names[m.identity()],
        "group": m.is_group(),
        "left_cancellable": cancellable,
    });
    Ok(Output::new(Status::Ok, text, json))
}

fn act_artifact(act: &Act, output: Option<PathBuf>) -> Output {
    let file = ActFile::from_act(act);
    let contents = to_pretty(&file);
    let json = serde_json::to_value(&file).expect("act serializes");
    Output::new(Status::Ok, contents.clone(), json).with_file(output, contents)
}

fn act(cmd: &ActCmd) -> Result<Output, CliError> {
    match cmd {
        ActCmd::Validate { file, monoid } => {
            let act = load_act(file, monoid)?;
            let text = format!(
                "{}: valid {} act over {} with {} elements\n",
                file.display(),
                act.side().as_str(),
                act.monoid().name(),
                act.len()
            );
            let json = json!({
                "valid": true,
                "monoid": act.monoid().name(),
                "side": act.side().as_str(),
                "size": act.len(),
            });
            Ok(Output::new(Status::Ok, text, json))
        }
        ActCmd::Regular { monoid, side, output } => {
            let m = require_monoid(monoid)?;
            let side = parse_side(side).map_err(|e| CliError::usage("--side", e.to_string()))?;
            Ok(act_artifact(&Act::regular(m, side), output.clone()))
        }
        ActCmd::Free { monoid, rank, output } => {
            let m = require_monoid(monoid)?;
            if *rank == 0 {
                return Err(CliError::usage("--rank", "acts must be non-empty"));
            }
            guard(m.len(), m.len() * rank, 1)?;
            Ok(act_artifact(&Act::free_right(m, *rank), output.clone()))
        }
    }
}

fn load_factors(right: &Path, left: &Path, monoid: &MonoidSource) -> Result<(Act, Act), CliError> {
    let a = load_act(right, monoid)?;
    let b = load_act(left, monoid)?;
    if a.side() != Side::Right || b.side() != Side::Left {
        return Err(CliError::Invalid(String::from(
            "--right must be a right act and --left a left act",
        )));
    }
    if a.monoid() != b.monoid() {
        return Err(CliError::Invalid(String::from("the two acts are over different monoids")));
    }
    guard(a.monoid().len(), a.len(), b.len())?;
    Ok((a, b))
}

fn tensor(args: &TensorArgs) -> Result<Output, CliError> {
    let (a, b) = load_factors(&args.right, &args.left, &args.monoid)?;
    let t = TensorProduct::new(&a, &b).map_err(|e| CliError::Invalid(e.to_string()))?;
    let classes: Vec<Vec<(String, String)>> = t
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(|(x, y)| (a.name(x).to_string(), b.name(y).to_string())).collect())
        .collect();
    let mut text = format!("{} classes in A ⊗ B ({} pairs)\n", classes.len(), a.len() * b.len());
    for (i, class) in classes.iter().enumerate() {
        let members: Vec<String> = class.iter().map(|(x, y)| format!("{x}⊗{y}")).collect();
        let _ = writeln!(text, "  [{i}] {}", members.join(", "));
    }
    let json = json!({ "class_count": classes.len(), "classes": classes });
    Ok(Output::new(Status::Ok, text, json))
}

fn tossing_json(m: &FiniteMonoid, a: &Act, b: &Act, tossing: &Tossing) -> Value {
    json!({
        "skeleton": SkeletonFile::from_skeleton(m, &tossing.skeleton).skeleton,
        "start": [a.name(tossing.start.0), b.name(tossing.start.1)],
        "end": [a.name(tossing.end.0), b.name(tossing.end.1)],
        "a_column": tossing.a_column().iter().map(|&x| a.name(x)).collect::<Vec<_>>(),
        "b_witnesses": tossing.b_witnesses.iter().map(|&y| b.name(y)).collect::<Vec<_>>(),
    })
}

/// Two columns: the `A` equations on the left, the `B` equations on the
/// right, one row per skeleton step.
fn tossing_table(m: &FiniteMonoid, a: &Act, b: &Act, tossing: &Tossing) -> String {
    let sk = &tossing.skeleton;
    let col = tossing.a_column();
    let bw = &tossing.b_witnesses;
    let s = |i: usize| m.element_name(sk.s(i));
    let t = |i: usize| m.element_name(sk.t(i));
    let mut rows = vec![(String::new(), format!("{} = {}·{}", b.name(tossing.start.1), s(0), b.name(bw[0])))];
    let len = sk.len();
    for i in 0..len {
        let left = format!("{}·{} = {}·{}", a.name(col[i]), s(i), a.name(col[i + 1]), t(i));
        let right = if i + 1 < len {
            format!("{}·{} = {}·{}", t(i), b.name(bw[i]), s(i + 1), b.name(bw[i + 1]))
        } else {
            format!("{}·{} = {}", t(i), b.name(bw[i]), b.name(tossing.end.1))
        };
        rows.push((left, right));
    }
    let width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (l, r) in rows {
        let pad = width - l.chars().count();
        let _ = writeln!(out, "  {l}{} | {r}", " ".repeat(pad));
    }
    out
}

fn tossing_find(right: &Path, left: &Path, from: &str, to: &str, monoid: &MonoidSource) -> Result<Output, CliError> {
    let (a, b) = load_factors(right, left, monoid)?;
    let start = parse_point(&a, &b, from, "--from")?;
    let end = parse_point(&a, &b, to, "--to")?;
    let search = TossingSearch::new(&a, &b, start).map_err(|e| CliError::Invalid(e.to_string()))?;
    let m = a.monoid();
    match search.tossing_to(end) {
        Some(tossing) => {
            let json = json!({ "found": true, "tossing": tossing_json(m, &a, &b, &tossing) });
            let text = format!(
                "{from} and {to} are equal in A ⊗ B; tossing of length {}:\n{}\n{}",
                tossing.skeleton.len(),
                tossing_table(m, &a, &b, &tossing),
                to_pretty(&json["tossing"])
            );
            Ok(Output::new(Status::Ok, text, json))
        }
        None => Ok(Output::new(
            Status::Fails,
            format!("{from} and {to} are distinct in A ⊗ B; no tossing exists\n"),
            json!({ "found": false }),
        )),
    }
}

fn tossing_standard(
    monoid: &MonoidSource,
    skeleton: Option<&Path>,
    entries: Option<&str>,
    output: Option<PathBuf>,
) -> Result<Output, CliError> {
    let m = require_monoid(monoid)?;
    let file = match (skeleton, entries) {
        (Some(path), _) => read_json::<SkeletonFile>(path)?,
        (None, Some(list)) => SkeletonFile {
            skeleton: list.split(',').map(|s| s.trim().to_string()).collect(),
        },
        (None, None) => return Err(CliError::usage("--skeleton", "give a skeleton file or --entries")),
    };
    let sk = file.to_skeleton(&m)?;
    guard(m.len(), m.len() * (sk.len() + 1), 1)?;
    let st = standard_tossing_act(m.clone(), &sk);
    let handles: Vec<&str> = st.handles.iter().map(|&h| st.act.name(h)).collect();
    let act_file = ActFile::from_act(&st.act);
    let contents = to_pretty(&act_file);
    let json = json!({ "skeleton": file.skeleton, "handles": handles, "act": act_file });
    let text = format!(
        "standard tossing for skeleton [{}]: {} elements, handles {}\n{}",
        file.skeleton.join(", "),
        st.act.len(),
        handles.join(" "),
        contents
    );
    Ok(Output::new(Status::Ok, text, json).with_file(output, contents))
}

fn witness_json(b: &Act, w: &Witness) -> Value {
    let m = b.monoid();
    let s = |x: usize| m.element_name(x).to_string();
    let a = |x: usize| b.name(x).to_string();
    match w {
        Witness::Instance { condition, instance } => json!({
            "kind": "instance",
            "condition": condition.as_str(),
            "s": s(instance.s), "t": s(instance.t), "a": a(instance.a), "b": a(instance.b),
        }),
        Witness::Ideal {
            generators,
            first,
            second,
        } => json!({
            "kind": "ideal",
            "generators": generators.iter().map(|&g| s(g)).collect::<Vec<_>>(),
            "first": [s(first.0), a(first.1)],
            "second": [s(second.0), a(second.1)],
        }),
        Witness::Skeleton { skeleton, b: y, b2 } => json!({
            "kind": "skeleton",
            "skeleton": SkeletonFile::from_skeleton(m, skeleton).skeleton,
            "b": a(*y),
            "b2": a(*b2),
        }),
    }
}

fn witness_text(b: &Act, w: &Witness) -> String {
    let m = b.monoid();
    let s = |x: usize| m.element_name(x);
    match w {
        Witness::Instance { condition, instance } => {
            let (st, tt, x, y) = (s(instance.s), s(instance.t), b.name(instance.a), b.name(instance.b));
            let hypothesis = match condition {
                Condition::TorsionFree => format!("{st}·{x} = {st}·{y} with {st} left cancellable and {x} ≠ {y}"),
                Condition::E | Condition::Ep => format!("{st}·{x} = {tt}·{x}"),
                Condition::Pwp => format!("{tt}·{x} = {tt}·{y}"),
                _ => format!("{st}·{x} = {tt}·{y}"),
            };
            format!("{hypothesis} has no interpolant ({condition} fails at s = {st}, t = {tt}, a = {x}, b = {y})")
        }
        Witness::Ideal {
            generators,
            first,
            second,
        } => {
            let gens: Vec<&str> = generators.iter().map(|&g| s(g)).collect();
            format!(
                "in the ideal generated by {{{}}}, {}⊗{} and {}⊗{} are merged in S ⊗ B but not in K ⊗ B",
                gens.join(", "),
                s(first.0),
                b.name(first.1),
                s(second.0),
                b.name(second.1)
            )
        }
        Witness::Skeleton { skeleton, b: y, b2 } => {
            let entries: Vec<&str> = skeleton.entries().iter().map(|&e| s(e)).collect();
            format!(
                "skeleton [{}] connects {} and {} in B, but [x]⊗{} ≠ [x']⊗{} over [x]S ∪ [x']S",
                entries.join(", "),
                b.name(*y),
                b.name(*b2),
                b.name(*y),
                b.name(*b2)
            )
        }
    }
}

fn report_json(b: &Act, report: &ConditionReport) -> Value {
    let m = b.monoid();
    let interpolants: Vec<Value> = report
        .interpolants
        .iter()
        .map(|ip| {
            json!({
                "s": m.element_name(ip.instance.s), "t": m.element_name(ip.instance.t),
                "a": b.name(ip.instance.a), "b": b.name(ip.instance.b),
                "u": m.element_name(ip.u), "v": m.element_name(ip.v), "c": b.name(ip.c),
            })
        })
        .collect();
    json!({
        "condition": report.condition.as_str(),
        "verdict": report.verdict.as_str(),
        "witness": report.witness.as_ref().map(|w| witness_json(b, w)),
        "interpolants": interpolants,
    })
}

fn check_cmd(args: &CheckArgs) -> Result<Output, CliError> {
    let condition = parse_condition(&args.condition)?;
    let b = load_left_act(&args.act, &args.monoid)?;
    let n = b.monoid().len();
    guard(n, b.len(), b.len())?;
    if condition == Condition::Flat && args.flat_bound == 0 {
        return Err(CliError::usage("--flat-bound", "must be at least 1"));
    }
    let options = CheckOptions {
        interpolants: args.interpolants,
        flat_bound: args.flat_bound,
    };
    let report = check(&b, condition, options);
    let mut text = format!("condition {condition}: {}", report.verdict.as_str());
    if report.verdict == Verdict::PassesUpToBound {
        let _ = write!(text, " (no refutation with skeletons of length ≤ {}; inconclusive)", args.flat_bound);
    }
    text.push('\n');
    if let Some(w) = &report.witness {
        let _ = writeln!(text, "  {}", witness_text(&b, w));
    }
    let m = b.monoid();
    for ip in &report.interpolants {
        let _ = writeln!(
            text,
            "  s = {}, t = {}, a = {}, b = {}: u = {}, v = {}, c = {}",
            m.element_name(ip.instance.s),
            m.element_name(ip.instance.t),
            b.name(ip.instance.a),
            b.name(ip.instance.b),
            m.element_name(ip.u),
            m.element_name(ip.v),
            b.name(ip.c)
        );
    }
    let status = if report.failed() { Status::Fails } else { Status::Ok };
    Ok(Output::new(status, text, report_json(&b, &report)))
}

fn axiomatised_class(s: &str) -> Result<Condition, CliError> {
    let class = parse_class(s)?;
    if !AXIOMATISED.contains(&class) {
        let names: Vec<&str> = AXIOMATISED.iter().map(|c| c.as_str()).collect();
        return Err(CliError::usage(
            "--class",
            format!("no sentences for {class}; expected one of {}", names.join(", ")),
        ));
    }
    Ok(class)
}

/// All left acts up to `max_size`, built shard by shard in parallel and
/// concatenated in enumeration order.
fn all_left_acts(m: &Arc<FiniteMonoid>, side: Side, max_size: usize, options: EnumOptions, threads: u16) -> Vec<Act> {
    pool(threads).install(|| {
        (1..=max_size)
            .flat_map(|size| {
                let base = acts_of_size(m.clone(), side, size, options);
                let shards = base.first_row_shards();
                shards
                    .into_par_iter()
                    .map(|row| {
                        acts_of_size(m.clone(), side, size, options)
                            .shard(&row)
                            .map(|it| it.collect::<Vec<_>>())
                            .unwrap_or_default()
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect::<Vec<_>>()
            })
            .collect()
    })
}

fn axioms(cmd: &AxiomsCmd, threads: u16) -> Result<Output, CliError> {
    match cmd {
        AxiomsCmd::Emit { class, monoid, output } => {
            let class = axiomatised_class(class)?;
            let m = require_monoid(monoid)?;
            guard(m.len(), m.len(), m.len())?;
            let set = emit_axioms(&m, class);
            let file = AxiomFile::from_axioms(&m, &set);
            let contents = to_pretty(&file);
            let mut text = format!("{} sentences for class {class} over {}\n", set.sentences.len(), m.name());
            for s in &set.sentences {
                let _ = writeln!(text, "  {}", render(&m, s));
            }
            let json = serde_json::to_value(&file).expect("axioms serialize");
            Ok(Output::new(Status::Ok, text, json).with_file(output.clone(), contents))
        }
        AxiomsCmd::Modelcheck { act, sentences, monoid } => {
            let b = load_left_act(act, monoid)?;
            let m = b.monoid();
            let file: AxiomFile = read_json(sentences)?;
            let set = file
                .to_axioms(m)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", sentences.display())))?;
            guard(m.len(), b.len(), b.len())?;
            match first_failure(&b, &set) {
                None => Ok(Output::new(
                    Status::Ok,
                    format!("all {} sentences hold\n", set.sentences.len()),
                    json!({ "holds": true, "sentences": set.sentences.len() }),
                )),
                Some((i, assignment)) => {
                    let values: Vec<&str> = assignment.iter().map(|&x| b.name(x)).collect();
                    let sentence = render(m, &set.sentences[i]);
                    let vars = ["x", "y", "z"];
                    let binding: Vec<String> = values
                        .iter()
                        .enumerate()
                        .map(|(v, val)| format!("{} = {val}", vars.get(v).copied().unwrap_or("v")))
                        .collect();
                    Ok(Output::new(
                        Status::Fails,
                        format!("sentence {i} fails: {sentence}\n  at {}\n", binding.join(", ")),
                        json!({ "holds": false, "sentence": i, "text": sentence, "assignment": values }),
                    ))
                }
            }
        }
        AxiomsCmd::Verify {
            class,
            monoid,
            max_size,
        } => {
            let class = axiomatised_class(class)?;
            let monoids: Vec<Arc<FiniteMonoid>> = match &monoid.monoid {
                Some(_) => vec![require_monoid(monoid)?],
                None => zoo::zoo_set().into_iter().map(Arc::new).collect(),
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut agree = true;
            for m in monoids {
                guard(m.len(), *max_size, *max_size)?;
                let set = emit_axioms(&m, class);
                let acts = all_left_acts(&m, Side::Left, *max_size, EnumOptions::default(), threads);
                let outcomes: Vec<Result<bool, Divergence>> =
                    pool(threads).install(|| acts.par_iter().map(|b| compare_on(b, class, &set)).collect());
                let in_class = outcomes.iter().filter(|o| matches!(o, Ok(true))).count();
                let divergences: Vec<&Divergence> = outcomes.iter().filter_map(|o| o.as_ref().err()).collect();
                agree &= divergences.is_empty();
                let _ = writeln!(
                    text,
                    "{}: {} acts of size ≤ {max_size}, {in_class} in class {class}, {}",
                    m.name(),
                    acts.len(),
                    if divergences.is_empty() {
                        String::from("sentences agree")
                    } else {
                        format!("{} divergences", divergences.len())
                    }
                );
                for d in divergences.iter().take(3) {
                    let _ = writeln!(
                        text,
                        "  condition {} but sentences {} on {:?}",
                        d.condition_holds,
                        d.axioms_hold,
                        d.act.flat_table()
                    );
                }
                rows.push(json!({
                    "monoid": m.name(),
                    "acts_checked": acts.len(),
                    "in_class": in_class,
                    "divergences": divergences.iter().map(|d| json!({
                        "act": ActFile::from_act(&d.act),
                        "condition_holds": d.condition_holds,
                        "axioms_hold": d.axioms_hold,
                    })).collect::<Vec<_>>(),
                }));
            }
            let status = if agree { Status::Ok } else { Status::Fails };
            let json = json!({ "class": class.as_str(), "max_size": max_size, "agrees": agree, "monoids": rows });
            Ok(Output::new(status, text, json))
        }
    }
}

fn replacement_json(m: &FiniteMonoid, report_set: &actalab_core::replacement::ReplacementSet) -> Value {
    json!({
        "class": report_set.class.as_str(),
        "s": m.element_name(report_set.s),
        "t": m.element_name(report_set.t),
        "trigger": SkeletonFile::from_skeleton(m, &report_set.trigger).skeleton,
        "skeletons": report_set.skeletons.iter().map(|k| SkeletonFile::from_skeleton(m, k).skeleton).collect::<Vec<_>>(),
    })
}

fn skeleton_text(m: &FiniteMonoid, sk: &Skeleton) -> String {
    let e: Vec<&str> = sk.entries().iter().map(|&x| m.element_name(x)).collect();
    format!("[{}]", e.join(", "))
}

fn replace(cmd: &ReplaceCmd) -> Result<Output, CliError> {
    let map_err = |e: ReplacementError| match e {
        ReplacementError::Unsupported(_) | ReplacementError::NeedsEqualPair => CliError::usage("--class", e.to_string()),
        other => CliError::Invalid(other.to_string()),
    };
    match cmd {
        ReplaceCmd::Compute { class, monoid, s, t } => {
            let class = parse_class(class)?;
            let m = require_monoid(monoid)?;
            let (s, t) = (monoid_element(&m, s, "--s")?, monoid_element(&m, t, "--t")?);
            let set = replacement_skeletons(&m, s, t, class).map_err(map_err)?;
            let mut text = format!(
                "trigger {} for class {class}: {} replacement skeletons\n",
                skeleton_text(&m, &set.trigger),
                set.skeletons.len()
            );
            for k in &set.skeletons {
                let _ = writeln!(text, "  {}", skeleton_text(&m, k));
            }
            Ok(Output::new(Status::Ok, text, replacement_json(&m, &set)))
        }
        ReplaceCmd::Verify {
            class,
            act,
            monoid,
            s,
            t,
        } => {
            let class = parse_class(class)?;
            let b = load_left_act(act, monoid)?;
            let m = b.monoid_arc().clone();
            guard(m.len(), b.len(), b.len())?;
            let pairs: Vec<(usize, usize)> = match (s, t) {
                (Some(s), Some(t)) => vec![(monoid_element(&m, s, "--s")?, monoid_element(&m, t, "--t")?)],
                _ => m
                    .elements()
                    .flat_map(|s| m.elements().map(move |t| (s, t)))
                    .filter(|&(s, t)| class != Condition::Pwp || s == t)
                    .collect(),
            };
            let sets = pairs
                .iter()
                .map(|&(s, t)| replacement_skeletons(&m, s, t, class))
                .collect::<Result<Vec<_>, _>>()
                .map_err(map_err)?;
            if !check(&b, class, CheckOptions::default()).holds() {
                return Ok(Output::new(
                    Status::Fails,
                    format!("act does not satisfy condition {class}; replacement does not apply\n"),
                    json!({ "applicable": false, "class": class.as_str() }),
                ));
            }
            let reports: Vec<ReplacementReport> = sets.into_iter().map(|set| replace_all(&b, set)).collect();
            let ok = reports.iter().all(ReplacementReport::succeeded);
            let mut text = String::new();
            let mut rows = Vec::new();
            for r in &reports {
                let (s, t) = (m.element_name(r.set.s), m.element_name(r.set.t));
                match r.unreplaced {
                    None => {
                        let _ = writeln!(text, "s = {s}, t = {t}: {} trigger instances replaced", r.replaced.len());
                    }
                    Some((x, y)) => {
                        let _ = writeln!(text, "s = {s}, t = {t}: instance a = {}, b = {} not replaced", b.name(x), b.name(y));
                    }
                }
                rows.push(json!({
                    "set": replacement_json(&m, &r.set),
                    "replaced": r.replaced.iter().map(|x| json!({
                        "a": b.name(x.a),
                        "b": b.name(x.b),
                        "skeleton": x.skeleton,
                    })).collect::<Vec<_>>(),
                    "unreplaced": r.unreplaced.map(|(x, y)| [b.name(x), b.name(y)]),
                }));
            }
            let status = if ok { Status::Ok } else { Status::Fails };
            Ok(Output::new(
                status,
                text,
                json!({ "applicable": true, "class": class.as_str(), "succeeded": ok, "pairs": rows }),
            ))
        }
    }
}

fn parse_range(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::usage("--range", format!("expected lo..hi, got {spec:?}"));
    let (lo, hi) = spec.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn zoo_cmd(cmd: &ZooCmd, threads: u16) -> Result<Output, CliError> {
    match cmd {
        ZooCmd::Build { family, n, k0, output } => {
            let spec = match (FamilySpec::with_param(family, *n), k0) {
                (Ok(FamilySpec::SemilatticeOfGroups(a, _)), Some(k0)) => FamilySpec::SemilatticeOfGroups(a, *k0),
                (Ok(_), Some(_)) => return Err(CliError::usage("--k0", "only semilattice_of_groups takes --k0")),
                (Ok(spec), None) => spec,
                (Err(e), _) => return Err(CliError::usage("--family", e.to_string())),
            };
            let m = spec.build().map_err(|e| CliError::usage("--n", e.to_string()))?;
            let file = MonoidFile::from_monoid(&m);
            let contents = to_pretty(&file);
            let json = serde_json::to_value(&file).expect("monoid serializes");
            Ok(Output::new(Status::Ok, contents.clone(), json).with_file(output.clone(), contents))
        }
        ZooCmd::Report { family, range } => {
            let (lo, hi) = parse_range(range)?;
            // one report per parameter, computed in parallel and merged in order
            let parts = pool(threads)
                .install(|| {
                    (lo..=hi)
                        .into_par_iter()
                        .map(|n| zoo::family_report(family, [n]))
                        .collect::<Result<Vec<_>, _>>()
                })
                .map_err(|e| CliError::usage("--family", e.to_string()))?;
            let rows: Vec<zoo::ReportRow> = parts.into_iter().flat_map(|p| p.rows).collect();
            let trend = |f: fn(&zoo::ReportRow) -> usize| Monotonicity::of(&rows.iter().map(f).collect::<Vec<_>>());
            let report = zoo::FamilyReport {
                family: family.clone(),
                solutions_trend: trend(|r| r.solutions),
                equalizer_trend: trend(|r| r.equalizer),
                intersection_trend: trend(|r| r.intersection),
                rows,
            };
            let mut text = format!("{:<28} {:>5} {:>8} {:>10} {:>10} {:>13}\n", "instance", "|S|", "(s, t)", "R(s,t)", "r(s,t)", "sS ∩ tS");
            for r in &report.rows {
                let _ = writeln!(
                    text,
                    "{:<28} {:>5} {:>8} {:>10} {:>10} {:>13}",
                    r.spec.to_string(),
                    r.monoid_size,
                    format!("({}, {})", r.s, r.t),
                    r.solutions,
                    r.equalizer,
                    r.intersection
                );
            }
            let _ = writeln!(
                text,
                "trend: R(s,t) {}, r(s,t) {}, sS ∩ tS {}",
                report.solutions_trend.as_str(),
                report.equalizer_trend.as_str(),
                report.intersection_trend.as_str()
            );
            let json = json!({
                "family": report.family,
                "rows": report.rows.iter().map(|r| json!({
                    "instance": r.spec.to_string(),
                    "order": r.monoid_size,
                    "s": r.s,
                    "t": r.t,
                    "solutions_generators": r.solutions,
                    "equalizer_generators": r.equalizer,
                    "intersection_generators": r.intersection,
                })).collect::<Vec<_>>(),
                "trends": {
                    "solutions": report.solutions_trend.as_str(),
                    "equalizer": report.equalizer_trend.as_str(),
                    "intersection": report.intersection_trend.as_str(),
                },
            });
            Ok(Output::new(Status::Ok, text, json))
        }
        ZooCmd::List => {
            let families = ["trivial", "cyclic_group", "inverse_omega_chain", "null_adjoined", "semilattice_of_groups", "nat_min_adjoined"];
            let sweep: Vec<String> = zoo::ZOO_SET.iter().map(|f| f.to_string()).collect();
            let text = format!("families: {}\nsweep set: {}\n", families.join(", "), sweep.join(", "));
            Ok(Output::new(Status::Ok, text, json!({ "families": families, "sweep_set": sweep })))
        }
    }
}

fn enumerate(args: &EnumerateArgs, threads: u16) -> Result<Output, CliError> {
    let m = require_monoid(&args.monoid)?;
    let side = parse_side(&args.side).map_err(|e| CliError::usage("--side", e.to_string()))?;
    let condition = args.condition.as_deref().map(parse_condition).transpose()?;
    if condition.is_some() && side != Side::Left {
        return Err(CliError::usage("--condition", "conditions are stated for left acts"));
    }
    if args.max_size == 0 {
        return Err(CliError::usage("--max-size", "acts must be non-empty"));
    }
    guard(m.len(), args.max_size, args.max_size)?;
    let options = EnumOptions {
        up_to_iso: args.up_to_iso,
    };
    let acts = all_left_acts(&m, side, args.max_size, options, threads);
    let keep: Vec<bool> = match condition {
        Some(c) => pool(threads).install(|| acts.par_iter().map(|b| !check(b, c, CheckOptions::default()).failed()).collect()),
        None => vec![true; acts.len()],
    };
    let mut counts = vec![0usize; args.max_size];
    for (b, &k) in acts.iter().zip(&keep) {
        if k {
            counts[b.len() - 1] += 1;
        }
    }
    let mut text = format!(
        "{} acts over {}{}{}\n",
        side.as_str(),
        m.name(),
        if args.up_to_iso { ", up to isomorphism" } else { "" },
        condition.map(|c| format!(", satisfying {c}")).unwrap_or_default()
    );
    for (i, c) in counts.iter().enumerate() {
        let _ = writeln!(text, "  size {}: {c}", i + 1);
    }
    let kept: Vec<&Act> = acts.iter().zip(&keep).filter(|(_, &k)| k).map(|(b, _)| b).collect();
    let _ = writeln!(text, "  total: {}", kept.len());
    let mut json = json!({
        "monoid": m.name(),
        "side": side.as_str(),
        "up_to_iso": args.up_to_iso,
        "condition": condition.map(|c| c.as_str()),
        "counts": counts,
        "total": kept.len(),
    });
    if args.list {
        for b in &kept {
            let _ = writeln!(text, "  {:?}", b.flat_table());
        }
        json["acts"] = serde_json::to_value(kept.iter().map(|b| ActFile::from_act(b)).collect::<Vec<_>>())
            .expect("acts serialize");
    }
    Ok(Output::new(Status::Ok, text, json))
}
