use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "actalab", version, about = "Finite monoids, finite S-acts, tensor products and flatness conditions")]
pub struct Cli {
    /// Print structured JSON on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for sweeps. Results are aggregated in input order.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monoid files.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Act files.
    #[command(subcommand)]
    Act(ActCmd),
    /// Classes of the tensor product of a right act and a left act.
    Tensor(TensorArgs),
    /// Tossings between pairs of a tensor product.
    #[command(subcommand)]
    Tossing(TossingCmd),
    /// Decide a condition on a left act.
    Check(CheckArgs),
    /// First-order axioms for a class of acts.
    #[command(subcommand)]
    Axioms(AxiomsCmd),
    /// Replacement skeletons for trigger tossings.
    #[command(subcommand)]
    Replace(ReplaceCmd),
    /// The example monoid families.
    #[command(subcommand)]
    Zoo(ZooCmd),
    /// Count, filter or list all acts up to a size.
    Enumerate(EnumerateArgs),
}

/// A monoid JSON file, or a family name such as `null_adjoined(3)`.
#[derive(Debug, Args)]
pub struct MonoidSource {
    #[arg(long, value_name = "FILE|FAMILY")]
    pub monoid: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum MonoidCmd {
    /// Check that a table is a monoid.
    Validate { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ActCmd {
    /// Check that a table satisfies the act laws.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        monoid: MonoidSource,
    },
    /// The monoid acting on itself.
    Regular {
        #[command(flatten)]
        monoid: MonoidSource,
        #[arg(long, default_value = "left")]
        side: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The free right act on `rank` generators.
    Free {
        #[command(flatten)]
        monoid: MonoidSource,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct TensorArgs {
    /// The right act `A`.
    #[arg(long)]
    pub right: PathBuf,
    /// The left act `B`.
    #[arg(long)]
    pub left: PathBuf,
    #[command(flatten)]
    pub monoid: MonoidSource,
}

#[derive(Debug, Subcommand)]
pub enum TossingCmd {
    /// Search for a tossing from `(a, b)` to `(a', b')`.
    Find {
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        left: PathBuf,
        /// `a,b` as carrier labels.
        #[arg(long)]
        from: String,
        /// `a',b'` as carrier labels.
        #[arg(long)]
        to: String,
        #[command(flatten)]
        monoid: MonoidSource,
    },
    /// The finitely presented right act attached to a skeleton.
    Standard {
        #[command(flatten)]
        monoid: MonoidSource,
        /// Skeleton JSON file.
        #[arg(long, conflicts_with = "entries")]
        skeleton: Option<PathBuf>,
        /// Skeleton as comma-separated labels `s1,t1,...`.
        #[arg(long)]
        entries: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// tf, p, e, ep, w, pwp, sf, pwf, wf or flat.
    #[arg(long)]
    pub condition: String,
    #[arg(long)]
    pub act: PathBuf,
    #[command(flatten)]
    pub monoid: MonoidSource,
    /// Longest skeleton the flatness refutation search tries.
    #[arg(long, default_value_t = 2)]
    pub flat_bound: usize,
    /// Report an interpolant for every hypothesis instance.
    #[arg(long)]
    pub interpolants: bool,
}

#[derive(Debug, Subcommand)]
pub enum AxiomsCmd {
    /// Write the sentences axiomatising a class.
    Emit {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        monoid: MonoidSource,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate sentences on an act.
    Modelcheck {
        #[arg(long)]
        act: PathBuf,
        #[arg(long)]
        sentences: PathBuf,
        #[command(flatten)]
        monoid: MonoidSource,
    },
    /// Compare sentences with the decision procedure on every small act.
    /// Without `--monoid` the whole zoo sweep set is used.
    Verify {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        monoid: MonoidSource,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReplaceCmd {
    /// List the replacement skeletons for one pair.
    Compute {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        monoid: MonoidSource,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Replace every trigger tossing in an act. Without `--s`/`--t` every
    /// admissible pair is tried.
    Verify {
        #[arg(long)]
        class: String,
        #[arg(long)]
        act: PathBuf,
        #[command(flatten)]
        monoid: MonoidSource,
        #[arg(long, requires = "t")]
        s: Option<String>,
        #[arg(long, requires = "s")]
        t: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZooCmd {
    /// Write one family member as a monoid file.
    Build {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Order of the lower group for semilattices; defaults to `n`.
        #[arg(long)]
        k0: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimum generator counts across a parameter range.
    Report {
        #[arg(long)]
        family: String,
        /// `lo..hi`, inclusive of both ends.
        #[arg(long)]
        range: String,
    },
    /// The families and the sweep set.
    List,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub monoid: MonoidSource,
    #[arg(long, default_value = "left")]
    pub side: String,
    #[arg(long)]
    pub max_size: usize,
    /// Keep one table per isomorphism class.
    #[arg(long)]
    pub up_to_iso: bool,
    /// Keep only left acts satisfying this condition.
    #[arg(long)]
    pub condition: Option<String>,
    /// Include every act in the output.
    #[arg(long)]
    pub list: bool,
}
