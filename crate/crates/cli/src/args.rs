use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact stability conditions and maximal green sequences for string modules.
///
/// Quivers are written `A:<signs>` (type A_n, n-1 signs), `At:<signs>` (affine,
/// n signs) or `Dcyc:<n>` (oriented cycle). Charges are JSON objects
/// `{"a": [...], "b": [...]}` with integers or strings such as "3/2"; prefix a
/// path with `@` to read the JSON from a file.
#[derive(Debug, Parser)]
#[command(name = "greenseq", version, about, long_about)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for fuzzing (0 picks one per core).
    #[arg(long, global = true, env = "GREENSEQ_JOBS", default_value_t = 0)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe a quiver and its modules.
    Quiver(QuiverArgs),
    /// Stable (or semistable) modules of a charge or a spliced path.
    StableSet(StableSetArgs),
    /// The maximal green sequence of a generic finite charge.
    Mgs(ChargeArgs),
    /// The maximum-size stable sets S_kl of an affine quiver.
    Maxsets(MaxsetsArgs),
    /// Whether S_kl is the stable set of a single linear charge.
    Linearity(PairArgs),
    /// A charge (or a spliced path) whose stable set is S_kl.
    Witness(WitnessArgs),
    /// A charge on A_n making every module stable.
    Reineke(QuiverOnly),
    /// A charge on the oriented cycle whose stable set is S_k.
    DnCharge(DnArgs),
    /// Collapse arrows of an affine quiver and project modules and charges.
    Collapse(CollapseArgs),
    /// Draw a chord or wire diagram as SVG.
    Render(RenderArgs),
    /// Fuzz the three stability criteria against each other.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct QuiverOnly {
    #[arg(long)]
    pub quiver: String,
}

#[derive(Debug, Args)]
pub struct QuiverArgs {
    #[arg(long)]
    pub quiver: String,
    /// List the candidate modules.
    #[arg(long)]
    pub modules: bool,
}

#[derive(Debug, Args)]
pub struct ChargeArgs {
    #[arg(long)]
    pub quiver: String,
    /// Charge JSON `{"a": ..., "b": ...}` or witness JSON, or @path.
    #[arg(long, required_unless_present = "splice", conflicts_with = "splice")]
    pub charge: Option<String>,
    /// Spliced path JSON `{"z": ..., "z_prime": ...}` or witness JSON, or @path.
    #[arg(long)]
    pub splice: Option<String>,
}

#[derive(Debug, Args)]
pub struct StableSetArgs {
    #[command(flatten)]
    pub source: ChargeArgs,
    /// Include strictly semistable modules.
    #[arg(long)]
    pub semistable: bool,
}

#[derive(Debug, Args)]
pub struct MaxsetsArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long, requires = "l")]
    pub k: Option<i64>,
    #[arg(long, requires = "k")]
    pub l: Option<i64>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub quiver: String,
    /// Omit `--k` and `--l` to report every valid pair.
    #[arg(long, requires = "l")]
    pub k: Option<i64>,
    #[arg(long, requires = "k")]
    pub l: Option<i64>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub k: i64,
    #[arg(long)]
    pub l: i64,
    /// Produce a spliced path even when a linear charge exists.
    #[arg(long)]
    pub spliced: bool,
}

#[derive(Debug, Args)]
pub struct DnArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub k: i64,
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    #[arg(long)]
    pub quiver: String,
    /// Comma-separated arrow positions in 1..=n, e.g. "1,4".
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub arrows: Vec<i64>,
    /// Charge to project.
    #[arg(long)]
    pub charge: Option<String>,
    /// Project S_kl for this pair.
    #[arg(long, requires = "l")]
    pub k: Option<i64>,
    #[arg(long, requires = "k")]
    pub l: Option<i64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Diagram {
    Chord,
    Wire,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub diagram: Diagram,
    #[command(flatten)]
    pub source: ChargeArgs,
    /// Output file; SVG goes to stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Wire diagrams: the t range. Chord diagrams: the index range (integers).
    #[arg(long, num_args = 2, value_names = ["T0", "T1"], allow_hyphen_values = true)]
    pub window: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = greenseq::verify::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = greenseq::verify::DEFAULT_MAX_DENOMINATOR)]
    pub max_denominator: i64,
    /// Restrict to these quivers (repeatable); defaults to the full family.
    #[arg(long)]
    pub quiver: Vec<String>,
}
