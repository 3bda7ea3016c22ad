use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Partial dependence, functional decomposition and SHAP values for tree
/// ensembles.
#[derive(Debug, Parser)]
#[command(name = "fastpd", version)]
pub struct Cli {
    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, global = true, env = "FASTPD_THREADS", default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write every functional component at the evaluation rows.
    Decompose(DecomposeArgs),
    /// Write SHAP values at the evaluation rows.
    Shap(ShapArgs),
    /// Write the PD function of one feature over a grid.
    Pdplot(PdplotArgs),
    /// Time the estimators for growing sample sizes.
    Bench(BenchArgs),
    /// Augment the model with a background sample and save the result.
    Augment(AugmentArgs),
    /// Draw a synthetic sample.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// `xgboost-json` when the file is a JSON array, else `native-json`.
    Auto,
    XgboostJson,
    NativeJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Fastpd,
    Vanilla,
    Path,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DgpArg {
    Dgp1,
    Dgp2,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model dump.
    #[arg(long)]
    pub model: PathBuf,

    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub format: FormatArg,

    /// Intercept added to every prediction. Overrides the model's own.
    #[arg(long)]
    pub base_score: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Background sample (CSV).
    #[arg(long, required_unless_present = "snapshot")]
    pub background: Option<PathBuf>,

    /// Evaluation points (CSV).
    #[arg(long)]
    pub eval: PathBuf,

    #[arg(long, value_enum, default_value_t = MethodArg::Fastpd)]
    pub method: MethodArg,

    /// Refuse to augment a tree needing more partition lists than this.
    #[arg(long, default_value_t = 1 << 20)]
    pub budget_lists: u64,

    /// Reuse an augmentation written by `fastpd augment` (fastpd method only).
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; JSON when it ends in `.json`, CSV otherwise. Standard
    /// output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Omit the CSV header row.
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub estimate: EstimateArgs,

    #[command(flatten)]
    pub output: OutputArgs,

    /// Only write components with at most this many features.
    #[arg(long)]
    pub max_order: Option<usize>,

    /// Rows in the importance table.
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,

    /// Also write the importance table to this file.
    #[arg(long)]
    pub importance: Option<PathBuf>,

    /// Skip components that vanish at every evaluation row.
    #[arg(long)]
    pub prune_zero: bool,
}

#[derive(Debug, Args)]
pub struct ShapArgs {
    #[command(flatten)]
    pub estimate: EstimateArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PdplotArgs {
    #[command(flatten)]
    pub estimate: EstimateArgs,

    #[command(flatten)]
    pub output: OutputArgs,

    /// Feature name or column index.
    #[arg(long)]
    pub feature: String,

    /// `eval` for the evaluation rows' values, or `uniform:MIN:MAX:COUNT`.
    #[arg(long, default_value = "eval")]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Pool to resample from (CSV).
    #[arg(long, required_unless_present = "dgp", conflicts_with = "dgp")]
    pub pool: Option<PathBuf>,

    /// Draw the pool from a synthetic process instead.
    #[arg(long, value_enum)]
    pub dgp: Option<DgpArg>,

    /// Rows drawn when `--dgp` is used.
    #[arg(long, default_value_t = 20_000)]
    pub pool_size: usize,

    /// Ascending sample sizes, `n_b = n_e = n`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,

    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Fastpd, MethodArg::Vanilla])]
    pub methods: Vec<MethodArg>,

    /// Subset to evaluate, as comma-separated names or indices; repeat for
    /// more. An empty value is the empty set. Defaults to the first feature.
    #[arg(long = "subset")]
    pub subsets: Vec<String>,

    #[arg(long, default_value_t = 3)]
    pub repeats: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 1 << 20)]
    pub budget_lists: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AugmentArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    #[arg(long)]
    pub background: PathBuf,

    #[arg(long, default_value_t = 1 << 20)]
    pub budget_lists: u64,

    /// Snapshot file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub dgp: DgpArg,

    #[arg(long)]
    pub n: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Covariates (CSV with header).
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write the responses, one per line, to this file.
    #[arg(long)]
    pub response: Option<PathBuf>,
}
