use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "hadarank", version, about = "Exact Hadamard products, ranks and border ranks of projective varieties")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Reduction steps allowed per Groebner basis.
    #[arg(long, global = true, default_value_t = hadarank_core::groebner::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Bound on random integers (default depends on the command).
    #[arg(long, global = true)]
    pub height: Option<i64>,
    /// Random trials for Jacobian ranks, slicing attempts for witnesses.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Directory for cached Groebner bases.
    #[arg(long, global = true, env = hadarank_core::groebner::CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct IdealArg {
    /// Ideal file, or `zoo:<name>` for a built-in variety.
    #[arg(long)]
    pub ideal: String,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub ideal: IdealArg,
    /// Colon-separated rational coordinates, e.g. `0:1:-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArg {
    /// Parametrization file, or `zoo:<name>`.
    #[arg(long)]
    pub param: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ideal of the Hadamard product of two varieties.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Ideal of the m-th Hadamard power.
    Power {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        m: usize,
    },
    /// Ideal of the union of the first m powers.
    RankLocus {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        m: usize,
    },
    /// Membership of a point in the closure of the m-th power.
    Member {
        #[command(flatten)]
        at: PointArgs,
        #[arg(long)]
        m: usize,
    },
    /// Conciseness per coordinate.
    Concise {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Strong conciseness per coordinate.
    StronglyConcise {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Search for a binomial in the ideal up to a degree.
    BinomialSearch {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Whether the generic Hadamard rank is finite.
    Finiteness {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Accept the absence of binomials up to the bound as finiteness.
        #[arg(long)]
        accept_bound: bool,
    },
    /// Hadamard rank with a replayable certificate.
    Rank {
        #[command(flatten)]
        at: PointArgs,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        /// Skip the single-zero obstruction check.
        #[arg(long)]
        no_obstruction: bool,
        /// Replay this certificate instead of computing.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Border rank: least m with the point on the m-th power.
    BorderRank {
        #[command(flatten)]
        at: PointArgs,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Decide whether the point is a product of m points and find one.
    Decompose {
        #[command(flatten)]
        at: PointArgs,
        #[arg(long)]
        m: usize,
    },
    /// Split off the zero coordinates and bound the rank.
    ReduceZeros {
        #[command(flatten)]
        at: PointArgs,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
    },
    /// Dimension of the m-th power of a parametrized variety.
    Dim {
        #[command(flatten)]
        param: ParamArg,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Least m whose power fills the ambient space.
    GenericRank {
        #[command(flatten)]
        param: ParamArg,
        #[arg(long, default_value_t = 6)]
        max_m: usize,
    },
    /// Whether a curve avoids the points with many zero coordinates.
    CheckDelta {
        #[command(flatten)]
        param: ParamArg,
        /// Check Delta_k; defaults to N - 2.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Built-in varieties.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
    /// Run the acceptance suite.
    Reproduce {
        #[arg(long, conflicts_with = "criterion")]
        all: bool,
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZooAction {
    List,
    /// Write the ideal and parametrization files of an entry.
    Emit {
        name: String,
        /// Output directory; prints to stdout when absent.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}
