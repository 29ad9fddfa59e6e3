use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cmineq",
    version,
    about = "Divided differences of completely monotone functions and checks of their bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Divided difference of a catalog function over explicit nodes.
    Divdiff(DivdiffArgs),
    /// Inspect the function catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Seeded campaign checking the two-sided derivative bound on the sum.
    VerifySandwich(SandwichArgs),
    /// Sign checks of (-1)^n f^(n) on a log-spaced grid.
    VerifyCm(CmArgs),
    /// Product inequality over explicit nodes or a seeded campaign.
    VerifyGen(GenArgs),
    /// Interior point where the scaled derivative equals the divided difference.
    Mvt(MvtArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// List every family with its formula, parameters and class.
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Newton,
    Lagrange,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// Catalog id (see `catalog list`), or `all` where a campaign allows it.
    #[arg(long = "fn", value_name = "ID")]
    pub function: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Args)]
pub struct NodeCountArgs {
    /// Fixed node count; overrides --n-min and --n-max.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
}

impl NodeCountArgs {
    pub fn range(&self) -> (usize, usize) {
        match self.n {
            Some(n) => (n, n),
            None => (self.n_min, self.n_max),
        }
    }
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub node_min: f64,
    #[arg(long, default_value_t = 50.0)]
    pub node_max: f64,
    /// Minimum distance between any two sampled nodes.
    #[arg(long, default_value_t = 1e-2)]
    pub separation: f64,
}

#[derive(Debug, Args)]
pub struct DivdiffArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub nodes: Vec<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Newton)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SandwichArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub count: NodeCountArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Lowers every upper bound by this amount (exercises the failure path).
    #[arg(long, hide = true, value_name = "SHIFT")]
    pub inject_violation: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CmArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Highest derivative order checked; defaults to the order cap.
    #[arg(long)]
    pub max_order: Option<usize>,
    #[arg(long, default_value_t = 1e-2)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 1e2)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 41)]
    pub grid_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Check one explicit non-negative node set instead of sampling.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub nodes: Option<Vec<f64>>,
    #[command(flatten)]
    pub count: NodeCountArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    /// Share of sampled sets in which one node is replaced by zero.
    #[arg(long, default_value_t = 0.25)]
    pub zero_fraction: f64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Lowers the right-hand side by this amount (exercises the failure path).
    #[arg(long, hide = true, value_name = "SHIFT")]
    pub inject_violation: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MvtArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub nodes: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}
