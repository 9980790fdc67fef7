use clap::{Args, Parser, Subcommand, ValueEnum};
use eglfr::ModelId;

#[derive(Debug, Parser)]
#[command(
    name = "eglfr-kit",
    version,
    about = "Fit, compare and simulate EGLFR lifetime models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one model by maximum likelihood and print the result as JSON.
    Fit(FitArgs),
    /// Fit several models and rank them by AIC.
    Compare(CompareArgs),
    /// Emit x, pdf, cdf, hazard and ecdf on a grid as CSV.
    Curves(CurvesArgs),
    /// Draw a random sample, one value per line.
    Sample(SampleArgs),
    /// Print raw moments E[X^k], k = 1..max-k.
    Moments(MomentsArgs),
    /// Monte-Carlo check of the limit law of the threshold estimator.
    McThreshold(McArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OptimizerArgs {
    /// Seed for the jittered restarts.
    #[arg(long, default_value_t = 20_240_901)]
    pub seed: u64,
    /// Number of jittered restarts per start region.
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// Simplex convergence tolerance on the objective.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OptionalParamArgs {
    #[arg(long, allow_hyphen_values = true, requires_all = ["beta", "a", "b"])]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["alpha", "a", "b"])]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["alpha", "beta", "b"])]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["alpha", "beta", "a"])]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitMethod {
    /// Full likelihood over both signs of beta.
    Profile,
    /// Threshold at the sample maximum, modified likelihood on the rest (EGLFR, EGE, EGR).
    Nonregular,
}

impl FitMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FitMethod::Profile => "profile",
            FitMethod::Nonregular => "nonregular",
        }
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub model: ModelId,
    #[arg(long, value_enum, default_value_t = FitMethod::Profile)]
    pub method: FitMethod,
    /// Data file, `-` for standard input, or `aarset`.
    #[arg(long)]
    pub data: String,
    #[command(flatten)]
    pub opt: OptimizerArgs,
    /// Accepted for symmetry; fit output is always JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Models to fit, comma separated or repeated. Defaults to all fourteen.
    #[arg(long, value_delimiter = ',')]
    pub model: Vec<ModelId>,
    #[arg(long)]
    pub data: String,
    #[command(flatten)]
    pub opt: OptimizerArgs,
    /// Print JSON instead of the text table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    /// Model to fit when no parameters are given.
    #[arg(long, default_value = "EGLFR")]
    pub model: ModelId,
    #[arg(long)]
    pub data: Option<String>,
    #[command(flatten)]
    pub params: OptionalParamArgs,
    /// Number of grid points.
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
    #[command(flatten)]
    pub opt: OptimizerArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 5)]
    pub max_k: u32,
    /// Relative tolerance of the quadrature.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}
