use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Run the built-in quadrature and fractional-integral oracles.
    Selftest,
    /// Verify one instance.
    Verify,
    /// Profile one instance over a grid of alpha, p or s.
    Sweep,
    /// Search for the smallest slack over a parameter box.
    Search,
    /// Numeric class check of f against h, or superadditivity of h.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Param {
    Alpha,
    P,
    S,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "fracineq",
    version,
    about = "Numerical certification of fractional Hermite-Hadamard type inequalities"
)]
pub struct RunConfig {
    pub command: Command,

    /// hadamard_classical, sarikaya_h, frac_hadamard_convex,
    /// lemma1_identity, thm_main, thm_superadd, thm_trapezoid
    /// (aliases: classical, eq10, eq16, lemma1, eq11, xy, mt).
    #[arg(long = "theorem")]
    pub theorem_id: Option<String>,

    /// Function, e.g. `f=power:2@[0,1]`.
    #[arg(long = "f", allow_hyphen_values = true)]
    pub f_spec: Option<String>,

    /// h-function, e.g. `h=pow:0.5`.
    #[arg(long = "h")]
    pub h_spec: Option<String>,

    /// Left end; defaults to the left end of the function's domain.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,

    /// Right end; defaults to the right end of the function's domain.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,

    #[arg(long)]
    pub alpha: Option<f64>,

    /// Hölder exponent p > 1.
    #[arg(long)]
    pub p: Option<f64>,

    #[arg(long, default_value_t = 24)]
    pub grid_n: usize,

    #[arg(long, default_value_t = 1000)]
    pub budget: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Slack tolerance (added to the quadrature error estimate).
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
    pub output: OutputFormat,

    /// Write output here instead of standard output.
    #[arg(long = "out")]
    pub out_path: Option<PathBuf>,

    /// Compute sides even when a hypothesis fails (status stays inapplicable).
    #[arg(long)]
    pub force: bool,

    /// Swept parameter (sweep).
    #[arg(long, value_enum)]
    pub param: Option<Param>,

    /// Comma-separated grid values (sweep).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Vec<f64>,

    /// Run the local pattern search after sampling (search).
    #[arg(long)]
    pub refine: bool,

    /// Function families searched: power, quadratic, exp, abspow (search).
    #[arg(long, value_delimiter = ',', default_value = "power,quadratic,exp")]
    pub families: Vec<String>,

    /// Range of a as lo,hi (search).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a_range: Vec<f64>,

    /// Range of b as lo,hi (search).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b_range: Vec<f64>,

    /// Range of alpha as lo,hi (search).
    #[arg(long, value_delimiter = ',')]
    pub alpha_range: Vec<f64>,

    /// Range of p as lo,hi (search).
    #[arg(long, value_delimiter = ',')]
    pub p_range: Vec<f64>,

    /// Check superadditivity of h on [0,1] instead of h-convexity of f (check).
    #[arg(long)]
    pub superadditive: bool,
}
