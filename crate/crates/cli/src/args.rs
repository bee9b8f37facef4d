use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cmray", version, about = "Ray class field generators for imaginary quadratic fields")]
pub struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Decimal digits of working precision (default 30, or CMRAY_DIGITS).
    #[arg(long, global = true)]
    pub digits: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field invariants, reduced forms and prime splitting.
    Field(FieldArgs),
    /// Lower bound on n for x_{K,n} to generate a ray class field.
    Bound(BoundArgs),
    /// Evaluate a modular or Weber function.
    Eval(EvalArgs),
    /// Run a numerical certificate.
    Verify(VerifyArgs),
    /// Reproduce a worked example.
    Example(ExampleArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    /// Also compute the Hilbert class polynomial.
    #[arg(long)]
    pub hilbert: bool,
    /// Report splitting of primes below this bound.
    #[arg(long, default_value_t = 50)]
    pub primes_below: i64,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    /// Least positive integer in the modulus.
    #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
    pub nm: Option<i64>,
    /// Modulus as prime ideal factors, e.g. "p:2;p:13;p:23:15" (p:P[:root][^e]).
    #[arg(long)]
    pub ideal: Option<String>,
    /// Treat --nm as the modulus N*O_K.
    #[arg(long, requires = "nm")]
    pub modulus_integer: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    #[value(name = "j")]
    LowerJ,
    #[value(name = "J")]
    UpperJ,
    #[value(name = "C")]
    C,
    Siegel,
    Fricke,
    WeberX,
    Y2,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub kind: EvalKind,
    /// Point in the upper half-plane: "i" or "x,y".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "tau_surd")]
    pub tau: Option<String>,
    /// Use tau_K of this discriminant.
    #[arg(long, allow_hyphen_values = true)]
    pub tau_surd: Option<i64>,
    /// Row vector "a,b/N" for siegel and fricke.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Discriminant for weber-x and y2.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// Curve index n for weber-x and y2.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Torsion point "a,b/D" meaning (a*tau_K + b)/D.
    #[arg(long)]
    pub omega: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    JInequality,
    SiegelBounds,
    Ffgg,
    Normconstant,
    Curve,
    Hkc,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub claim: Claim,
    #[arg(long, allow_hyphen_values = true, default_value_t = -300)]
    pub from: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = -15)]
    pub to: i64,
    /// Sample count for sampled claims.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = cmray::bounds::DEFAULT_SEED)]
    pub seed: u64,
    /// Level: N_max for siegel-bounds, N for normconstant.
    #[arg(long = "N")]
    pub level: Option<i64>,
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    /// Discriminant for hkc.
    #[arg(long, allow_hyphen_values = true, default_value_t = -20)]
    pub d: i64,
    /// Largest exponent for hkc.
    #[arg(long, default_value_t = 20)]
    pub n_max: u32,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Write the certificate as JSON to this file.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Paper,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    pub name: ExampleName,
}
