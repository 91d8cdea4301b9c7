mod input;
mod run;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unparsable input, or mathematically invalid arguments: exit code 2.
    Usage(String),
    /// A check ran and found a violation; the report is printed to stdout: exit code 1.
    CheckFailed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    Poly,
    Shuffle,
    Concat,
    Ck,
    Gl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Geometric,
    Branched,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Phi,
    Phihat,
    Psi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    G2b,
    B2g,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutArg {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "rough-hopf", version, about = "Combinatorial Hopf algebras, rough-path lifts and rough ODEs in exact arithmetic")]
pub struct Cli {
    /// Alphabet size d; inferred from the input expressions when omitted.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "concat")]
    pub algebra: AlgebraArg,
    /// Truncation level N for series operations and optional product truncation.
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    /// Hölder exponent γ in (0, 1).
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Print coefficients as floats with 12 significant digits instead of exact rationals.
    #[arg(long, global = true)]
    pub float: bool,
    #[arg(long, global = true, default_value_t = 4)]
    pub max_grade: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Product of two elements.
    Product { #[arg(allow_hyphen_values = true)] a: String, #[arg(allow_hyphen_values = true)] b: String },
    /// Coproduct of an element, printed with `(x)` as tensor separator.
    Coproduct { #[arg(allow_hyphen_values = true)] x: String },
    Antipode { #[arg(allow_hyphen_values = true)] x: String },
    /// Canonical pairing of two elements in dual bases.
    Pair { #[arg(allow_hyphen_values = true)] a: String, #[arg(allow_hyphen_values = true)] b: String },
    /// Hopf axioms of `--algebra` up to `--max-grade`, or rough-path axioms when a path is given.
    CheckAxioms {
        /// Random combinations checked in addition to the full basis.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Grid size for the rough-path checks.
        #[arg(long, default_value_t = 9)]
        grid: usize,
        #[arg(long, value_enum, default_value = "branched")]
        flavor: FlavorArg,
        /// Print every law even when all pass.
        #[arg(long)]
        verbose: bool,
        path: Option<PathBuf>,
    },
    Exp { #[arg(allow_hyphen_values = true)] x: String },
    Log { #[arg(allow_hyphen_values = true)] g: String },
    /// Truncated Baker–Campbell–Hausdorff product `log(exp x · exp y)`.
    Bch { #[arg(allow_hyphen_values = true)] x: String, #[arg(allow_hyphen_values = true)] y: String },
    /// Homogeneous norm `Σ_k ‖π_k log g‖^{1/k}` of a group-like element.
    Norm { #[arg(allow_hyphen_values = true)] g: String },
    /// Admissible cuts of a forest with multiplicities.
    Cuts { forest: String },
    /// Map an expression through φ (forests to words), φ̂ (words to ladders) or ψ (forests to words of trees).
    Convert {
        #[arg(long, value_enum)]
        via: Via,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Signature of a piecewise-linear path read from CSV.
    Signature {
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        path: PathBuf,
    },
    /// Branched lift of a piecewise-linear path read from CSV.
    BranchedLift {
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        path: PathBuf,
    },
    /// Character, Chen, inverse and Hölder checks of a lift on a uniform grid.
    CheckRough {
        #[arg(long, default_value_t = 9)]
        grid: usize,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, value_enum, default_value = "branched")]
        flavor: FlavorArg,
        path: PathBuf,
    },
    /// The constant `q_γ` of a forest.
    Qgamma { forest: String },
    /// Geometric lift to branched (`g2b`) or back (`b2g`, after the kernel check on the knot times).
    ConvertLift {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        path: PathBuf,
    },
    /// Solve `dy = Σ f(y) dx^i` driven by a piecewise-linear path.
    Rde {
        /// const[:c], linear[:a], poly:c0,c1,..., or sin.
        #[arg(long)]
        f: String,
        #[arg(long)]
        y0: f64,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        step: String,
        #[arg(long, value_enum, default_value = "branched")]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value = "csv")]
        out: OutArg,
        path: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(&cli) {
        Ok(text) => {
            println!("{}", text);
            ExitCode::SUCCESS
        }
        Err(CliError::CheckFailed(report)) => {
            println!("{}", report);
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
