//! `mahler-kit`: command-line front end for the `mahler-core` library.

mod commands;
mod config;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "mahler-kit",
    version,
    about = "Exact tools for Mahler systems and independence certificates"
)]
struct Cli {
    /// JSON configuration file with default parameters
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write the JSON result to this file instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor points, test pairwise independence and decompose them into independent generators
    Decompose(DecomposeArgs),
    /// Rational cone computations
    #[command(subcommand)]
    Cone(ConeCommand),
    /// Power-series expansion of a Mahler system
    Expand(ExpandArgs),
    /// Iterate a system so that its radix becomes q^l
    Iterate(IterateArgs),
    /// Twist a system by a root of unity
    Twist(TwistArgs),
    /// Assemble a block-diagonal multivariate system
    Build(BuildArgs),
    /// Check that a point is regular for a system
    Regular(RegularArgs),
    /// Evaluate a system at a point
    Eval(EvalArgs),
    /// Linear relations over Q(z) among truncated series
    Independence(IndependenceArgs),
    /// Search for relations with coefficients in monomial power-series rings
    Purity(PurityArgs),
    /// Heuristic integer-relation search among decimal values
    Relations(RelationsArgs),
    /// Run the full certification pipeline
    Certify(CertifyArgs),
    /// Run the embedded oracle suite
    Selfcheck(SelfcheckArgs),
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Points as inline JSON or a points file
    #[arg(long, value_name = "JSON|FILE")]
    pub points: String,
}

#[derive(Subcommand, Debug)]
pub enum ConeCommand {
    /// Decide membership of a vector in a cone, with a certificate
    Member(ConeArgs),
    /// Extract a basis of the cone spanned by the generators
    Basis(ConeArgs),
    /// Intersect lambda + N mu with Gamma + cone
    Intersect(ConeArgs),
}

#[derive(Args, Debug)]
pub struct ConeArgs {
    /// Cone instance as inline JSON or a file
    #[arg(long, value_name = "JSON|FILE")]
    pub input: String,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// System file
    #[arg(long, value_name = "FILE")]
    pub system: PathBuf,
    /// Truncation order (default from config)
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Args, Debug)]
pub struct IterateArgs {
    /// System file
    #[arg(long, value_name = "FILE")]
    pub system: PathBuf,
    /// Number of iterations l
    #[arg(long)]
    pub times: u32,
}

#[derive(Args, Debug)]
pub struct TwistArgs {
    /// System file
    #[arg(long, value_name = "FILE")]
    pub system: PathBuf,
    /// Root of unity exp(2 pi i k/n), written k/n
    #[arg(long, value_name = "K/N", allow_hyphen_values = true)]
    pub root: String,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Blocks file: a list of {system, mu}
    #[arg(long, value_name = "FILE")]
    pub blocks: PathBuf,
}

#[derive(Args, Debug)]
pub struct RegularArgs {
    /// System file
    #[arg(long, value_name = "FILE")]
    pub system: PathBuf,
    /// Rational point, e.g. 1/2 or -1/2
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    /// Root-of-unity factor of the point, written k/n
    #[arg(long, value_name = "K/N", allow_hyphen_values = true)]
    pub torsion: Option<String>,
    /// Largest orbit step examined (default from config)
    #[arg(long)]
    pub kmax: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// System file
    #[arg(long, value_name = "FILE")]
    pub system: PathBuf,
    /// Rational point, e.g. 1/2 or -1/2
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    /// Root-of-unity factor of the point, written k/n
    #[arg(long, value_name = "K/N", allow_hyphen_values = true)]
    pub torsion: Option<String>,
    /// Decimal digits (default from config)
    #[arg(long)]
    pub digits: Option<u32>,
    /// Orbit depth K (automatic when omitted)
    #[arg(long)]
    pub depth: Option<usize>,
    /// Expansion order used at the far end of the orbit
    #[arg(long, default_value_t = 32)]
    pub tail: usize,
}

#[derive(Args, Debug)]
pub struct IndependenceArgs {
    /// System files; every component of every system is included
    #[arg(long = "system", value_name = "FILE", required = true)]
    pub systems: Vec<PathBuf>,
    /// Use only the distinguished component of each system
    #[arg(long)]
    pub distinguished: bool,
    /// Degree bound D (default from config)
    #[arg(long)]
    pub degree: Option<usize>,
    /// Truncation order N (default from config)
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PurityArgs {
    /// Instance file with series, mus, truncation and support
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Skip the pairwise-independence and cone preconditions
    #[arg(long)]
    pub no_preconditions: bool,
}

#[derive(Args, Debug)]
pub struct RelationsArgs {
    /// Values file: a list of decimal strings
    #[arg(long, value_name = "FILE")]
    pub values: PathBuf,
    /// Total degree of the monomials
    #[arg(long, default_value_t = 1)]
    pub degree: u32,
    /// Digits used (default: the shortest value's digit count)
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Certification input file
    #[arg(long, value_name = "FILE", required_unless_present = "check")]
    pub input: Option<PathBuf>,
    /// Markdown report destination (default: beside --out, else cert.md)
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
    /// Truncation order for the evidence (overrides input and config)
    #[arg(long)]
    pub truncation: Option<usize>,
    /// Degree bound for the evidence (overrides input and config)
    #[arg(long)]
    pub degree: Option<usize>,
    /// Skip the truncation-level evidence
    #[arg(long)]
    pub no_evidence: bool,
    /// Validate an existing certificate instead of producing one
    #[arg(long, value_name = "FILE", conflicts_with = "input")]
    pub check: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelfcheckArgs {
    /// Random seed (default from config)
    #[arg(long)]
    pub seed: Option<u64>,
}

fn init_threads() {
    if let Some(n) = std::env::var("MAHLERKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    init_threads();
    let cfg = match config::Config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Decompose(a) => commands::decompose(&a),
        Command::Cone(c) => commands::cone(&c),
        Command::Expand(a) => commands::expand(&a, &cfg),
        Command::Iterate(a) => commands::iterate(&a),
        Command::Twist(a) => commands::twist(&a),
        Command::Build(a) => commands::build(&a),
        Command::Regular(a) => commands::regular(&a, &cfg),
        Command::Eval(a) => commands::eval(&a, &cfg),
        Command::Independence(a) => commands::independence(&a, &cfg),
        Command::Purity(a) => commands::purity(&a),
        Command::Relations(a) => commands::relations(&a),
        Command::Certify(a) => commands::certify(&a, &cfg, cli.out.as_deref()),
        Command::Selfcheck(a) => commands::selfcheck(&a, &cfg),
    };
    match result {
        Ok(Outcome { json, ok, note }) => {
            if let Err(e) = commands::emit(&json, cli.out.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if let Some(n) = note {
                eprintln!("{n}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
