mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use muirhead_lab::arith::{parse_rational, Rational};
use muirhead_lab::Error;

#[derive(Parser, Debug)]
#[command(
    name = "muirhead-lab",
    version,
    about = "Exact checks for the Muirhead system of the matrix-argument 1F1"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub out: Output,
    /// Compare the report with a stored golden file in this directory.
    #[arg(long, global = true)]
    pub golden: Option<PathBuf>,
    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zonal polynomials of one degree.
    Zonal(ZonalArgs),
    /// Truncated pFq of a matrix argument.
    Series(SeriesArgs),
    #[command(subcommand)]
    Muirhead(MuirheadCmd),
    #[command(subcommand)]
    Charvar(CharvarCmd),
    #[command(subcommand)]
    Solutions(SolutionsCmd),
    #[command(subcommand)]
    Restriction(RestrictionCmd),
    /// Run every acceptance check at the given scale.
    VerifyAll(VerifyArgs),
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    /// Specialize the upper parameter, e.g. 1/3.
    #[arg(long, value_parser = rational)]
    pub a: Option<Rational>,
    /// Specialize the lower parameter, e.g. 5/7.
    #[arg(long, value_parser = rational)]
    pub c: Option<Rational>,
}

#[derive(Args, Debug)]
pub struct ZonalArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub degree: u32,
    #[arg(long, value_enum, default_value_t = Basis::Monomial)]
    pub basis: Basis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Monomial,
    Expanded,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long, default_value_t = 1)]
    pub q: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub degree: u32,
    /// Parameter values, e.g. a=1/3,c=5/7.
    #[arg(long)]
    pub spec: Option<String>,
    /// Evaluation point, e.g. x=1/2,1/4.
    #[arg(long)]
    pub eval: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum MuirheadCmd {
    /// The generators g_k and P_k.
    Gens {
        #[arg(long)]
        m: usize,
    },
    /// Apply each P_k to the truncated 1F1.
    Annihilate {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[command(flatten)]
        params: Params,
    },
    /// Buchberger on the generators.
    Groebner {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Holonomic rank from the Groebner basis.
    Rank {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    C,
    Chat,
}

#[derive(Subcommand, Debug)]
pub enum CharvarCmd {
    /// The linear components indexed by set partitions.
    Components {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = KindArg::C)]
        kind: KindArg,
    },
    /// Lower-bound vanishing and sampled upper-bound fibers.
    Check {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// The hyperplane arrangement of the singular locus.
    SingularLocus {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SolutionsCmd {
    /// Truncated power-series solutions around a point.
    Kernel {
        #[arg(long)]
        m: usize,
        /// Comma-separated coordinates.
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
        #[command(flatten)]
        params: Params,
    },
    /// Uniqueness of the normalized solution at the origin.
    Uniqueness {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Subcommand, Debug)]
pub enum RestrictionCmd {
    /// Rank bound for the restriction to x_m = 0.
    Rank {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = rational)]
        c: Rational,
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// The operators H_r for c = (m-1)/2 - s.
    Hr {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: u32,
        /// Highest r; defaults to s + 1.
        #[arg(long)]
        r: Option<u32>,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 6)]
    pub degree: u32,
}

fn init_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("MUIRHEAD_LAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Parameter(_) | Error::Domain(_) | Error::Structural(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let mut report = match commands::run(&cli.command, cli.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    if let Some(dir) = &cli.golden {
        if let Err(e) = report.check_golden(dir) {
            eprintln!("error: golden file: {e}");
            return ExitCode::from(2);
        }
    }
    match cli.out {
        Output::Json => println!("{}", report.to_json()),
        Output::Text => print!("{}", report.to_text()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
