mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "repzeta", version, about = "Exact representation zeta functions of class-2 nilpotent group schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Args, Debug, Clone)]
pub struct Shared {
    /// Family F, G or H
    #[arg(long, global = true)]
    pub family: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub delta: Option<usize>,
    /// Integer value substituted for q
    #[arg(long, global = true)]
    pub q: Option<u64>,
    #[arg(long, global = true)]
    pub p: Option<u64>,
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for enumerations
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Local zeta function of a group scheme as a rational function in q and t
    LocalZeta,
    /// Global Dirichlet coefficients r_1..r_bound over Q
    #[command(name = "global-coeffs", alias = "coeffs")]
    GlobalCoeffs,
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Statistics of every signed permutation in B_n
    WeylStats,
    /// Statistic L over descent classes against the type H polynomials
    #[command(name = "conjecture-L", alias = "conjecture-l")]
    ConjectureL,
    /// Elementary divisor type counts, closed against enumerated
    Counts,
    /// Igusa zeta function coefficients, closed form against a measure oracle
    Igusa {
        #[arg(long, value_enum)]
        kind: PvsArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Schemes,
    Weyl,
    Counting,
    Igusa,
    Arith,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PvsArg {
    /// Pfaffian on Alt_{2n}
    Alt,
    /// Determinant on Mat_n
    Mat,
    /// Determinant on Sym_n
    Sym,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.shared.jobs;
    let format = cli.shared.format;
    let outcome = repzeta::counting::with_jobs(jobs, || commands::run(&cli));
    match outcome {
        Ok(report) => {
            println!("{}", report.render(format));
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
