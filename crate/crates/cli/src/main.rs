//! `hx`: build families, compute codegree sums, check properties, evaluate
//! bounds and run certified searches from the shell.
//!
//! Exit codes: 0 success or PASS, 1 property false or FAIL, 2 usage or
//! input error, 3 search budget exhausted.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hx", version, about = "Exact codegree-squared sums for k-uniform hypergraphs")]
pub struct Cli {
    /// Print a JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named family and write it in the text format.
    Family(FamilyArgs),
    /// Codegree sum and square sum of a hypergraph file.
    Co2(Co2Args),
    /// Test a property of a hypergraph file.
    Check(CheckArgs),
    /// Evaluate a bound.
    Bound(BoundArgs),
    /// Maximise co2 under a constraint.
    Search(SearchArgs),
    /// Run a prepackaged claim check.
    Verify(VerifyArgs),
    /// Write a random hypergraph.
    Random(RandomArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyType {
    Star,
    B,
    Hm,
    A,
    Fano,
    Complete,
    Empty,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long = "type", value_enum)]
    pub kind: FamilyType,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    /// Output file; the text goes to stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Co2Args {
    pub input: PathBuf,
    /// Subset size; defaults to k-1.
    #[arg(long)]
    pub ell: Option<u32>,
    /// List every nonzero codegree.
    #[arg(long)]
    pub entries: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Prop {
    Intersecting,
    Dwise,
    Nontrivial,
    Matching,
    Covering,
    Free,
    Contains,
    Constraint,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub prop: Prop,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    /// Upper limit for `matching` / `covering`; without it only the number is reported.
    #[arg(long)]
    pub s: Option<u32>,
    /// `KIND:LEN`, e.g. `linear-cycle:3`.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Constraint expression, as for `search`.
    #[arg(long)]
    pub constraint: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Bey,
    EkrL2,
    TStarL2,
    Ekr,
    TEkr,
    Hm,
    THm,
    Emc,
    Fk,
    SigmaUpper,
    DeCaenPi,
    SigmaKt,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(value_enum)]
    pub kind: BoundKind,
    /// Hypergraph file, for `bey`.
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub u: Option<u32>,
    #[arg(long)]
    pub ell: Option<u32>,
    /// Edge count, for `bey` without a file.
    #[arg(long)]
    pub m: Option<u64>,
    /// Turán density as `p/q`, for `sigma-upper`.
    #[arg(long)]
    pub pi: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Bnb,
    Brute,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    #[arg(long, value_enum, default_value = "bnb")]
    pub mode: ModeArg,
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Optimal families to keep.
    #[arg(long)]
    pub max_optima: Option<usize>,
    /// Let brute force run on more than 30 candidate edges.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    /// `intersecting`, `t-intersecting:T`, `dwise:D:T`, `matching:S`,
    /// `free:KIND:LEN` or `none`, joined with `&`.
    #[arg(long)]
    pub constraint: String,
    /// Keep only families whose common intersection has fewer than T vertices.
    #[arg(long, value_name = "T")]
    pub nontrivial: Option<u32>,
    /// Turn off every pruning rule.
    #[arg(long)]
    pub no_pruning: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// ekr-l2, min-3-cycle, min-3-path, lin-3-cycle, lin-3-path, emc-ratio,
    /// hm-l2-conjecture (alias hm-l2-check), t-int-l2-conjecture.
    pub claim: String,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    /// Conjecture probes: report closed forms only.
    #[arg(long)]
    pub no_search: bool,
    /// Repeat for every n from this value and report the first confirmed n.
    #[arg(long)]
    pub n_from: Option<u32>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    /// Exact edge count.
    #[arg(long, conflicts_with = "density")]
    pub m: Option<usize>,
    /// Keep each k-set with this probability.
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    match commands::run(&cli, argv) {
        Ok((mut report, status)) => {
            if cli.timing {
                report.set_timing(start.elapsed());
            }
            print!("{}", report.render(cli.json));
            ExitCode::from(status.code())
        }
        Err(e) => {
            eprintln!("hx: {e:#}");
            ExitCode::from(2)
        }
    }
}
