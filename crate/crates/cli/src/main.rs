use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

#[derive(Parser, Debug)]
#[command(name = "burghelea", version, about = "Exact chain-level checks for Hochschild homology of group rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ranks of HH_n of a finite group ring, optionally of one class component.
    HhRanks(HhRanksArgs),
    /// Per-class comparison of HH_n(QG)_x with H_n(Z_h; Q) on a finite group.
    BurgheleaCheck(BurgheleaArgs),
    /// Seeded identity suites; exits 2 on any failure.
    VerifyIdentities(VerifyArgs),
    /// Minimal conjugator lengths to class representatives over a ball.
    ConjBound(ConjArgs),
    /// Norm growth of one comparison map over class representatives.
    NormProfile(NormArgs),
    /// Higher-order Dehn function of a finite simplicial complex.
    Dehn(DehnArgs),
    /// Weighted LP fillings in a ball-truncated bar complex.
    Fill(FillArgs),
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct HhRanksArgs {
    /// Group descriptor: a file path or inline JSON.
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Restrict to the class of this element.
    #[arg(long)]
    class: Option<String>,
    /// Largest chain-space dimension to build.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct BurgheleaArgs {
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 1)]
    max_degree: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    group: String,
    /// Highest degree checked.
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Sampling ball for infinite groups.
    #[arg(long, default_value_t = 2)]
    radius: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ConjArgs {
    #[arg(long)]
    group: String,
    /// Sample every h in this ball.
    #[arg(long, default_value_t = 4)]
    radius: usize,
    /// Conjugator search radius; defaults to the sample radius.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct NormArgs {
    /// One of pi_h, iota_h, psi_phi_inv, phi_psi_inv, d_bar.
    map: String,
    #[arg(long)]
    group: String,
    /// Profile only this class representative.
    #[arg(long)]
    class: Option<String>,
    #[arg(long, default_value_t = 1)]
    degree: usize,
    #[arg(long, default_value_t = 2)]
    radius: usize,
    /// Range a..b of norm exponents; pairs k <= k' are profiled.
    #[arg(long, default_value = "0..2")]
    k_grid: String,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DehnArgs {
    /// Complex descriptor: a file path or inline JSON.
    #[arg(long)]
    complex: String,
    /// Degree N of the boundaries.
    #[arg(long, alias = "dim", default_value_t = 1)]
    degree: usize,
    /// Largest boundary mass k.
    #[arg(long, alias = "kmax", default_value_t = 4)]
    k: usize,
    /// Enumeration cap on candidate chains.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct FillArgs {
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 1)]
    degree: usize,
    /// Truncation radius; each LP at radius 3 takes seconds.
    #[arg(long, default_value_t = 2)]
    radius: usize,
    /// Exponent of the filling norm.
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Range a..b of the offsets p.
    #[arg(long, default_value = "0..3")]
    k_grid: String,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
