use std::path::PathBuf;
use std::process::ExitCode;

use chowkit::graded::MuConvention;
use chowkit::io::{parse_input, run, run_selftest, Command, Overrides, Report};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chowkit", version, about = "Exact Hilbert-point weights, Futaki invariants and Chow forms")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Hilbert function, Hilbert polynomial and stabilization degree.
    Hilbert(Opts),
    /// Gieseker weights w_λ(m) and the fitted weight polynomial.
    Weight(Opts),
    /// Generalized Futaki invariants and the stability verdict.
    Futaki(Opts),
    /// Coefficient identities, L_l weights and the refined CM weight.
    CgkmVerify(Opts),
    /// Koszul torsion at one configuration of linear forms.
    ChowEval(Opts),
    /// Interpolate the Chow form from torsion samples.
    ChowInterp(Opts),
    /// Weights and Futaki invariants over a list or grid of subgroups.
    Scan(Opts),
    /// Run the built-in invariant suite.
    Selftest(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Opts {
    /// Input JSON file.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long)]
    m_start: Option<u32>,
    #[arg(long)]
    m_len: Option<u32>,
    /// literal or normalized.
    #[arg(long)]
    mu: Option<MuConvention>,
    /// Expansion order of the Futaki series.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Accept subgroups whose weights do not sum to zero.
    #[arg(long)]
    allow_gl: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Directory for cached graded pieces.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Scan the grid of integer weight vectors.
    #[arg(long)]
    grid: bool,
    #[arg(long)]
    grid_bound: Option<i64>,
}

impl Opts {
    fn overrides(&self) -> Overrides {
        Overrides {
            m_start: self.m_start,
            m_len: self.m_len,
            mu: self.mu,
            order: self.order,
            seed: self.seed,
            allow_gl: self.allow_gl,
            grid_bound: self.grid_bound,
            use_grid: self.grid,
        }
    }
}

fn execute(command: Command, opts: &Opts) -> Report {
    let Some(path) = &opts.input else {
        if command == Command::Selftest {
            return run_selftest(opts.seed.unwrap_or(0));
        }
        let e = chowkit::Error::Input(format!("{} requires --input", command.as_str()));
        return Report::failure(command.as_str(), "", &e);
    };
    match parse_input(path, &opts.overrides()) {
        Ok(job) => run(command, &job, opts.cache.as_deref()),
        Err(e) => Report::failure(command.as_str(), &path.display().to_string(), &e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match &cli.command {
        Sub::Hilbert(o) => (Command::Hilbert, o),
        Sub::Weight(o) => (Command::Weight, o),
        Sub::Futaki(o) => (Command::Futaki, o),
        Sub::CgkmVerify(o) => (Command::CgkmVerify, o),
        Sub::ChowEval(o) => (Command::ChowEval, o),
        Sub::ChowInterp(o) => (Command::ChowInterp, o),
        Sub::Scan(o) => (Command::Scan, o),
        Sub::Selftest(o) => (Command::Selftest, o),
    };
    let report = execute(command, opts);
    let text = match opts.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &opts.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("chowkit: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = &report.error {
        eprintln!("chowkit: {}", e.message);
    }
    ExitCode::from(report.exit_code() as u8)
}
