//! `choiscope`: analyze channels, convert between their representations,
//! and check wire-diagram identities from the command line.
//!
//! Structured results go to stdout as JSON (or a single verdict line for
//! diagram checks); diagnostics go to stderr. Exit codes: 0 success,
//! 1 diagrams differ, 2 malformed input, 3 dimension inconsistency,
//! 4 no Kraus representation exists.

mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use choiscope_core::{diagram, Error, Seed, Tol};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::CliError;
use crate::report::{ChannelFileOut, DataOut, ReportFile};

#[derive(Parser)]
#[command(name = "choiscope", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify channel properties and print a JSON report.
    Analyze(AnalyzeArgs),
    /// Rewrite a channel file in another representation.
    Convert(ConvertArgs),
    /// Work with wire-diagram expressions.
    Diagram {
        #[command(subcommand)]
        command: DiagramCommand,
    },
}

#[derive(Args)]
struct TolArgs {
    /// Relative tolerance for residual thresholds.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Absolute tolerance floor added to every threshold.
    #[arg(long, default_value_t = 1e-12)]
    tol_abs: f64,
}

impl TolArgs {
    fn tol(&self) -> Tol {
        Tol::new(self.tol, self.tol_abs)
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Channel file (JSON).
    file: PathBuf,
    #[command(flatten)]
    tol: TolArgs,
    /// Seed for the randomized positivity-preservation search.
    #[arg(long, env = "CHOISCOPE_SEED", default_value_t = 0)]
    seed: u64,
    /// Random restarts for the positivity-preservation search.
    #[arg(long, default_value_t = choiscope_core::channels::DEFAULT_PP_RESTARTS)]
    pp_restarts: u32,
    /// Treat a 'choi' file as normalized by dim_in (density scaling) and
    /// rescale it on load.
    #[arg(long)]
    normalized: bool,
}

#[derive(Args)]
struct ConvertArgs {
    /// Channel file (JSON).
    file: PathBuf,
    /// Target representation.
    #[arg(long, value_enum)]
    to: Target,
    #[command(flatten)]
    tol: TolArgs,
    /// Treat a 'choi' file as normalized by dim_in (density scaling) and
    /// rescale it on load.
    #[arg(long)]
    normalized: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Choi,
    Superop,
    Kraus,
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// Decide whether two diagram expressions denote the same tensor.
    Check(CheckArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Left expression.
    lhs: String,
    /// Right expression.
    rhs: String,
    /// JSON file binding named tensors to matrices.
    #[arg(long)]
    env: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Convert(args) => convert(args),
        Command::Diagram {
            command: DiagramCommand::Check(args),
        } => check(args),
    }
}

fn analyze(args: AnalyzeArgs) -> Result<u8, CliError> {
    let tol = args.tol.tol();
    let loaded = io::load_channel(&args.file, args.normalized, tol)?;
    let report = loaded
        .channel
        .property_report(tol, args.pp_restarts, Seed::new(args.seed));
    let out = ReportFile::new(
        &report,
        loaded.kind,
        args.normalized,
        args.seed,
        args.tol.tol,
        args.tol.tol_abs,
    );
    print_json(&out);
    Ok(0)
}

fn convert(args: ConvertArgs) -> Result<u8, CliError> {
    let tol = args.tol.tol();
    let loaded = io::load_channel(&args.file, args.normalized, tol)?;
    let channel = loaded.channel;
    let out = match args.to {
        Target::Choi => ChannelFileOut {
            kind: "choi",
            dim_in: channel.dim_in(),
            dim_out: channel.dim_out(),
            data: DataOut::Matrix(io::matrix_to_pairs(channel.choi())),
        },
        Target::Superop => ChannelFileOut {
            kind: "superop",
            dim_in: channel.dim_in(),
            dim_out: channel.dim_out(),
            data: DataOut::Matrix(io::matrix_to_pairs(channel.superop())),
        },
        Target::Kraus => {
            let kraus = channel.kraus_decompose(tol).map_err(|e| match e {
                Error::NotCpp { min_eigenvalue } => CliError::no_kraus(format!(
                    "no Kraus representation: the Choi matrix has negative eigenvalue \
                     {min_eigenvalue:.6e}"
                )),
                Error::NotHermitian {
                    residual,
                    threshold,
                } => CliError::no_kraus(format!(
                    "no Kraus representation: the Choi matrix is not hermitian \
                     (residual {residual:.3e}, threshold {threshold:.3e})"
                )),
                other => CliError::dimension(other.to_string()),
            })?;
            ChannelFileOut {
                kind: "kraus",
                dim_in: kraus.dim_in(),
                dim_out: kraus.dim_out(),
                data: DataOut::List(kraus.operators().iter().map(io::matrix_to_pairs).collect()),
            }
        }
    };
    print_json(&out);
    Ok(0)
}

fn check(args: CheckArgs) -> Result<u8, CliError> {
    let lhs = parse_side(&args.lhs, "left")?;
    let rhs = parse_side(&args.rhs, "right")?;
    let env = match &args.env {
        Some(path) => io::load_env(path)?,
        None => diagram::Env::new(),
    };
    let outcome = diagram::equivalent(&lhs, &rhs, &env, args.tol.tol())
        .map_err(|e| CliError::dimension(e.to_string()))?;
    if outcome.equivalent {
        println!("EQUIVALENT (max |Δ| = {:.3e})", outcome.max_abs_diff);
        Ok(0)
    } else {
        println!("DIFFER (max |Δ| = {:.3e})", outcome.max_abs_diff);
        Ok(io::EXIT_DIFFER)
    }
}

fn parse_side(source: &str, which: &str) -> Result<diagram::Expr, CliError> {
    diagram::parse(source).map_err(|e| {
        CliError::malformed(format!(
            "{which} expression: {}",
            io::caret_diagnostic(source, &e)
        ))
    })
}

fn print_json<T: serde::Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("report types always serialize");
    println!("{text}");
}
