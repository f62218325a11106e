mod commands;
mod render;

use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use flagcurve_core::sweep::{DEFAULT_CASES, DEFAULT_SEED};

/// Classify distinguished curves on flag manifolds SL(n,R)/P and run the
/// exact verification suites.
#[derive(Debug, Parser)]
#[command(name = "flagcurve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation order for power series.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u64).range(8..))]
    pub order: u64,
    /// Step budget for Gröbner bases and the witness search.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1000..))]
    pub budget: u64,
    /// Seed for the randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Cases per randomized sweep.
    #[arg(long, global = true, default_value_t = DEFAULT_CASES)]
    pub cases: usize,
    /// -v for progress, -vv for solver internals.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
    /// Flip the expected classification of a table row (negative control).
    #[arg(long, global = true, hide = true, value_name = "ROW")]
    pub corrupt_table_expectation: Option<u8>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether exp(tX)·P admits projective reparameterisations.
    Classify {
        /// Matrix JSON file, or - for stdin.
        input: String,
    },
    /// Recompute the SL(3) Borel table of normal forms.
    Table,
    /// Dump the criterion polynomial system for a curve.
    Criterion {
        /// Matrix JSON file, or - for stdin.
        input: String,
    },
    /// Search for p in P with Ad_p FROM = TO.
    Conjugate { from: String, to: String },
    /// Vector-field algebra checks on the line.
    Lie1d {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Run every reference computation and the seeded sweeps.
    #[command(name = "paper-check")]
    FullCheck,
    /// Search a polynomial system JSON for a rational solution.
    Solve {
        /// `{"unknowns": [...], "equations": [...]}` file, or - for stdin.
        input: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Suite {
    Closure,
    Ode,
    Coordchange,
    Flow,
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .format_timestamp(None)
        .init();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.global.verbose);
    let g = &cli.global;
    let result = match &cli.command {
        Command::Classify { input } => commands::classify(g, input),
        Command::Table => commands::table(g),
        Command::Criterion { input } => commands::criterion(g, input),
        Command::Conjugate { from, to } => commands::conjugate(g, from, to),
        Command::Lie1d { suite } => commands::lie1d(g, *suite),
        Command::FullCheck => commands::check_all(g),
        Command::Solve { input } => commands::solve(g, input),
    };
    match result {
        Ok(report) => {
            if g.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", render::text(&report.json));
            }
            match report.failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("verification failed: {msg}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
