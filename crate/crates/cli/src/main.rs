//! `toric-fano`: components of Fano schemes of toric varieties from the
//! command line.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 input over a
//! size cap, 4 invalid `k`, 5 local-scheme hypotheses violated, 6 a
//! verification check failed.

mod report;
mod text;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use toric_fano::input::{self, Input};
use toric_fano::verify::DEFAULT_SEED;
use toric_fano::Error;

#[derive(Parser)]
#[command(name = "toric-fano", version, about = "Fano schemes of linear subspaces on toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Point configuration (JSON object or one point per line)
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Refuse configurations with more points than this
    #[arg(long, default_value_t = 14)]
    max_points: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Components, intersections and connectivity of F_k for each k
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Plane dimension; repeatable. Defaults to 1..=dim
        #[arg(long = "k")]
        k: Vec<usize>,
        /// Also describe the local scheme at every facet that is an empty simplex
        #[arg(long)]
        local: bool,
    },
    /// Local scheme structure and multiplicity at a facet
    Mult {
        #[command(flatten)]
        common: Common,
        /// Comma-separated point indices of the facet
        #[arg(long)]
        sigma: String,
    },
    /// Run the oracle cross-checks
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long = "k")]
        k: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: u64,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code,
            kind,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::Parse(_)
            | Error::EmptyConfiguration
            | Error::RaggedPoints { .. }
            | Error::DuplicatePoint(..) => Failure::new(2, "parse", message),
            Error::FaceTooLarge(_) | Error::TooManyMonomials(_) | Error::Overflow => {
                Failure::new(3, "size_cap", message)
            }
            Error::InvalidK | Error::KExceedsL { .. } => Failure::new(4, "invalid_k", message),
            Error::Hypothesis(h) => Failure::new(5, h.code(), message),
            Error::IndexOutOfRange(_) | Error::NotAFace | Error::NotEmptySimplex => {
                Failure::new(5, "not_a_face", message)
            }
            Error::InvalidPartition(_) | Error::InvalidChart(_) => Failure::new(2, "parse", message),
        }
    }
}

fn load(common: &Common) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(&common.input)
        .map_err(|e| Failure::new(2, "parse", format!("{}: {e}", common.input.display())))?;
    let parsed = input::parse_config(&text)?;
    if parsed.config.len() > common.max_points {
        return Err(Failure::new(
            3,
            "size_cap",
            format!(
                "{} points exceed --max-points {}",
                parsed.config.len(),
                common.max_points
            ),
        ));
    }
    Ok(parsed)
}

fn resolve_ks(ks: &[usize], dim: usize) -> Result<Vec<usize>, Failure> {
    if ks.contains(&0) {
        return Err(Failure::new(4, "invalid_k", "k must be at least 1"));
    }
    let mut ks = if ks.is_empty() { (1..=dim).collect() } else { ks.to_vec() };
    ks.sort_unstable();
    ks.dedup();
    Ok(ks)
}

fn write_stdout(s: &str) {
    // a closed pipe is not an error for a report writer
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit<T: Serialize>(report: &T, format: Format) {
    let value = serde_json::to_value(report).expect("reports serialize");
    match format {
        Format::Json => write_stdout(&(serde_json::to_string_pretty(&value).expect("json") + "\n")),
        Format::Text => write_stdout(&text::render(&value)),
    }
}

fn run(command: &Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze { common, k, local } => {
            let input = load(common)?;
            let ks = resolve_ks(k, input.config.dim())?;
            emit(&report::analyze(&input, &ks, *local)?, common.format);
            Ok(0)
        }
        Command::Mult { common, sigma } => {
            let input = load(common)?;
            let sigma = input::parse_index_list(sigma)?;
            emit(&report::mult(&input, &sigma)?, common.format);
            Ok(0)
        }
        Command::Verify {
            common,
            k,
            seed,
            trials,
        } => {
            let input = load(common)?;
            let ks = resolve_ks(k, input.config.dim())?;
            let r = report::verify(&input, &ks, *trials, *seed)?;
            emit(&r, common.format);
            Ok(if r.passed { 0 } else { 6 })
        }
    }
}

fn format_of(command: &Command) -> Format {
    match command {
        Command::Analyze { common, .. } | Command::Mult { common, .. } | Command::Verify { common, .. } => {
            common.format
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema: u32,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    exit_code: u8,
    message: &'a str,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            if format_of(&cli.command) == Format::Json {
                let body = ErrorReport {
                    schema: report::SCHEMA,
                    error: ErrorBody {
                        kind: f.kind,
                        exit_code: f.code,
                        message: &f.message,
                    },
                };
                write_stdout(&(serde_json::to_string_pretty(&body).expect("json") + "\n"));
            }
            ExitCode::from(f.code)
        }
    }
}
