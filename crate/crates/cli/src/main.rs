//! `alexlin`: twisted Alexander invariants of augmented group systems.

mod compute;
mod search;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alexlin_core::sysfile::SystemFile;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "alexlin", version, about = "Twisted Alexander invariants of finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the presentation, ε and every representation block.
    Validate { file: PathBuf },
    /// Compute D, Wada's invariant and optionally the fibering check.
    Compute {
        file: PathBuf,
        /// Representation block to use (default: the first one, or the
        /// trivial 1-dimensional representation).
        #[arg(long)]
        rep: Option<String>,
        /// Run the fibering check, optionally with the kernel rank `n=K`.
        #[arg(long, num_args = 0..=1, default_missing_value = "", value_name = "n=K")]
        fiber: Option<String>,
        /// Emit a JSON record instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate representations over ℤ/p that kill every relator.
    Search {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long = "mod", value_name = "P")]
        modulus: u64,
        /// Stop after this many hits.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        max_candidates: u64,
        /// Keep only hits with non-commuting images.
        #[arg(long)]
        nonabelian: bool,
    },
}

/// Text for stdout plus the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

/// Failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: the input is well-formed but fails a check.
    Invalid(String),
    /// Exit 2: the input cannot be read or parsed.
    Parse(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Parse(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Parse(m) => m,
        }
    }
}

pub fn load(path: &Path) -> Result<SystemFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    SystemFile::parse(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn parse_fiber(arg: &str) -> Result<Option<usize>, Failure> {
    if arg.is_empty() {
        return Ok(None);
    }
    arg.strip_prefix("n=")
        .and_then(|k| k.parse().ok())
        .map(Some)
        .ok_or_else(|| Failure::Parse(format!("--fiber expects n=K, got `{arg}`")))
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Validate { file } => compute::validate(&file),
        Command::Compute { file, rep, fiber, json } => {
            let fiber = fiber.as_deref().map(parse_fiber).transpose()?;
            compute::compute(&file, rep.as_deref(), fiber, json)
        }
        Command::Search {
            file,
            dim,
            modulus,
            limit,
            max_candidates,
            nonabelian,
        } => search::run(&file, dim, modulus, limit, max_candidates, nonabelian),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
