use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ccckit::{Error, Registry, SuiteConfig};
use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Run per-family witness batteries and emit a report.
#[derive(Debug, Parser)]
#[command(name = "ccckit", version)]
struct Cli {
    /// Family id; see --list.
    #[arg(long, required_unless_present = "list")]
    family: Option<String>,

    /// Size parameter n of the family.
    #[arg(long, default_value_t = 2)]
    size: usize,

    /// Number of tower levels.
    #[arg(long, default_value_t = 2)]
    depth: usize,

    /// Bound P for Z-mode checks.
    #[arg(long, default_value_t = ccckit::group::DEFAULT_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
    bound: u32,

    /// Samples per sampled identity.
    #[arg(long, default_value_t = 50)]
    samples: usize,

    #[arg(long, env = "CCCKIT_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// List the families and exit.
    #[arg(long)]
    list: bool,

    /// Record elapsed_ms. Reports are then no longer reproducible.
    #[arg(long)]
    timing: bool,
}

fn emit(out: Option<&PathBuf>, body: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let registry = Registry::builtin();

    if cli.list {
        let body = match cli.format {
            Format::Json => registry.list_json() + "\n",
            Format::Text => registry.list_text(),
        };
        return match emit(cli.out.as_ref(), &body) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
        };
    }

    let cfg = SuiteConfig {
        family: cli.family.unwrap_or_default(),
        size: cli.size,
        depth: cli.depth,
        bound: cli.bound,
        samples: cli.samples,
        seed: cli.seed,
        timing: cli.timing,
    };
    let report = match registry.run(&cfg) {
        Ok(r) => r,
        Err(e @ Error::UnknownFamily(_)) => {
            eprintln!("error: {e}; known families: {}", registry.ids().join(", "));
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let body = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    if let Err(e) = emit(cli.out.as_ref(), &body) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(3);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        if let Some(c) = report.failures().next() {
            eprintln!("FAIL {}: {} != {}", c.name, c.lhs, c.rhs);
        }
        ExitCode::from(1)
    }
}
