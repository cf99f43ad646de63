use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use projinj::format::{load, write_alg};
use projinj::report::{analyze, render_text, AnalysisOptions};
use projinj::symform::OracleConfig;
use projinj::{validate, Field};

#[derive(Parser)]
#[command(name = "projinj", version, about = "Symmetry of projective-injective endomorphism algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis on a `.alg` or `.quiver` file.
    Analyze {
        path: PathBuf,
        /// Override the field: `Q` or `Fp:<p>`.
        #[arg(long, value_parser = parse_field)]
        field: Option<Field>,
        #[arg(long, alias = "format", value_enum, default_value = "text")]
        report: ReportFormat,
        /// Decimal or `0x` hex.
        #[arg(long, value_parser = parse_seed, default_value = "0xF0B0")]
        oracle_seed: u64,
        #[arg(long, default_value_t = 64)]
        oracle_trials: u32,
        /// Comma-separated `name=k` pairs for the form on `End(Q)`.
        #[arg(long, value_parser = parse_multiplicities)]
        multiplicities: Option<BTreeMap<String, usize>>,
        #[arg(long)]
        skip_cartan: bool,
        /// Print the elapsed time to stderr.
        #[arg(long)]
        timing: bool,
    },
    /// Print the validation checks for an algebra.
    Validate {
        path: PathBuf,
        #[arg(long, value_parser = parse_field)]
        field: Option<Field>,
    },
    /// Expand an input into the `.alg` structure-constant format.
    Compile {
        path: PathBuf,
        #[arg(long, value_parser = parse_field)]
        field: Option<Field>,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: projinj::Error| e.to_string())
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("bad seed {s:?}: {e}"))
}

fn parse_multiplicities(s: &str) -> Result<BTreeMap<String, usize>, String> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, k) = part.split_once('=').ok_or_else(|| format!("expected name=k, got {part:?}"))?;
        let k: usize = k.trim().parse().map_err(|e| format!("bad multiplicity in {part:?}: {e}"))?;
        out.insert(name.trim().to_string(), k);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { path, field, report, oracle_seed, oracle_trials, multiplicities, skip_cartan, timing } => {
            let start = Instant::now();
            let a = load(&path, field).with_context(|| format!("loading {}", path.display()))?;
            let options = AnalysisOptions {
                oracle: OracleConfig { seed: oracle_seed, trials: oracle_trials },
                multiplicities,
                skip_cartan,
            };
            let r = analyze(a, &path.display().to_string(), &options)?;
            match report {
                ReportFormat::Text => print!("{}", render_text(&r)),
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&r)?),
            }
            if timing {
                eprintln!("elapsed: {:.3?}", start.elapsed());
            }
        }
        Command::Validate { path, field } => {
            let a = load(&path, field).with_context(|| format!("loading {}", path.display()))?;
            let v = validate(&a);
            for c in &v.checks {
                match &c.witness {
                    Some(w) if !c.passed => println!("FAIL {}: {w}", c.name),
                    _ => println!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name),
                }
            }
            if !v.ok() {
                bail!("validation failed");
            }
        }
        Command::Compile { path, field } => {
            let a = load(&path, field).with_context(|| format!("loading {}", path.display()))?;
            print!("{}", write_alg(&a));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
