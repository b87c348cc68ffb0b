//! Command-line frontend: analyze one input, run a deformation scan, or
//! verify the built-in corpus. Exit code 0 means every applicable
//! theorem-level check passed (and, in corpus mode, every expectation
//! matched); 1 means a check or expectation failed; 2 means the input could
//! not be used.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nilhodge_core::corpus::corpus_verify;
use nilhodge_core::input::parse_metric;
use nilhodge_core::{analyze, parse_input, scan, InputDocument};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nilhodge",
    version,
    about = "Exact Hodge-de Rham numbers and invariants of left-invariant almost \
             complex structures on 4-dimensional nilmanifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Commands {
    /// Analyze one algebra-plus-structure input file
    Analyze {
        /// JSON input document
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include the metric-dependent harmonic section
        #[arg(long)]
        include_harmonic: bool,
        /// Hermitian metric file, overriding any metric block in the input
        #[arg(long)]
        metric: Option<PathBuf>,
        /// Accept non-nilpotent algebras (results are algebra-level only)
        #[arg(long)]
        allow_non_nilpotent: bool,
        /// Write the report to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every structure sample of a deformation-scan file
    Scan {
        /// JSON scan document (one algebra, many structures)
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recompute the built-in corpus and compare with the reference values
    CorpusVerify {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(text: String, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Commands::Analyze {
            file,
            format,
            include_harmonic,
            metric,
            allow_non_nilpotent,
            output,
        } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let doc = parse_input(&text)?;
            let InputDocument::Analysis(mut input) = doc else {
                anyhow::bail!(
                    "{} is a scan document; use the scan subcommand",
                    file.display()
                );
            };
            if include_harmonic {
                input.include_harmonic = true;
            }
            if allow_non_nilpotent {
                input.allow_non_nilpotent = true;
            }
            if let Some(metric_path) = metric {
                let metric_text = std::fs::read_to_string(&metric_path)
                    .with_context(|| format!("reading {}", metric_path.display()))?;
                input.metric = Some(parse_metric(&metric_text)?);
                input.include_harmonic = true;
            }
            let report = analyze(&input)?;
            let rendered = match format {
                Format::Text => report.render_text(),
                Format::Json => {
                    let mut s = report.to_json();
                    s.push('\n');
                    s
                }
            };
            emit(rendered, output.as_deref())?;
            Ok(report.all_checks_pass)
        }
        Commands::Scan {
            file,
            format,
            output,
        } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let doc = parse_input(&text)?;
            let InputDocument::Scan(input) = doc else {
                anyhow::bail!(
                    "{} is a single-structure document; use the analyze subcommand",
                    file.display()
                );
            };
            let report = scan(&input)?;
            let rendered = match format {
                Format::Text => report.render_text(),
                Format::Json => {
                    let mut s = report.to_json();
                    s.push('\n');
                    s
                }
            };
            emit(rendered, output.as_deref())?;
            Ok(report.all_samples_ok)
        }
        Commands::CorpusVerify { format, output } => {
            let summary = corpus_verify();
            let rendered = match format {
                Format::Text => summary.render_text(),
                Format::Json => {
                    let mut s = summary.to_json();
                    s.push('\n');
                    s
                }
            };
            emit(rendered, output.as_deref())?;
            Ok(summary.all_passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
