//! `biquot`: Tor of polynomial diagrams, identity suites and cochain algebras
//! from the command line.
//!
//! Exit status: 0 on success, 1 on malformed input, 2 when a computation
//! disagrees with its oracle or an identity fails.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biquot::input::{parse_job, JobFile};
use biquot::report::{cochains_report, tor_report, verify_report, Overrides, ReportError};
use biquot::FieldChoice;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "biquot",
    version,
    about = "Exact bar constructions, HGA products and Tor over polynomial rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tor of A′ ← B → A″ from a job file, by the bar and Koszul complexes.
    Tor {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run an identity suite on a built-in example.
    Verify {
        /// bar-d2, tautological-mc, hga-mc, steenrod, mu-tilde-oracle, homotopy-h or naturality.
        suite: Option<String>,
        #[arg(long = "suite", value_name = "NAME", conflicts_with = "suite")]
        suite_flag: Option<String>,
        #[arg(long, value_name = "NAME")]
        example: String,
        /// cup-i index for the steenrod suite (0, 1 or 2; default all).
        #[arg(long = "i", value_name = "I")]
        cup_i: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Cochain algebra of a simplicial set from a job file.
    Cochains {
        file: PathBuf,
        /// Entry of `simplicial_sets` to use.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// `q` or `fp:<p>`.
    #[arg(long, value_parser = FieldChoice::parse)]
    field: Option<FieldChoice>,
    #[arg(long = "degree-bound", visible_alias = "degree", value_name = "N")]
    degree: Option<i32>,
    #[arg(long = "length-bound", visible_alias = "length", value_name = "L")]
    length: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    out: Format,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            field: self.field,
            degree: self.degree,
            length: self.length,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Input(String),
    Math(String),
}

fn load(path: &Path) -> Result<JobFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_job(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit<R: Serialize + Display>(report: &R, format: Format) {
    match format {
        Format::Text => print!("{report}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        ),
    }
}

fn input(e: ReportError) -> Failure {
    Failure::Input(e.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Tor { file, common } => {
            let job = load(&file)?;
            let report = tor_report(&job, common.overrides()).map_err(input)?;
            emit(&report, common.out);
            if let Some(d) = &report.verdict.first_disagreement {
                return Err(Failure::Math(format!(
                    "bar and Koszul ranks disagree at (p, q) = ({}, {}): bar {}, Koszul {}",
                    d.filtration, d.internal, d.bar, d.koszul
                )));
            }
            if let Some(e) = &report.verdict.product_failure {
                return Err(Failure::Math(format!("degree-0 products disagree: {e}")));
            }
            if !report.verdict.euler_consistent {
                return Err(Failure::Math(
                    "Euler characteristic of a complex differs from that of its cohomology".into(),
                ));
            }
            Ok(())
        }
        Command::Verify {
            suite,
            suite_flag,
            example,
            cup_i,
            common,
        } => {
            let suite = suite.or(suite_flag).ok_or_else(|| {
                Failure::Input("verify needs a suite name (positional or --suite)".into())
            })?;
            let report =
                verify_report(&suite, &example, cup_i, common.overrides()).map_err(input)?;
            emit(&report, common.out);
            match report.checks.iter().find(|c| !c.passed) {
                Some(c) => Err(Failure::Math(format!(
                    "{} fails at {}\n  lhs: {}\n  rhs: {}",
                    c.name,
                    c.at.as_deref().unwrap_or(""),
                    c.lhs.as_deref().unwrap_or(""),
                    c.rhs.as_deref().unwrap_or("")
                ))),
                None => Ok(()),
            }
        }
        Command::Cochains {
            file,
            index,
            common,
        } => {
            let job = load(&file)?;
            let report = cochains_report(&job, index, common.overrides()).map_err(input)?;
            emit(&report, common.out);
            match report.checks.iter().find(|c| !c.passed) {
                Some(c) => Err(Failure::Math(format!(
                    "{} fails at {}",
                    c.name,
                    c.at.as_deref().unwrap_or("")
                ))),
                None => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Math(m)) => {
            eprintln!("disagreement: {m}");
            ExitCode::from(2)
        }
    }
}
