//! Command-line front end: `impbox {check|convert|query|verify}`.
//!
//! Exit codes: 0 success, 1 invalid document, 2 usage error, 3 disagreement
//! with the credal-set oracle.

pub mod commands;
pub mod document;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{Bound, CommandError};
use crate::document::{Document, Kind};

/// Environment variable capping the number of elements of a space.
pub const MAX_N_VAR: &str = "IMPBOX_MAX_N";
const DEFAULT_MAX_N: usize = 24;

#[derive(Debug, Parser)]
#[command(
    name = "impbox",
    version,
    about = "Exact imprecise-probability representations on finite spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a document and classify it.
    Check { file: PathBuf },
    /// Convert a document to another representation.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// Element ordering for interval to p-box, as comma-separated labels.
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<String>>,
    },
    /// Print the exact lower or upper probability of an event.
    Query {
        file: PathBuf,
        /// Comma-separated labels; empty for the empty event.
        #[arg(long, allow_hyphen_values = true)]
        event: String,
        #[arg(long, value_enum)]
        bound: BoundArg,
    },
    /// Cross-check every event bound against the credal-set oracle.
    Verify { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Target {
    Capacity,
    Mass,
    Possibility,
    Interval,
    GenPbox,
    NestedBounds,
    Probability,
}

impl From<Target> for Kind {
    fn from(t: Target) -> Kind {
        match t {
            Target::Capacity => Kind::Capacity,
            Target::Mass => Kind::Mass,
            Target::Possibility => Kind::Possibility,
            Target::Interval => Kind::Interval,
            Target::GenPbox => Kind::GenPBox,
            Target::NestedBounds => Kind::NestedBounds,
            Target::Probability => Kind::Probability,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BoundArg {
    Lower,
    Upper,
}

/// Reads the element cap from the environment.
pub fn max_elements() -> Result<usize, CommandError> {
    match std::env::var(MAX_N_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_N),
        Err(e) => Err(CommandError::Usage(format!("{MAX_N_VAR}: {e}"))),
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n.min(DEFAULT_MAX_N)),
            _ => Err(CommandError::Usage(format!(
                "{MAX_N_VAR} must be a positive integer, got {text:?}"
            ))),
        },
    }
}

fn load(file: &PathBuf) -> Result<Document, CommandError> {
    let mut text = String::new();
    let read = if file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    read.map_err(|e| CommandError::Usage(format!("{}: {e}", file.display())))?;
    Document::parse(&text, max_elements()?).map_err(|e| CommandError::Invalid(e.to_string()))
}

/// Runs one command, returning the text for standard output.
pub fn run(cli: Cli) -> Result<String, CommandError> {
    match cli.command {
        Command::Check { file } => commands::check(&load(&file)?),
        Command::Convert { file, to, sigma } => {
            let doc = load(&file)?;
            commands::convert(&doc, to.into(), sigma.as_deref()).map(|docs| commands::render(&docs))
        }
        Command::Query { file, event, bound } => {
            let doc = load(&file)?;
            let event = commands::parse_event(doc.space(), &event)?;
            let bound = match bound {
                BoundArg::Lower => Bound::Lower,
                BoundArg::Upper => Bound::Upper,
            };
            commands::query(&doc, &event, bound)
        }
        Command::Verify { file } => commands::verify(&load(&file)?),
    }
}
