//! The `cremona` command-line tool. [`run`] is the whole program; the
//! binary only forwards its arguments and exit code.

mod args;
mod commands;
mod corpus;
mod input;

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

use cremona_exprio::{Envelope, ParseError};

pub use args::{Cli, Command, Flags, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command produced: human-readable text and the JSON `result`.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub witness: Option<Vec<String>>,
}

impl Outcome {
    pub fn new(text: impl Into<String>, result: impl serde::Serialize) -> Self {
        Outcome { text: text.into(), result: serde_json::to_value(result).expect("serializable"), witness: None }
    }

    pub fn witness<S: ToString>(mut self, w: impl IntoIterator<Item = S>) -> Self {
        self.witness = Some(w.into_iter().map(|s| s.to_string()).collect());
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    Io {
        path: PathBuf,
        message: String,
    },
    Parse {
        source: String,
        input: String,
        error: ParseError,
    },
    Domain(cremona::Error),
    /// A corpus run with failing cases.
    Failed(String),
}

impl From<cremona::Error> for CliError {
    fn from(e: cremona::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn envelope(&self) -> Envelope {
        match self {
            CliError::Io { path, message } => Envelope::domain_error("io", format!("{}: {message}", path.display())),
            CliError::Parse { source, error, .. } => Envelope::parse_error(error, source),
            CliError::Domain(e) => Envelope::domain_error("domain", e.to_string()),
            CliError::Failed(m) => Envelope::domain_error("failed", m.clone()),
        }
    }

    fn text(&self) -> String {
        match self {
            CliError::Io { path, message } => format!("error: {}: {message}", path.display()),
            CliError::Parse { source, input, error } => format!("{source}:\n{}", error.render(input)),
            CliError::Domain(e) => format!("error: {e}"),
            CliError::Failed(m) => format!("error: {m}"),
        }
    }
}

pub type CliResult = Result<Outcome, CliError>;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let json = cli.flags.json;
    match execute(&cli) {
        Ok(o) => {
            if json {
                let mut env = Envelope::ok(o.result);
                env.witness = o.witness;
                let _ = writeln!(out, "{}", env.to_json());
            } else {
                let _ = write!(out, "{}", o.text);
                if !o.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            EXIT_OK
        }
        Err(e) => {
            if json {
                let _ = writeln!(out, "{}", e.envelope().to_json());
            } else {
                let _ = writeln!(err, "{}", e.text());
            }
            EXIT_DOMAIN
        }
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> CliResult {
    commands::dispatch(&cli.command, &cli.flags)
}
