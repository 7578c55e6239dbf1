//! Report envelope shared by every command.

use std::io::Write;
use std::path::Path;

use normtower::Error;
use serde::Serialize;
use serde_json::Value;

use crate::{Cli, Command};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_INVALID: u8 = 3;

/// What a command hands back: its verdict and its result body.
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
    pub summary: String,
}

impl Outcome {
    pub fn new<T: Serialize>(passed: bool, result: &T, summary: String) -> normtower::Result<Self> {
        let result = serde_json::to_value(result)
            .map_err(|e| Error::Inconsistent(format!("report serialisation failed: {e}")))?;
        Ok(Outcome {
            passed,
            result,
            summary,
        })
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct Document<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a Cli,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Inconsistent(_) | Error::NotIsomorphic(_) => EXIT_PROPERTY,
        _ => EXIT_INVALID,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Budget { .. } => "budget",
        Error::Inconsistent(_) => "inconsistent",
        Error::NotIsomorphic(_) => "not_isomorphic",
        Error::Precondition(_) => "precondition",
        _ => "invalid_input",
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Stage(_) => "stage",
        Command::Relabel(_) => "relabel",
        Command::D(_) => "d",
        Command::Tower(_) => "tower",
        Command::Pgl(_) => "pgl",
        Command::Graph(_) => "graph",
        Command::Tree(_) => "tree",
    }
}

/// Wraps a command result into the report document, exit code and stderr summary.
pub fn finish(cli: &Cli, result: normtower::Result<Outcome>) -> (Value, u8, String) {
    let command = command_name(&cli.command);
    let (status, body, error, code, summary) = match result {
        Ok(o) => {
            let (status, code) = if o.passed {
                ("passed", EXIT_OK)
            } else {
                ("failed", EXIT_PROPERTY)
            };
            (status, Some(o.result), None, code, format!("{command}: {status}: {}", o.summary))
        }
        Err(e) => {
            let code = exit_code(&e);
            let summary = format!("{command}: error: {e}");
            let err = ErrorBody {
                kind: error_kind(&e),
                message: e.to_string(),
            };
            ("error", None, Some(err), code, summary)
        }
    };
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        command,
        config: cli,
        status,
        result: body,
        error,
    };
    let value = serde_json::to_value(&doc).expect("report document serialises");
    (value, code, summary)
}

pub fn emit(doc: &Value, out: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("json value serialises");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Reads a JSON input file; any failure is invalid input.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> normtower::Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}
