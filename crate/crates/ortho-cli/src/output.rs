//! Output plumbing: JSON/CSV rendering to stdout or a file, UTF-8 with
//! LF line endings, byte-identical across runs for identical inputs.

use crate::{FormatArg, OutputOpts};
use serde::Serialize;
use std::io::Write;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
    Golden(String),
    Tolerance(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m)
            | CliError::Internal(m)
            | CliError::Golden(m)
            | CliError::Tolerance(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => crate::EXIT_USAGE,
            CliError::Internal(_) | CliError::Io(_) => crate::EXIT_INTERNAL,
            CliError::Golden(_) => crate::EXIT_GOLDEN,
            CliError::Tolerance(_) => crate::EXIT_TOLERANCE,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub fn emit(opts: &OutputOpts, text: &str) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &opts.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn emit_json<T: Serialize>(opts: &OutputOpts, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    emit(opts, &text)
}

/// CSV body: header plus rows, comma-separated, no quoting (fields are
/// numbers, words over a/b/g, or space-separated integer lists).
pub fn csv(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn render<T: Serialize>(
    opts: &OutputOpts,
    value: &T,
    csv_text: impl FnOnce() -> String,
) -> Result<(), CliError> {
    match opts.format {
        FormatArg::Json => emit_json(opts, value),
        FormatArg::Csv => emit(opts, &csv_text()),
    }
}
