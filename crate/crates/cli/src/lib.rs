//! Batch front end for `modal-duality`.
//!
//! [`run_command`] takes an argument vector and a stdin reader and returns
//! the exit code together with everything written to stdout and stderr, so
//! the binary and the tests share one code path.
//!
//! Exit codes: 0 on success or a true verdict, 1 on a false verdict (the
//! witness is in the report), 2 on usage, parse, schema, IO or library
//! errors.

use std::io::Read;

use thiserror::Error;

mod commands;
pub mod document;
pub mod suite;

pub use document::{parse_document, serialize_document, Document, MapTable};

#[derive(Error, Debug)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Library(#[from] modal_duality::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &CliError) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn run_command<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    commands::run(argv, stdin)
}
