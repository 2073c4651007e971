//! Text and JSON front end for `idarc_core`: an expression grammar whose
//! output re-parses as input, presentation schemas, and the `idarc` CLI.

pub mod cli;
pub mod expr;
pub mod schema;

use serde_json::{json, Value};
use thiserror::Error;

pub use cli::{run, Output};

/// Everything a command can fail with. [`Error::exit_code`] separates
/// malformed input (2) from mathematically invalid input (1).
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Schema(String),
    #[error("{context}: {source}")]
    Parse {
        context: String,
        source: expr::ParseError,
    },
    #[error("{context}: {source}")]
    Eval {
        context: String,
        source: expr::EvalError,
    },
    #[error(transparent)]
    Domain(#[from] idarc_core::Error),
    #[error("suite {name} failed {failed} of {cases} cases")]
    SuiteFailed {
        name: String,
        failed: usize,
        cases: usize,
        report: String,
    },
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Schema(_) | Error::Parse { .. } => 2,
            Error::Eval { .. } | Error::Domain(_) | Error::SuiteFailed { .. } => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Schema(_) => "schema",
            Error::Parse {
                source: expr::ParseError::Syntax { .. },
                ..
            } => "syntax",
            Error::Parse { .. } => "unknown_variable",
            Error::Eval { .. } => "non_invertible",
            Error::Domain(e) => e.kind(),
            Error::SuiteFailed { .. } => "suite_failed",
        }
    }

    /// `{"error": kind, "message": text}`, plus `offset` for parse errors
    /// and the full per-suite `report` for failed checks.
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind(), "message": self.to_string() });
        if let Error::Parse { source, .. } = self {
            v["offset"] = json!(source.offset());
        }
        if let Error::SuiteFailed { report, .. } = self {
            v["report"] = json!(report);
        }
        v
    }
}
