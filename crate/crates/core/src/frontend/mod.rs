//! Text front end: a small model language, a canonical emitter, reports and
//! the command layer shared by the CLI and the tests.
//!
//! ```text
//! ring { even: x y }
//! bundle {
//!   even: e1 e2
//!   e1 -> d/dx
//!   e2 -> d/dy
//!   lie
//! }
//! connection c1 { Gamma[e1,e2->e1] = x }
//! section u = e1 + x*e2
//! ```

mod commands;
mod emit;
mod lexer;
mod parser;
mod report;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use commands::{run_command, Command, Options};
pub use emit::emit_model;
pub use lexer::Pos;
pub use parser::parse_model;
pub use report::{digest_hex, Format, Report};

use crate::algebroid::{Algebroid, Section};
use crate::connection::{Connection, Metric};
use crate::truss::ConnEndo;

/// A located problem in model text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ModelError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ModelError {
    pub fn at(pos: Pos, message: impl Into<String>) -> Self {
        ModelError {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum FrontendError {
    #[error("{}:{err}", path.display())]
    Model { path: PathBuf, err: ModelError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] crate::error::Error),
    #[error("{}: {err}", path.display())]
    Io { path: PathBuf, err: std::io::Error },
}

/// Everything declared in one model file, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub algebroid: Algebroid,
    pub connections: Vec<(String, Connection)>,
    pub metrics: Vec<(String, Metric)>,
    pub endos: Vec<(String, ConnEndo)>,
    pub sections: Vec<(String, Section)>,
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

impl ModelFile {
    pub fn connection(&self, name: &str) -> Option<&Connection> {
        lookup(&self.connections, name)
    }

    pub fn metric(&self, name: &str) -> Option<&Metric> {
        lookup(&self.metrics, name)
    }

    pub fn endo(&self, name: &str) -> Option<&ConnEndo> {
        lookup(&self.endos, name)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        lookup(&self.sections, name)
    }
}

/// Reads and parses a model, returning its text as well so callers can
/// fingerprint it.
pub fn load_model(path: &Path) -> Result<(ModelFile, String), FrontendError> {
    let text = std::fs::read_to_string(path).map_err(|err| FrontendError::Io {
        path: path.to_owned(),
        err,
    })?;
    let model = parse_model(&text).map_err(|err| FrontendError::Model {
        path: path.to_owned(),
        err,
    })?;
    Ok((model, text))
}

#[cfg(test)]
mod tests;
