//! Transition-system models: labels, LTS/IOLTS values, the Aldebaran
//! (`.aut`) text format, quiescence, and DOT rendering.

mod aldebaran;
pub(crate) mod dot;
mod label;
pub mod random;
mod system;

#[cfg(test)]
pub(crate) mod fixtures;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use aldebaran::{parse_aldebaran, serialize_aldebaran, LabelMode, LabelingConfig, Parsed};
pub use dot::to_dot;
pub use label::{
    validate_token, InternalLabels, Label, LabelKind, DEFAULT_INTERNAL_LABELS, QUIESCENCE,
};
pub use system::{ModelKind, SystemBuilder, Transition, TransitionSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("empty model text")]
    Empty,
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: malformed transition: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: transition has {found} fields, expected 3")]
    Arity { line: usize, found: usize },
    #[error("line {line}: {message}")]
    CountMismatch { line: usize, message: String },
    #[error("label `{label}` is declared neither as input nor as output{}", line_suffix(*.line))]
    UndeclaredLabel { label: String, line: Option<usize> },
    #[error("label `{0}` is declared both as input and as output")]
    OverlappingLabel(String),
    #[error("line {line}: label `{label}` is used both with and without a `?`/`!` marker")]
    MixedMarker { label: String, line: usize },
    #[error("line {line}: label `{label}` has no `?`/`!` marker")]
    Unmarked { label: String, line: usize },
    #[error("line {line}: marker on `{label}` contradicts its declared kind")]
    MarkerConflict { label: String, line: usize },
    #[error("invalid label `{label}`: {reason}")]
    InvalidLabel { label: String, reason: String },
    #[error("invalid state name `{0}`")]
    InvalidState(String),
    #[error("initial state `{0}` does not occur in any transition")]
    UnknownInitial(String),
    #[error("{0} requires an IOLTS")]
    NotIolts(&'static str),
    #[error("model already carries the quiescence label `delta`")]
    AlreadyQuiescent,
}

fn line_suffix(line: Option<usize>) -> String {
    line.map(|l| format!(" (line {l})")).unwrap_or_default()
}

impl ModelError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ModelError::Header { line, .. }
            | ModelError::Syntax { line, .. }
            | ModelError::Arity { line, .. }
            | ModelError::CountMismatch { line, .. }
            | ModelError::MixedMarker { line, .. }
            | ModelError::Unmarked { line, .. }
            | ModelError::MarkerConflict { line, .. } => Some(*line),
            ModelError::UndeclaredLabel { line, .. } => *line,
            _ => None,
        }
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        let location = match (self, self.line()) {
            (_, Some(l)) => Location::Line(l),
            (ModelError::UnknownInitial(s), None) | (ModelError::InvalidState(s), None) => {
                Location::State(s.clone())
            }
            _ => Location::Unknown,
        };
        let text = self.to_string();
        let message = match self.line() {
            Some(l) => text
                .strip_prefix(&format!("line {l}: "))
                .unwrap_or(&text)
                .to_string(),
            None => text,
        };
        Diagnostic {
            severity: Severity::Error,
            location,
            message,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Line(usize),
    State(String),
    Unknown,
}

/// A message attached to a parse. Errors abort; warnings are reported and
/// the pipeline continues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub location: Location,
    pub message: String,
}

impl Diagnostic {
    pub fn warning(location: Location, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            location,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        match &self.location {
            Location::Line(l) => write!(f, "{sev}: line {l}: {}", self.message),
            Location::State(s) => write!(f, "{sev}: state {s}: {}", self.message),
            Location::Unknown => write!(f, "{sev}: {}", self.message),
        }
    }
}
