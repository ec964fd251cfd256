use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Reserved name of the quiescence output.
pub const QUIESCENCE: &str = "delta";

/// Internal-action tokens accepted when no override is configured.
pub const DEFAULT_INTERNAL_LABELS: [&str; 2] = ["tau", "i"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    Input,
    Output,
    /// Visible label of a plain LTS, where no input/output partition exists.
    Action,
    Internal,
    Quiescence,
}

impl LabelKind {
    /// Position in the canonical symbol order: inputs (or LTS actions),
    /// then outputs, then quiescence.
    pub fn rank(self) -> u8 {
        match self {
            LabelKind::Input | LabelKind::Action => 0,
            LabelKind::Output => 1,
            LabelKind::Quiescence => 2,
            LabelKind::Internal => 3,
        }
    }

    pub fn is_visible(self) -> bool {
        self != LabelKind::Internal
    }

    /// Outputs in the ioco sense; quiescence is observed as an output.
    pub fn is_output(self) -> bool {
        matches!(self, LabelKind::Output | LabelKind::Quiescence)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    name: String,
    kind: LabelKind,
}

impl Label {
    pub fn new(name: impl Into<String>, kind: LabelKind) -> Result<Self, ModelError> {
        let name = name.into();
        validate_token(&name)?;
        if (kind == LabelKind::Quiescence) != (name == QUIESCENCE) {
            return Err(ModelError::InvalidLabel {
                label: name,
                reason: "only `delta` may denote quiescence".into(),
            });
        }
        Ok(Label { name, kind })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }

    pub fn is_internal(&self) -> bool {
        self.kind == LabelKind::Internal
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A label name must be non-empty, free of parentheses, commas and
/// whitespace, and must not start with a `?`/`!` marker.
pub fn validate_token(name: &str) -> Result<(), ModelError> {
    let reason = if name.is_empty() {
        Some("empty name")
    } else if name.starts_with('?') || name.starts_with('!') {
        Some("stored names never carry a `?`/`!` marker")
    } else if name
        .chars()
        .any(|c| c == '(' || c == ')' || c == ',' || c.is_whitespace())
    {
        Some("names may not contain parentheses, commas or whitespace")
    } else {
        None
    };
    match reason {
        Some(reason) => Err(ModelError::InvalidLabel {
            label: name.to_string(),
            reason: reason.into(),
        }),
        None => Ok(()),
    }
}

/// The set of tokens treated as internal (unobservable) actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalLabels(BTreeSet<String>);

impl InternalLabels {
    pub fn new<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        InternalLabels(tokens.into_iter().map(Into::into).collect())
    }

    /// Parses a comma-separated override such as `tau,i,internal`.
    pub fn parse_list(list: &str) -> Self {
        Self::new(
            list.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(str::to_string),
        )
    }

    pub fn contains(&self, token: &str) -> bool {
        self.0.contains(token)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl Default for InternalLabels {
    fn default() -> Self {
        Self::new(DEFAULT_INTERNAL_LABELS)
    }
}
