use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::label::{validate_token, InternalLabels, Label, LabelKind, QUIESCENCE};
use super::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Lts,
    Iolts,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Lts => "LTS",
            ModelKind::Iolts => "IOLTS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub source: String,
    pub label: Label,
    pub target: String,
}

/// An LTS or IOLTS. Values are immutable once built; every transformation
/// returns a fresh system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    kind: ModelKind,
    states: Vec<String>,
    initial: String,
    labels: BTreeMap<String, LabelKind>,
    transitions: Vec<Transition>,
}

impl TransitionSystem {
    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    /// Transitions in canonical (source, label, target) order.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Visible labels with their kinds.
    pub fn labels(&self) -> &BTreeMap<String, LabelKind> {
        &self.labels
    }

    pub fn label_kind(&self, name: &str) -> Option<LabelKind> {
        self.labels.get(name).copied()
    }

    pub fn inputs(&self) -> BTreeSet<&str> {
        self.labels_of(|k| k == LabelKind::Input)
    }

    /// Output labels, including `delta` once quiescence has been added.
    pub fn outputs(&self) -> BTreeSet<&str> {
        self.labels_of(LabelKind::is_output)
    }

    fn labels_of(&self, pred: impl Fn(LabelKind) -> bool) -> BTreeSet<&str> {
        self.labels
            .iter()
            .filter(|(_, k)| pred(**k))
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn has_quiescence(&self) -> bool {
        self.labels.contains_key(QUIESCENCE)
    }

    pub fn has_internal_transitions(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_internal())
    }

    pub fn outgoing<'a>(&'a self, state: &'a str) -> impl Iterator<Item = &'a Transition> + 'a {
        // transitions are sorted by source first
        let start = self
            .transitions
            .partition_point(|t| t.source.as_str() < state);
        self.transitions[start..]
            .iter()
            .take_while(move |t| t.source == state)
    }

    /// Deterministic in the classical sense: no internal transitions and at
    /// most one successor per (state, label).
    pub fn is_deterministic(&self) -> bool {
        !self.has_internal_transitions()
            && self
                .transitions
                .windows(2)
                .all(|w| !(w[0].source == w[1].source && w[0].label == w[1].label))
    }

    /// States with no outgoing output (δ included) and no internal action.
    pub fn quiescent_states(&self) -> Result<BTreeSet<String>, ModelError> {
        if self.kind != ModelKind::Iolts {
            return Err(ModelError::NotIolts("quiescence"));
        }
        Ok(self
            .states
            .iter()
            .filter(|s| {
                !self
                    .outgoing(s)
                    .any(|t| t.label.is_internal() || t.label.kind().is_output())
            })
            .cloned()
            .collect())
    }

    /// Returns a copy with a `delta` self-loop on every quiescent state.
    pub fn add_quiescence(&self) -> Result<TransitionSystem, ModelError> {
        if self.kind != ModelKind::Iolts {
            return Err(ModelError::NotIolts("quiescence"));
        }
        if self.has_quiescence() {
            return Err(ModelError::AlreadyQuiescent);
        }
        let quiescent = self.quiescent_states()?;
        let delta = Label::new(QUIESCENCE, LabelKind::Quiescence)?;
        let mut out = self.clone();
        out.labels
            .insert(QUIESCENCE.to_string(), LabelKind::Quiescence);
        out.transitions
            .extend(quiescent.into_iter().map(|s| Transition {
                source: s.clone(),
                label: delta.clone(),
                target: s,
            }));
        out.transitions.sort();
        Ok(out)
    }

    /// Drops states that are neither initial nor an endpoint of a transition.
    /// Such states cannot be represented in the Aldebaran body.
    pub fn without_isolated_states(&self) -> TransitionSystem {
        let used: BTreeSet<&str> = self
            .transitions
            .iter()
            .flat_map(|t| [t.source.as_str(), t.target.as_str()])
            .chain(std::iter::once(self.initial.as_str()))
            .collect();
        let mut out = self.clone();
        out.states.retain(|s| used.contains(s.as_str()));
        out
    }
}

/// Incremental construction of a [`TransitionSystem`].
///
/// Labels used on edges are resolved against the internal-token set, the
/// reserved `delta`, and the declared inputs/outputs. Undeclared labels
/// become actions in an LTS and are rejected in an IOLTS.
#[derive(Debug, Clone)]
pub struct SystemBuilder {
    kind: ModelKind,
    initial: String,
    states: Vec<String>,
    labels: BTreeMap<String, LabelKind>,
    internal: InternalLabels,
    edges: Vec<(String, String, String)>,
    clash: Option<String>,
}

impl SystemBuilder {
    pub fn new(kind: ModelKind, initial: impl Into<String>) -> Self {
        SystemBuilder {
            kind,
            initial: initial.into(),
            states: Vec::new(),
            labels: BTreeMap::new(),
            internal: InternalLabels::default(),
            edges: Vec::new(),
            clash: None,
        }
    }

    pub fn internal_labels(mut self, internal: InternalLabels) -> Self {
        self.internal = internal;
        self
    }

    pub fn state(mut self, name: impl Into<String>) -> Self {
        self.states.push(name.into());
        self
    }

    pub fn input(self, name: impl Into<String>) -> Self {
        self.declare(name, LabelKind::Input)
    }

    pub fn output(self, name: impl Into<String>) -> Self {
        self.declare(name, LabelKind::Output)
    }

    pub fn inputs<I: IntoIterator<Item = S>, S: Into<String>>(self, names: I) -> Self {
        names.into_iter().fold(self, |b, n| b.input(n))
    }

    pub fn outputs<I: IntoIterator<Item = S>, S: Into<String>>(self, names: I) -> Self {
        names.into_iter().fold(self, |b, n| b.output(n))
    }

    pub fn declare(mut self, name: impl Into<String>, kind: LabelKind) -> Self {
        let name = name.into();
        let kind = if name == QUIESCENCE {
            LabelKind::Quiescence
        } else {
            kind
        };
        match self.labels.get(&name) {
            Some(&existing) if existing != kind => {
                self.clash.get_or_insert(name);
            }
            _ => {
                self.labels.insert(name, kind);
            }
        }
        self
    }

    pub fn edge(
        mut self,
        source: impl Into<String>,
        label: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        self.edges
            .push((source.into(), label.into(), target.into()));
        self
    }

    pub fn edges<'a>(self, edges: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>) -> Self {
        edges.into_iter().fold(self, |b, (s, l, t)| b.edge(s, l, t))
    }

    pub fn build(self) -> Result<TransitionSystem, ModelError> {
        let SystemBuilder {
            kind,
            initial,
            states: declared_states,
            mut labels,
            internal,
            edges,
            clash,
        } = self;

        if let Some(name) = clash {
            return Err(ModelError::OverlappingLabel(name));
        }
        if kind == ModelKind::Lts {
            for k in labels.values_mut() {
                if matches!(k, LabelKind::Input | LabelKind::Output) {
                    *k = LabelKind::Action;
                }
            }
        }
        labels.retain(|n, _| !internal.contains(n));

        let mut states = Vec::new();
        let mut seen = BTreeSet::new();
        let mut push = |s: &str, states: &mut Vec<String>| -> Result<(), ModelError> {
            validate_state(s)?;
            if seen.insert(s.to_string()) {
                states.push(s.to_string());
            }
            Ok(())
        };
        push(&initial, &mut states)?;
        for s in &declared_states {
            push(s, &mut states)?;
        }
        let mut transitions = Vec::with_capacity(edges.len());
        for (src, name, dst) in edges {
            push(&src, &mut states)?;
            push(&dst, &mut states)?;
            let kind_of = if internal.contains(&name) {
                LabelKind::Internal
            } else if let Some(k) = labels.get(&name) {
                *k
            } else if name == QUIESCENCE {
                labels.insert(name.clone(), LabelKind::Quiescence);
                LabelKind::Quiescence
            } else if kind == ModelKind::Lts {
                labels.insert(name.clone(), LabelKind::Action);
                LabelKind::Action
            } else {
                return Err(ModelError::UndeclaredLabel {
                    label: name,
                    line: None,
                });
            };
            transitions.push(Transition {
                source: src,
                label: Label::new(name, kind_of)?,
                target: dst,
            });
        }
        for name in labels.keys() {
            validate_token(name)?;
        }
        transitions.sort();
        transitions.dedup();
        Ok(TransitionSystem {
            kind,
            states,
            initial,
            labels,
            transitions,
        })
    }
}

fn validate_state(name: &str) -> Result<(), ModelError> {
    if name.is_empty()
        || name
            .chars()
            .any(|c| c == '(' || c == ')' || c == ',' || c.is_whitespace())
    {
        return Err(ModelError::InvalidState(name.to_string()));
    }
    Ok(())
}
