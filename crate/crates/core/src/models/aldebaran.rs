//! Reader and writer for the Aldebaran `.aut` format.
//!
//! ```text
//! des (s0,9,4)
//! (s0,?a,s1)
//! (s1,!x,s2)
//! ```
//!
//! One statement per line, whitespace around commas is ignored, and lines
//! starting with `#` are comments (an extension to the format). Labels may
//! carry a `?` (input) or `!` (output) marker and may be wrapped in double
//! quotes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::label::{InternalLabels, LabelKind, QUIESCENCE};
use super::system::{ModelKind, SystemBuilder, TransitionSystem};
use super::{Diagnostic, Location, ModelError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelMode {
    /// `?a` marks an input, `!x` an output.
    Markers,
    /// Every visible label must belong to exactly one of the declared sets.
    Explicit {
        inputs: BTreeSet<String>,
        outputs: BTreeSet<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingConfig {
    pub kind: ModelKind,
    pub mode: LabelMode,
    pub internal: InternalLabels,
    /// Promote header/body count mismatches from warnings to errors.
    pub strict: bool,
}

impl LabelingConfig {
    pub fn lts() -> Self {
        LabelingConfig {
            kind: ModelKind::Lts,
            mode: LabelMode::Markers,
            internal: InternalLabels::default(),
            strict: false,
        }
    }

    pub fn iolts_markers() -> Self {
        LabelingConfig {
            kind: ModelKind::Iolts,
            ..Self::lts()
        }
    }

    pub fn iolts_explicit<I, O, S>(inputs: I, outputs: O) -> Self
    where
        I: IntoIterator<Item = S>,
        O: IntoIterator<Item = S>,
        S: Into<String>,
    {
        LabelingConfig {
            kind: ModelKind::Iolts,
            mode: LabelMode::Explicit {
                inputs: inputs.into_iter().map(Into::into).collect(),
                outputs: outputs.into_iter().map(Into::into).collect(),
            },
            ..Self::lts()
        }
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }
}

/// A successfully parsed model together with any warnings.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub system: TransitionSystem,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Marker {
    Input,
    Output,
}

struct RawEdge<'a> {
    line: usize,
    source: &'a str,
    name: &'a str,
    marker: Option<Marker>,
    target: &'a str,
}

pub fn parse_aldebaran(text: &str, config: &LabelingConfig) -> Result<Parsed, ModelError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ModelError::Empty)?;
    let (initial, declared_transitions, declared_states) = parse_header(header_line, header)?;

    let mut edges = Vec::new();
    for (line, body) in lines {
        edges.push(parse_edge(line, body)?);
    }

    let declared = classify_labels(&edges, config)?;

    let mut diagnostics = Vec::new();
    let mut states = BTreeSet::new();
    states.insert(initial);
    for e in &edges {
        states.insert(e.source);
        states.insert(e.target);
    }
    if !edges.is_empty()
        && !edges
            .iter()
            .any(|e| e.source == initial || e.target == initial)
    {
        return Err(ModelError::UnknownInitial(initial.to_string()));
    }
    let mut mismatch = |what: &str, declared: usize, found: usize| -> Result<(), ModelError> {
        if declared == found {
            return Ok(());
        }
        let message = format!("header declares {declared} {what} but the body has {found}");
        if config.strict {
            return Err(ModelError::CountMismatch {
                line: header_line,
                message,
            });
        }
        diagnostics.push(Diagnostic::warning(Location::Line(header_line), message));
        Ok(())
    };
    mismatch("transitions", declared_transitions, edges.len())?;
    mismatch("states", declared_states, states.len())?;

    let mut builder =
        SystemBuilder::new(config.kind, initial).internal_labels(config.internal.clone());
    for (name, kind) in declared {
        builder = builder.declare(name, kind);
    }
    for e in &edges {
        builder = builder.edge(e.source, e.name, e.target);
    }
    let system = builder.build().map_err(|err| match err {
        ModelError::UndeclaredLabel { label, .. } => {
            let line = edges.iter().find(|e| e.name == label).map(|e| e.line);
            ModelError::UndeclaredLabel { label, line }
        }
        other => other,
    })?;
    Ok(Parsed {
        system,
        diagnostics,
    })
}

fn parse_header(line: usize, text: &str) -> Result<(&str, usize, usize), ModelError> {
    let err = |reason: &str| ModelError::Header {
        line,
        reason: reason.to_string(),
    };
    let rest = text
        .strip_prefix("des")
        .ok_or_else(|| err("expected `des (<initial-state>, <transitions>, <states>)`"))?;
    let inner = rest
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err("missing parentheses"))?;
    let fields: Vec<&str> = inner.split(',').map(str::trim).collect();
    if fields.len() != 3 {
        return Err(err(&format!("expected 3 fields, found {}", fields.len())));
    }
    if fields[0].is_empty() {
        return Err(err("missing initial state"));
    }
    let count = |s: &str, what: &str| {
        s.parse::<usize>()
            .map_err(|_| err(&format!("{what} count `{s}` is not a number")))
    };
    Ok((
        fields[0],
        count(fields[1], "transition")?,
        count(fields[2], "state")?,
    ))
}

fn parse_edge(line: usize, text: &str) -> Result<RawEdge<'_>, ModelError> {
    let inner = text
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| ModelError::Syntax {
            line,
            reason: "expected `(<ini-state>, <label>, <end-state>)`".into(),
        })?;
    let fields: Vec<&str> = inner.split(',').map(str::trim).collect();
    if fields.len() != 3 {
        return Err(ModelError::Arity {
            line,
            found: fields.len(),
        });
    }
    if fields.iter().any(|f| f.is_empty()) {
        return Err(ModelError::Syntax {
            line,
            reason: "empty field".into(),
        });
    }
    let raw = fields[1];
    let raw = raw
        .strip_prefix('"')
        .and_then(|r| r.strip_suffix('"'))
        .unwrap_or(raw);
    let (marker, name) = if let Some(n) = raw.strip_prefix('?') {
        (Some(Marker::Input), n)
    } else if let Some(n) = raw.strip_prefix('!') {
        (Some(Marker::Output), n)
    } else {
        (None, raw)
    };
    if name.is_empty() {
        return Err(ModelError::Syntax {
            line,
            reason: "empty label".into(),
        });
    }
    Ok(RawEdge {
        line,
        source: fields[0],
        name,
        marker,
        target: fields[2],
    })
}

/// Determines the visible label kinds to declare before building.
fn classify_labels(
    edges: &[RawEdge<'_>],
    config: &LabelingConfig,
) -> Result<BTreeMap<String, LabelKind>, ModelError> {
    let mut declared = BTreeMap::new();
    if config.kind == ModelKind::Lts {
        // partition is ignored; markers are stripped
        return Ok(declared);
    }
    if let LabelMode::Explicit { inputs, outputs } = &config.mode {
        if let Some(both) = inputs.intersection(outputs).next() {
            return Err(ModelError::OverlappingLabel(both.clone()));
        }
        declared.extend(inputs.iter().map(|n| (n.clone(), LabelKind::Input)));
        declared.extend(outputs.iter().map(|n| (n.clone(), LabelKind::Output)));
    }

    let mut seen: BTreeMap<&str, Option<Marker>> = BTreeMap::new();
    for e in edges {
        if let Some(previous) = seen.insert(e.name, e.marker) {
            match (previous, e.marker) {
                (Some(a), Some(b)) if a != b => {
                    return Err(ModelError::OverlappingLabel(e.name.to_string()))
                }
                (None, Some(_)) | (Some(_), None) => {
                    return Err(ModelError::MixedMarker {
                        label: e.name.to_string(),
                        line: e.line,
                    })
                }
                _ => {}
            }
        }
        let conflict = || ModelError::MarkerConflict {
            label: e.name.to_string(),
            line: e.line,
        };
        if config.internal.contains(e.name) {
            if e.marker.is_some() {
                return Err(conflict());
            }
            continue;
        }
        if e.name == QUIESCENCE {
            if e.marker == Some(Marker::Input) {
                return Err(conflict());
            }
            continue;
        }
        match &config.mode {
            LabelMode::Markers => {
                let kind = match e.marker {
                    Some(Marker::Input) => LabelKind::Input,
                    Some(Marker::Output) => LabelKind::Output,
                    None => {
                        return Err(ModelError::Unmarked {
                            label: e.name.to_string(),
                            line: e.line,
                        })
                    }
                };
                declared.insert(e.name.to_string(), kind);
            }
            LabelMode::Explicit { .. } => {
                let kind =
                    declared
                        .get(e.name)
                        .copied()
                        .ok_or_else(|| ModelError::UndeclaredLabel {
                            label: e.name.to_string(),
                            line: Some(e.line),
                        })?;
                let expected = match kind {
                    LabelKind::Input => Marker::Input,
                    _ => Marker::Output,
                };
                if e.marker.is_some_and(|m| m != expected) {
                    return Err(conflict());
                }
            }
        }
    }
    Ok(declared)
}

/// Writes the canonical text of `ts`. With `markers`, inputs are written as
/// `?a` and outputs (including `delta`) as `!x`.
pub fn serialize_aldebaran(ts: &TransitionSystem, markers: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "des ({},{},{})",
        ts.initial(),
        ts.transitions().len(),
        ts.states().len()
    );
    for t in ts.transitions() {
        let prefix = match (markers, t.label.kind()) {
            (true, LabelKind::Input) => "?",
            (true, LabelKind::Output | LabelKind::Quiescence) => "!",
            _ => "",
        };
        let _ = writeln!(
            out,
            "({},{}{},{})",
            t.source,
            prefix,
            t.label.name(),
            t.target
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::fixtures;

    #[test]
    fn parses_running_example() {
        let parsed =
            parse_aldebaran(fixtures::SPEC_S_AUT, &LabelingConfig::iolts_markers()).unwrap();
        let s = parsed.system;
        assert!(parsed.diagnostics.is_empty());
        assert_eq!(s.states().len(), 4);
        assert_eq!(s.initial(), "s0");
        assert_eq!(s.inputs(), ["a", "b"].into_iter().collect());
        assert_eq!(s.outputs(), ["x"].into_iter().collect());
        assert_eq!(s.transitions().len(), 9);
        assert_eq!(s, fixtures::spec_s());
    }

    #[test]
    fn parses_single_state_model() {
        let s = parse_aldebaran("des (s0,0,1)\n", &LabelingConfig::iolts_markers())
            .unwrap()
            .system;
        assert_eq!(s.states(), ["s0"]);
        assert!(s.transitions().is_empty());
    }

    #[test]
    fn parses_implementation_q() {
        let q = parse_aldebaran(fixtures::IUT_Q_AUT, &LabelingConfig::iolts_markers())
            .unwrap()
            .system;
        assert_eq!(q.transitions().len(), 10);
        let has = |s: &str, l: &str, t: &str| {
            q.transitions()
                .iter()
                .any(|tr| tr.source == s && tr.label.name() == l && tr.target == t)
        };
        assert!(has("q2", "x", "q3"));
        assert!(has("q2", "a", "q3"));
    }

    #[test]
    fn tolerates_whitespace_comments_and_quotes() {
        let text = "# a comment\ndes ( 0 , 2 , 2 )\n( 0 , \"?go\" , 1 )\n\n(1, !done ,0)\n";
        let s = parse_aldebaran(text, &LabelingConfig::iolts_markers())
            .unwrap()
            .system;
        assert_eq!(s.inputs(), ["go"].into_iter().collect());
        assert_eq!(s.outputs(), ["done"].into_iter().collect());
    }

    #[test]
    fn header_errors() {
        let cfg = LabelingConfig::lts();
        for bad in ["(0,a,1)", "des 0,1,2", "des (0,1)", "des (0,x,2)"] {
            let err = parse_aldebaran(bad, &cfg).unwrap_err();
            assert!(
                matches!(err, ModelError::Header { line: 1, .. }),
                "{bad}: {err:?}"
            );
        }
        assert_eq!(
            parse_aldebaran("  \n# only\n", &cfg).unwrap_err(),
            ModelError::Empty
        );
    }

    #[test]
    fn arity_error_reports_line() {
        let err = parse_aldebaran("des (0,1,2)\n(0,a,b,1)\n", &LabelingConfig::lts()).unwrap_err();
        assert_eq!(err, ModelError::Arity { line: 2, found: 4 });
        let err = parse_aldebaran("des (0,1,2)\n0,a,1\n", &LabelingConfig::lts()).unwrap_err();
        assert!(matches!(err, ModelError::Syntax { line: 2, .. }));
    }

    #[test]
    fn count_mismatch_is_a_warning_unless_strict() {
        let text = "des (0,3,2)\n(0,a,1)\n";
        let parsed = parse_aldebaran(text, &LabelingConfig::lts()).unwrap();
        assert_eq!(parsed.diagnostics.len(), 1);
        assert_eq!(parsed.diagnostics[0].location, Location::Line(1));
        let err = parse_aldebaran(text, &LabelingConfig::lts().strict(true)).unwrap_err();
        assert!(matches!(err, ModelError::CountMismatch { line: 1, .. }));
    }

    #[test]
    fn explicit_mode_requires_declared_labels() {
        let text = "des (0,2,2)\n(0,a,1)\n(1,y,0)\n";
        let cfg = LabelingConfig::iolts_explicit(["a"], ["x"]);
        let err = parse_aldebaran(text, &cfg).unwrap_err();
        assert_eq!(
            err,
            ModelError::UndeclaredLabel {
                label: "y".into(),
                line: Some(3)
            }
        );
        let cfg = LabelingConfig::iolts_explicit(["a"], ["y", "z"]);
        let s = parse_aldebaran(text, &cfg).unwrap().system;
        // declared but unused labels stay in the alphabet
        assert_eq!(s.outputs(), ["y", "z"].into_iter().collect());
        let cfg = LabelingConfig::iolts_explicit(["a"], ["a"]);
        assert_eq!(
            parse_aldebaran(text, &cfg).unwrap_err(),
            ModelError::OverlappingLabel("a".into())
        );
    }

    #[test]
    fn explicit_mode_checks_redundant_markers() {
        let text = "des (0,1,2)\n(0,!a,1)\n";
        let cfg = LabelingConfig::iolts_explicit(["a"], ["x"]);
        assert!(matches!(
            parse_aldebaran(text, &cfg).unwrap_err(),
            ModelError::MarkerConflict { line: 2, .. }
        ));
    }

    #[test]
    fn marker_mode_errors() {
        let cfg = LabelingConfig::iolts_markers();
        let err = parse_aldebaran("des (0,1,2)\n(0,a,1)\n", &cfg).unwrap_err();
        assert!(matches!(err, ModelError::Unmarked { line: 2, .. }));
        let err = parse_aldebaran("des (0,2,2)\n(0,?a,1)\n(1,a,0)\n", &cfg).unwrap_err();
        assert!(matches!(err, ModelError::MixedMarker { line: 3, .. }));
        let err = parse_aldebaran("des (0,2,2)\n(0,?a,1)\n(1,!a,0)\n", &cfg).unwrap_err();
        assert_eq!(err, ModelError::OverlappingLabel("a".into()));
    }

    #[test]
    fn internal_tokens_and_overrides() {
        let text = "des (0,2,2)\n(0,i,1)\n(1,?a,0)\n";
        let s = parse_aldebaran(text, &LabelingConfig::iolts_markers())
            .unwrap()
            .system;
        assert!(s.has_internal_transitions());
        let mut cfg = LabelingConfig::iolts_markers();
        cfg.internal = InternalLabels::new(["tau"]);
        assert!(matches!(
            parse_aldebaran(text, &cfg).unwrap_err(),
            ModelError::Unmarked { .. }
        ));
    }

    #[test]
    fn unknown_initial_state() {
        let err = parse_aldebaran("des (z,1,3)\n(0,a,1)\n", &LabelingConfig::lts()).unwrap_err();
        assert_eq!(err, ModelError::UnknownInitial("z".into()));
    }

    #[test]
    fn lts_mode_ignores_markers() {
        let s = parse_aldebaran(fixtures::SPEC_S_AUT, &LabelingConfig::lts())
            .unwrap()
            .system;
        assert_eq!(s.kind(), ModelKind::Lts);
        assert!(s.labels().values().all(|k| *k == LabelKind::Action));
        assert_eq!(s.labels().len(), 3);
    }

    #[test]
    fn serializes_with_and_without_markers() {
        let s = fixtures::spec_s();
        let text = serialize_aldebaran(&s, true);
        assert_eq!(text.lines().next(), Some("des (s0,9,4)"));
        assert!(text.contains("(s1,!x,s2)"));
        assert!(text.contains("(s0,?a,s1)"));
        let plain = serialize_aldebaran(&s, false);
        assert!(plain.contains("(s1,x,s2)"));
        let back = parse_aldebaran(&text, &LabelingConfig::iolts_markers()).unwrap();
        assert_eq!(back.system, s);

        let single = parse_aldebaran("des (s0,0,1)", &LabelingConfig::lts())
            .unwrap()
            .system;
        assert_eq!(serialize_aldebaran(&single, false), "des (s0,0,1)\n");
    }

    #[test]
    fn quiescence_survives_round_trip() {
        let aug = fixtures::spec_s().add_quiescence().unwrap();
        let text = serialize_aldebaran(&aug, true);
        assert!(text.contains("(s0,!delta,s0)"));
        let back = parse_aldebaran(&text, &LabelingConfig::iolts_markers())
            .unwrap()
            .system;
        assert_eq!(back, aug);
    }
}
