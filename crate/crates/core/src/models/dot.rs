use std::fmt::Write as _;

use super::label::LabelKind;
use super::system::TransitionSystem;

/// Graphviz rendering: one node per state, an arrow from a point node into
/// the initial state, one edge per transition; `delta` edges are dashed.
pub fn to_dot(ts: &TransitionSystem) -> String {
    let mut out = String::from("digraph model {\n  rankdir=LR;\n  __start [shape=point];\n");
    for s in ts.states() {
        let _ = writeln!(out, "  {} [shape=circle];", quote(s));
    }
    let _ = writeln!(out, "  __start -> {};", quote(ts.initial()));
    for t in ts.transitions() {
        let style = if t.label.kind() == LabelKind::Quiescence {
            ", style=dashed"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{}];",
            quote(&t.source),
            quote(&t.target),
            quote(t.label.name()),
            style
        );
    }
    out.push_str("}\n");
    out
}

pub(crate) fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
