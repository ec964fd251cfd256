use std::fmt::Write as _;

use super::Fsa;
use crate::models::dot::quote;

impl Fsa {
    /// Graphviz rendering. Final states are double circles and ε-moves are
    /// labelled `ε`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph fsa {\n  rankdir=LR;\n  __start [shape=point];\n");
        for s in 0..self.num_states() {
            let shape = if self.is_final(s) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(
                out,
                "  {} [label={}, shape={shape}];",
                s,
                quote(self.tag(s).display())
            );
        }
        let _ = writeln!(out, "  __start -> {};", self.initial());
        for (p, sym, q) in self.transitions() {
            let label = sym.map_or("ε", |id| self.alphabet().name(id));
            let _ = writeln!(out, "  {p} -> {q} [label={}];", quote(label));
        }
        out.push_str("}\n");
        out
    }
}
