use std::fmt::Write as _;

use anyhow::Result;
use confkit::conformance::{Relation, TestCase, Verdict};
use confkit::models::{ModelKind, TransitionSystem};
use serde::Serialize;
use serde_json::json;

use crate::Format;

pub fn verdict(v: &Verdict, format: Format, timing: bool) -> Result<()> {
    for w in &v.warnings {
        eprintln!("warning: {w}");
    }
    match format {
        Format::Json => {
            let mut value = serde_json::to_value(v)?;
            if timing {
                value["timing"] = json!({ "elapsedMs": v.elapsed.as_secs_f64() * 1e3 });
            }
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        Format::Text => print!("{}", verdict_text(v, timing)),
    }
    Ok(())
}

fn word(w: &[String]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.join(" ")
    }
}

fn verdict_text(v: &Verdict, timing: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "relation: {}", v.relation);
    if v.conforms {
        let _ = writeln!(out, "verdict: conforms");
    } else {
        let faults = v
            .test_cases
            .iter()
            .map(|t| t.fault)
            .max()
            .map_or(0, |f| f + 1);
        let _ = writeln!(out, "verdict: does not conform");
        let _ = writeln!(out, "faults: {faults}, test cases: {}", v.test_cases.len());
        let mut current = None;
        for (i, t) in v.test_cases.iter().enumerate() {
            if current != Some(t.fault) {
                current = Some(t.fault);
                let _ = writeln!(out, "\n{}", fault_heading(v.relation, t));
            }
            let _ = writeln!(out, "  test case {}", i + 1);
            match v.relation {
                Relation::Ioco => {
                    let _ = writeln!(out, "    stimulus prefix: {}", word(&t.stimulus_prefix));
                    let expected = t.expected_outputs.clone().unwrap_or_default();
                    let _ = writeln!(out, "    expected:        {}", expected.join(", "));
                    let observed = t.observed_output.as_deref().unwrap_or("");
                    let _ = writeln!(out, "    observed:        {observed}");
                }
                Relation::Language => {
                    let _ = writeln!(out, "    fault word:      {}", word(&t.fault_word));
                }
            }
            let _ = writeln!(out, "    spec path:       {}", t.spec_path.join(" -> "));
            let _ = writeln!(out, "    iut path:        {}", t.iut_path.join(" -> "));
        }
        let _ = writeln!(
            out,
            "\ncovered spec transitions: {}",
            v.covered_spec_transitions.len()
        );
        for c in &v.covered_spec_transitions {
            let _ = writeln!(out, "  {} -{}-> {}", c.source, c.label, c.target);
        }
    }
    let s = &v.stats;
    let _ = writeln!(
        out,
        "stats: spec {} states, iut {} states, fault model {} states, product {} states",
        s.spec_states, s.iut_states, s.fault_model_states, s.product_states
    );
    if timing {
        let _ = writeln!(out, "elapsed: {:.3} ms", v.elapsed.as_secs_f64() * 1e3);
    }
    out
}

fn fault_heading(relation: Relation, t: &TestCase) -> String {
    match relation {
        Relation::Ioco => format!(
            "fault {}: output {} in spec state {}",
            t.fault + 1,
            t.observed_output.as_deref().unwrap_or(""),
            t.spec_path.last().map_or("", String::as_str)
        ),
        Relation::Language => {
            let diverged = t.spec_path.len() <= t.fault_word.len();
            let how = if diverged {
                "desirable behaviour outside the spec"
            } else {
                "undesirable behaviour inside the spec"
            };
            format!("fault {}: {how}", t.fault + 1)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Info {
    kind: String,
    states: usize,
    transitions: usize,
    initial: String,
    inputs: Vec<String>,
    outputs: Vec<String>,
    actions: Vec<String>,
    internal_transitions: usize,
    quiescent_states: Option<Vec<String>>,
    deterministic: bool,
}

pub fn info(ts: &TransitionSystem, format: Format) -> Result<()> {
    let strings = |it: std::collections::BTreeSet<&str>| -> Vec<String> {
        it.into_iter().map(str::to_string).collect()
    };
    let info = Info {
        kind: ts.kind().to_string(),
        states: ts.states().len(),
        transitions: ts.transitions().len(),
        initial: ts.initial().to_string(),
        inputs: if ts.kind() == ModelKind::Iolts {
            strings(ts.inputs())
        } else {
            Vec::new()
        },
        outputs: strings(ts.outputs()),
        actions: if ts.kind() == ModelKind::Lts {
            ts.labels().keys().cloned().collect()
        } else {
            Vec::new()
        },
        internal_transitions: ts
            .transitions()
            .iter()
            .filter(|t| t.label.is_internal())
            .count(),
        quiescent_states: ts.quiescent_states().ok().map(|s| s.into_iter().collect()),
        deterministic: ts.is_deterministic(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&info)?),
        Format::Text => {
            let list = |v: &[String]| format!("{} ({})", v.join(", "), v.len());
            println!("model: {}", info.kind);
            println!("states: {}", info.states);
            println!("transitions: {}", info.transitions);
            println!("initial: {}", info.initial);
            if ts.kind() == ModelKind::Iolts {
                println!("inputs: {}", list(&info.inputs));
                println!("outputs: {}", list(&info.outputs));
            } else {
                println!("actions: {}", list(&info.actions));
            }
            println!("internal transitions: {}", info.internal_transitions);
            match &info.quiescent_states {
                Some(q) => println!("quiescent states: {{{}}}", q.join(", ")),
                None => println!("quiescent states: n/a for an LTS"),
            }
            println!(
                "deterministic: {}",
                if info.deterministic { "yes" } else { "no" }
            );
        }
    }
    Ok(())
}
