//! Conformance checking: fault-model construction for ioco and for the
//! language-based relation conf(D,F), verdicts, test-suite extraction and
//! brute-force reference oracles.

mod extract;
mod fault;
mod oracle;
mod verify;

use std::fmt;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::automata::{AutomataError, Fsa};
use crate::models::ModelError;
use crate::regex::{RegexAst, RegexError};

pub use extract::{extract_test_suite, Bound};
pub use fault::{fault_model_ioco, fault_model_language, model_d};
pub use oracle::{
    oracle_ioco, oracle_language, out_after, validate_ioco_case, validate_language_case,
    OracleLanguage,
};
pub use verify::{verify_ioco, verify_language, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConformanceError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Regex(#[from] RegexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Ioco,
    Language,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ioco => "ioco",
            Relation::Language => "language",
        })
    }
}

/// A desirable or undesirable behaviour language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Language {
    /// Blank field: every word for D, no word for F.
    Default,
    Empty,
    /// Every word over the model alphabet.
    Universal,
    Regex(RegexAst),
    Automaton(Fsa),
}

impl Language {
    fn describe(&self, default: &str) -> String {
        match self {
            Language::Default => default.to_string(),
            Language::Empty => "∅".to_string(),
            Language::Universal => "L*".to_string(),
            Language::Regex(r) => r.to_string(),
            Language::Automaton(a) => format!("automaton ({} states)", a.num_states()),
        }
    }
}

/// Operand and result sizes of one product construction. Operand sizes
/// are taken before any completion, so the result never exceeds
/// `(left + 1) * (right + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductRecord {
    pub step: String,
    pub left: usize,
    pub right: usize,
    pub result: usize,
}

impl ProductRecord {
    pub fn within_bound(&self) -> bool {
        self.result <= (self.left + 1) * (self.right + 1)
    }
}

/// The test-suite automaton for a specification: it accepts exactly the
/// words whose presence in an implementation's traces is a fault.
#[derive(Debug, Clone)]
pub struct FaultModel {
    pub relation: Relation,
    pub automaton: Fsa,
    /// Deterministic automaton of the specification's traces (δ-augmented
    /// in ioco mode), over the fault model's alphabet.
    pub spec_automaton: Fsa,
    pub desirable: String,
    pub undesirable: String,
    pub products: Vec<ProductRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TestCase {
    /// Index of the fault this case witnesses, in report order.
    pub fault: usize,
    pub fault_word: Vec<String>,
    pub stimulus_prefix: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_outputs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_output: Option<String>,
    /// Specification states visited by the stimulus prefix (ioco) or by
    /// the longest prefix the specification can follow (language).
    pub spec_path: Vec<String>,
    /// Implementation states visited by the whole fault word.
    pub iut_path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CoveredTransition {
    pub source: String,
    pub label: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Stats {
    pub spec_states: usize,
    pub iut_states: usize,
    pub fault_model_states: usize,
    pub product_states: usize,
    pub bound: usize,
    pub products: Vec<ProductRecord>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub relation: Relation,
    pub conforms: bool,
    pub test_cases: Vec<TestCase>,
    pub covered_spec_transitions: Vec<CoveredTransition>,
    pub warnings: Vec<String>,
    pub stats: Stats,
    #[serde(skip)]
    pub elapsed: Duration,
}
