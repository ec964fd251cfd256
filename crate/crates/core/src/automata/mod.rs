//! Finite-state automata with ε-moves and the language operations the
//! conformance checks are built from.
//!
//! States are dense indices. Every state carries a [`StateTag`] recording
//! which original states it was derived from, so products and powerset
//! states can be reported by name (`s3d1q3`, `{s1,s2}`).

mod dot;
mod ops;
mod query;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::models::{LabelKind, TransitionSystem};

pub use ops::{complement, complete, determinize, intersection, union};
pub use query::{accepts, enumerate_accepted, is_empty_language, isomorphic};

pub type StateId = usize;
pub type SymbolId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{name}` is used both as {first:?} and as {second:?}")]
    KindConflict {
        name: String,
        first: LabelKind,
        second: LabelKind,
    },
    #[error("operation requires a deterministic automaton")]
    NotDeterministic,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Symbol {
    pub name: String,
    pub kind: LabelKind,
}

/// A finite alphabet kept in canonical order: inputs (or LTS actions)
/// sorted by name, then outputs, then `delta`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new<I>(symbols: I) -> Result<Self, AutomataError>
    where
        I: IntoIterator<Item = (String, LabelKind)>,
    {
        let mut by_name: BTreeMap<String, LabelKind> = BTreeMap::new();
        for (name, kind) in symbols {
            match by_name.get(&name) {
                Some(&first) if first != kind => {
                    return Err(AutomataError::KindConflict {
                        name,
                        first,
                        second: kind,
                    })
                }
                _ => {
                    by_name.insert(name, kind);
                }
            }
        }
        let mut symbols: Vec<Symbol> = by_name
            .into_iter()
            .map(|(name, kind)| Symbol { name, kind })
            .collect();
        symbols.sort_by(|a, b| (a.kind.rank(), &a.name).cmp(&(b.kind.rank(), &b.name)));
        Ok(Alphabet { symbols })
    }

    /// The visible labels of a model.
    pub fn of_system(ts: &TransitionSystem) -> Self {
        Self::new(ts.labels().iter().map(|(n, k)| (n.clone(), *k)))
            .expect("model labels have one kind each")
    }

    pub fn union(&self, other: &Alphabet) -> Result<Self, AutomataError> {
        Self::new(
            self.symbols
                .iter()
                .chain(&other.symbols)
                .map(|s| (s.name.clone(), s.kind)),
        )
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id].name
    }

    pub fn kind(&self, id: SymbolId) -> LabelKind {
        self.symbols[id].kind
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(|s| s.name.as_str())
    }

    pub fn contains_all(&self, other: &Alphabet) -> bool {
        other.names().all(|n| self.index_of(n).is_some())
    }
}

/// Provenance of an automaton state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StateTag {
    provenance: Vec<String>,
    display: String,
}

impl StateTag {
    pub fn leaf(name: impl Into<String>) -> Self {
        let name = name.into();
        StateTag {
            provenance: vec![name.clone()],
            display: name,
        }
    }

    /// A powerset state. Singletons keep the name of their only member.
    pub fn subset<'a>(parts: impl IntoIterator<Item = &'a StateTag>) -> Self {
        let parts: Vec<&StateTag> = parts.into_iter().collect();
        match parts.as_slice() {
            [] => StateTag::leaf("{}"),
            [one] => (*one).clone(),
            many => StateTag {
                provenance: many.iter().flat_map(|t| t.provenance.clone()).collect(),
                display: format!(
                    "{{{}}}",
                    many.iter()
                        .map(|t| t.display.as_str())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            },
        }
    }

    pub fn product(left: &StateTag, right: &StateTag) -> Self {
        StateTag {
            provenance: left
                .provenance
                .iter()
                .chain(&right.provenance)
                .cloned()
                .collect(),
            display: format!("{}{}", left.display, right.display),
        }
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn display(&self) -> &str {
        &self.display
    }
}

impl fmt::Display for StateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsa {
    alphabet: Alphabet,
    tags: Vec<StateTag>,
    initial: StateId,
    finals: BTreeSet<StateId>,
    /// Per-state successor lists, sorted; `None` is ε.
    edges: Vec<Vec<(Option<SymbolId>, StateId)>>,
}

impl Fsa {
    /// A one-state automaton with no transitions.
    pub fn new(alphabet: Alphabet, initial: StateTag) -> Self {
        Fsa {
            alphabet,
            tags: vec![initial],
            initial: 0,
            finals: BTreeSet::new(),
            edges: vec![Vec::new()],
        }
    }

    pub fn add_state(&mut self, tag: StateTag) -> StateId {
        self.tags.push(tag);
        self.edges.push(Vec::new());
        self.tags.len() - 1
    }

    pub fn add_transition(&mut self, from: StateId, symbol: Option<SymbolId>, to: StateId) {
        assert!(
            from < self.tags.len() && to < self.tags.len(),
            "state out of range"
        );
        if let Some(s) = symbol {
            assert!(s < self.alphabet.len(), "symbol out of range");
        }
        let list = &mut self.edges[from];
        if let Err(pos) = list.binary_search(&(symbol, to)) {
            list.insert(pos, (symbol, to));
        }
    }

    /// Adds a transition on the symbol called `name`.
    pub fn add_named_transition(
        &mut self,
        from: StateId,
        name: &str,
        to: StateId,
    ) -> Result<(), AutomataError> {
        let id = self
            .alphabet
            .index_of(name)
            .ok_or_else(|| AutomataError::UnknownSymbol(name.to_string()))?;
        self.add_transition(from, Some(id), to);
        Ok(())
    }

    pub fn set_final(&mut self, state: StateId, is_final: bool) {
        if is_final {
            self.finals.insert(state);
        } else {
            self.finals.remove(&state);
        }
    }

    pub fn set_initial(&mut self, state: StateId) {
        assert!(state < self.tags.len());
        self.initial = state;
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.tags.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals.contains(&state)
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn tag(&self, state: StateId) -> &StateTag {
        &self.tags[state]
    }

    pub fn successors(&self, state: StateId) -> &[(Option<SymbolId>, StateId)] {
        &self.edges[state]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Option<SymbolId>, StateId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(p, list)| list.iter().map(move |&(s, q)| (p, s, q)))
    }

    /// The unique successor on `symbol`, ignoring any ε-moves.
    pub fn step(&self, state: StateId, symbol: SymbolId) -> Option<StateId> {
        let list = &self.edges[state];
        let pos = list.partition_point(|&(s, _)| s < Some(symbol));
        list.get(pos)
            .filter(|&&(s, _)| s == Some(symbol))
            .map(|&(_, q)| q)
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions().any(|(_, s, _)| s.is_none())
    }

    pub fn is_deterministic(&self) -> bool {
        self.edges.iter().all(|list| {
            list.iter().all(|(s, _)| s.is_some()) && list.windows(2).all(|w| w[0].0 != w[1].0)
        })
    }

    pub fn is_complete(&self) -> bool {
        self.is_deterministic()
            && self
                .edges
                .iter()
                .all(|list| list.len() == self.alphabet.len())
    }

    /// The same automaton over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Fsa, AutomataError> {
        let map: Vec<SymbolId> = self
            .alphabet
            .names()
            .map(|n| {
                alphabet
                    .index_of(n)
                    .ok_or_else(|| AutomataError::UnknownSymbol(n.to_string()))
            })
            .collect::<Result<_, _>>()?;
        for (id, sym) in self.alphabet.symbols().iter().enumerate() {
            if alphabet.kind(map[id]) != sym.kind {
                return Err(AutomataError::KindConflict {
                    name: sym.name.clone(),
                    first: sym.kind,
                    second: alphabet.kind(map[id]),
                });
            }
        }
        let mut out = self.clone();
        out.alphabet = alphabet.clone();
        for list in &mut out.edges {
            for (s, _) in list.iter_mut() {
                *s = s.map(|id| map[id]);
            }
            list.sort();
        }
        Ok(out)
    }

    /// The same automaton with states renamed `{prefix}0`, `{prefix}1`, ...
    /// in index order.
    pub fn renamed(&self, prefix: &str) -> Fsa {
        let mut out = self.clone();
        for (i, tag) in out.tags.iter_mut().enumerate() {
            *tag = StateTag::leaf(format!("{prefix}{i}"));
        }
        out
    }

    /// A fresh display name derived from `base` that no state uses yet.
    pub(crate) fn fresh_name(&self, base: &str) -> String {
        let taken = |n: &str| self.tags.iter().any(|t| t.display() == n);
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !taken(n))
            .expect("unbounded")
    }
}

/// The automaton induced by a transition system: same states, internal
/// moves become ε, and every state is final, so the language is the set of
/// observable traces.
pub fn induced_fsa(ts: &TransitionSystem) -> Fsa {
    let alphabet = Alphabet::of_system(ts);
    let index: BTreeMap<&str, StateId> = ts
        .states()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut fsa = Fsa::new(alphabet, StateTag::leaf(ts.states()[0].clone()));
    for s in &ts.states()[1..] {
        fsa.add_state(StateTag::leaf(s.clone()));
    }
    fsa.set_initial(index[ts.initial()]);
    for t in ts.transitions() {
        let symbol = if t.label.is_internal() {
            None
        } else {
            fsa.alphabet.index_of(t.label.name())
        };
        fsa.add_transition(index[t.source.as_str()], symbol, index[t.target.as_str()]);
    }
    for s in 0..fsa.num_states() {
        fsa.set_final(s, true);
    }
    fsa
}
