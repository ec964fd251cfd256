use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::ops::ControlFlow;

use super::{CoveredTransition, Relation, TestCase};
use crate::automata::{determinize, Fsa, StateId, SymbolId};
use crate::models::{LabelKind, QUIESCENCE};

/// Maximum fault-word length considered during extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bound {
    /// The number of states of the product automaton: any longer word
    /// repeats a product state and so pumps a cycle already represented.
    #[default]
    Auto,
    Fixed(usize),
}

/// Extracted test cases plus bookkeeping for the verdict.
#[derive(Debug, Clone, Default)]
pub struct Suite {
    pub test_cases: Vec<TestCase>,
    pub covered: Vec<CoveredTransition>,
    pub warnings: Vec<String>,
    pub bound: usize,
}

/// Selects test cases from the accepted words of `b`, the product of a
/// fault model with the implementation automaton `iut`.
///
/// Words are grouped by the fault they witness: in ioco mode by the
/// specification state reached by the stimulus prefix together with the
/// observed output, in language mode by the accepting product state.
/// Within a group, candidates are visited with prefixes free of `delta`
/// first, then by length, then lexicographically. Each visited word is
/// kept; the group is closed by the first word (after the first) that
/// covers no specification transition not already covered by the group.
pub fn extract_test_suite(
    b: &Fsa,
    spec: &Fsa,
    iut: &Fsa,
    relation: Relation,
    bound: Bound,
) -> Suite {
    let b = if b.is_deterministic() {
        b.clone()
    } else {
        determinize(b)
    };
    let bound = match bound {
        Bound::Auto => b.num_states(),
        Bound::Fixed(n) => n,
    };
    let product = Product::build(&b, spec, iut);
    let mut groups = product.groups(&b, relation);
    // the empty trace is a fault when an undesirable language contains it
    let empty_fault = GroupKey::Accepting(b.initial());
    if relation == Relation::Language && b.is_final(b.initial()) {
        groups
            .entry(empty_fault.clone())
            .or_insert_with(|| vec![Vec::new(); product.states.len()]);
    }
    let delta = b
        .alphabet()
        .index_of(QUIESCENCE)
        .filter(|&i| b.alphabet().kind(i) == LabelKind::Quiescence);

    let mut warnings = Vec::new();
    let mut selected: Vec<Vec<Word>> = Vec::new();
    for (key, ends) in &groups {
        let mut tables = Tables::new(&product, ends, delta);
        let mut chosen: Vec<Word> = Vec::new();
        if relation == Relation::Language && *key == empty_fault && b.is_final(b.initial()) {
            chosen.push(Word {
                symbols: Vec::new(),
                path: vec![product.initial],
            });
        }
        let mut covered: BTreeSet<(StateId, SymbolId, StateId)> = BTreeSet::new();
        let mut closed = false;
        'modes: for mode in [Mode::NoDelta, Mode::NeedDelta] {
            for len in 1..=bound {
                tables.ensure(&product, len);
                let flow = tables.words(&product, product.initial, len, mode, &mut |word| {
                    let cov = product.coverage(&word, relation);
                    let fresh = cov.iter().any(|t| !covered.contains(t));
                    covered.extend(cov);
                    chosen.push(word);
                    if !fresh && chosen.len() > 1 {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                if flow.is_break() {
                    closed = true;
                    break 'modes;
                }
            }
        }
        if chosen.is_empty() {
            let word = tables.shortest(&product);
            warnings.push(format!(
                "no fault word of length <= {bound}; reporting a shortest one of length {}",
                word.symbols.len()
            ));
            chosen.push(word);
        } else if !closed {
            tables.ensure(&product, bound + 1);
            if tables.any[bound + 1][product.initial] {
                warnings.push(format!(
                    "test selection truncated at length bound {bound}; longer fault words exist"
                ));
            }
        }
        selected.push(chosen);
    }
    selected.sort_by(|x, y| x[0].order_key(delta).cmp(&y[0].order_key(delta)));

    let mut covered_all = BTreeSet::new();
    let mut test_cases = Vec::new();
    for (fault, words) in selected.iter().enumerate() {
        for word in words {
            for (p, sym, q) in product.coverage(word, relation) {
                covered_all.insert(CoveredTransition {
                    source: spec.tag(p).to_string(),
                    label: b.alphabet().name(sym).to_string(),
                    target: spec.tag(q).to_string(),
                });
            }
            test_cases.push(product.test_case(fault, word, &b, spec, iut, relation));
        }
    }
    Suite {
        test_cases,
        covered: covered_all.into_iter().collect(),
        warnings,
        bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum GroupKey {
    Output { spec: StateId, output: SymbolId },
    Accepting(StateId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    NoDelta,
    NeedDelta,
    Any,
}

#[derive(Debug, Clone)]
struct Word {
    symbols: Vec<SymbolId>,
    /// Product states visited, one more than `symbols`.
    path: Vec<usize>,
}

impl Word {
    fn order_key(&self, delta: Option<SymbolId>) -> (bool, usize, Vec<SymbolId>) {
        let prefix = &self.symbols[..self.symbols.len().saturating_sub(1)];
        (
            delta.is_some_and(|d| prefix.contains(&d)),
            self.symbols.len(),
            self.symbols.clone(),
        )
    }
}

/// Deterministic product of `b` with the specification and implementation
/// automata, remembering where each of them is. The specification
/// component is `None` once the word has left the specification's traces.
struct Product {
    states: Vec<(StateId, Option<StateId>, StateId)>,
    succ: Vec<Vec<(SymbolId, usize)>>,
    initial: usize,
}

impl Product {
    fn build(b: &Fsa, spec: &Fsa, iut: &Fsa) -> Product {
        let spec_sym: Vec<Option<SymbolId>> = b
            .alphabet()
            .names()
            .map(|n| spec.alphabet().index_of(n))
            .collect();
        let iut_sym: Vec<Option<SymbolId>> = b
            .alphabet()
            .names()
            .map(|n| iut.alphabet().index_of(n))
            .collect();
        let start = (b.initial(), Some(spec.initial()), iut.initial());
        let mut index = HashMap::from([(start, 0)]);
        let mut states = vec![start];
        let mut succ = vec![Vec::new()];
        let mut queue = VecDeque::from([0]);
        while let Some(h) = queue.pop_front() {
            let (bs, ss, is) = states[h];
            for &(sym, b2) in b.successors(bs) {
                let sym = sym.expect("deterministic");
                let Some(i2) = iut_sym[sym].and_then(|x| iut.step(is, x)) else {
                    continue;
                };
                let s2 = ss.zip(spec_sym[sym]).and_then(|(s, x)| spec.step(s, x));
                let key = (b2, s2, i2);
                let id = *index.entry(key).or_insert_with(|| {
                    states.push(key);
                    succ.push(Vec::new());
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                });
                succ[h].push((sym, id));
            }
        }
        Product {
            states,
            succ,
            initial: 0,
        }
    }

    fn step(&self, h: usize, sym: SymbolId) -> usize {
        self.succ[h]
            .iter()
            .find(|&&(s, _)| s == sym)
            .map(|&(_, t)| t)
            .expect("edge exists")
    }

    /// For each fault, the (state, last symbol) pairs that complete one of
    /// its words.
    fn groups(&self, b: &Fsa, relation: Relation) -> BTreeMap<GroupKey, Vec<Vec<SymbolId>>> {
        let mut groups: BTreeMap<GroupKey, Vec<Vec<SymbolId>>> = BTreeMap::new();
        for (h, list) in self.succ.iter().enumerate() {
            for &(sym, t) in list {
                let target_b = self.states[t].0;
                if !b.is_final(target_b) {
                    continue;
                }
                let key = match relation {
                    Relation::Ioco => match self.states[h].1 {
                        Some(spec) => GroupKey::Output { spec, output: sym },
                        None => continue,
                    },
                    Relation::Language => GroupKey::Accepting(target_b),
                };
                let ends = groups
                    .entry(key)
                    .or_insert_with(|| vec![Vec::new(); self.states.len()]);
                ends[h].push(sym);
            }
        }
        groups
    }

    /// Specification transitions exercised by a word: along the stimulus
    /// prefix in ioco mode, along the part the specification can follow in
    /// language mode.
    fn coverage(&self, word: &Word, relation: Relation) -> Vec<(StateId, SymbolId, StateId)> {
        let steps = match relation {
            Relation::Ioco => word.symbols.len() - 1,
            Relation::Language => word.symbols.len(),
        };
        (0..steps)
            .map_while(|i| {
                let p = self.states[word.path[i]].1?;
                let q = self.states[word.path[i + 1]].1?;
                Some((p, word.symbols[i], q))
            })
            .collect()
    }

    fn test_case(
        &self,
        fault: usize,
        word: &Word,
        b: &Fsa,
        spec: &Fsa,
        iut: &Fsa,
        relation: Relation,
    ) -> TestCase {
        let names: Vec<String> = word
            .symbols
            .iter()
            .map(|&s| b.alphabet().name(s).to_string())
            .collect();
        let iut_path = word
            .path
            .iter()
            .map(|&h| iut.tag(self.states[h].2).to_string())
            .collect();
        let spec_states: Vec<StateId> = word.path.iter().map_while(|&h| self.states[h].1).collect();
        match relation {
            Relation::Ioco => {
                let n = names.len() - 1;
                let after = spec_states[n];
                let expected = spec
                    .successors(after)
                    .iter()
                    .filter_map(|&(s, _)| s)
                    .filter(|&s| spec.alphabet().kind(s).is_output())
                    .map(|s| spec.alphabet().name(s).to_string())
                    .collect();
                TestCase {
                    fault,
                    stimulus_prefix: names[..n].to_vec(),
                    observed_output: Some(names[n].clone()),
                    expected_outputs: Some(expected),
                    spec_path: spec_states[..=n]
                        .iter()
                        .map(|&s| spec.tag(s).to_string())
                        .collect(),
                    iut_path,
                    fault_word: names,
                }
            }
            Relation::Language => TestCase {
                fault,
                stimulus_prefix: names.clone(),
                expected_outputs: None,
                observed_output: None,
                spec_path: spec_states
                    .iter()
                    .map(|&s| spec.tag(s).to_string())
                    .collect(),
                iut_path,
                fault_word: names,
            },
        }
    }
}

/// Reachability tables for one fault, indexed `[remaining length][state]`
/// and grown on demand.
struct Tables<'a> {
    ends: &'a [Vec<SymbolId>],
    delta: Option<SymbolId>,
    any: Vec<Vec<bool>>,
    no_delta: Vec<Vec<bool>>,
    need_delta: Vec<Vec<bool>>,
}

impl<'a> Tables<'a> {
    fn new(product: &Product, ends: &'a [Vec<SymbolId>], delta: Option<SymbolId>) -> Self {
        let n = product.states.len();
        let first: Vec<bool> = ends.iter().map(|e| !e.is_empty()).collect();
        Tables {
            ends,
            delta,
            any: vec![vec![false; n], first.clone()],
            no_delta: vec![vec![false; n], first],
            need_delta: vec![vec![false; n], vec![false; n]],
        }
    }

    fn ensure(&mut self, product: &Product, len: usize) {
        while self.any.len() <= len {
            let r = self.any.len();
            let is_delta = |s: SymbolId| Some(s) == self.delta;
            let layer = |pick: &dyn Fn(SymbolId, usize) -> bool| -> Vec<bool> {
                product
                    .succ
                    .iter()
                    .map(|list| list.iter().any(|&(s, t)| pick(s, t)))
                    .collect()
            };
            let any = layer(&|_, t| self.any[r - 1][t]);
            let no_delta = layer(&|s, t| !is_delta(s) && self.no_delta[r - 1][t]);
            let need_delta = layer(&|s, t| {
                if is_delta(s) {
                    self.any[r - 1][t]
                } else {
                    self.need_delta[r - 1][t]
                }
            });
            self.any.push(any);
            self.no_delta.push(no_delta);
            self.need_delta.push(need_delta);
        }
    }

    fn table(&self, mode: Mode) -> &Vec<Vec<bool>> {
        match mode {
            Mode::NoDelta => &self.no_delta,
            Mode::NeedDelta => &self.need_delta,
            Mode::Any => &self.any,
        }
    }

    /// Visits the words of exactly `len` symbols from `h` in lexicographic
    /// order. Tables must cover `len`.
    fn words(
        &self,
        product: &Product,
        h: usize,
        len: usize,
        mode: Mode,
        visit: &mut dyn FnMut(Word) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if !self.table(mode)[len][h] {
            return ControlFlow::Continue(());
        }
        let mut word = Word {
            symbols: Vec::with_capacity(len),
            path: vec![h],
        };
        self.walk(product, &mut word, len, mode, visit)
    }

    fn walk(
        &self,
        product: &Product,
        word: &mut Word,
        remaining: usize,
        mode: Mode,
        visit: &mut dyn FnMut(Word) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let h = *word.path.last().expect("non-empty path");
        if remaining == 1 {
            if mode == Mode::NeedDelta {
                return ControlFlow::Continue(());
            }
            for &sym in &self.ends[h] {
                let mut w = word.clone();
                w.symbols.push(sym);
                w.path.push(product.step(h, sym));
                visit(w)?;
            }
            return ControlFlow::Continue(());
        }
        for &(sym, t) in &product.succ[h] {
            let is_delta = Some(sym) == self.delta;
            let next = match mode {
                Mode::NoDelta if is_delta => continue,
                Mode::NeedDelta if is_delta => Mode::Any,
                m => m,
            };
            if !self.table(next)[remaining - 1][t] {
                continue;
            }
            word.symbols.push(sym);
            word.path.push(t);
            let flow = self.walk(product, word, remaining - 1, next, visit);
            word.symbols.pop();
            word.path.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// The first word in length-lexicographic order, whatever its length.
    fn shortest(&mut self, product: &Product) -> Word {
        let mut len = 1;
        loop {
            self.ensure(product, len);
            if self.any[len][product.initial] {
                let mut found = None;
                let _ = self.words(product, product.initial, len, Mode::Any, &mut |w| {
                    found = Some(w);
                    ControlFlow::Break(())
                });
                return found.expect("table says a word exists");
            }
            assert!(len <= product.states.len(), "every fault has a witness");
            len += 1;
        }
    }
}
