//! Reference checks computed straight from the definitions, by
//! breadth-first search over sets of model states. They share nothing with
//! the automaton pipeline beyond the model types.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::TestCase;
use crate::models::{LabelKind, TransitionSystem, QUIESCENCE};
use crate::regex::RegexAst;

/// A language the language oracle can track incrementally.
#[derive(Debug, Clone)]
pub enum OracleLanguage {
    Regex(RegexAst),
    /// Traces of the model followed by exactly one of its outputs.
    TracesThenOutput(TransitionSystem),
}

/// `true` iff no trace σ of the δ-augmented spec with |σ| <= k has
/// out(iut after σ) ⊄ out(spec after σ).
pub fn oracle_ioco(spec: &TransitionSystem, iut: &TransitionSystem, k: usize) -> bool {
    let s = Sys::new(spec, true);
    let i = Sys::new(iut, true);
    let mut labels: BTreeSet<&str> = spec.labels().keys().map(String::as_str).collect();
    labels.extend(iut.labels().keys().map(String::as_str));
    labels.insert(QUIESCENCE);

    let start = (s.initial_set(), i.initial_set());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some(((ss, is), depth)) = queue.pop_front() {
        if !i.out(&is).is_subset(&s.out(&ss)) {
            return false;
        }
        if depth == k {
            continue;
        }
        for &l in &labels {
            let ss2 = s.after(&ss, l);
            let is2 = i.after(&is, l);
            if ss2.is_empty() || is2.is_empty() {
                continue;
            }
            let next = (ss2, is2);
            if seen.insert(next.clone()) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    true
}

/// `true` iff no IUT trace σ with |σ| <= k is in D but not a spec trace,
/// or in F and a spec trace.
pub fn oracle_language(
    spec: &TransitionSystem,
    iut: &TransitionSystem,
    desirable: &OracleLanguage,
    undesirable: &OracleLanguage,
    k: usize,
) -> bool {
    let s = Sys::new(spec, false);
    let i = Sys::new(iut, false);
    let d = Tracker::new(desirable);
    let f = Tracker::new(undesirable);
    let labels: Vec<&str> = iut.labels().keys().map(String::as_str).collect();

    let start = (i.initial_set(), s.initial_set(), d.start(), f.start());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some(((is, ss, ds, fs), depth)) = queue.pop_front() {
        let in_spec = !ss.is_empty();
        if (d.accepting(&ds) && !in_spec) || (f.accepting(&fs) && in_spec) {
            return false;
        }
        if depth == k {
            continue;
        }
        for &l in &labels {
            let is2 = i.after(&is, l);
            if is2.is_empty() {
                continue;
            }
            let next = (is2, s.after(&ss, l), d.step(&ds, l), f.step(&fs, l));
            if seen.insert(next.clone()) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    true
}

/// Outputs enabled after `word`, or `None` when `word` is not a trace.
/// With `quiescence`, `delta` is an output of every quiescent state and
/// may appear in `word`.
pub fn out_after<S: AsRef<str>>(
    ts: &TransitionSystem,
    word: &[S],
    quiescence: bool,
) -> Option<BTreeSet<String>> {
    let sys = Sys::new(ts, quiescence);
    let mut set = sys.initial_set();
    for l in word {
        set = sys.after(&set, l.as_ref());
        if set.is_empty() {
            return None;
        }
    }
    Some(sys.out(&set).into_iter().map(str::to_string).collect())
}

impl OracleLanguage {
    pub fn contains<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let t = Tracker::new(self);
        let end = word.iter().fold(t.start(), |st, l| t.step(&st, l.as_ref()));
        t.accepting(&end)
    }
}

/// Replays an ioco test case on both models and checks that the observed
/// output is produced by the IUT but not allowed by the spec.
pub fn validate_ioco_case(
    spec: &TransitionSystem,
    iut: &TransitionSystem,
    case: &TestCase,
) -> Result<(), String> {
    let word = &case.fault_word;
    let (last, prefix) = word.split_last().ok_or("empty fault word")?;
    if case.stimulus_prefix != prefix || case.observed_output.as_ref() != Some(last) {
        return Err(format!(
            "{word:?}: prefix/output do not split the fault word"
        ));
    }
    out_after(iut, word, true).ok_or_else(|| format!("{word:?}: not an IUT trace"))?;
    let iut_out = out_after(iut, prefix, true).ok_or("prefix is not an IUT trace")?;
    let spec_out = out_after(spec, prefix, true).ok_or("prefix is not a spec trace")?;
    if !iut_out.contains(last) || spec_out.contains(last) {
        return Err(format!("{word:?}: output {last} is not a fault"));
    }
    let expected: BTreeSet<String> = case.expected_outputs.iter().flatten().cloned().collect();
    if expected != spec_out {
        return Err(format!(
            "{word:?}: expected outputs {expected:?}, spec allows {spec_out:?}"
        ));
    }
    if case.iut_path.len() != word.len() + 1 || case.spec_path.len() != prefix.len() + 1 {
        return Err(format!("{word:?}: state paths have the wrong length"));
    }
    Ok(())
}

/// Replays a language test case on the IUT and checks that its word is a
/// desirable non-spec trace or an undesirable spec trace.
pub fn validate_language_case(
    spec: &TransitionSystem,
    iut: &TransitionSystem,
    desirable: &OracleLanguage,
    undesirable: &OracleLanguage,
    case: &TestCase,
) -> Result<(), String> {
    let word = &case.fault_word;
    out_after(iut, word, false).ok_or_else(|| format!("{word:?}: not an IUT trace"))?;
    let in_spec = out_after(spec, word, false).is_some();
    let fault = (desirable.contains(word) && !in_spec) || (undesirable.contains(word) && in_spec);
    if !fault {
        return Err(format!("{word:?}: not a fault"));
    }
    if case.iut_path.len() != word.len() + 1 {
        return Err(format!("{word:?}: IUT path has the wrong length"));
    }
    Ok(())
}

type StateSet = BTreeSet<usize>;

struct Sys<'a> {
    initial: usize,
    visible: Vec<Vec<(&'a str, usize)>>,
    internal: Vec<Vec<usize>>,
    outputs: HashSet<&'a str>,
    /// Quiescent states, when `delta` is added on the fly.
    quiescent: Option<Vec<bool>>,
}

impl<'a> Sys<'a> {
    fn new(ts: &'a TransitionSystem, quiescence: bool) -> Self {
        let index: HashMap<&str, usize> = ts
            .states()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let n = ts.states().len();
        let mut visible = vec![Vec::new(); n];
        let mut internal = vec![Vec::new(); n];
        for t in ts.transitions() {
            let (p, q) = (index[t.source.as_str()], index[t.target.as_str()]);
            if t.label.is_internal() {
                internal[p].push(q);
            } else {
                visible[p].push((t.label.name(), q));
            }
        }
        let outputs: HashSet<&str> = ts
            .labels()
            .iter()
            .filter(|(_, k)| matches!(k, LabelKind::Output | LabelKind::Quiescence))
            .map(|(n, _)| n.as_str())
            .collect();
        let quiescent = (quiescence && !ts.has_quiescence()).then(|| {
            (0..n)
                .map(|p| {
                    internal[p].is_empty() && visible[p].iter().all(|(l, _)| !outputs.contains(l))
                })
                .collect()
        });
        Sys {
            initial: index[ts.initial()],
            visible,
            internal,
            outputs,
            quiescent,
        }
    }

    fn closure(&self, mut stack: Vec<usize>) -> StateSet {
        let mut set = StateSet::new();
        while let Some(p) = stack.pop() {
            if set.insert(p) {
                stack.extend(&self.internal[p]);
            }
        }
        set
    }

    fn initial_set(&self) -> StateSet {
        self.closure(vec![self.initial])
    }

    fn after(&self, set: &StateSet, label: &str) -> StateSet {
        if let (Some(q), QUIESCENCE) = (&self.quiescent, label) {
            return set.iter().copied().filter(|&p| q[p]).collect();
        }
        let targets = set
            .iter()
            .flat_map(|&p| self.visible[p].iter())
            .filter(|(l, _)| *l == label)
            .map(|&(_, q)| q)
            .collect();
        self.closure(targets)
    }

    fn out(&self, set: &StateSet) -> BTreeSet<&'a str> {
        let mut out: BTreeSet<&str> = set
            .iter()
            .flat_map(|&p| self.visible[p].iter())
            .map(|&(l, _)| l)
            .filter(|l| self.outputs.contains(l))
            .collect();
        if let Some(q) = &self.quiescent {
            if set.iter().any(|&p| q[p]) {
                out.insert(QUIESCENCE);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum TrackState {
    Term(Term),
    Traces { set: StateSet, accepting: bool },
}

enum Tracker<'a> {
    Regex(Term),
    Traces(Sys<'a>),
}

impl<'a> Tracker<'a> {
    fn new(lang: &'a OracleLanguage) -> Self {
        match lang {
            OracleLanguage::Regex(r) => Tracker::Regex(Term::from_ast(r)),
            OracleLanguage::TracesThenOutput(ts) => Tracker::Traces(Sys::new(ts, false)),
        }
    }

    fn start(&self) -> TrackState {
        match self {
            Tracker::Regex(t) => TrackState::Term(t.clone()),
            Tracker::Traces(sys) => TrackState::Traces {
                set: sys.initial_set(),
                accepting: false,
            },
        }
    }

    fn step(&self, state: &TrackState, label: &str) -> TrackState {
        match (self, state) {
            (Tracker::Regex(_), TrackState::Term(t)) => TrackState::Term(t.derive(label)),
            (Tracker::Traces(sys), TrackState::Traces { set, .. }) => TrackState::Traces {
                accepting: !set.is_empty() && sys.outputs.contains(label),
                set: sys.after(set, label),
            },
            _ => unreachable!("tracker and state kinds match"),
        }
    }

    fn accepting(&self, state: &TrackState) -> bool {
        match state {
            TrackState::Term(t) => t.nullable(),
            TrackState::Traces { accepting, .. } => *accepting,
        }
    }
}

/// Regular expressions normalized for Brzozowski derivatives: alternation
/// is a set, concatenation is right-nested.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Term {
    Empty,
    Eps,
    Sym(String),
    Cat(Box<Term>, Box<Term>),
    Or(BTreeSet<Term>),
    Star(Box<Term>),
}

impl Term {
    fn from_ast(r: &RegexAst) -> Term {
        match r {
            RegexAst::EmptyLanguage => Term::Empty,
            RegexAst::Epsilon => Term::Eps,
            RegexAst::Symbol(s) => Term::Sym(s.clone()),
            RegexAst::Concat(v) => v
                .iter()
                .rev()
                .fold(Term::Eps, |acc, x| Term::cat(Term::from_ast(x), acc)),
            RegexAst::Alt(v) => Term::or(v.iter().map(Term::from_ast)),
            RegexAst::Star(x) => Term::star(Term::from_ast(x)),
        }
    }

    fn cat(a: Term, b: Term) -> Term {
        match (a, b) {
            (Term::Empty, _) | (_, Term::Empty) => Term::Empty,
            (Term::Eps, b) => b,
            (a, Term::Eps) => a,
            (Term::Cat(x, y), b) => Term::cat(*x, Term::cat(*y, b)),
            (a, b) => Term::Cat(Box::new(a), Box::new(b)),
        }
    }

    fn or(parts: impl IntoIterator<Item = Term>) -> Term {
        let mut set = BTreeSet::new();
        for p in parts {
            match p {
                Term::Empty => {}
                Term::Or(inner) => set.extend(inner),
                other => {
                    set.insert(other);
                }
            }
        }
        match set.len() {
            0 => Term::Empty,
            1 => set.into_iter().next().unwrap(),
            _ => Term::Or(set),
        }
    }

    fn star(a: Term) -> Term {
        match a {
            Term::Empty | Term::Eps => Term::Eps,
            s @ Term::Star(_) => s,
            a => Term::Star(Box::new(a)),
        }
    }

    fn nullable(&self) -> bool {
        match self {
            Term::Empty | Term::Sym(_) => false,
            Term::Eps | Term::Star(_) => true,
            Term::Cat(a, b) => a.nullable() && b.nullable(),
            Term::Or(set) => set.iter().any(Term::nullable),
        }
    }

    fn derive(&self, label: &str) -> Term {
        match self {
            Term::Empty | Term::Eps => Term::Empty,
            Term::Sym(s) if s == label => Term::Eps,
            Term::Sym(_) => Term::Empty,
            Term::Cat(a, b) => {
                let left = Term::cat(a.derive(label), (**b).clone());
                if a.nullable() {
                    Term::or([left, b.derive(label)])
                } else {
                    left
                }
            }
            Term::Or(set) => Term::or(set.iter().map(|t| t.derive(label))),
            Term::Star(a) => Term::cat(a.derive(label), self.clone()),
        }
    }
}
