use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{AutomataError, Fsa, StateId, SymbolId};

/// Sorted ε-closure of a set of states.
pub(crate) fn epsilon_closure(a: &Fsa, seeds: impl IntoIterator<Item = StateId>) -> Vec<StateId> {
    let mut seen: BTreeSet<StateId> = BTreeSet::new();
    let mut stack: Vec<StateId> = seeds.into_iter().collect();
    while let Some(s) = stack.pop() {
        if seen.insert(s) {
            stack.extend(
                a.successors(s)
                    .iter()
                    .filter(|(l, _)| l.is_none())
                    .map(|&(_, t)| t),
            );
        }
    }
    seen.into_iter().collect()
}

fn move_on(a: &Fsa, set: &[StateId], sym: SymbolId) -> Vec<StateId> {
    let moved: Vec<StateId> = set
        .iter()
        .flat_map(|&s| a.successors(s).iter())
        .filter(|&&(l, _)| l == Some(sym))
        .map(|&(_, t)| t)
        .collect();
    epsilon_closure(a, moved)
}

/// Whether no final state is reachable from the initial state.
pub fn is_empty_language(a: &Fsa) -> bool {
    let mut seen = vec![false; a.num_states()];
    let mut stack = vec![a.initial()];
    seen[a.initial()] = true;
    while let Some(s) = stack.pop() {
        if a.is_final(s) {
            return false;
        }
        for &(_, t) in a.successors(s) {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    true
}

/// Membership by simulating the set of ε-closed current states.
pub fn accepts<S: AsRef<str>>(a: &Fsa, word: &[S]) -> Result<bool, AutomataError> {
    let mut current = epsilon_closure(a, [a.initial()]);
    for w in word {
        let name = w.as_ref();
        let sym = a
            .alphabet()
            .index_of(name)
            .ok_or_else(|| AutomataError::UnknownSymbol(name.to_string()))?;
        current = move_on(a, &current, sym);
        if current.is_empty() {
            return Ok(false);
        }
    }
    Ok(current.iter().any(|&s| a.is_final(s)))
}

/// All accepted words of length at most `max_len`, shortest first and
/// lexicographic (in alphabet order) within each length.
pub fn enumerate_accepted(a: &Fsa, max_len: usize) -> Vec<Vec<String>> {
    let det = if a.is_deterministic() {
        a.clone()
    } else {
        super::determinize(a)
    };
    let dist = distance_to_final(&det);
    let names: Vec<&str> = det.alphabet().names().collect();
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<SymbolId>, StateId)> = Vec::new();
    if dist[det.initial()].is_some_and(|d| d <= max_len) {
        layer.push((Vec::new(), det.initial()));
    }
    for len in 0..=max_len {
        let mut next = Vec::new();
        for (word, s) in &layer {
            if det.is_final(*s) {
                out.push(word.iter().map(|&i| names[i].to_string()).collect());
            }
            if len == max_len {
                continue;
            }
            for &(l, t) in det.successors(*s) {
                let sym = l.expect("deterministic");
                if dist[t].is_some_and(|d| d + len < max_len) {
                    let mut w = word.clone();
                    w.push(sym);
                    next.push((w, t));
                }
            }
        }
        layer = next;
    }
    out
}

/// Shortest distance from each state to some final state.
fn distance_to_final(a: &Fsa) -> Vec<Option<usize>> {
    let mut reverse: Vec<Vec<StateId>> = vec![Vec::new(); a.num_states()];
    for (p, _, q) in a.transitions() {
        reverse[q].push(p);
    }
    let mut dist = vec![None; a.num_states()];
    let mut queue: VecDeque<StateId> = a.finals().iter().copied().collect();
    for &f in a.finals() {
        dist[f] = Some(0);
    }
    while let Some(q) = queue.pop_front() {
        let d = dist[q].expect("queued states have a distance");
        for &p in &reverse[q] {
            if dist[p].is_none() {
                dist[p] = Some(d + 1);
                queue.push_back(p);
            }
        }
    }
    dist
}

/// Structural equality of the reachable parts of two deterministic
/// automata, matching symbols by name and ignoring state names.
pub fn isomorphic(a: &Fsa, b: &Fsa) -> Result<bool, AutomataError> {
    if !a.is_deterministic() || !b.is_deterministic() {
        return Err(AutomataError::NotDeterministic);
    }
    let names_a: BTreeSet<&str> = a.alphabet().names().collect();
    let names_b: BTreeSet<&str> = b.alphabet().names().collect();
    if names_a != names_b {
        return Ok(false);
    }
    let mut ab: HashMap<StateId, StateId> = HashMap::from([(a.initial(), b.initial())]);
    let mut ba: HashMap<StateId, StateId> = HashMap::from([(b.initial(), a.initial())]);
    let mut queue = VecDeque::from([a.initial()]);
    while let Some(p) = queue.pop_front() {
        let q = ab[&p];
        if a.is_final(p) != b.is_final(q) || a.successors(p).len() != b.successors(q).len() {
            return Ok(false);
        }
        for &(l, p2) in a.successors(p) {
            let name = a.alphabet().name(l.expect("deterministic"));
            let sym_b = b.alphabet().index_of(name).expect("same names");
            let Some(q2) = b.step(q, sym_b) else {
                return Ok(false);
            };
            match (ab.get(&p2), ba.get(&q2)) {
                (None, None) => {
                    ab.insert(p2, q2);
                    ba.insert(q2, p2);
                    queue.push_back(p2);
                }
                (Some(&x), Some(&y)) if x == q2 && y == p2 => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}
