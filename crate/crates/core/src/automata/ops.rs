use std::collections::{HashMap, VecDeque};

use super::query::epsilon_closure;
use super::{AutomataError, Fsa, StateId, StateTag};

/// Subset construction over ε-closures. Only reachable, non-empty subsets
/// are built; a subset is final iff it contains a final state.
pub fn determinize(a: &Fsa) -> Fsa {
    let start = epsilon_closure(a, [a.initial()]);
    let tag_of = |set: &[StateId]| StateTag::subset(set.iter().map(|&s| a.tag(s)));
    let mut out = Fsa::new(a.alphabet().clone(), tag_of(&start));
    out.set_final(0, start.iter().any(|&s| a.is_final(s)));
    let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        let from = index[&set];
        for sym in 0..a.alphabet().len() {
            let moved: Vec<StateId> = set
                .iter()
                .flat_map(|&s| a.successors(s).iter())
                .filter(|&&(l, _)| l == Some(sym))
                .map(|&(_, t)| t)
                .collect();
            if moved.is_empty() {
                continue;
            }
            let target = epsilon_closure(a, moved);
            let to = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = out.add_state(tag_of(&target));
                    out.set_final(id, target.iter().any(|&s| a.is_final(s)));
                    index.insert(target.clone(), id);
                    queue.push_back(target);
                    id
                }
            };
            out.add_transition(from, Some(sym), to);
        }
    }
    out
}

/// Adds a single non-final sink absorbing every missing (state, symbol)
/// pair. Already complete automata are returned unchanged.
pub fn complete(a: &Fsa) -> Result<Fsa, AutomataError> {
    if !a.is_deterministic() {
        return Err(AutomataError::NotDeterministic);
    }
    if a.is_complete() {
        return Ok(a.clone());
    }
    let mut out = a.clone();
    let sink = out.add_state(StateTag::leaf(a.fresh_name("c")));
    for s in 0..out.num_states() {
        for sym in 0..out.alphabet().len() {
            if out.step(s, sym).is_none() {
                out.add_transition(s, Some(sym), sink);
            }
        }
    }
    Ok(out)
}

/// Determinizes and completes when needed, then swaps final and non-final
/// states.
pub fn complement(a: &Fsa) -> Fsa {
    let det = if a.is_deterministic() {
        a.clone()
    } else {
        determinize(a)
    };
    let mut out = complete(&det).expect("deterministic by construction");
    for s in 0..out.num_states() {
        let f = out.is_final(s);
        out.set_final(s, !f);
    }
    out
}

/// Reachable product accepting L(a) ∩ L(b).
///
/// The operands are lifted to the union of their alphabets; a symbol an
/// operand does not know simply has no transitions there, which has the
/// same effect on the intersection as completing it with a sink. ε-moves
/// of either side are interleaved.
pub fn intersection(a: &Fsa, b: &Fsa) -> Result<Fsa, AutomataError> {
    let alphabet = a.alphabet().union(b.alphabet())?;
    let a = a.with_alphabet(&alphabet)?;
    let b = b.with_alphabet(&alphabet)?;
    Ok(product(&a, &b, |x, y| x && y))
}

/// Product over the completed, deterministic operands accepting
/// L(a) ∪ L(b).
pub fn union(a: &Fsa, b: &Fsa) -> Result<Fsa, AutomataError> {
    let alphabet = a.alphabet().union(b.alphabet())?;
    let prepare = |x: &Fsa| -> Result<Fsa, AutomataError> {
        let det = if x.is_deterministic() {
            x.clone()
        } else {
            determinize(x)
        };
        complete(&det.with_alphabet(&alphabet)?)
    };
    Ok(product(&prepare(a)?, &prepare(b)?, |x, y| x || y))
}

fn product(a: &Fsa, b: &Fsa, accept: impl Fn(bool, bool) -> bool) -> Fsa {
    let start = (a.initial(), b.initial());
    let tag_of = |(p, q): (StateId, StateId)| StateTag::product(a.tag(p), b.tag(q));
    let mut out = Fsa::new(a.alphabet().clone(), tag_of(start));
    out.set_final(0, accept(a.is_final(start.0), b.is_final(start.1)));
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(pair @ (p, q)) = queue.pop_front() {
        let from = index[&pair];
        let mut moves: Vec<(Option<usize>, (StateId, StateId))> = Vec::new();
        for &(l, p2) in a.successors(p) {
            match l {
                None => moves.push((None, (p2, q))),
                Some(sym) => moves.extend(
                    b.successors(q)
                        .iter()
                        .filter(|&&(m, _)| m == Some(sym))
                        .map(|&(_, q2)| (Some(sym), (p2, q2))),
                ),
            }
        }
        for &(m, q2) in b.successors(q) {
            if m.is_none() {
                moves.push((None, (p, q2)));
            }
        }
        for (l, target) in moves {
            let to = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = out.add_state(tag_of(target));
                    out.set_final(id, accept(a.is_final(target.0), b.is_final(target.1)));
                    index.insert(target, id);
                    queue.push_back(target);
                    id
                }
            };
            out.add_transition(from, l, to);
        }
    }
    out
}
