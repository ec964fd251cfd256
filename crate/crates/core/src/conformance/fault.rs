use super::{ConformanceError, FaultModel, Language, ProductRecord, Relation};
use crate::automata::{
    complement, determinize, induced_fsa, intersection, union, Alphabet, AutomataError, Fsa,
    StateTag,
};
use crate::models::{ModelError, TransitionSystem};
use crate::regex::{regex_to_fsa, RegexAst};

/// Deterministic automaton for the traces of `ts` followed by exactly one
/// output (including `delta` when `ts` has it).
pub fn model_d(ts: &TransitionSystem) -> Fsa {
    model_d_over(ts, &Alphabet::of_system(ts)).expect("own alphabet")
}

/// [`model_d`] over a wider alphabet, using every output it contains.
pub(crate) fn model_d_over(
    ts: &TransitionSystem,
    alphabet: &Alphabet,
) -> Result<Fsa, AutomataError> {
    let mut a = induced_fsa(ts).with_alphabet(alphabet)?;
    for s in 0..a.num_states() {
        a.set_final(s, false);
    }
    let sink = a.add_state(StateTag::leaf(a.fresh_name("f")));
    a.set_final(sink, true);
    let outputs: Vec<usize> = (0..alphabet.len())
        .filter(|&i| alphabet.kind(i).is_output())
        .collect();
    for q in 0..sink {
        for &u in &outputs {
            a.add_transition(q, Some(u), sink);
        }
    }
    Ok(determinize(&a))
}

pub(crate) fn with_quiescence(ts: &TransitionSystem) -> Result<TransitionSystem, ModelError> {
    if ts.has_quiescence() {
        Ok(ts.clone())
    } else {
        ts.add_quiescence()
    }
}

/// Fault model for ioco: the words σ·u where σ is a trace of the
/// δ-augmented specification and the output u (possibly `delta`) is not
/// allowed after σ.
pub fn fault_model_ioco(spec: &TransitionSystem) -> Result<FaultModel, ConformanceError> {
    let spec_d = with_quiescence(spec)?;
    ioco_fault_model(&spec_d, &Alphabet::of_system(&spec_d))
}

/// `spec_d` must already carry quiescence.
pub(crate) fn ioco_fault_model(
    spec_d: &TransitionSystem,
    alphabet: &Alphabet,
) -> Result<FaultModel, ConformanceError> {
    let a_d = model_d_over(spec_d, alphabet)?;
    let a_s = determinize(&induced_fsa(spec_d)).with_alphabet(alphabet)?;
    let t = intersection(&complement(&a_s), &a_d)?;
    let products = vec![ProductRecord {
        step: "complement(S) ∩ D".into(),
        left: a_s.num_states(),
        right: a_d.num_states(),
        result: t.num_states(),
    }];
    Ok(FaultModel {
        relation: Relation::Ioco,
        automaton: t,
        spec_automaton: a_s,
        desirable: "otr(S)·L_U".into(),
        undesirable: "∅".into(),
        products,
    })
}

/// Fault model for conf(D,F): `(D ∖ otr(S)) ∪ (F ∩ otr(S))`. A blank D is
/// every word over the alphabet and a blank F is empty.
pub fn fault_model_language(
    spec: &TransitionSystem,
    desirable: &Language,
    undesirable: &Language,
) -> Result<FaultModel, ConformanceError> {
    language_fault_model(spec, &Alphabet::of_system(spec), desirable, undesirable)
}

pub(crate) fn language_fault_model(
    spec: &TransitionSystem,
    alphabet: &Alphabet,
    desirable: &Language,
    undesirable: &Language,
) -> Result<FaultModel, ConformanceError> {
    let d = compile(desirable, &Language::Universal, alphabet, "d")?;
    let f = compile(undesirable, &Language::Empty, alphabet, "f")?;
    let a_s = determinize(&induced_fsa(spec)).with_alphabet(alphabet)?;
    let outside = intersection(&complement(&a_s), &d)?;
    let inside = intersection(&a_s, &f)?;
    let outside_det = determinize_if_needed(&outside);
    let inside_det = determinize_if_needed(&inside);
    let t = union(&outside_det, &inside_det)?;
    let products = vec![
        ProductRecord {
            step: "complement(S) ∩ D".into(),
            left: a_s.num_states(),
            right: d.num_states(),
            result: outside.num_states(),
        },
        ProductRecord {
            step: "S ∩ F".into(),
            left: a_s.num_states(),
            right: f.num_states(),
            result: inside.num_states(),
        },
        ProductRecord {
            step: "union".into(),
            left: outside_det.num_states(),
            right: inside_det.num_states(),
            result: t.num_states(),
        },
    ];
    Ok(FaultModel {
        relation: Relation::Language,
        automaton: t,
        spec_automaton: a_s,
        desirable: desirable.describe("L*"),
        undesirable: undesirable.describe("∅"),
        products,
    })
}

fn determinize_if_needed(a: &Fsa) -> Fsa {
    if a.is_deterministic() {
        a.clone()
    } else {
        determinize(a)
    }
}

/// Deterministic automaton for `lang` over `alphabet`; regex automata get
/// their states renamed `{prefix}0`, `{prefix}1`, ...
fn compile(
    lang: &Language,
    default: &Language,
    alphabet: &Alphabet,
    prefix: &str,
) -> Result<Fsa, ConformanceError> {
    let ast = match lang {
        Language::Default => return compile(default, default, alphabet, prefix),
        Language::Empty => RegexAst::EmptyLanguage,
        Language::Universal => RegexAst::universal(alphabet.names()),
        Language::Regex(r) => r.clone(),
        Language::Automaton(a) => {
            let wide = a.with_alphabet(&alphabet.union(a.alphabet())?)?;
            return Ok(determinize_if_needed(&wide));
        }
    };
    let nfa = regex_to_fsa(&ast, alphabet)?;
    Ok(determinize(&nfa).renamed(prefix))
}
