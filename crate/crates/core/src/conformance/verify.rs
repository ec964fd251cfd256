use std::time::Instant;

use super::extract::{extract_test_suite, Bound, Suite};
use super::fault::{ioco_fault_model, language_fault_model, with_quiescence};
use super::{ConformanceError, FaultModel, Language, ProductRecord, Stats, Verdict};
use crate::automata::{determinize, induced_fsa, intersection, is_empty_language, Alphabet, Fsa};
use crate::models::TransitionSystem;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub bound: Bound,
}

/// Decides `iut ioco spec`. Both models are augmented with quiescence
/// first; models that already carry `delta` are used as they are.
pub fn verify_ioco(
    spec: &TransitionSystem,
    iut: &TransitionSystem,
    opts: VerifyOptions,
) -> Result<Verdict, ConformanceError> {
    let start = Instant::now();
    let spec_d = with_quiescence(spec)?;
    let iut_d = with_quiescence(iut)?;
    let alphabet = Alphabet::of_system(&spec_d).union(&Alphabet::of_system(&iut_d))?;
    let fm = ioco_fault_model(&spec_d, &alphabet)?;
    finish(fm, &iut_d, spec, opts, start)
}

/// Decides conf(D,F): every desirable IUT trace is a spec trace and no
/// undesirable IUT trace is. Models are used without quiescence.
pub fn verify_language(
    spec: &TransitionSystem,
    iut: &TransitionSystem,
    desirable: &Language,
    undesirable: &Language,
    opts: VerifyOptions,
) -> Result<Verdict, ConformanceError> {
    let start = Instant::now();
    let alphabet = Alphabet::of_system(spec).union(&Alphabet::of_system(iut))?;
    let fm = language_fault_model(spec, &alphabet, desirable, undesirable)?;
    finish(fm, iut, spec, opts, start)
}

fn finish(
    fm: FaultModel,
    iut: &TransitionSystem,
    spec: &TransitionSystem,
    opts: VerifyOptions,
    start: Instant,
) -> Result<Verdict, ConformanceError> {
    let a_i: Fsa = determinize(&induced_fsa(iut));
    let b = intersection(&fm.automaton, &a_i)?;
    let mut products = fm.products.clone();
    products.push(ProductRecord {
        step: "T ∩ I".into(),
        left: fm.automaton.num_states(),
        right: a_i.num_states(),
        result: b.num_states(),
    });
    let conforms = is_empty_language(&b);
    let suite = if conforms {
        Suite::default()
    } else {
        extract_test_suite(&b, &fm.spec_automaton, &a_i, fm.relation, opts.bound)
    };
    Ok(Verdict {
        relation: fm.relation,
        conforms,
        test_cases: suite.test_cases,
        covered_spec_transitions: suite.covered,
        warnings: suite.warnings,
        stats: Stats {
            spec_states: spec.states().len(),
            iut_states: iut.states().len(),
            fault_model_states: fm.automaton.num_states(),
            product_states: b.num_states(),
            bound: match opts.bound {
                Bound::Auto => b.num_states(),
                Bound::Fixed(n) => n,
            },
            products,
        },
        elapsed: start.elapsed(),
    })
}
