//! The running example: specification S and the candidate implementations
//! R and Q over inputs {a, b} and output {x}.

use super::{ModelKind, SystemBuilder, TransitionSystem};

pub const SPEC_S_AUT: &str = include_str!("../../tests/data/spec_s.aut");
pub const IUT_R_AUT: &str = include_str!("../../tests/data/iut_r.aut");
pub const IUT_Q_AUT: &str = include_str!("../../tests/data/iut_q.aut");

fn iolts(initial: &str, edges: &[(&str, &str, &str)]) -> TransitionSystem {
    SystemBuilder::new(ModelKind::Iolts, initial)
        .inputs(["a", "b"])
        .output("x")
        .edges(edges.iter().copied())
        .build()
        .unwrap()
}

pub fn spec_s() -> TransitionSystem {
    iolts(
        "s0",
        &[
            ("s0", "a", "s1"),
            ("s0", "b", "s3"),
            ("s1", "b", "s2"),
            ("s1", "x", "s2"),
            ("s1", "a", "s3"),
            ("s2", "b", "s2"),
            ("s2", "x", "s3"),
            ("s3", "b", "s0"),
            ("s3", "a", "s3"),
        ],
    )
}

pub fn iut_r() -> TransitionSystem {
    iolts(
        "q0",
        &[
            ("q0", "a", "q1"),
            ("q0", "b", "q3"),
            ("q1", "a", "q3"),
            ("q1", "b", "q2"),
            ("q1", "x", "q2"),
            ("q2", "a", "q3"),
            ("q2", "b", "q2"),
            ("q3", "b", "q0"),
            ("q3", "x", "q0"),
            ("q3", "a", "q3"),
        ],
    )
}

pub fn iut_q() -> TransitionSystem {
    iolts(
        "q0",
        &[
            ("q0", "a", "q1"),
            ("q0", "b", "q3"),
            ("q1", "a", "q3"),
            ("q1", "b", "q2"),
            ("q1", "x", "q2"),
            ("q2", "a", "q3"),
            ("q2", "x", "q3"),
            ("q2", "b", "q2"),
            ("q3", "b", "q0"),
            ("q3", "a", "q3"),
        ],
    )
}

#[test]
fn text_and_builder_fixtures_agree() {
    use super::{parse_aldebaran, LabelingConfig};
    let cfg = LabelingConfig::iolts_markers();
    for (text, built) in [
        (SPEC_S_AUT, spec_s()),
        (IUT_R_AUT, iut_r()),
        (IUT_Q_AUT, iut_q()),
    ] {
        assert_eq!(parse_aldebaran(text, &cfg).unwrap().system, built);
    }
}
