use confkit::automata::{
    accepts, complement, determinize, intersection, isomorphic, union, Alphabet, Fsa, StateTag,
};
use confkit::models::LabelKind;
use proptest::prelude::*;

const NAMES: [&str; 3] = ["a", "b", "c"];

/// (states, symbols, edges with `None` for ε, finals)
type Shape = (usize, usize, Vec<(usize, Option<usize>, usize)>, Vec<bool>);

fn build((n, k, edges, finals): &Shape, prefix: &str) -> Fsa {
    let alphabet = Alphabet::new(
        NAMES[..*k]
            .iter()
            .map(|s| (s.to_string(), LabelKind::Action)),
    )
    .unwrap();
    let mut a = Fsa::new(alphabet, StateTag::leaf(format!("{prefix}0")));
    for i in 1..*n {
        a.add_state(StateTag::leaf(format!("{prefix}{i}")));
    }
    for &(p, s, q) in edges {
        a.add_transition(p % n, s.map(|s| s % k), q % n);
    }
    for (i, &f) in finals.iter().enumerate().take(*n) {
        a.set_final(i, f);
    }
    a
}

fn shape() -> impl Strategy<Value = Shape> {
    (1usize..=6, 1usize..=3).prop_flat_map(|(n, k)| {
        let edge = (0..n, prop::option::weighted(0.85, 0..k), 0..n);
        (
            Just(n),
            Just(k),
            prop::collection::vec(edge, 0..=3 * n),
            prop::collection::vec(any::<bool>(), n),
        )
    })
}

fn words(k: usize, max_len: usize) -> Vec<Vec<&'static str>> {
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<&str>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                NAMES[..k].iter().map(move |s| {
                    let mut w = w.clone();
                    w.push(*s);
                    w
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Membership that treats symbols outside the automaton's alphabet as
/// rejecting.
fn member(a: &Fsa, w: &[&str]) -> bool {
    accepts(a, w).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn determinize_preserves_language(s in shape()) {
        let a = build(&s, "p");
        let d = determinize(&a);
        prop_assert!(d.is_deterministic());
        for w in words(s.1, 6) {
            prop_assert_eq!(member(&a, &w), member(&d, &w));
        }
        prop_assert!(isomorphic(&determinize(&d), &d).unwrap());
    }

    #[test]
    fn complement_flips_membership(s in shape()) {
        let a = build(&s, "p");
        let c = complement(&a);
        prop_assert!(c.is_complete());
        for w in words(s.1, 6) {
            prop_assert!(member(&a, &w) ^ member(&c, &w));
        }
    }

    #[test]
    fn products_follow_boolean_algebra(s in shape(), t in shape()) {
        let (a, b) = (build(&s, "p"), build(&t, "q"));
        let i = intersection(&a, &b).unwrap();
        let u = union(&a, &b).unwrap();
        prop_assert!(i.num_states() <= (a.num_states() + 1) * (b.num_states() + 1));
        let (da, db) = (determinize(&a), determinize(&b));
        prop_assert!(u.num_states() <= (da.num_states() + 1) * (db.num_states() + 1));
        for w in words(s.1.max(t.1), 6) {
            prop_assert_eq!(member(&i, &w), member(&a, &w) && member(&b, &w));
            prop_assert_eq!(member(&u, &w), member(&a, &w) || member(&b, &w));
        }
    }
}
