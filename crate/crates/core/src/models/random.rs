//! Seeded random models for property tests and scaling experiments.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use super::{ModelKind, SystemBuilder, TransitionSystem};

const INPUT_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
const OUTPUT_NAMES: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Debug, Clone)]
pub struct RandomModel {
    pub states: usize,
    pub inputs: usize,
    pub outputs: usize,
    /// Probability that a given (state, label) pair gets a transition.
    pub density: f64,
    /// Allow several successors per label and internal `tau` moves.
    pub nondeterministic: bool,
    /// Prefix of generated state names, e.g. `s` gives `s0, s1, …`.
    pub prefix: String,
}

impl RandomModel {
    pub fn deterministic(states: usize, inputs: usize, outputs: usize) -> Self {
        RandomModel {
            states,
            inputs,
            outputs,
            density: 0.6,
            nondeterministic: false,
            prefix: "s".into(),
        }
    }

    pub fn prefix(mut self, prefix: &str) -> Self {
        self.prefix = prefix.into();
        self
    }

    pub fn input_names(&self) -> &'static [&'static str] {
        &INPUT_NAMES[..self.inputs.min(INPUT_NAMES.len())]
    }

    pub fn output_names(&self) -> &'static [&'static str] {
        &OUTPUT_NAMES[..self.outputs.min(OUTPUT_NAMES.len())]
    }

    fn labels(&self) -> Vec<&'static str> {
        self.input_names()
            .iter()
            .chain(self.output_names())
            .copied()
            .collect()
    }

    fn builder(&self, initial: String) -> SystemBuilder {
        SystemBuilder::new(ModelKind::Iolts, initial)
            .inputs(self.input_names().iter().copied())
            .outputs(self.output_names().iter().copied())
    }

    /// Generates an IOLTS whose states are all reachable from the initial one.
    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> TransitionSystem {
        let n = self.states.max(1);
        let name = |i: usize| format!("{}{}", self.prefix, i);
        let labels = self.labels();
        let mut edges: Vec<(usize, &str, usize)> = Vec::new();
        let taken = |edges: &[(usize, &str, usize)], s: usize, l: &str| {
            edges.iter().any(|&(p, m, _)| p == s && m == l)
        };
        // spanning tree first so that every state is reachable
        for target in 1..n {
            for _ in 0..16 {
                let source = rng.gen_range(0..target);
                let label = labels[rng.gen_range(0..labels.len())];
                if self.nondeterministic || !taken(&edges, source, label) {
                    edges.push((source, label, target));
                    break;
                }
            }
        }
        for s in 0..n {
            for &l in &labels {
                if rng.gen_bool(self.density) && (self.nondeterministic || !taken(&edges, s, l)) {
                    edges.push((s, l, rng.gen_range(0..n)));
                }
            }
            if self.nondeterministic && rng.gen_bool(0.15) {
                edges.push((s, "tau", rng.gen_range(0..n)));
            }
        }
        let mut b = self.builder(name(0));
        for i in 0..n {
            b = b.state(name(i));
        }
        for (s, l, t) in edges {
            b = b.edge(name(s), l, name(t));
        }
        b.build().expect("generated labels are declared")
    }

    /// A small perturbation of `base` that keeps it deterministic when it was:
    /// one transition is retargeted, removed, or added.
    pub fn mutate<R: Rng + ?Sized>(
        &self,
        base: &TransitionSystem,
        rng: &mut R,
    ) -> TransitionSystem {
        let states = base.states().to_vec();
        let mut edges: Vec<(String, String, String)> = base
            .transitions()
            .iter()
            .map(|t| {
                (
                    t.source.clone(),
                    t.label.name().to_string(),
                    t.target.clone(),
                )
            })
            .collect();
        match rng.gen_range(0..3) {
            0 if !edges.is_empty() => {
                let i = rng.gen_range(0..edges.len());
                edges[i].2 = states.choose(rng).unwrap().clone();
            }
            1 if !edges.is_empty() => {
                edges.remove(rng.gen_range(0..edges.len()));
            }
            _ => {
                let s = states.choose(rng).unwrap().clone();
                let l = *self.labels().choose(rng).unwrap();
                if self.nondeterministic || !edges.iter().any(|(p, m, _)| *p == s && m == l) {
                    edges.push((s, l.to_string(), states.choose(rng).unwrap().clone()));
                }
            }
        }
        let mut b = self.builder(base.initial().to_string());
        for s in &states {
            b = b.state(s.clone());
        }
        for (s, l, t) in edges {
            b = b.edge(s, l, t);
        }
        b.build().expect("labels unchanged")
    }
}

/// Deterministic spec/IUT pairs with 1 to 6 states, 1 to 3 inputs and one
/// output. Most IUTs are a few mutations away from their spec; the rest
/// are generated independently.
pub fn pair_corpus(seed: u64, count: usize) -> Vec<(TransitionSystem, TransitionSystem)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let inputs = rng.gen_range(1..=3);
            let spec_cfg = RandomModel::deterministic(rng.gen_range(1..=6), inputs, 1);
            let spec = spec_cfg.generate(&mut rng);
            let iut = if rng.gen_bool(0.7) {
                (0..rng.gen_range(1..=3)).fold(spec.clone(), |m, _| spec_cfg.mutate(&m, &mut rng))
            } else {
                RandomModel::deterministic(rng.gen_range(1..=6), inputs, 1)
                    .prefix("q")
                    .generate(&mut rng)
            };
            (spec, iut)
        })
        .collect()
}
