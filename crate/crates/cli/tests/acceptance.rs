//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use confkit::automata::{
    accepts, complement, determinize, induced_fsa, intersection, isomorphic, union, Alphabet, Fsa,
    StateTag,
};
use confkit::conformance::{
    model_d, oracle_ioco, oracle_language, validate_ioco_case, validate_language_case, verify_ioco,
    verify_language, Bound, Language, OracleLanguage, ProductRecord, Verdict, VerifyOptions,
};
use confkit::models::random::pair_corpus;
use confkit::models::{parse_aldebaran, LabelKind, LabelingConfig, TransitionSystem};
use confkit::regex::random::random_regex;
use confkit::regex::{regex_to_fsa, RegexAst};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

const CLI_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_LIMIT: Duration = Duration::from_secs(30);
const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 200;
const ALGEBRA_PAIRS: usize = 100;
const ALGEBRA_LEN: usize = 6;
const ORACLE_CAP: usize = 12;
const OPTS: VerifyOptions = VerifyOptions { bound: Bound::Auto };

type Outcome = Result<String, String>;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn load(name: &str) -> TransitionSystem {
    let text = std::fs::read_to_string(data(name)).unwrap();
    parse_aldebaran(&text, &LabelingConfig::iolts_markers())
        .unwrap()
        .system
}

/// Runs the binary and returns its JSON report, exit code and wall time.
fn run_cli(args: &[&str]) -> Result<(Value, Option<i32>, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_confkit"))
        .args(args)
        .args(["--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let report = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok((report, out.status.code(), elapsed))
}

fn case_words(report: &Value, field: &str) -> BTreeSet<String> {
    report["testCases"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|t| {
            t[field]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(Value::as_str)
                .collect::<String>()
        })
        .collect()
}

fn json_products(report: &Value) -> Vec<ProductRecord> {
    report["stats"]["products"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|p| ProductRecord {
            step: p["step"].as_str().unwrap_or_default().to_string(),
            left: p["left"].as_u64().unwrap_or(0) as usize,
            right: p["right"].as_u64().unwrap_or(0) as usize,
            result: p["result"].as_u64().unwrap_or(usize::MAX as u64) as usize,
        })
        .collect()
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

fn cli_scenario(
    args: &[&str],
    expect_conforms: bool,
    field: &str,
    expected: &[&str],
    products: &mut Vec<ProductRecord>,
) -> Outcome {
    let (report, code, elapsed) = run_cli(args)?;
    products.extend(json_products(&report));
    let conforms = report["conforms"].as_bool();
    if conforms != Some(expect_conforms) {
        return Err(format!("conforms = {conforms:?}"));
    }
    if code != Some(if expect_conforms { 0 } else { 1 }) {
        return Err(format!("exit code {code:?}"));
    }
    let got = case_words(&report, field);
    if got != set(expected) {
        return Err(format!("suite {got:?}"));
    }
    if elapsed >= CLI_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} cases, {elapsed:.2?}", got.len()))
}

fn complement_structure() -> Outcome {
    let got = complement(&induced_fsa(&load("spec_s.aut")));
    let alphabet = Alphabet::new([
        ("a".to_string(), LabelKind::Input),
        ("b".to_string(), LabelKind::Input),
        ("x".to_string(), LabelKind::Output),
    ])
    .map_err(|e| e.to_string())?;
    let mut want = Fsa::new(alphabet, StateTag::leaf("s0"));
    let s: Vec<_> = std::iter::once(0)
        .chain(["s1", "s2", "s3", "dead"].map(|n| want.add_state(StateTag::leaf(n))))
        .collect();
    let dead = s[4];
    let edges = [
        (0, "a", 1),
        (0, "b", 3),
        (1, "b", 2),
        (1, "x", 2),
        (1, "a", 3),
        (2, "b", 2),
        (2, "x", 3),
        (3, "b", 0),
        (3, "a", 3),
        (0, "x", 4),
        (2, "a", 4),
        (3, "x", 4),
        (4, "a", 4),
        (4, "b", 4),
        (4, "x", 4),
    ];
    for (p, l, q) in edges {
        let sym = want.alphabet().index_of(l).unwrap();
        want.add_transition(s[p], Some(sym), s[q]);
    }
    want.set_final(dead, true);
    if got.num_states() != 5 {
        return Err(format!("{} states", got.num_states()));
    }
    match isomorphic(&got, &want) {
        Ok(true) => Ok("5 states, isomorphic".into()),
        Ok(false) => Err("not isomorphic".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn ioco_matches_language(
    corpus: &[(TransitionSystem, TransitionSystem)],
    products: &mut Vec<ProductRecord>,
) -> Outcome {
    let start = Instant::now();
    let mut disagreements = 0;
    for (spec, iut) in corpus {
        let ioco = keep(verify_ioco(spec, iut, OPTS), products)?;
        let spec_d = spec.add_quiescence().map_err(|e| e.to_string())?;
        let iut_d = iut.add_quiescence().map_err(|e| e.to_string())?;
        let d = Language::Automaton(model_d(&spec_d));
        let lang = keep(
            verify_language(&spec_d, &iut_d, &d, &Language::Empty, OPTS),
            products,
        )?;
        if ioco.conforms != lang.conforms {
            disagreements += 1;
        }
    }
    let elapsed = start.elapsed();
    if disagreements > 0 {
        return Err(format!("{disagreements}/{} pairs disagree", corpus.len()));
    }
    if elapsed >= CORPUS_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} pairs agree, {elapsed:.2?}", corpus.len()))
}

fn keep<E: std::fmt::Display>(
    v: Result<Verdict, E>,
    products: &mut Vec<ProductRecord>,
) -> Result<Verdict, String> {
    let v = v.map_err(|e| e.to_string())?;
    products.extend(v.stats.products.iter().cloned());
    Ok(v)
}

fn regex_states(r: &RegexAst, spec: &TransitionSystem) -> usize {
    regex_to_fsa(r, &Alphabet::of_system(spec))
        .map(|a| determinize(&a).num_states())
        .unwrap_or(ORACLE_CAP)
}

fn corpus_languages(corpus: &[(TransitionSystem, TransitionSystem)]) -> Vec<(RegexAst, RegexAst)> {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED + 1);
    corpus
        .iter()
        .map(|(spec, _)| {
            let names: Vec<String> = Alphabet::of_system(spec)
                .names()
                .map(str::to_string)
                .collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            (
                random_regex(&mut rng, &names, 3),
                random_regex(&mut rng, &names, 3),
            )
        })
        .collect()
}

fn oracle_agreement(
    corpus: &[(TransitionSystem, TransitionSystem)],
    languages: &[(RegexAst, RegexAst)],
    products: &mut Vec<ProductRecord>,
) -> Outcome {
    let mut failures = Vec::new();
    for (i, ((spec, iut), (d, f))) in corpus.iter().zip(languages).enumerate() {
        let (ns, ni) = (spec.states().len(), iut.states().len());
        let k = ((ns + 1) * (ni + 1)).min(ORACLE_CAP);
        if keep(verify_ioco(spec, iut, OPTS), products)?.conforms != oracle_ioco(spec, iut, k) {
            failures.push(format!("ioco #{i}"));
        }
        let k = ((ns + 1) * (ni + 1) * (regex_states(d, spec) + 1) * (regex_states(f, spec) + 1))
            .min(ORACLE_CAP);
        let v = keep(
            verify_language(
                spec,
                iut,
                &Language::Regex(d.clone()),
                &Language::Regex(f.clone()),
                OPTS,
            ),
            products,
        )?;
        let oracle = oracle_language(
            spec,
            iut,
            &OracleLanguage::Regex(d.clone()),
            &OracleLanguage::Regex(f.clone()),
            k,
        );
        if v.conforms != oracle {
            failures.push(format!("language #{i}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} pairs, both relations", corpus.len()))
    } else {
        Err(format!("disagreements: {}", failures.join(", ")))
    }
}

const NAMES: [&str; 3] = ["a", "b", "c"];

fn random_fsa(rng: &mut StdRng, prefix: &str) -> Fsa {
    let n = rng.gen_range(1..=6);
    let k = rng.gen_range(1..=3);
    let alphabet = Alphabet::new(
        NAMES[..k]
            .iter()
            .map(|s| (s.to_string(), LabelKind::Action)),
    )
    .unwrap();
    let mut a = Fsa::new(alphabet, StateTag::leaf(format!("{prefix}0")));
    for i in 1..n {
        a.add_state(StateTag::leaf(format!("{prefix}{i}")));
    }
    for _ in 0..rng.gen_range(0..=3 * n) {
        let sym = if rng.gen_bool(0.85) {
            Some(rng.gen_range(0..k))
        } else {
            None
        };
        a.add_transition(rng.gen_range(0..n), sym, rng.gen_range(0..n));
    }
    for s in 0..n {
        a.set_final(s, rng.gen_bool(0.4));
    }
    a
}

/// Path search over (state, position), independent of the library's
/// subset simulation. Symbols outside the alphabet reject.
fn member(a: &Fsa, word: &[&str]) -> bool {
    let mut ids = Vec::new();
    for w in word {
        match a.alphabet().index_of(w) {
            Some(i) => ids.push(i),
            None => return false,
        }
    }
    let mut seen = BTreeSet::new();
    let mut stack = vec![(a.initial(), 0)];
    while let Some((s, pos)) = stack.pop() {
        if !seen.insert((s, pos)) {
            continue;
        }
        if pos == ids.len() && a.is_final(s) {
            return true;
        }
        for &(l, t) in a.successors(s) {
            match l {
                None => stack.push((t, pos)),
                Some(sym) if pos < ids.len() && sym == ids[pos] => stack.push((t, pos + 1)),
                _ => {}
            }
        }
    }
    false
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

fn algebra() -> Outcome {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED + 2);
    let mut violations = 0usize;
    let mut checked = 0usize;
    for _ in 0..ALGEBRA_PAIRS {
        let a = random_fsa(&mut rng, "p");
        let b = random_fsa(&mut rng, "q");
        let (ca, da) = (complement(&a), determinize(&a));
        let inter = intersection(&a, &b).map_err(|e| e.to_string())?;
        let uni = union(&a, &b).map_err(|e| e.to_string())?;
        let library = |m: &Fsa, w: &[&str]| accepts(m, w).unwrap_or(false);
        let ka = a.alphabet().len();
        let kab = ka.max(b.alphabet().len());
        for w in words(ka, ALGEBRA_LEN) {
            let in_a = member(&a, &w);
            violations += usize::from(member(&ca, &w) == in_a);
            violations += usize::from(member(&da, &w) != in_a);
            violations += usize::from(library(&a, &w) != in_a);
            checked += 1;
        }
        for w in words(kab, ALGEBRA_LEN) {
            let (in_a, in_b) = (member(&a, &w), member(&b, &w));
            violations += usize::from(member(&inter, &w) != (in_a && in_b));
            violations += usize::from(member(&uni, &w) != (in_a || in_b));
            checked += 1;
        }
    }
    if violations == 0 {
        Ok(format!(
            "{ALGEBRA_PAIRS} pairs, {checked} words, 0 violations"
        ))
    } else {
        Err(format!("{violations} violations"))
    }
}

fn soundness(
    corpus: &[(TransitionSystem, TransitionSystem)],
    languages: &[(RegexAst, RegexAst)],
) -> Outcome {
    let mut cases = 0;
    for ((spec, iut), (d, f)) in corpus.iter().zip(languages) {
        let v = verify_ioco(spec, iut, OPTS).map_err(|e| e.to_string())?;
        if v.conforms != v.test_cases.is_empty() {
            return Err("ioco verdict and suite disagree".into());
        }
        for tc in &v.test_cases {
            validate_ioco_case(spec, iut, tc).map_err(|e| format!("{e}: {tc:?}"))?;
            cases += 1;
        }
        let v = verify_language(
            spec,
            iut,
            &Language::Regex(d.clone()),
            &Language::Regex(f.clone()),
            OPTS,
        )
        .map_err(|e| e.to_string())?;
        if v.conforms != v.test_cases.is_empty() {
            return Err("language verdict and suite disagree".into());
        }
        let (d, f) = (
            OracleLanguage::Regex(d.clone()),
            OracleLanguage::Regex(f.clone()),
        );
        for tc in &v.test_cases {
            validate_language_case(spec, iut, &d, &f, tc).map_err(|e| format!("{e}: {tc:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases replayed"))
}

fn size_bound(products: &[ProductRecord]) -> Outcome {
    let bad: Vec<_> = products.iter().filter(|p| !p.within_bound()).collect();
    if products.is_empty() {
        return Err("no products recorded".into());
    }
    match bad.first() {
        None => Ok(format!("{} products within bound", products.len())),
        Some(p) => Err(format!("{} over bound, e.g. {p:?}", bad.len())),
    }
}

fn main() -> ExitCode {
    let spec = data("spec_s.aut");
    let iut_r = data("iut_r.aut");
    let iut_q = data("iut_q.aut");
    let corpus = pair_corpus(CORPUS_SEED, CORPUS_SIZE);
    let languages = corpus_languages(&corpus);
    let mut products = Vec::new();

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push((
        "scenario one ioco suite",
        cli_scenario(
            &["check-ioco", "--spec", &spec, "--iut", &iut_r],
            false,
            "stimulusPrefix",
            &["b", "aa", "ba", "aaa", "ab", "ax", "abb", "axb"],
            &mut products,
        ),
    ));
    results.push((
        "scenario two ioco conforms",
        cli_scenario(
            &["check-ioco", "--spec", &spec, "--iut", &iut_q],
            true,
            "stimulusPrefix",
            &[],
            &mut products,
        ),
    ));
    results.push((
        "scenario two language suite",
        cli_scenario(
            &[
                "check-lang",
                "--spec",
                &spec,
                "--iut",
                &iut_q,
                "--desirable",
                "(a|b)*ax",
            ],
            false,
            "faultWord",
            &["ababax", "abaabax"],
            &mut products,
        ),
    ));
    results.push(("complement of spec structure", complement_structure()));
    results.push((
        "ioco equals output-extension language",
        ioco_matches_language(&corpus, &mut products),
    ));
    results.push((
        "oracle agreement",
        oracle_agreement(&corpus, &languages, &mut products),
    ));
    results.push(("automata algebra exhaustive", algebra()));
    results.push(("test case soundness", soundness(&corpus, &languages)));
    results.push(("product size bound", size_bound(&products)));

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS  {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
