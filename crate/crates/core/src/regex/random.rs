use rand::Rng;

use super::RegexAst;

/// A random expression over `symbols` with nesting depth at most `depth`.
pub fn random_regex<R: Rng + ?Sized>(rng: &mut R, symbols: &[&str], depth: usize) -> RegexAst {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => RegexAst::EmptyLanguage,
            1 => RegexAst::Epsilon,
            _ => RegexAst::symbol(symbols[rng.gen_range(0..symbols.len())]),
        };
    }
    let kind = rng.gen_range(0..3);
    let n = if kind == 2 { 1 } else { rng.gen_range(2..=3) };
    let children: Vec<RegexAst> = (0..n)
        .map(|_| random_regex(rng, symbols, depth - 1))
        .collect();
    match kind {
        0 => RegexAst::concat(children),
        1 => RegexAst::alt(children),
        _ => RegexAst::star(children.into_iter().next().unwrap()),
    }
}
