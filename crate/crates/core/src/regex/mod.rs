//! Regular expressions over a model alphabet, used for the desirable (D)
//! and undesirable (F) behaviour languages.
//!
//! Concrete syntax: `|` for alternation (lowest precedence), juxtaposition
//! for concatenation, postfix `*`, and parentheses. Labels are matched
//! greedily against the alphabet; labels that would be ambiguous can be
//! written in single quotes (`'coin'`). Whitespace is ignored.

mod parser;
pub mod random;
mod thompson;

use std::fmt;

use thiserror::Error;

pub use parser::parse_regex;
pub use thompson::regex_to_fsa;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegexError {
    #[error("empty expression")]
    EmptyExpression,
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("unknown symbol {symbol} (at column {column})")]
    UnknownSymbol { symbol: String, column: usize },
    #[error("unbalanced parenthesis (at column {column})")]
    UnbalancedParen { column: usize },
    #[error("operator `{op}` has no operand (at column {column})")]
    DanglingOperator { op: char, column: usize },
    #[error("empty group (at column {column})")]
    EmptyGroup { column: usize },
    #[error("unterminated quoted label (at column {column})")]
    UnterminatedQuote { column: usize },
}

impl RegexError {
    /// 1-based column of the offending character, when known.
    pub fn column(&self) -> Option<usize> {
        match self {
            RegexError::UnknownSymbol { column, .. }
            | RegexError::UnbalancedParen { column }
            | RegexError::DanglingOperator { column, .. }
            | RegexError::EmptyGroup { column }
            | RegexError::UnterminatedQuote { column } => Some(*column),
            RegexError::EmptyExpression | RegexError::EmptyAlphabet => None,
        }
    }
}

/// Abstract syntax. Build values through the associated constructors,
/// which keep the tree normalized: `Concat` and `Alt` always have at least
/// two children and never directly contain a node of their own kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegexAst {
    EmptyLanguage,
    Epsilon,
    Symbol(String),
    Concat(Vec<RegexAst>),
    Alt(Vec<RegexAst>),
    Star(Box<RegexAst>),
}

impl RegexAst {
    pub fn symbol(name: impl Into<String>) -> Self {
        RegexAst::Symbol(name.into())
    }

    pub fn concat(parts: impl IntoIterator<Item = RegexAst>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                RegexAst::EmptyLanguage => return RegexAst::EmptyLanguage,
                RegexAst::Epsilon => {}
                RegexAst::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => RegexAst::Epsilon,
            1 => flat.pop().unwrap(),
            _ => RegexAst::Concat(flat),
        }
    }

    pub fn alt(parts: impl IntoIterator<Item = RegexAst>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                RegexAst::EmptyLanguage => {}
                RegexAst::Alt(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => RegexAst::EmptyLanguage,
            1 => flat.pop().unwrap(),
            _ => RegexAst::Alt(flat),
        }
    }

    pub fn star(inner: RegexAst) -> Self {
        match inner {
            RegexAst::EmptyLanguage | RegexAst::Epsilon => RegexAst::Epsilon,
            s @ RegexAst::Star(_) => s,
            other => RegexAst::Star(Box::new(other)),
        }
    }

    /// `(l1|l2|...)*` over the given labels.
    pub fn universal<'a>(labels: impl IntoIterator<Item = &'a str>) -> Self {
        RegexAst::star(RegexAst::alt(labels.into_iter().map(RegexAst::symbol)))
    }

    /// Every label mentioned, in first-occurrence order.
    pub fn symbols(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        self.visit(&mut |name| {
            if !out.contains(&name) {
                out.push(name);
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            RegexAst::EmptyLanguage | RegexAst::Epsilon => {}
            RegexAst::Symbol(s) => f(s),
            RegexAst::Concat(v) | RegexAst::Alt(v) => v.iter().for_each(|c| c.visit(f)),
            RegexAst::Star(c) => c.visit(f),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            RegexAst::Alt(_) => 0,
            RegexAst::Concat(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, c: &RegexAst, min: u8| {
            if c.precedence() < min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        match self {
            RegexAst::EmptyLanguage => f.write_str("∅"),
            RegexAst::Epsilon => f.write_str("ε"),
            RegexAst::Symbol(s) if s.chars().count() == 1 => f.write_str(s),
            RegexAst::Symbol(s) => write!(f, "'{s}'"),
            RegexAst::Concat(v) => v.iter().try_for_each(|c| child(f, c, 2)),
            RegexAst::Alt(v) => {
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    child(f, c, 1)?;
                }
                Ok(())
            }
            RegexAst::Star(c) => {
                child(f, c, 2)?;
                f.write_str("*")
            }
        }
    }
}
