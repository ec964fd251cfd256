use super::{RegexAst, RegexError};
use crate::automata::Alphabet;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Sym(String),
    LParen,
    RParen,
    Bar,
    Star,
}

/// Parses `text` into a normalized AST whose symbols all belong to
/// `alphabet`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<RegexAst, RegexError> {
    if alphabet.is_empty() {
        return Err(RegexError::EmptyAlphabet);
    }
    let tokens = tokenize(text, alphabet)?;
    if tokens.is_empty() {
        return Err(RegexError::EmptyExpression);
    }
    let end = text.chars().count() + 1;
    let mut p = Parser {
        tokens,
        pos: 0,
        end,
    };
    let ast = p.alternation()?;
    match p.peek() {
        None => Ok(ast),
        // only a stray `)` can stop the top-level alternation early
        Some((_, col)) => Err(RegexError::UnbalancedParen { column: col }),
    }
}

fn tokenize(text: &str, alphabet: &Alphabet) -> Result<Vec<(Tok, usize)>, RegexError> {
    let chars: Vec<char> = text.chars().collect();
    let mut names: Vec<Vec<char>> = alphabet.names().map(|n| n.chars().collect()).collect();
    names.sort_by_key(|n| std::cmp::Reverse(n.len()));
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let column = i + 1;
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if let Some(name) = names.iter().find(|n| chars[i..].starts_with(n)) {
            out.push((Tok::Sym(name.iter().collect()), column));
            i += name.len();
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '|' => Tok::Bar,
            '*' => Tok::Star,
            '\'' => {
                let close = chars[i + 1..]
                    .iter()
                    .position(|&c| c == '\'')
                    .ok_or(RegexError::UnterminatedQuote { column })?;
                let name: String = chars[i + 1..i + 1 + close].iter().collect();
                if alphabet.index_of(&name).is_none() {
                    return Err(RegexError::UnknownSymbol {
                        symbol: format!("'{name}'"),
                        column,
                    });
                }
                out.push((Tok::Sym(name), column));
                i += close + 2;
                continue;
            }
            _ => {
                let symbol: String = chars[i..]
                    .iter()
                    .take_while(|c| !c.is_whitespace() && !"()|*'".contains(**c))
                    .collect();
                return Err(RegexError::UnknownSymbol { symbol, column });
            }
        };
        out.push((tok, column));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(Tok, usize)> {
        self.tokens.get(self.pos).cloned()
    }

    fn alternation(&mut self) -> Result<RegexAst, RegexError> {
        let mut branches = vec![self.concatenation()?];
        while let Some((Tok::Bar, _)) = self.peek() {
            self.pos += 1;
            branches.push(self.concatenation()?);
        }
        Ok(RegexAst::alt(branches))
    }

    /// One or more postfix terms. Reports why no term could start here.
    fn concatenation(&mut self) -> Result<RegexAst, RegexError> {
        let mut parts = Vec::new();
        loop {
            match self.peek() {
                Some((Tok::Sym(_), _)) | Some((Tok::LParen, _)) => parts.push(self.postfix()?),
                _ => break,
            }
        }
        if parts.is_empty() {
            return Err(self.missing_operand());
        }
        Ok(RegexAst::concat(parts))
    }

    fn missing_operand(&self) -> RegexError {
        let prev = self.pos.checked_sub(1).and_then(|p| self.tokens.get(p));
        match (prev, self.peek()) {
            (Some((Tok::LParen, col)), Some((Tok::RParen, _))) => {
                RegexError::EmptyGroup { column: *col }
            }
            (_, Some((Tok::Star, col))) => RegexError::DanglingOperator {
                op: '*',
                column: col,
            },
            (Some((Tok::Bar, col)), _) => RegexError::DanglingOperator {
                op: '|',
                column: *col,
            },
            (_, Some((Tok::Bar, col))) => RegexError::DanglingOperator {
                op: '|',
                column: col,
            },
            (Some((Tok::LParen, col)), None) => RegexError::UnbalancedParen { column: *col },
            (_, Some((Tok::RParen, col))) => RegexError::UnbalancedParen { column: col },
            _ => RegexError::UnbalancedParen { column: self.end },
        }
    }

    fn postfix(&mut self) -> Result<RegexAst, RegexError> {
        let mut atom = self.atom()?;
        while let Some((Tok::Star, _)) = self.peek() {
            self.pos += 1;
            atom = RegexAst::star(atom);
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<RegexAst, RegexError> {
        match self.peek() {
            Some((Tok::Sym(s), _)) => {
                self.pos += 1;
                Ok(RegexAst::Symbol(s))
            }
            Some((Tok::LParen, open)) => {
                self.pos += 1;
                let inner = self.alternation()?;
                match self.peek() {
                    Some((Tok::RParen, _)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(RegexError::UnbalancedParen { column: open }),
                }
            }
            _ => Err(self.missing_operand()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::LabelKind;

    fn alpha(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().map(|n| (n.to_string(), LabelKind::Action))).unwrap()
    }

    fn sym(s: &str) -> RegexAst {
        RegexAst::symbol(s)
    }

    #[test]
    fn desirable_pattern() {
        let ast = parse_regex("(a|b)*ax", &alpha(&["a", "b", "x"])).unwrap();
        assert_eq!(
            ast,
            RegexAst::Concat(vec![
                RegexAst::Star(Box::new(RegexAst::Alt(vec![sym("a"), sym("b")]))),
                sym("a"),
                sym("x"),
            ])
        );
    }

    #[test]
    fn single_symbol_and_whitespace() {
        assert_eq!(parse_regex("a", &alpha(&["a"])).unwrap(), sym("a"));
        assert_eq!(
            parse_regex(" a | b ", &alpha(&["a", "b"])).unwrap(),
            RegexAst::Alt(vec![sym("a"), sym("b")])
        );
    }

    #[test]
    fn longest_match_and_quotes() {
        let al = alpha(&["a", "ab", "b"]);
        assert_eq!(
            parse_regex("aba", &al).unwrap(),
            RegexAst::Concat(vec![sym("ab"), sym("a")])
        );
        assert_eq!(
            parse_regex("'a'b", &al).unwrap(),
            RegexAst::Concat(vec![sym("a"), sym("b")])
        );
        assert_eq!(
            parse_regex("'ab'*", &al).unwrap(),
            RegexAst::star(sym("ab"))
        );
    }

    #[test]
    fn precedence() {
        let al = alpha(&["a", "b", "c"]);
        assert_eq!(
            parse_regex("ab*|c", &al).unwrap(),
            RegexAst::Alt(vec![
                RegexAst::Concat(vec![sym("a"), RegexAst::star(sym("b"))]),
                sym("c"),
            ])
        );
        assert_eq!(parse_regex("a**", &al).unwrap(), RegexAst::star(sym("a")));
    }

    #[test]
    fn errors_carry_positions() {
        let al = alpha(&["a", "b"]);
        let err = |t: &str| parse_regex(t, &al).unwrap_err();
        assert_eq!(
            err("ac"),
            RegexError::UnknownSymbol {
                symbol: "c".into(),
                column: 2
            }
        );
        assert_eq!(err("ac").to_string(), "unknown symbol c (at column 2)");
        assert_eq!(err("(a"), RegexError::UnbalancedParen { column: 1 });
        assert_eq!(err("a)"), RegexError::UnbalancedParen { column: 2 });
        assert_eq!(
            err("a|"),
            RegexError::DanglingOperator { op: '|', column: 2 }
        );
        assert_eq!(
            err("|a"),
            RegexError::DanglingOperator { op: '|', column: 1 }
        );
        assert_eq!(
            err("*a"),
            RegexError::DanglingOperator { op: '*', column: 1 }
        );
        assert_eq!(
            err("a(*)"),
            RegexError::DanglingOperator { op: '*', column: 3 }
        );
        assert_eq!(err("()"), RegexError::EmptyGroup { column: 1 });
        assert_eq!(err("'a"), RegexError::UnterminatedQuote { column: 1 });
        assert_eq!(err(""), RegexError::EmptyExpression);
        assert_eq!(err("   "), RegexError::EmptyExpression);
        assert!(matches!(
            err("'zz'"),
            RegexError::UnknownSymbol { column: 1, .. }
        ));
        assert_eq!(
            parse_regex("a", &Alphabet::default()).unwrap_err(),
            RegexError::EmptyAlphabet
        );
    }
}
