use super::{RegexAst, RegexError};
use crate::automata::{Alphabet, Fsa, StateId, StateTag, SymbolId};

/// Thompson construction: every sub-expression becomes a fragment with one
/// entry and one exit state glued together by ε-moves. The result is over
/// the whole `alphabet`, not just the symbols the expression mentions.
/// States are named `r0`, `r1`, ... in creation order.
pub fn regex_to_fsa(ast: &RegexAst, alphabet: &Alphabet) -> Result<Fsa, RegexError> {
    let mut b = Builder {
        alphabet,
        states: 0,
        edges: Vec::new(),
    };
    let (start, end) = b.fragment(ast)?;
    let mut fsa = Fsa::new(alphabet.clone(), StateTag::leaf("r0"));
    for i in 1..b.states {
        fsa.add_state(StateTag::leaf(format!("r{i}")));
    }
    fsa.set_initial(start);
    fsa.set_final(end, true);
    for (p, sym, q) in b.edges {
        fsa.add_transition(p, sym, q);
    }
    Ok(fsa)
}

struct Builder<'a> {
    alphabet: &'a Alphabet,
    states: usize,
    edges: Vec<(StateId, Option<SymbolId>, StateId)>,
}

impl Builder<'_> {
    fn fresh(&mut self) -> StateId {
        self.states += 1;
        self.states - 1
    }

    fn fragment(&mut self, ast: &RegexAst) -> Result<(StateId, StateId), RegexError> {
        Ok(match ast {
            RegexAst::EmptyLanguage => (self.fresh(), self.fresh()),
            RegexAst::Epsilon => {
                let (s, e) = (self.fresh(), self.fresh());
                self.edges.push((s, None, e));
                (s, e)
            }
            RegexAst::Symbol(name) => {
                let id = self
                    .alphabet
                    .index_of(name)
                    .ok_or_else(|| RegexError::UnknownSymbol {
                        symbol: name.clone(),
                        column: 0,
                    })?;
                let (s, e) = (self.fresh(), self.fresh());
                self.edges.push((s, Some(id), e));
                (s, e)
            }
            RegexAst::Concat(parts) => {
                let (start, mut end) = self.fragment(&parts[0])?;
                for p in &parts[1..] {
                    let (s, e) = self.fragment(p)?;
                    self.edges.push((end, None, s));
                    end = e;
                }
                (start, end)
            }
            RegexAst::Alt(parts) => {
                let (s, e) = (self.fresh(), self.fresh());
                for p in parts {
                    let (ps, pe) = self.fragment(p)?;
                    self.edges.push((s, None, ps));
                    self.edges.push((pe, None, e));
                }
                (s, e)
            }
            RegexAst::Star(inner) => {
                let (s, e) = (self.fresh(), self.fresh());
                let (cs, ce) = self.fragment(inner)?;
                self.edges
                    .extend([(s, None, cs), (ce, None, e), (s, None, e), (ce, None, cs)]);
                (s, e)
            }
        })
    }
}
