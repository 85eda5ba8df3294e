//! Exact automata for left- and right-linear grammars.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fsa::{Automaton, Builder, StateId};
use crate::grammar::{terminal_alphabet, GSymbol, Grammar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linearity {
    /// Every production is `X -> w` or `X -> w Y` with `w` terminal.
    Right,
    /// Every production is `X -> w` or `X -> Y w`.
    Left,
}

impl Linearity {
    /// Right-linear wins when a grammar is both.
    pub fn of(g: &Grammar) -> Option<Linearity> {
        let nt_positions = |p: &crate::grammar::Production| {
            p.rhs
                .iter()
                .enumerate()
                .filter(|(_, s)| matches!(s, GSymbol::Nonterminal(_)))
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        };
        let right = g.productions().iter().all(|p| match nt_positions(p)[..] {
            [] => true,
            [i] => i + 1 == p.rhs.len(),
            _ => false,
        });
        if right {
            return Some(Linearity::Right);
        }
        let left = g.productions().iter().all(|p| match nt_positions(p)[..] {
            [] => true,
            [i] => i == 0,
            _ => false,
        });
        left.then_some(Linearity::Left)
    }
}

/// Automaton over the grammar's terminals accepting exactly `L(g)`.
pub fn linear_to_fsa(g: &Grammar) -> Result<Automaton> {
    let al = Arc::new(terminal_alphabet(g));
    match Linearity::of(g).ok_or(Error::NotLinear)? {
        Linearity::Right => Ok(right_linear(g, al, false).minimize()),
        Linearity::Left => Ok(right_linear(g, al, true).reverse().minimize()),
    }
}

/// One state per nonterminal plus an accepting sink; with `reversed`, the
/// right-hand sides are read backwards, giving the reversal of a
/// left-linear language.
fn right_linear(g: &Grammar, al: Arc<crate::alphabet::Alphabet>, reversed: bool) -> Automaton {
    let n = g.nonterminals().len();
    let mut b = Builder::new(al.clone());
    b.add_states(n + 1);
    let accept = n as StateId;
    b.set_final(accept, true);
    b.set_initial(g.start() as StateId);
    for p in g.productions() {
        let mut rhs = p.rhs.clone();
        if reversed {
            rhs.reverse();
        }
        let (word, target) = match rhs.last() {
            Some(&GSymbol::Nonterminal(y)) => (&rhs[..rhs.len() - 1], y as StateId),
            _ => (&rhs[..], accept),
        };
        let mut q = p.lhs as StateId;
        for (i, s) in word.iter().enumerate() {
            let GSymbol::Terminal(t) = *s else {
                unreachable!("linearity checked")
            };
            let sym = al.terminal(&g.terminals()[t]).unwrap();
            let d = if i + 1 == word.len() { target } else { b.add_state() };
            b.add_transition(q, sym, d);
            q = d;
        }
        if word.is_empty() {
            b.add_epsilon(q, target);
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{family_grammar, FamilyKind};

    fn strs(m: &Automaton, n: usize) -> Vec<String> {
        m.enumerate(n).iter().map(|w| m.alphabet().render_word(w)).collect()
    }

    #[test]
    fn a_star() {
        let g = Grammar::parse("S -> a S\nS ->\n").unwrap();
        let m = linear_to_fsa(&g).unwrap();
        assert_eq!(m.num_states(), 1);
        assert_eq!(strs(&m, 2), ["ε", "a", "a a"]);
    }

    #[test]
    fn left_linear_sigma_star() {
        let g = Grammar::parse("S -> S a | S b\nS ->\n").unwrap();
        assert_eq!(Linearity::of(&g), Some(Linearity::Left));
        let m = linear_to_fsa(&g).unwrap();
        assert!(m.equivalent(&Automaton::universal(m.alphabet().clone())).unwrap());
    }

    #[test]
    fn right_linear_family() {
        let g = family_grammar(FamilyKind::RightLinear, 2).unwrap();
        let m = linear_to_fsa(&g).unwrap();
        assert_eq!(m.num_states(), 1);
        assert!(m.equivalent(&Automaton::universal(m.alphabet().clone())).unwrap());
    }

    #[test]
    fn left_linear_word_order() {
        let g = Grammar::parse("S -> S a b | T\nT -> c\n").unwrap();
        let m = linear_to_fsa(&g).unwrap();
        assert_eq!(strs(&m, 5), ["c", "c a b", "c a b a b"]);
    }

    #[test]
    fn right_linear_chain() {
        let g = Grammar::parse("S -> a b T\nT -> c\n").unwrap();
        assert_eq!(strs(&linear_to_fsa(&g).unwrap(), 4), ["a b c"]);
    }

    #[test]
    fn rejects_self_embedding() {
        let g = Grammar::parse("S -> a S b\nS ->\n").unwrap();
        assert!(matches!(linear_to_fsa(&g), Err(Error::NotLinear)));
        let mixed = Grammar::parse("S -> a S | T b\nT -> c\n").unwrap();
        assert!(matches!(linear_to_fsa(&mixed), Err(Error::NotLinear)));
    }
}
