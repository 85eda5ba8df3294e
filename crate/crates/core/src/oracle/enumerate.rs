//! Bounded enumeration of `L(G)`, by exhaustive membership testing and by
//! a length-bounded fixpoint over derivations.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::grammar::{GSymbol, Grammar};

use super::chart::ChartRecognizer;

pub const DEFAULT_MAX_LEN: usize = 8;
/// Membership tests, or strings held during derivation search.
pub const DEFAULT_BUDGET: usize = 1_000_000;

type Word = Vec<usize>;

fn length_lex(mut words: Vec<Word>) -> Vec<Word> {
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    words.dedup();
    words
}

/// All strings of `L(g)` up to `max_len`, in length-lexicographic order over
/// terminal ids. Uses derivation search, which stays cheap for large
/// terminal sets.
pub fn cfg_enumerate(g: &Grammar, max_len: usize) -> Result<Vec<Word>> {
    enumerate_by_derivation(g, max_len, DEFAULT_BUDGET)
}

/// Tests every string over `T` up to `max_len`.
pub fn enumerate_by_membership(g: &Grammar, max_len: usize, budget: usize) -> Result<Vec<Word>> {
    let t = g.terminals().len();
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(t);
        if t == 0 {
            break;
        }
    }
    if total > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let rec = ChartRecognizer::new(g);
    let mut out = Vec::new();
    let mut word: Word = Vec::new();
    for len in 0..=max_len {
        if len > 0 && t == 0 {
            break;
        }
        word.clear();
        word.resize(len, 0);
        loop {
            if rec.accepts(&word) {
                out.push(word.clone());
            }
            // odometer increment, last position fastest
            let mut carry = true;
            let mut i = len;
            while carry && i > 0 {
                i -= 1;
                word[i] += 1;
                if word[i] == t {
                    word[i] = 0;
                } else {
                    carry = false;
                }
            }
            if carry {
                break;
            }
        }
    }
    Ok(out)
}

/// Least fixpoint of the per-nonterminal string sets, truncated at
/// `max_len`.
pub fn enumerate_by_derivation(g: &Grammar, max_len: usize, budget: usize) -> Result<Vec<Word>> {
    let n = g.nonterminals().len();
    let mut sets: Vec<HashSet<Word>> = vec![HashSet::new(); n];
    let mut held = 0usize;
    let mut changed = true;
    while changed {
        changed = false;
        for p in g.productions() {
            let mut partial: BTreeSet<Word> = BTreeSet::from([Vec::new()]);
            for &s in &p.rhs {
                let mut next = BTreeSet::new();
                for prefix in &partial {
                    match s {
                        GSymbol::Terminal(t) => {
                            if prefix.len() < max_len {
                                let mut w = prefix.clone();
                                w.push(t);
                                next.insert(w);
                            }
                        }
                        GSymbol::Nonterminal(y) => {
                            for suffix in &sets[y] {
                                if prefix.len() + suffix.len() <= max_len {
                                    let mut w = prefix.clone();
                                    w.extend_from_slice(suffix);
                                    next.insert(w);
                                }
                            }
                        }
                    }
                }
                if next.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                partial = next;
            }
            for w in partial {
                if sets[p.lhs].insert(w) {
                    changed = true;
                    held += 1;
                    if held > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                }
            }
        }
    }
    Ok(length_lex(std::mem::take(&mut sets[g.start()]).into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{family_grammar, FamilyKind};

    fn render(g: &Grammar, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| g.render_terminals(w)).collect()
    }

    #[test]
    fn anbn_to_four() {
        let g = Grammar::parse("S -> a S b\nS ->\n").unwrap();
        let ws = cfg_enumerate(&g, 4).unwrap();
        assert_eq!(render(&g, &ws), ["ε", "a b", "a a b b"]);
        assert_eq!(enumerate_by_membership(&g, 4, DEFAULT_BUDGET).unwrap(), ws);
    }

    #[test]
    fn empty_constituent_grammar() {
        let g = Grammar::parse("S -> a X a | b X b\nX ->\n").unwrap();
        assert_eq!(render(&g, &cfg_enumerate(&g, 2).unwrap()), ["a a", "b b"]);
    }

    #[test]
    fn palindromes() {
        let g = family_grammar(FamilyKind::Palindrome, 2).unwrap();
        assert_eq!(render(&g, &cfg_enumerate(&g, 2).unwrap()), ["ε", "a1 a1", "a2 a2"]);
    }

    #[test]
    fn methods_agree_on_mixed_grammar() {
        let g = Grammar::parse(include_str!("../../tests/fixtures/phrases.cfg"))
            .unwrap()
            .with_start("S")
            .unwrap();
        let a = enumerate_by_derivation(&g, 5, DEFAULT_BUDGET).unwrap();
        let b = enumerate_by_membership(&g, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn budget() {
        let g = family_grammar(FamilyKind::RightLinear, 6).unwrap();
        assert!(matches!(
            enumerate_by_membership(&g, 8, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(enumerate_by_derivation(&g, 8, 100), Err(Error::BudgetExceeded(100))));
    }

    #[test]
    fn no_terminals() {
        let g = Grammar::parse("S ->\n").unwrap();
        assert_eq!(enumerate_by_membership(&g, 3, 10).unwrap(), [Vec::<usize>::new()]);
        assert_eq!(cfg_enumerate(&g, 3).unwrap(), [Vec::<usize>::new()]);
    }
}
