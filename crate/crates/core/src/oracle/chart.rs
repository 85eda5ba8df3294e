//! Earley recognition with the Aycock–Horspool treatment of nullable
//! nonterminals, so epsilon-rules and left recursion need no grammar
//! transformation.

use std::collections::HashSet;

use crate::error::Result;
use crate::grammar::{GSymbol, Grammar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Item {
    prod: usize,
    dot: usize,
    origin: usize,
}

#[derive(Debug, Clone)]
pub struct ChartRecognizer<'g> {
    grammar: &'g Grammar,
    nullable: Vec<bool>,
    /// Production indices per nonterminal.
    by_lhs: Vec<Vec<usize>>,
}

impl<'g> ChartRecognizer<'g> {
    pub fn new(grammar: &'g Grammar) -> Self {
        let n = grammar.nonterminals().len();
        let mut by_lhs = vec![Vec::new(); n];
        for (i, p) in grammar.productions().iter().enumerate() {
            by_lhs[p.lhs].push(i);
        }
        ChartRecognizer {
            grammar,
            nullable: nullable(grammar),
            by_lhs,
        }
    }

    pub fn grammar(&self) -> &'g Grammar {
        self.grammar
    }

    pub fn is_nullable(&self, x: usize) -> bool {
        self.nullable[x]
    }

    /// Membership of a string of terminal ids.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let prods = self.grammar.productions();
        let mut sets: Vec<Vec<Item>> = vec![Vec::new(); word.len() + 1];
        let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); word.len() + 1];
        let add = |sets: &mut Vec<Vec<Item>>, seen: &mut Vec<HashSet<Item>>, k: usize, it: Item| {
            if seen[k].insert(it) {
                sets[k].push(it);
            }
        };
        for &p in &self.by_lhs[self.grammar.start()] {
            add(&mut sets, &mut seen, 0, Item { prod: p, dot: 0, origin: 0 });
        }
        for k in 0..=word.len() {
            let mut i = 0;
            while i < sets[k].len() {
                let it = sets[k][i];
                i += 1;
                let rhs = &prods[it.prod].rhs;
                match rhs.get(it.dot) {
                    Some(&GSymbol::Nonterminal(y)) => {
                        for &p in &self.by_lhs[y] {
                            add(&mut sets, &mut seen, k, Item { prod: p, dot: 0, origin: k });
                        }
                        if self.nullable[y] {
                            add(&mut sets, &mut seen, k, Item { dot: it.dot + 1, ..it });
                        }
                    }
                    Some(&GSymbol::Terminal(t)) => {
                        if word.get(k) == Some(&t) {
                            add(&mut sets, &mut seen, k + 1, Item { dot: it.dot + 1, ..it });
                        }
                    }
                    None => {
                        let lhs = prods[it.prod].lhs;
                        let mut j = 0;
                        while j < sets[it.origin].len() {
                            let parent = sets[it.origin][j];
                            j += 1;
                            if prods[parent.prod].rhs.get(parent.dot) == Some(&GSymbol::Nonterminal(lhs)) {
                                add(&mut sets, &mut seen, k, Item { dot: parent.dot + 1, ..parent });
                            }
                        }
                    }
                }
            }
        }
        let start = self.grammar.start();
        sets[word.len()]
            .iter()
            .any(|it| it.origin == 0 && prods[it.prod].lhs == start && it.dot == prods[it.prod].rhs.len())
    }
}

fn nullable(g: &Grammar) -> Vec<bool> {
    let mut out = vec![false; g.nonterminals().len()];
    let mut changed = true;
    while changed {
        changed = false;
        for p in g.productions() {
            if out[p.lhs] {
                continue;
            }
            let all = p.rhs.iter().all(|s| match *s {
                GSymbol::Nonterminal(y) => out[y],
                GSymbol::Terminal(_) => false,
            });
            if all {
                out[p.lhs] = true;
                changed = true;
            }
        }
    }
    out
}

/// Whether the whitespace-separated terminal string `w` is in `L(g)`.
pub fn cfg_accepts(g: &Grammar, w: &str) -> Result<bool> {
    let word = g.parse_terminals(w)?;
    Ok(ChartRecognizer::new(g).accepts(&word))
}
