//! Soundness and exactness reports comparing an automaton with a grammar.

use std::collections::HashSet;
use std::fmt;

use crate::alphabet::{Symbol, SymbolKind};
use crate::error::Result;
use crate::fsa::Automaton;
use crate::grammar::Grammar;

use super::enumerate::cfg_enumerate;
use super::linear::linear_to_fsa;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    /// Number of strings examined.
    pub checked: usize,
    /// Grammar strings the automaton rejects.
    pub violations: Vec<String>,
    /// Automaton strings outside the grammar (exactness checks only).
    pub extra: Vec<String>,
    /// Result of a full language comparison, when one was made.
    pub equivalent: Option<bool>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.extra.is_empty() && self.equivalent != Some(false)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "VIOLATION {v}")?;
        }
        for v in &self.extra {
            writeln!(f, "EXTRA {v}")?;
        }
        match self.equivalent {
            Some(true) => writeln!(f, "EQUIVALENT")?,
            Some(false) => writeln!(f, "NOT-EQUIVALENT")?,
            None => {}
        }
        let verdict = if self.passed() { "OK" } else { "FAIL" };
        writeln!(f, "{verdict} {} strings checked", self.checked)
    }
}

/// Translates grammar terminal ids into the automaton's symbols; `None` when
/// some terminal is missing from its alphabet.
fn to_symbols(g: &Grammar, m: &Automaton, word: &[usize]) -> Option<Vec<Symbol>> {
    word.iter()
        .map(|&t| m.alphabet().terminal(&g.terminals()[t]))
        .collect()
}

fn to_terminals(g: &Grammar, m: &Automaton, word: &[Symbol]) -> Option<Vec<usize>> {
    word.iter()
        .map(|&s| match m.alphabet().kind(s) {
            SymbolKind::Terminal(name) => g.terminal_id(name),
            SymbolKind::Dotted { .. } => None,
        })
        .collect()
}

/// Every string of `L(g)` up to `max_len` must be accepted.
pub fn check_soundness(g: &Grammar, approx: &Automaton, max_len: usize) -> Result<Report> {
    let words = cfg_enumerate(g, max_len)?;
    let mut report = Report {
        checked: words.len(),
        ..Default::default()
    };
    for w in &words {
        let ok = match to_symbols(g, approx, w) {
            Some(syms) => approx.accepts(&syms)?,
            None => false,
        };
        if !ok {
            report.violations.push(g.render_terminals(w));
        }
    }
    Ok(report)
}

/// Bounded two-way comparison up to `max_len`; with `full`, also compares
/// against the exact automaton of a linear grammar, failing with
/// `NotLinear` otherwise.
pub fn check_exactness(
    g: &Grammar,
    approx: &Automaton,
    max_len: usize,
    full: bool,
) -> Result<Report> {
    let mut report = check_soundness(g, approx, max_len)?;
    let in_grammar: HashSet<Vec<usize>> = cfg_enumerate(g, max_len)?.into_iter().collect();
    for w in approx.enumerate(max_len) {
        report.checked += 1;
        let inside = to_terminals(g, approx, &w).is_some_and(|t| in_grammar.contains(&t));
        if !inside {
            report.extra.push(approx.alphabet().render_word(&w));
        }
    }
    if full {
        let exact = linear_to_fsa(g)?;
        let (a, b) = exact.lift_pair(approx)?;
        report.equivalent = Some(a.equivalent(&b)?);
    }
    Ok(report)
}
