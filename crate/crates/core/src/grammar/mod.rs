//! Context-free grammars, their text format and the dotted-rule alphabet.
//!
//! Grammar file format: one production per line, `LHS -> sym sym ...`.
//! `LHS ->` with nothing after the arrow is an epsilon-rule, `|` separates
//! alternatives on one line and `#` starts a comment. Symbols that occur as
//! a left-hand side are nonterminals; every other symbol is a terminal. The
//! first left-hand side is the start symbol.

pub(crate) mod dotted;
mod scc;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use dotted::{build_alphabet, next_lang, prev_lang, terminal_alphabet};
pub use scc::{compose_approximations, scc_decompose, SubgrammarPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GSymbol {
    Terminal(usize),
    Nonterminal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<GSymbol>,
}

impl Production {
    pub fn is_epsilon(&self) -> bool {
        self.rhs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    start: usize,
    productions: Vec<Production>,
    /// Production indices per nonterminal; position `m-1` holds production m.
    by_lhs: Vec<Vec<usize>>,
}

/// A production given by symbol names.
pub type Rule = (String, Vec<String>);

impl Grammar {
    pub fn parse(text: &str) -> Result<Grammar> {
        let mut rules: Vec<Rule> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| Error::Syntax { line, message };
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if tokens.len() < 2 || tokens[1] != "->" {
                return Err(err("expected `LHS -> ...`".into()));
            }
            let lhs = tokens[0];
            if lhs == "|" || lhs.contains("->") {
                return Err(err(format!("`{lhs}` cannot be a left-hand side")));
            }
            let mut alt: Vec<String> = Vec::new();
            for &tok in &tokens[2..] {
                if tok == "|" {
                    rules.push((lhs.to_string(), std::mem::take(&mut alt)));
                } else if tok.contains("->") || tok.contains('|') {
                    return Err(err(format!("unexpected `{tok}` in right-hand side")));
                } else {
                    alt.push(tok.to_string());
                }
            }
            rules.push((lhs.to_string(), alt));
        }
        Grammar::from_rules(rules)
    }

    /// Builds a grammar from named productions in order.
    pub fn from_rules<I>(rules: I) -> Result<Grammar>
    where
        I: IntoIterator<Item = Rule>,
    {
        let rules: Vec<Rule> = rules.into_iter().collect();
        if rules.is_empty() {
            return Err(Error::EmptyGrammar);
        }
        let mut nt_index: HashMap<&str, usize> = HashMap::new();
        let mut nonterminals = Vec::new();
        for (lhs, _) in &rules {
            if !nt_index.contains_key(lhs.as_str()) {
                nt_index.insert(lhs, nonterminals.len());
                nonterminals.push(lhs.clone());
            }
        }
        let mut t_index: HashMap<&str, usize> = HashMap::new();
        let mut terminals = Vec::new();
        let mut productions = Vec::new();
        let mut by_lhs = vec![Vec::new(); nonterminals.len()];
        for (lhs, rhs) in &rules {
            let lhs = nt_index[lhs.as_str()];
            let rhs = rhs
                .iter()
                .map(|s| match nt_index.get(s.as_str()) {
                    Some(&n) => GSymbol::Nonterminal(n),
                    None => {
                        let t = *t_index.entry(s).or_insert_with(|| {
                            terminals.push(s.clone());
                            terminals.len() - 1
                        });
                        GSymbol::Terminal(t)
                    }
                })
                .collect();
            by_lhs[lhs].push(productions.len());
            productions.push(Production { lhs, rhs });
        }
        Ok(Grammar {
            nonterminals,
            terminals,
            start: 0,
            productions,
            by_lhs,
        })
    }

    pub fn with_start(mut self, name: &str) -> Result<Grammar> {
        self.start = self
            .nonterminal_id(name)
            .ok_or_else(|| Error::UnknownNonterminal(name.to_string()))?;
        Ok(self)
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn start_name(&self) -> &str {
        &self.nonterminals[self.start]
    }

    pub fn nonterminal_id(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    pub fn terminal_id(&self, name: &str) -> Option<usize> {
        self.terminals.iter().position(|n| n == name)
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    /// `m_X`.
    pub fn num_productions_of(&self, x: usize) -> usize {
        self.by_lhs[x].len()
    }

    /// Productions of `x` paired with their 1-based index m.
    pub fn productions_of(&self, x: usize) -> impl Iterator<Item = (u32, &Production)> + '_ {
        self.by_lhs[x]
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u32 + 1, &self.productions[p]))
    }

    /// Production m (1-based) of `x`.
    pub fn production(&self, x: usize, m: u32) -> Option<&Production> {
        let i = (m as usize).checked_sub(1)?;
        self.by_lhs.get(x)?.get(i).map(|&p| &self.productions[p])
    }

    /// `(X, m)` of the production with the given global index.
    pub fn production_ref(&self, index: usize) -> (usize, u32) {
        let lhs = self.productions[index].lhs;
        let m = self.by_lhs[lhs].iter().position(|&p| p == index).unwrap();
        (lhs, m as u32 + 1)
    }

    pub fn symbol_name(&self, s: GSymbol) -> &str {
        match s {
            GSymbol::Terminal(t) => &self.terminals[t],
            GSymbol::Nonterminal(n) => &self.nonterminals[n],
        }
    }

    /// Named productions in order, suitable for [`Grammar::from_rules`].
    pub fn rules(&self) -> Vec<Rule> {
        self.productions
            .iter()
            .map(|p| {
                (
                    self.nonterminals[p.lhs].clone(),
                    p.rhs.iter().map(|&s| self.symbol_name(s).to_string()).collect(),
                )
            })
            .collect()
    }

    /// Whether a terminal string is over this grammar's terminals.
    pub fn parse_terminals(&self, text: &str) -> Result<Vec<usize>> {
        text.split_whitespace()
            .map(|t| self.terminal_id(t).ok_or_else(|| Error::UnknownSymbol(t.to_string())))
            .collect()
    }

    pub fn render_terminals(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.iter()
            .map(|&t| self.terminals[t].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lhs, rhs) in self.rules() {
            if rhs.is_empty() {
                writeln!(f, "{lhs} ->")?;
            } else {
                writeln!(f, "{lhs} -> {}", rhs.join(" "))?;
            }
        }
        Ok(())
    }
}
