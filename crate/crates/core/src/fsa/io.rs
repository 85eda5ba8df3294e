//! Tab (line-oriented transition table) and DOT renderings.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use super::{Automaton, Builder, StateId};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

impl Automaton {
    /// Tab format of the canonical form:
    ///
    /// ```text
    /// initial 0
    /// final 2
    /// trans 0 1 a
    /// ```
    ///
    /// `final` lines ascend by state; `trans` lines are sorted by
    /// (src, dst, symbol text).
    pub fn to_tab(&self) -> String {
        let m = self.canonical();
        let mut out = String::new();
        writeln!(out, "initial {}", m.initial).unwrap();
        for q in m.final_states() {
            writeln!(out, "final {q}").unwrap();
        }
        let mut lines: Vec<(StateId, StateId, String)> = Vec::new();
        for q in 0..m.num_states() as StateId {
            for &(s, d) in m.transitions(q) {
                lines.push((q, d, m.alphabet.name(s)));
            }
        }
        lines.sort();
        for (src, dst, sym) in lines {
            writeln!(out, "trans {src} {dst} {sym}").unwrap();
        }
        out
    }

    /// Reads the tab format, inferring the alphabet from the symbols used.
    pub fn from_tab(text: &str) -> Result<Automaton> {
        let rows = parse_rows(text)?;
        let tokens: BTreeSet<&str> = rows.trans.iter().map(|(_, _, s, _)| *s).collect();
        let alphabet = Arc::new(Alphabet::from_tokens(tokens)?);
        rows.build(alphabet)
    }

    /// Reads the tab format over a given alphabet.
    pub fn from_tab_with(text: &str, alphabet: Arc<Alphabet>) -> Result<Automaton> {
        parse_rows(text)?.build(alphabet)
    }

    /// Symbol tokens used by a tab file, in first-seen order.
    pub fn tab_tokens(text: &str) -> Result<Vec<String>> {
        let rows = parse_rows(text)?;
        let mut seen = BTreeSet::new();
        Ok(rows
            .trans
            .iter()
            .filter(|(_, _, s, _)| seen.insert(*s))
            .map(|(_, _, s, _)| s.to_string())
            .collect())
    }

    /// Graphviz rendering; parallel edges are merged into one label.
    pub fn to_dot(&self) -> String {
        let m = self.canonical();
        let mut out = String::from("digraph fsa {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  start [shape=point];\n");
        for q in 0..m.num_states() as StateId {
            let shape = if m.is_final(q) { "doublecircle" } else { "circle" };
            writeln!(out, "  {q} [shape={shape}];").unwrap();
        }
        writeln!(out, "  start -> {};", m.initial).unwrap();
        for q in 0..m.num_states() as StateId {
            let mut by_dst: Vec<(StateId, Vec<String>)> = Vec::new();
            for &(s, d) in m.transitions(q) {
                match by_dst.iter_mut().find(|(x, _)| *x == d) {
                    Some((_, labels)) => labels.push(m.alphabet.name(s)),
                    None => by_dst.push((d, vec![m.alphabet.name(s)])),
                }
            }
            for (d, labels) in by_dst {
                let label = labels.join(",").replace('"', "\\\"");
                writeln!(out, "  {q} -> {d} [label=\"{label}\"];").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

struct Rows<'a> {
    initial: StateId,
    finals: Vec<StateId>,
    trans: Vec<(StateId, StateId, &'a str, usize)>,
    max_state: StateId,
}

impl Rows<'_> {
    fn build(self, alphabet: Arc<Alphabet>) -> Result<Automaton> {
        let mut b = Builder::new(alphabet.clone());
        b.add_states(self.max_state as usize + 1);
        b.set_initial(self.initial);
        for q in self.finals {
            b.set_final(q, true);
        }
        for (src, dst, sym, line) in self.trans {
            let s = alphabet.resolve(sym).map_err(|_| Error::Syntax {
                line,
                message: format!("symbol `{sym}` is not in the alphabet"),
            })?;
            b.add_transition(src, s, dst);
        }
        Ok(b.build())
    }
}

fn parse_rows(text: &str) -> Result<Rows<'_>> {
    let mut initial = None;
    let mut finals = Vec::new();
    let mut trans = Vec::new();
    let mut max_state = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| Error::Syntax { line, message };
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let state = |tok: &str| -> Result<StateId> {
            tok.parse()
                .map_err(|_| err(format!("`{tok}` is not a state id")))
        };
        match fields.as_slice() {
            [] => continue,
            ["initial", q] => {
                if initial.is_some() {
                    return Err(err("duplicate initial line".into()));
                }
                let q = state(q)?;
                max_state = max_state.max(q);
                initial = Some(q);
            }
            ["final", q] => {
                let q = state(q)?;
                max_state = max_state.max(q);
                finals.push(q);
            }
            ["trans", src, dst, sym] => {
                let (src, dst) = (state(src)?, state(dst)?);
                max_state = max_state.max(src).max(dst);
                trans.push((src, dst, *sym, line));
            }
            _ => return Err(err(format!("unrecognized line `{raw}`"))),
        }
    }
    let initial = initial.ok_or(Error::Syntax {
        line: 1,
        message: "missing initial line".into(),
    })?;
    Ok(Rows {
        initial,
        finals,
        trans,
        max_state,
    })
}
