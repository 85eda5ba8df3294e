//! A small finite-state calculus over interned alphabets.
//!
//! Every operation is a pure function returning a new [`Automaton`]. The
//! boolean and rational operations return the canonical form: the minimal
//! partial DFA (no dead sink stored) with states numbered breadth-first from
//! the initial state, visiting transitions in symbol order. Two canonical
//! automata over the same alphabet accept the same language iff they are
//! structurally identical.

mod determinize;
mod io;
mod minimize;
mod ops;

use std::sync::Arc;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

pub use ops::Image;

pub type StateId = u32;

#[derive(Debug, Clone)]
pub struct Automaton {
    alphabet: Arc<Alphabet>,
    initial: StateId,
    finals: Vec<bool>,
    /// Per state, sorted and deduplicated.
    trans: Vec<Vec<(Symbol, StateId)>>,
    eps: Vec<Vec<StateId>>,
    canonical: bool,
}

/// Incremental construction of a (possibly nondeterministic) automaton.
#[derive(Debug, Clone)]
pub struct Builder {
    alphabet: Arc<Alphabet>,
    initial: StateId,
    finals: Vec<bool>,
    trans: Vec<Vec<(Symbol, StateId)>>,
    eps: Vec<Vec<StateId>>,
}

impl Builder {
    pub fn new(alphabet: Arc<Alphabet>) -> Self {
        Builder {
            alphabet,
            initial: 0,
            finals: Vec::new(),
            trans: Vec::new(),
            eps: Vec::new(),
        }
    }

    pub fn add_state(&mut self) -> StateId {
        self.finals.push(false);
        self.trans.push(Vec::new());
        self.eps.push(Vec::new());
        (self.finals.len() - 1) as StateId
    }

    pub fn add_states(&mut self, n: usize) -> StateId {
        let first = self.finals.len() as StateId;
        for _ in 0..n {
            self.add_state();
        }
        first
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial = q;
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q as usize] = is_final;
    }

    pub fn add_transition(&mut self, src: StateId, sym: Symbol, dst: StateId) {
        debug_assert!(sym.index() < self.alphabet.len());
        self.trans[src as usize].push((sym, dst));
    }

    pub fn add_epsilon(&mut self, src: StateId, dst: StateId) {
        if src != dst {
            self.eps[src as usize].push(dst);
        }
    }

    /// Copies `other` into this builder and returns the offset of its states.
    pub(crate) fn embed(&mut self, other: &Automaton) -> StateId {
        let off = self.add_states(other.num_states());
        for q in 0..other.num_states() {
            let nq = off as usize + q;
            self.finals[nq] = other.finals[q];
            self.trans[nq].extend(other.trans[q].iter().map(|&(s, d)| (s, d + off)));
            self.eps[nq].extend(other.eps[q].iter().map(|&d| d + off));
        }
        off
    }

    pub fn build(mut self) -> Automaton {
        if self.finals.is_empty() {
            self.add_state();
        }
        for t in &mut self.trans {
            t.sort_unstable();
            t.dedup();
        }
        for e in &mut self.eps {
            e.sort_unstable();
            e.dedup();
        }
        Automaton {
            alphabet: self.alphabet,
            initial: self.initial,
            finals: self.finals,
            trans: self.trans,
            eps: self.eps,
            canonical: false,
        }
    }
}

impl Automaton {
    pub fn builder(alphabet: Arc<Alphabet>) -> Builder {
        Builder::new(alphabet)
    }

    /// The empty language. Its canonical form is a single non-accepting state.
    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        let mut b = Builder::new(alphabet);
        b.add_state();
        b.build().mark_canonical()
    }

    /// `{ε}`.
    pub fn epsilon(alphabet: Arc<Alphabet>) -> Self {
        let mut b = Builder::new(alphabet);
        let q = b.add_state();
        b.set_final(q, true);
        b.build().mark_canonical()
    }

    /// `Σ*`.
    pub fn universal(alphabet: Arc<Alphabet>) -> Self {
        let mut b = Builder::new(alphabet.clone());
        let q = b.add_state();
        b.set_final(q, true);
        for s in alphabet.symbols() {
            b.add_transition(q, s, q);
        }
        b.build().mark_canonical()
    }

    /// The language of one-symbol strings drawn from `symbols`.
    pub fn symbols(alphabet: Arc<Alphabet>, symbols: &[Symbol]) -> Self {
        if symbols.is_empty() {
            return Automaton::empty(alphabet);
        }
        let mut b = Builder::new(alphabet);
        let q0 = b.add_state();
        let q1 = b.add_state();
        b.set_final(q1, true);
        for &s in symbols {
            b.add_transition(q0, s, q1);
        }
        b.build().mark_canonical()
    }

    /// The single-string language `{word}`.
    pub fn word(alphabet: Arc<Alphabet>, word: &[Symbol]) -> Self {
        let mut b = Builder::new(alphabet);
        let mut q = b.add_state();
        for &s in word {
            let n = b.add_state();
            b.add_transition(q, s, n);
            q = n;
        }
        b.set_final(q, true);
        b.build().minimize()
    }

    /// A finite language.
    pub fn words<'a, I>(alphabet: Arc<Alphabet>, words: I) -> Self
    where
        I: IntoIterator<Item = &'a [Symbol]>,
    {
        let mut b = Builder::new(alphabet);
        let root = b.add_state();
        for w in words {
            let mut q = b.add_state();
            b.add_epsilon(root, q);
            for &s in w {
                let n = b.add_state();
                b.add_transition(q, s, n);
                q = n;
            }
            b.set_final(q, true);
        }
        b.build().minimize()
    }

    pub(crate) fn mark_canonical(mut self) -> Self {
        self.canonical = true;
        self
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Number of stored states. For canonical automata this is the size of
    /// the minimal partial DFA.
    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q as usize]
    }

    pub fn final_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(q, _)| q as StateId)
    }

    pub fn transitions(&self, q: StateId) -> &[(Symbol, StateId)] {
        &self.trans[q as usize]
    }

    pub fn epsilons(&self, q: StateId) -> &[StateId] {
        &self.eps[q as usize]
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum::<usize>() + self.eps.iter().map(Vec::len).sum::<usize>()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_deterministic(&self) -> bool {
        self.eps.iter().all(Vec::is_empty)
            && self
                .trans
                .iter()
                .all(|t| t.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// Successor in a deterministic automaton.
    pub fn step(&self, q: StateId, s: Symbol) -> Option<StateId> {
        let t = &self.trans[q as usize];
        t.binary_search_by(|&(x, _)| x.cmp(&s)).ok().map(|i| t[i].1)
    }

    pub(crate) fn check_same_alphabet(&self, other: &Automaton) -> Result<()> {
        if Alphabet::compatible(&self.alphabet, &other.alphabet) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    fn check_word(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|s| s.index() >= self.alphabet.len()) {
            Some(s) => Err(Error::UnknownSymbol(format!("#{}", s.0))),
            None => Ok(()),
        }
    }

    /// Membership test. Works on nondeterministic automata too.
    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        self.check_word(word)?;
        if self.is_deterministic() {
            let mut q = self.initial;
            for &s in word {
                match self.step(q, s) {
                    Some(n) => q = n,
                    None => return Ok(false),
                }
            }
            return Ok(self.is_final(q));
        }
        let mut current = vec![self.initial];
        self.close(&mut current);
        for &s in word {
            let mut next: Vec<StateId> = current
                .iter()
                .flat_map(|&q| {
                    self.trans[q as usize]
                        .iter()
                        .filter(move |&&(x, _)| x == s)
                        .map(|&(_, d)| d)
                })
                .collect();
            self.close(&mut next);
            if next.is_empty() {
                return Ok(false);
            }
            current = next;
        }
        Ok(current.iter().any(|&q| self.is_final(q)))
    }

    /// Membership test for a whitespace-separated token string.
    pub fn accepts_text(&self, text: &str) -> Result<bool> {
        let w = self.alphabet.parse_word(text)?;
        self.accepts(&w)
    }

    /// Replaces `set` by its epsilon closure, sorted and deduplicated.
    pub(crate) fn close(&self, set: &mut Vec<StateId>) {
        let mut stack = set.clone();
        set.sort_unstable();
        set.dedup();
        let mut seen: std::collections::HashSet<StateId> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &d in &self.eps[q as usize] {
                if seen.insert(d) {
                    set.push(d);
                    stack.push(d);
                }
            }
        }
        set.sort_unstable();
    }

    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial as usize] = true;
        while let Some(q) = stack.pop() {
            if self.is_final(q) {
                return false;
            }
            let succ = self.trans[q as usize]
                .iter()
                .map(|&(_, d)| d)
                .chain(self.eps[q as usize].iter().copied());
            for d in succ {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    stack.push(d);
                }
            }
        }
        true
    }

    /// Returns the canonical form, cloning when already canonical.
    pub fn canonical(&self) -> Automaton {
        if self.canonical {
            self.clone()
        } else {
            self.minimize()
        }
    }

    /// All accepted strings of length at most `max_len`, ordered by length
    /// and then lexicographically by symbol id.
    pub fn enumerate(&self, max_len: usize) -> Vec<Vec<Symbol>> {
        let dfa = self.canonical();
        let n = dfa.num_states();
        // live[k][q]: some accepted continuation of exactly k symbols from q
        let mut live = vec![dfa.finals.clone()];
        for k in 1..=max_len {
            let prev = &live[k - 1];
            let row = (0..n)
                .map(|q| dfa.trans[q].iter().any(|&(_, d)| prev[d as usize]))
                .collect();
            live.push(row);
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        for len in 0..=max_len {
            dfa.collect_exact(dfa.initial, len, &live, &mut prefix, &mut out);
        }
        out
    }

    fn collect_exact(
        &self,
        q: StateId,
        remaining: usize,
        live: &[Vec<bool>],
        prefix: &mut Vec<Symbol>,
        out: &mut Vec<Vec<Symbol>>,
    ) {
        if !live[remaining][q as usize] {
            return;
        }
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for &(s, d) in &self.trans[q as usize] {
            prefix.push(s);
            self.collect_exact(d, remaining - 1, live, prefix, out);
            prefix.pop();
        }
    }

    /// Language equality.
    pub fn equivalent(&self, other: &Automaton) -> Result<bool> {
        self.check_same_alphabet(other)?;
        Ok(self.canonical().same_structure(&other.canonical()))
    }

    /// `L(self) ⊆ L(other)`.
    pub fn subset_of(&self, other: &Automaton) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Structural identity of two canonical automata, i.e. isomorphism.
    pub fn same_structure(&self, other: &Automaton) -> bool {
        self.initial == other.initial
            && self.finals == other.finals
            && self.trans == other.trans
            && self.eps == other.eps
    }

    /// Reassigns the automaton to an equal alphabet held by another `Arc`.
    pub fn with_alphabet(mut self, alphabet: Arc<Alphabet>) -> Result<Self> {
        if *alphabet != *self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        self.alphabet = alphabet;
        Ok(self)
    }
}
