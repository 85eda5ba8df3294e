//! Shared generators and reference checks for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use fsa_approx::fsa::{Builder, StateId};
use fsa_approx::grammar::{GSymbol, Rule};
use fsa_approx::{Alphabet, Automaton, Grammar, Symbol};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

const NONTERMINALS: [&str; 4] = ["S", "A", "B", "C"];
const TERMINALS: [&str; 3] = ["a", "b", "c"];

/// A random grammar with at most 4 nonterminals, at most 8 productions and
/// right-hand sides of length at most 3; epsilon-rules allowed. Every
/// nonterminal has at least one production.
pub fn random_grammar(rng: &mut impl Rng) -> Grammar {
    let k = rng.gen_range(1..=4);
    let total = rng.gen_range(k..=8);
    let mut rules: Vec<Rule> = Vec::new();
    for i in 0..total {
        let lhs = if i < k { i } else { rng.gen_range(0..k) };
        let len = rng.gen_range(0..=3);
        let rhs = (0..len)
            .map(|_| {
                if rng.gen_bool(0.45) {
                    NONTERMINALS[rng.gen_range(0..k)].to_string()
                } else {
                    TERMINALS[rng.gen_range(0..TERMINALS.len())].to_string()
                }
            })
            .collect();
        rules.push((NONTERMINALS[lhs].to_string(), rhs));
    }
    // keep productions of S first so S stays the start symbol, then shuffle
    // the rest for variety in rule order
    let (s_rules, mut rest): (Vec<Rule>, Vec<Rule>) = rules.into_iter().partition(|(l, _)| l == "S");
    rest.shuffle(rng);
    Grammar::from_rules(s_rules.into_iter().chain(rest)).unwrap()
}

/// A random NFA with epsilon moves.
pub fn random_nfa(rng: &mut impl Rng, alphabet: &Arc<Alphabet>, max_states: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let mut b = Builder::new(alphabet.clone());
    b.add_states(n);
    b.set_initial(rng.gen_range(0..n) as StateId);
    for q in 0..n {
        b.set_final(q as StateId, rng.gen_bool(0.3));
    }
    let edges = rng.gen_range(0..=2 * n + 2);
    for _ in 0..edges {
        let src = rng.gen_range(0..n) as StateId;
        let dst = rng.gen_range(0..n) as StateId;
        if rng.gen_bool(0.1) {
            b.add_epsilon(src, dst);
        } else {
            let s = Symbol(rng.gen_range(0..alphabet.len()) as u32);
            b.add_transition(src, s, dst);
        }
    }
    b.build()
}

/// Backtracking acceptance straight from the transition lists; no subset
/// construction involved.
pub fn brute_accepts(m: &Automaton, word: &[Symbol]) -> bool {
    fn go(m: &Automaton, q: StateId, word: &[Symbol], seen: &mut HashSet<(StateId, usize)>) -> bool {
        if !seen.insert((q, word.len())) {
            return false;
        }
        if word.is_empty() && m.is_final(q) {
            return true;
        }
        for &d in m.epsilons(q) {
            if go(m, d, word, seen) {
                return true;
            }
        }
        if let Some((&s, rest)) = word.split_first() {
            for &(t, d) in m.transitions(q) {
                if t == s && go(m, d, rest, seen) {
                    return true;
                }
            }
        }
        false
    }
    go(m, m.initial(), word, &mut HashSet::new())
}

/// Every word over `k` symbols with length at most `max_len`.
pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Symbol>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..k {
                let mut v = w.clone();
                v.push(Symbol(s as u32));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Minimum derivation height per nonterminal; `None` when unproductive.
fn heights(g: &Grammar) -> Vec<Option<usize>> {
    let mut h: Vec<Option<usize>> = vec![None; g.nonterminals().len()];
    loop {
        let mut changed = false;
        for p in g.productions() {
            let mut max = 0;
            let mut ok = true;
            for s in &p.rhs {
                if let GSymbol::Nonterminal(y) = *s {
                    match h[y] {
                        Some(v) => max = max.max(v),
                        None => ok = false,
                    }
                }
            }
            if ok && h[p.lhs].is_none_or(|v| max + 1 < v) {
                h[p.lhs] = Some(max + 1);
                changed = true;
            }
        }
        if !changed {
            return h;
        }
    }
}

/// A random parse tree of the start symbol, returned as its terminal yield
/// and its traversal string: every node for production m of X contributes
/// `<X,m,0> t1 <X,m,1> t2 ... <X,m,z>`, where `ti` are the daughters'
/// traversals and an epsilon-rule contributes `<X,m,0> <X,m,z>`.
pub fn random_traversal(g: &Grammar, rng: &mut impl Rng, depth: usize) -> Option<(Vec<usize>, Vec<String>)> {
    let h = heights(g);
    let start = g.start();
    if h[start].is_none_or(|v| v > depth) {
        return None;
    }
    let mut yield_ = Vec::new();
    let mut tokens = Vec::new();
    expand(g, &h, rng, start, depth, &mut yield_, &mut tokens);
    Some((yield_, tokens))
}

fn expand(
    g: &Grammar,
    h: &[Option<usize>],
    rng: &mut impl Rng,
    x: usize,
    depth: usize,
    yield_: &mut Vec<usize>,
    tokens: &mut Vec<String>,
) {
    let fits = |rhs: &[GSymbol]| {
        rhs.iter().all(|s| match *s {
            GSymbol::Nonterminal(y) => h[y].is_some_and(|v| v < depth),
            GSymbol::Terminal(_) => true,
        })
    };
    let options: Vec<(u32, Vec<GSymbol>)> = g
        .productions_of(x)
        .filter(|(_, p)| fits(&p.rhs))
        .map(|(m, p)| (m, p.rhs.clone()))
        .collect();
    let (m, rhs) = options.choose(rng).expect("height bound guarantees a choice").clone();
    let name = &g.nonterminals()[x];
    tokens.push(format!("<{name},{m},0>"));
    for (i, s) in rhs.iter().enumerate() {
        if i > 0 {
            tokens.push(format!("<{name},{m},{i}>"));
        }
        match *s {
            GSymbol::Terminal(t) => {
                yield_.push(t);
                tokens.push(g.terminals()[t].clone());
            }
            GSymbol::Nonterminal(y) => expand(g, h, rng, y, depth - 1, yield_, tokens),
        }
    }
    tokens.push(format!("<{name},{m},z>"));
}
