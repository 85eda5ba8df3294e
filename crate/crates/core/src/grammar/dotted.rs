use crate::alphabet::{Alphabet, Position, SymbolKind, SymbolPattern, SymbolSet};
use crate::error::{Error, Result};
use crate::pattern::PatternExpr;

use super::{GSymbol, Grammar};

/// `Σ = T ∪ {<X,m,n>}`: terminals first, then the dotted rules of each
/// production in grammar order. A rule of length k contributes positions
/// `0..k-1` and `z`; an epsilon-rule contributes `0` and `z`.
pub fn build_alphabet(g: &Grammar) -> Alphabet {
    let mut a = Alphabet::from_terminals(g.terminals().iter().cloned());
    for name in g.nonterminals() {
        a.add_nonterminal(name);
    }
    for x in 0..g.nonterminals().len() {
        for (m, p) in g.productions_of(x) {
            let last = p.rhs.len().max(1) as u32;
            for n in 0..last {
                a.intern(SymbolKind::Dotted {
                    lhs: x as u32,
                    prod: m,
                    pos: Position::At(n),
                });
            }
            a.intern(SymbolKind::Dotted {
                lhs: x as u32,
                prod: m,
                pos: Position::End,
            });
        }
    }
    a
}

/// The terminal alphabet `T` in grammar order.
pub fn terminal_alphabet(g: &Grammar) -> Alphabet {
    Alphabet::from_terminals(g.terminals().iter().cloned())
}

/// Position value of the dot after `n` of `len` symbols.
pub(crate) fn dot_position(len: usize, n: usize) -> Position {
    if n == len && len > 0 {
        Position::End
    } else {
        Position::At(n as u32)
    }
}

fn rule_len(g: &Grammar, x: usize, m: u32, pos: &str) -> Result<usize> {
    let out_of_range = || Error::IndexOutOfRange {
        lhs: g.nonterminals().get(x).cloned().unwrap_or_else(|| format!("#{x}")),
        prod: m,
        pos: pos.to_string(),
    };
    if x >= g.nonterminals().len() {
        return Err(out_of_range());
    }
    let p = g.production(x, m).ok_or_else(out_of_range)?;
    if p.is_epsilon() {
        return Err(out_of_range());
    }
    Ok(p.rhs.len())
}

pub(crate) fn dotted_class(g: &Grammar, x: usize, m: u32, pos: Position) -> PatternExpr {
    PatternExpr::class(SymbolSet::dotted(&g.nonterminals()[x], m, pos))
}

fn starts_of(g: &Grammar, a: usize) -> PatternExpr {
    PatternExpr::class(SymbolSet::of(SymbolPattern::dotted(
        Some(&g.nonterminals()[a]),
        None,
        Some(Position::At(0)),
    )))
}

fn ends_of(g: &Grammar, a: usize) -> PatternExpr {
    PatternExpr::class(SymbolSet::of(SymbolPattern::dotted(
        Some(&g.nonterminals()[a]),
        None,
        Some(Position::End),
    )))
}

/// What must immediately follow the dot before the `n`th right-hand-side
/// symbol (1-based) of production m of `x`.
pub fn next_lang(g: &Grammar, x: usize, m: u32, n: usize) -> Result<PatternExpr> {
    let len = rule_len(g, x, m, &n.to_string())?;
    if n == 0 || n > len {
        return Err(Error::IndexOutOfRange {
            lhs: g.nonterminals()[x].clone(),
            prod: m,
            pos: n.to_string(),
        });
    }
    let p = g.production(x, m).unwrap();
    Ok(match p.rhs[n - 1] {
        GSymbol::Terminal(t) => PatternExpr::class(SymbolSet::terminal(&g.terminals()[t]))
            .then(dotted_class(g, x, m, dot_position(len, n))),
        GSymbol::Nonterminal(a) => starts_of(g, a),
    })
}

/// What must immediately precede the dotted rule `<x,m,pos>`, for
/// `pos ∈ {1..len-1, z}`.
pub fn prev_lang(g: &Grammar, x: usize, m: u32, pos: Position) -> Result<PatternExpr> {
    let len = rule_len(g, x, m, &pos.to_string())?;
    let k = match pos {
        Position::End => len,
        Position::At(n) if n >= 1 && (n as usize) < len => n as usize,
        Position::At(n) => {
            return Err(Error::IndexOutOfRange {
                lhs: g.nonterminals()[x].clone(),
                prod: m,
                pos: n.to_string(),
            })
        }
    };
    let p = g.production(x, m).unwrap();
    Ok(match p.rhs[k - 1] {
        GSymbol::Terminal(t) => dotted_class(g, x, m, Position::At(k as u32 - 1))
            .then(PatternExpr::class(SymbolSet::terminal(&g.terminals()[t]))),
        GSymbol::Nonterminal(a) => ends_of(g, a),
    })
}
