//! The constraint languages subtracted from the initial approximation.
//!
//! Each function returns the language of *bad* strings: strings over the
//! dotted alphabet that cannot be top-down traversals of a parse tree.

use crate::alphabet::{Position, SymbolPattern, SymbolSet};
use crate::error::{Error, Result};
use crate::grammar::{next_lang, prev_lang, Grammar};
use crate::pattern::PatternExpr;

use crate::grammar::dotted::{dot_position, dotted_class};

fn any() -> PatternExpr {
    PatternExpr::any_string()
}

fn dotted_at(pos: Option<Position>) -> SymbolSet {
    SymbolSet::of(SymbolPattern::dotted(None, None, pos))
}

fn rule_symbols(g: &Grammar, x: usize, m: u32) -> SymbolPattern {
    SymbolPattern::dotted(Some(&g.nonterminals()[x]), Some(m), None)
}

fn non_epsilon_len(g: &Grammar, x: usize, m: u32) -> Result<usize> {
    match g.production(x, m) {
        Some(p) if !p.is_epsilon() => Ok(p.rhs.len()),
        _ => Err(Error::IndexOutOfRange {
            lhs: g.nonterminals()[x].clone(),
            prod: m,
            pos: "*".into(),
        }),
    }
}

fn epsilon_rule(g: &Grammar, x: usize, m: u32) -> Result<()> {
    match g.production(x, m) {
        Some(p) if p.is_epsilon() => Ok(()),
        _ => Err(Error::IndexOutOfRange {
            lhs: g.nonterminals()[x].clone(),
            prod: m,
            pos: "ε".into(),
        }),
    }
}

/// `<S,*,0> Σ* <S,*,z>` for the grammar's start symbol.
pub fn initial_pattern(g: &Grammar) -> PatternExpr {
    let s = g.start_name();
    PatternExpr::seq([
        PatternExpr::class(SymbolSet::of(SymbolPattern::dotted(Some(s), None, Some(Position::At(0))))),
        any(),
        PatternExpr::class(SymbolSet::of(SymbolPattern::dotted(Some(s), None, Some(Position::End)))),
    ])
}

/// A rule opening `<*,*,0>` may be preceded only by the start of the string
/// or by a dotted rule that is not a rule closing.
pub fn constraint_start() -> PatternExpr {
    let open_or_inner = dotted_at(None).except(SymbolPattern::dotted(None, None, Some(Position::End)));
    PatternExpr::seq([
        any().then(PatternExpr::class(open_or_inner)).or(PatternExpr::Epsilon).complement(),
        PatternExpr::class(dotted_at(Some(Position::At(0)))),
        any(),
    ])
}

/// A rule closing `<*,*,z>` may be followed only by the end of the string or
/// by a dotted rule that is not a rule opening.
pub fn constraint_end() -> PatternExpr {
    let inner_or_close = dotted_at(None).except(SymbolPattern::dotted(None, None, Some(Position::At(0))));
    PatternExpr::seq([
        any(),
        PatternExpr::class(dotted_at(Some(Position::End))),
        PatternExpr::Epsilon
            .or(PatternExpr::class(inner_or_close).then(any()))
            .complement(),
    ])
}

/// `<X,m,n>` must be followed by what `next(X,m,n+1)` allows;
/// `n ∈ 0..len`.
pub fn constraint_next(g: &Grammar, x: usize, m: u32, n: usize) -> Result<PatternExpr> {
    let len = non_epsilon_len(g, x, m)?;
    let next = next_lang(g, x, m, n + 1)?;
    Ok(PatternExpr::seq([
        any(),
        dotted_class(g, x, m, dot_position(len, n)),
        next.then(any()).complement(),
    ]))
}

/// `<X,m,pos>` must be preceded by what `prev(X,m,pos)` allows;
/// `pos ∈ {1..len-1, z}`.
pub fn constraint_prev(g: &Grammar, x: usize, m: u32, pos: Position) -> Result<PatternExpr> {
    non_epsilon_len(g, x, m)?;
    let prev = prev_lang(g, x, m, pos)?;
    Ok(PatternExpr::seq([
        any().then(prev).complement(),
        dotted_class(g, x, m, pos),
        any(),
    ]))
}

/// For an epsilon-rule, `<X,m,0>` is immediately followed by `<X,m,z>` and
/// `<X,m,z>` immediately preceded by `<X,m,0>`.
pub fn constraint_eps(g: &Grammar, x: usize, m: u32) -> Result<(PatternExpr, PatternExpr)> {
    epsilon_rule(g, x, m)?;
    let open = || dotted_class(g, x, m, Position::At(0));
    let close = || dotted_class(g, x, m, Position::End);
    let follow = PatternExpr::seq([any(), open(), close().then(any()).complement()]);
    let precede = PatternExpr::seq([any().then(open()).complement(), close(), any()]);
    Ok((follow, precede))
}

/// Recursion discipline for one step `<X,m,n> → <X,m,n'>` of a rule: the
/// next `<X,m,*>` after `<X,m,n>` is either a recursive opening `<X,m,0>` or
/// `<X,m,n'>`, and the closest `<X,m,*>` before `<X,m,n'>` is either a
/// recursive closing `<X,m,z>` or `<X,m,n>`. Both must exist.
pub fn constraint_recursion(
    g: &Grammar,
    x: usize,
    m: u32,
    n: usize,
) -> Result<(PatternExpr, PatternExpr)> {
    let len = non_epsilon_len(g, x, m)?;
    if n >= len {
        return Err(Error::IndexOutOfRange {
            lhs: g.nonterminals()[x].clone(),
            prod: m,
            pos: n.to_string(),
        });
    }
    let here = || dotted_class(g, x, m, Position::At(n as u32));
    let succ = || dotted_class(g, x, m, dot_position(len, n + 1));
    let open = dotted_class(g, x, m, Position::At(0));
    let close = dotted_class(g, x, m, Position::End);
    let outside = || PatternExpr::class(SymbolSet::any().except(rule_symbols(g, x, m))).star();

    let forward = PatternExpr::seq([
        any(),
        here(),
        PatternExpr::seq([outside(), open.or(succ()), any()]).complement(),
    ]);
    let backward = PatternExpr::seq([
        PatternExpr::seq([any(), close.or(here()), outside()]).complement(),
        succ(),
        any(),
    ]);
    Ok((forward, backward))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::build_alphabet;
    use std::sync::Arc;

    fn anbn() -> Grammar {
        Grammar::parse("S -> a S b\nS ->\n").unwrap()
    }

    fn in_lang(g: &Grammar, e: &PatternExpr, text: &str) -> bool {
        let al = Arc::new(build_alphabet(g));
        e.eval(&al).unwrap().accepts_text(text).unwrap()
    }

    #[test]
    fn start_constraint() {
        let g = anbn();
        let c = constraint_start();
        assert!(in_lang(&g, &c, "a <S,1,0> a <S,1,1>"));
        assert!(in_lang(&g, &c, "<S,1,z> <S,2,0> <S,2,z>"));
        assert!(!in_lang(&g, &c, "<S,1,0> a <S,1,1>"));
        assert!(!in_lang(&g, &c, "<S,1,1> <S,2,0> <S,2,z>"));
    }

    #[test]
    fn end_constraint() {
        let g = anbn();
        let c = constraint_end();
        assert!(in_lang(&g, &c, "<S,1,z> b"));
        assert!(in_lang(&g, &c, "<S,2,z> <S,1,0>"));
        assert!(!in_lang(&g, &c, "<S,2,0> <S,2,z>"));
        assert!(!in_lang(&g, &c, "<S,2,z> <S,1,2> b"));
    }

    #[test]
    fn next_and_prev_constraints() {
        let g = anbn();
        let c0 = constraint_next(&g, 0, 1, 0).unwrap();
        assert!(!in_lang(&g, &c0, "<S,1,0> a <S,1,1>"));
        assert!(in_lang(&g, &c0, "<S,1,0> b"));
        assert!(in_lang(&g, &c0, "<S,1,0>"));
        let c1 = constraint_next(&g, 0, 1, 1).unwrap();
        assert!(in_lang(&g, &c1, "<S,1,1> a"));
        assert!(!in_lang(&g, &c1, "<S,1,1> <S,2,0>"));
        assert!(constraint_next(&g, 0, 2, 0).is_err());

        let pz = constraint_prev(&g, 0, 1, Position::End).unwrap();
        assert!(!in_lang(&g, &pz, "<S,1,2> b <S,1,z>"));
        assert!(in_lang(&g, &pz, "a <S,1,z>"));
        let p2 = constraint_prev(&g, 0, 1, Position::At(2)).unwrap();
        assert!(!in_lang(&g, &p2, "<S,2,z> <S,1,2>"));
        assert!(in_lang(&g, &p2, "<S,1,1> <S,1,2>"));
    }

    #[test]
    fn epsilon_constraints() {
        let g = anbn();
        let (f5, f6) = constraint_eps(&g, 0, 2).unwrap();
        assert!(in_lang(&g, &f5, "<S,2,0> a <S,2,z>"));
        assert!(!in_lang(&g, &f5, "a <S,2,0> <S,2,z> b"));
        assert!(!in_lang(&g, &f6, "a <S,2,0> <S,2,z> b"));
        assert!(in_lang(&g, &f6, "<S,2,z>"));
        assert!(constraint_eps(&g, 0, 1).is_err());
    }

    #[test]
    fn recursion_constraints() {
        let g = anbn();
        let (f7, f8) = constraint_recursion(&g, 0, 1, 1).unwrap();
        // <S,1,1> ... next S/1 symbol <S,1,0>: fine
        assert!(!in_lang(&g, &f7, "<S,1,1> <S,2,0> <S,2,z> <S,1,2>"));
        assert!(!in_lang(&g, &f7, "<S,1,1> <S,1,0>"));
        // skips ahead to z
        assert!(in_lang(&g, &f7, "<S,1,1> <S,1,z>"));
        // no later S/1 symbol at all
        assert!(in_lang(&g, &f7, "<S,1,1> <S,2,0>"));
        assert!(!in_lang(&g, &f8, "<S,1,1> <S,2,z> <S,1,2>"));
        assert!(!in_lang(&g, &f8, "<S,1,z> <S,1,2>"));
        assert!(in_lang(&g, &f8, "<S,1,0> <S,1,2>"));
        assert!(in_lang(&g, &f8, "<S,2,0> <S,1,2>"));
        assert!(constraint_recursion(&g, 0, 1, 3).is_err());
    }
}
