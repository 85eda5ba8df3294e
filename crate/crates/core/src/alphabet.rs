//! Interned alphabets of terminals and dotted rules.
//!
//! A dotted rule `X -> α · β` is written as the triple `<X,m,n>`: the
//! left-hand side, the 1-based index of the production among those for `X`,
//! and the number of right-hand-side symbols left of the dot. A dot after the
//! last symbol uses the marker `z` instead of an integer so that a single
//! wildcard pattern `<*,*,z>` can denote every rule-final dot.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Interned alphabet element. Ids are dense indices into an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dot position inside a dotted rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    At(u32),
    /// The dot follows the last right-hand-side symbol.
    End,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::At(n) => write!(f, "{n}"),
            Position::End => f.write_str("z"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Terminal(String),
    /// `lhs` indexes [`Alphabet::nonterminals`]; `prod` is 1-based.
    Dotted { lhs: u32, prod: u32, pos: Position },
}

impl SymbolKind {
    pub fn is_dotted(&self) -> bool {
        matches!(self, SymbolKind::Dotted { .. })
    }
}

/// An ordered, duplicate-free list of symbols plus lookup tables.
///
/// Alphabets are shared between automata through `Arc`. Two alphabets are
/// compatible when their contents are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    nonterminals: Vec<String>,
    symbols: Vec<SymbolKind>,
    index: HashMap<SymbolKind, Symbol>,
    nonterminal_index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new(nonterminals: Vec<String>) -> Self {
        let nonterminal_index = nonterminals
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        Alphabet {
            nonterminals,
            symbols: Vec::new(),
            index: HashMap::new(),
            nonterminal_index,
        }
    }

    /// Alphabet made only of the given terminal tokens, in order.
    pub fn from_terminals<I, S>(terminals: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Alphabet::new(Vec::new());
        for t in terminals {
            a.intern(SymbolKind::Terminal(t.into()));
        }
        a
    }

    /// Builds an alphabet from printed symbol tokens, as found in the tab
    /// automaton format. Tokens of the form `<X,m,n>` / `<X,m,z>` become
    /// dotted rules; anything else is a terminal.
    pub fn from_tokens<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut a = Alphabet::new(Vec::new());
        for tok in tokens {
            let kind = a.parse_token(tok.as_ref(), true)?;
            a.intern(kind);
        }
        Ok(a)
    }

    /// Adds a symbol (no-op when already present) and returns its id.
    pub fn intern(&mut self, kind: SymbolKind) -> Symbol {
        if let Some(&s) = self.index.get(&kind) {
            return s;
        }
        let s = Symbol(self.symbols.len() as u32);
        self.index.insert(kind.clone(), s);
        self.symbols.push(kind);
        s
    }

    pub fn add_nonterminal(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.nonterminal_index.get(name) {
            return i;
        }
        let i = self.nonterminals.len() as u32;
        self.nonterminals.push(name.to_string());
        self.nonterminal_index.insert(name.to_string(), i);
        i
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = Symbol> {
        (0..self.symbols.len() as u32).map(Symbol)
    }

    pub fn kind(&self, s: Symbol) -> &SymbolKind {
        &self.symbols[s.index()]
    }

    pub fn lookup(&self, kind: &SymbolKind) -> Option<Symbol> {
        self.index.get(kind).copied()
    }

    pub fn terminal(&self, name: &str) -> Option<Symbol> {
        self.lookup(&SymbolKind::Terminal(name.to_string()))
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn nonterminal_id(&self, name: &str) -> Option<u32> {
        self.nonterminal_index.get(name).copied()
    }

    pub fn dotted(&self, lhs: &str, prod: u32, pos: Position) -> Option<Symbol> {
        let lhs = self.nonterminal_id(lhs)?;
        self.lookup(&SymbolKind::Dotted { lhs, prod, pos })
    }

    pub fn is_dotted(&self, s: Symbol) -> bool {
        self.kind(s).is_dotted()
    }

    /// Printed form: the terminal token itself, or `<X,m,n>`.
    pub fn name(&self, s: Symbol) -> String {
        match self.kind(s) {
            SymbolKind::Terminal(t) => t.clone(),
            SymbolKind::Dotted { lhs, prod, pos } => {
                format!("<{},{},{}>", self.nonterminals[*lhs as usize], prod, pos)
            }
        }
    }

    /// Resolves a printed token against this alphabet.
    pub fn resolve(&self, token: &str) -> Result<Symbol> {
        let kind = self
            .parse_token_readonly(token)
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))?;
        self.lookup(&kind)
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))
    }

    /// Splits a whitespace-separated token string into symbols.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>> {
        text.split_whitespace().map(|t| self.resolve(t)).collect()
    }

    pub fn render_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn parse_token_readonly(&self, token: &str) -> Option<SymbolKind> {
        match split_dotted(token) {
            Some((lhs, prod, pos)) => {
                let lhs = self.nonterminal_id(lhs)?;
                Some(SymbolKind::Dotted { lhs, prod, pos })
            }
            None => Some(SymbolKind::Terminal(token.to_string())),
        }
    }

    fn parse_token(&mut self, token: &str, register: bool) -> Result<SymbolKind> {
        match split_dotted(token) {
            Some((lhs, prod, pos)) => {
                let lhs = if register {
                    self.add_nonterminal(lhs)
                } else {
                    self.nonterminal_id(lhs)
                        .ok_or_else(|| Error::UnknownSymbol(token.to_string()))?
                };
                Ok(SymbolKind::Dotted { lhs, prod, pos })
            }
            None => Ok(SymbolKind::Terminal(token.to_string())),
        }
    }

    /// True when both alphabets describe the same symbols in the same order.
    pub fn compatible(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

fn split_dotted(token: &str) -> Option<(&str, u32, Position)> {
    let inner = token.strip_prefix('<')?.strip_suffix('>')?;
    let mut parts = inner.rsplitn(3, ',');
    let pos = parts.next()?;
    let prod = parts.next()?;
    let lhs = parts.next()?;
    if lhs.is_empty() {
        return None;
    }
    let prod: u32 = prod.parse().ok()?;
    let pos = if pos == "z" {
        Position::End
    } else {
        Position::At(pos.parse().ok()?)
    };
    Some((lhs, prod, pos))
}

/// One wildcard-capable symbol pattern. `None` components of a dotted
/// pattern are the wildcard `*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolPattern {
    Any,
    AnyTerminal,
    Terminal(String),
    Dotted {
        lhs: Option<String>,
        prod: Option<u32>,
        pos: Option<Position>,
    },
}

impl SymbolPattern {
    pub fn dotted(lhs: Option<&str>, prod: Option<u32>, pos: Option<Position>) -> Self {
        SymbolPattern::Dotted {
            lhs: lhs.map(str::to_string),
            prod,
            pos,
        }
    }

    /// `<*,*,*>`: every dotted rule.
    pub fn any_dotted() -> Self {
        SymbolPattern::dotted(None, None, None)
    }

    fn is_ground(&self) -> bool {
        matches!(
            self,
            SymbolPattern::Terminal(_)
                | SymbolPattern::Dotted {
                    lhs: Some(_),
                    prod: Some(_),
                    pos: Some(_)
                }
        )
    }

    fn check(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            SymbolPattern::Terminal(t) if alphabet.terminal(t).is_none() => {
                Err(Error::UnknownSymbol(t.clone()))
            }
            SymbolPattern::Dotted { lhs: Some(x), .. } if alphabet.nonterminal_id(x).is_none() => {
                Err(Error::UnknownSymbol(format!("<{x},..>")))
            }
            SymbolPattern::Dotted {
                lhs: Some(x),
                prod: Some(m),
                pos: Some(p),
            } if alphabet.dotted(x, *m, *p).is_none() => {
                Err(Error::UnknownSymbol(format!("<{x},{m},{p}>")))
            }
            _ => Ok(()),
        }
    }

    fn matches(&self, alphabet: &Alphabet, kind: &SymbolKind) -> bool {
        match (self, kind) {
            (SymbolPattern::Any, _) => true,
            (SymbolPattern::AnyTerminal, SymbolKind::Terminal(_)) => true,
            (SymbolPattern::Terminal(t), SymbolKind::Terminal(u)) => t == u,
            (
                SymbolPattern::Dotted { lhs, prod, pos },
                SymbolKind::Dotted {
                    lhs: l,
                    prod: m,
                    pos: p,
                },
            ) => {
                lhs.as_ref()
                    .is_none_or(|x| alphabet.nonterminals[*l as usize] == *x)
                    && prod.is_none_or(|x| x == *m)
                    && pos.is_none_or(|x| x == *p)
            }
            _ => false,
        }
    }
}

impl fmt::Display for SymbolPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolPattern::Any => f.write_str("$"),
            SymbolPattern::AnyTerminal => f.write_str("T"),
            SymbolPattern::Terminal(t) => f.write_str(t),
            SymbolPattern::Dotted { lhs, prod, pos } => {
                let lhs = lhs.as_deref().unwrap_or("*");
                let prod = prod.map_or("*".to_string(), |m| m.to_string());
                let pos = pos.map_or("*".to_string(), |p| p.to_string());
                write!(f, "<{lhs},{prod},{pos}>")
            }
        }
    }
}

/// A set of symbols given by patterns: everything matching some `include`
/// pattern and no `exclude` pattern. Expanded lazily against an alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolSet {
    include: Vec<SymbolPattern>,
    exclude: Vec<SymbolPattern>,
}

impl SymbolSet {
    pub fn of(pattern: SymbolPattern) -> Self {
        SymbolSet {
            include: vec![pattern],
            exclude: Vec::new(),
        }
    }

    pub fn terminal(name: &str) -> Self {
        SymbolSet::of(SymbolPattern::Terminal(name.to_string()))
    }

    pub fn dotted(lhs: &str, prod: u32, pos: Position) -> Self {
        SymbolSet::of(SymbolPattern::dotted(Some(lhs), Some(prod), Some(pos)))
    }

    pub fn any() -> Self {
        SymbolSet::of(SymbolPattern::Any)
    }

    pub fn or(mut self, pattern: SymbolPattern) -> Self {
        self.include.push(pattern);
        self
    }

    pub fn except(mut self, pattern: SymbolPattern) -> Self {
        self.exclude.push(pattern);
        self
    }

    /// Expands the set to concrete symbols, in alphabet order.
    ///
    /// Ground patterns (a terminal, or a triple without wildcards) must name
    /// a symbol of the alphabet; wildcard patterns may match nothing.
    pub fn expand(&self, alphabet: &Alphabet) -> Result<Vec<Symbol>> {
        for p in self.include.iter().chain(&self.exclude) {
            p.check(alphabet)?;
        }
        Ok(alphabet
            .symbols()
            .filter(|&s| self.contains(alphabet, s))
            .collect())
    }

    pub fn contains(&self, alphabet: &Alphabet, s: Symbol) -> bool {
        let kind = alphabet.kind(s);
        self.include.iter().any(|p| p.matches(alphabet, kind))
            && !self.exclude.iter().any(|p| p.matches(alphabet, kind))
    }

    /// True when the set consists of ground patterns only.
    pub fn is_ground(&self) -> bool {
        self.exclude.is_empty() && self.include.iter().all(SymbolPattern::is_ground)
    }
}

impl fmt::Display for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inc: Vec<String> = self.include.iter().map(|p| p.to_string()).collect();
        if inc.len() == 1 {
            f.write_str(&inc[0])?;
        } else {
            write!(f, "[{}]", inc.join("|"))?;
        }
        for e in &self.exclude {
            write!(f, "-{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Alphabet {
        let mut a = Alphabet::from_terminals(["a", "b"]);
        let s = a.add_nonterminal("S");
        for (m, pos) in [
            (1, Position::At(0)),
            (1, Position::At(1)),
            (1, Position::At(2)),
            (1, Position::End),
            (2, Position::At(0)),
            (2, Position::End),
        ] {
            a.intern(SymbolKind::Dotted { lhs: s, prod: m, pos });
        }
        a
    }

    #[test]
    fn interning_is_idempotent() {
        let mut a = sample();
        let n = a.len();
        let s = a.intern(SymbolKind::Terminal("a".into()));
        assert_eq!(s, Symbol(0));
        assert_eq!(a.len(), n);
    }

    #[test]
    fn wildcard_expansion() {
        let a = sample();
        let starts = SymbolSet::of(SymbolPattern::dotted(Some("S"), None, Some(Position::At(0))))
            .expand(&a)
            .unwrap();
        let names: Vec<_> = starts.iter().map(|&s| a.name(s)).collect();
        assert_eq!(names, ["<S,1,0>", "<S,2,0>"]);

        let ends = SymbolSet::of(SymbolPattern::dotted(None, None, Some(Position::End)))
            .expand(&a)
            .unwrap();
        assert_eq!(ends.len(), 2);

        let not_rule1 = SymbolSet::any()
            .except(SymbolPattern::dotted(Some("S"), Some(1), None))
            .expand(&a)
            .unwrap();
        assert_eq!(not_rule1.len(), 4);
    }

    #[test]
    fn unknown_ground_symbol_is_an_error() {
        let a = sample();
        assert!(SymbolSet::terminal("c").expand(&a).is_err());
        assert!(SymbolSet::dotted("S", 3, Position::At(0)).expand(&a).is_err());
        assert!(SymbolSet::of(SymbolPattern::dotted(Some("T"), None, None))
            .expand(&a)
            .is_err());
    }

    #[test]
    fn token_round_trip() {
        let a = sample();
        for s in a.symbols() {
            assert_eq!(a.resolve(&a.name(s)).unwrap(), s);
        }
        let b = Alphabet::from_tokens(a.symbols().map(|s| a.name(s))).unwrap();
        assert_eq!(a, b);
    }
}
