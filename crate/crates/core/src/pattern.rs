//! Regular expressions over symbol sets, evaluated into canonical automata.

use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, SymbolSet};
use crate::error::Result;
use crate::fsa::Automaton;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternExpr {
    Epsilon,
    /// Any single symbol of the set.
    Class(SymbolSet),
    /// Any single symbol (`Σ`).
    Any,
    Concat(Vec<PatternExpr>),
    Union(Vec<PatternExpr>),
    Intersect(Box<PatternExpr>, Box<PatternExpr>),
    Star(Box<PatternExpr>),
    Plus(Box<PatternExpr>),
    Diff(Box<PatternExpr>, Box<PatternExpr>),
    /// `Σ* − x`.
    Complement(Box<PatternExpr>),
}

impl PatternExpr {
    pub fn class(set: SymbolSet) -> Self {
        PatternExpr::Class(set)
    }

    /// `Σ*`.
    pub fn any_string() -> Self {
        PatternExpr::Any.star()
    }

    pub fn star(self) -> Self {
        PatternExpr::Star(Box::new(self))
    }

    pub fn plus(self) -> Self {
        PatternExpr::Plus(Box::new(self))
    }

    pub fn complement(self) -> Self {
        PatternExpr::Complement(Box::new(self))
    }

    pub fn minus(self, other: PatternExpr) -> Self {
        PatternExpr::Diff(Box::new(self), Box::new(other))
    }

    pub fn and(self, other: PatternExpr) -> Self {
        PatternExpr::Intersect(Box::new(self), Box::new(other))
    }

    pub fn then(self, other: PatternExpr) -> Self {
        match self {
            PatternExpr::Concat(mut v) => {
                v.push(other);
                PatternExpr::Concat(v)
            }
            e => PatternExpr::Concat(vec![e, other]),
        }
    }

    pub fn or(self, other: PatternExpr) -> Self {
        match self {
            PatternExpr::Union(mut v) => {
                v.push(other);
                PatternExpr::Union(v)
            }
            e => PatternExpr::Union(vec![e, other]),
        }
    }

    pub fn seq<I: IntoIterator<Item = PatternExpr>>(parts: I) -> Self {
        PatternExpr::Concat(parts.into_iter().collect())
    }

    pub fn alt<I: IntoIterator<Item = PatternExpr>>(parts: I) -> Self {
        PatternExpr::Union(parts.into_iter().collect())
    }

    /// Evaluates bottom-up; every intermediate result is canonical.
    pub fn eval(&self, alphabet: &Arc<Alphabet>) -> Result<Automaton> {
        Ok(match self {
            PatternExpr::Epsilon => Automaton::epsilon(alphabet.clone()),
            PatternExpr::Any => {
                let all: Vec<_> = alphabet.symbols().collect();
                Automaton::symbols(alphabet.clone(), &all)
            }
            PatternExpr::Class(set) => Automaton::symbols(alphabet.clone(), &set.expand(alphabet)?),
            PatternExpr::Concat(parts) => {
                let mut acc = Automaton::epsilon(alphabet.clone());
                for p in parts {
                    acc = acc.concat(&p.eval(alphabet)?)?;
                }
                acc
            }
            PatternExpr::Union(parts) => {
                let mut acc = Automaton::empty(alphabet.clone());
                for p in parts {
                    acc = acc.union(&p.eval(alphabet)?)?;
                }
                acc
            }
            PatternExpr::Intersect(a, b) => a.eval(alphabet)?.intersect(&b.eval(alphabet)?)?,
            PatternExpr::Star(e) => {
                if matches!(**e, PatternExpr::Any) {
                    Automaton::universal(alphabet.clone())
                } else {
                    e.eval(alphabet)?.star()
                }
            }
            PatternExpr::Plus(e) => e.eval(alphabet)?.plus(),
            PatternExpr::Diff(a, b) => a.eval(alphabet)?.difference(&b.eval(alphabet)?)?,
            PatternExpr::Complement(e) => e.eval(alphabet)?.complement(),
        })
    }
}

impl fmt::Display for PatternExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, parts: &[PatternExpr], sep: &str| {
            f.write_str("(")?;
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")
        };
        match self {
            PatternExpr::Epsilon => f.write_str("ε"),
            PatternExpr::Class(s) => write!(f, "{s}"),
            PatternExpr::Any => f.write_str("$"),
            PatternExpr::Concat(p) => join(f, p, " "),
            PatternExpr::Union(p) => join(f, p, " + "),
            PatternExpr::Intersect(a, b) => write!(f, "({a} & {b})"),
            PatternExpr::Star(e) => write!(f, "{e}*"),
            PatternExpr::Plus(e) => write!(f, "{e}+"),
            PatternExpr::Diff(a, b) => write!(f, "({a} - {b})"),
            PatternExpr::Complement(e) => write!(f, "~{e}"),
        }
    }
}
