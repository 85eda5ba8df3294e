//! Sound finite-state approximation of context-free grammars.
//!
//! The approximation works over an alphabet extended with dotted rules
//! `<X,m,n>`. Starting from every string that begins with a start-symbol
//! rule opening and ends with a start-symbol rule closing, a series of
//! regular constraint languages is subtracted so that what remains
//! approximates, from above, the set of top-down traversals of parse trees.
//! Erasing the dotted rules then yields a regular superset of the grammar's
//! language.
//!
//! * [`fsa`]: the finite-state calculus (boolean and rational operations,
//!   determinization, minimization, substitution, decisions, I/O).
//! * [`pattern`]: regular expressions over wildcard symbol sets.
//! * [`grammar`]: grammars, the dotted alphabet and subgrammar plans.
//! * [`approx`]: the constraint pipeline.
//! * [`oracle`]: an independent chart recognizer and checkers.

pub mod alphabet;
pub mod approx;
pub mod cli;
pub mod error;
pub mod fsa;
pub mod grammar;
pub mod oracle;
pub mod pattern;

pub use alphabet::{Alphabet, Position, Symbol, SymbolKind, SymbolPattern, SymbolSet};
pub use approx::{approximate, ApproxOptions, ConstraintSet, StepTrace};
pub use error::{Error, Result};
pub use fsa::{Automaton, Image};
pub use grammar::{Grammar, SubgrammarPlan};
pub use pattern::PatternExpr;
