//! The approximation pipeline.
//!
//! Schedule, minimizing after every step:
//!
//! 1. start from `<S,*,0> Σ* <S,*,z>`;
//! 2. subtract the start/end boundary constraints;
//! 3. subtract the local adjacency constraints of every rule (next/prev for
//!    non-epsilon rules, the open/close pairing for epsilon-rules);
//! 4. erase the dotted rules of epsilon-rules and of rules excluded from
//!    recursion treatment;
//! 5. per remaining rule, subtract its recursion constraints and erase its
//!    dotted rules right away;
//! 6. erase whatever auxiliary symbols are left and move to the terminal
//!    alphabet.
//!
//! With [`ConstraintSet::OneToSix`] step 5 is skipped.

pub mod constraints;
mod families;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Position, Symbol, SymbolKind};
use crate::error::{Error, Result};
use crate::fsa::{Automaton, Image};
use crate::grammar::{
    build_alphabet, compose_approximations, scc_decompose, terminal_alphabet, Grammar,
};
use crate::grammar::dotted::dot_position;
use crate::pattern::PatternExpr;

pub use constraints::{
    constraint_end, constraint_eps, constraint_next, constraint_prev, constraint_recursion,
    constraint_start, initial_pattern,
};
pub use families::{exactness_families, family_grammar, Expected, Family, FamilyKind};

pub const DEFAULT_STATE_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstraintSet {
    /// Boundary and local constraints only.
    OneToSix,
    /// Additionally the per-rule recursion constraints.
    #[default]
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxOptions {
    pub constraints: ConstraintSet,
    /// Nonterminals whose rules get recursion constraints; `None` means all.
    pub full_rule_nonterminals: Option<Vec<String>>,
    pub use_scc: bool,
    /// Print each step to stderr as it completes.
    pub trace: bool,
    /// Abort when an intermediate automaton exceeds this many states.
    pub state_cap: usize,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions {
            constraints: ConstraintSet::Full,
            full_rule_nonterminals: None,
            use_scc: false,
            trace: false,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

impl ApproxOptions {
    pub fn one_to_six() -> Self {
        ApproxOptions {
            constraints: ConstraintSet::OneToSix,
            ..Default::default()
        }
    }

    pub fn full_for<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ApproxOptions {
            full_rule_nonterminals: Some(names.into_iter().map(Into::into).collect()),
            ..Default::default()
        }
    }

    fn validate(&self, g: &Grammar) -> Result<()> {
        if let Some(names) = &self.full_rule_nonterminals {
            if let Some(bad) = names.iter().find(|n| g.nonterminal_id(n).is_none()) {
                return Err(Error::UnknownNonterminal(bad.clone()));
            }
        }
        Ok(())
    }

    fn gets_recursion(&self, name: &str) -> bool {
        self.constraints == ConstraintSet::Full
            && self
                .full_rule_nonterminals
                .as_ref()
                .is_none_or(|v| v.iter().any(|n| n == name))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub label: String,
    pub states: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepTrace {
    pub steps: Vec<Step>,
}

impl StepTrace {
    /// Largest intermediate automaton.
    pub fn max_states(&self) -> usize {
        self.steps.iter().map(|s| s.states).max().unwrap_or(0)
    }

    pub fn final_states(&self) -> usize {
        self.steps.last().map_or(0, |s| s.states)
    }
}

impl fmt::Display for StepTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "step {} states={}", s.label, s.states)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Approximation {
    /// Canonical automaton over the grammar's terminals.
    pub automaton: Automaton,
    pub trace: StepTrace,
}

/// Computes a regular superset of `L(g)`.
pub fn approximate(g: &Grammar, opts: &ApproxOptions) -> Result<Approximation> {
    approximate_observed(g, opts, &mut |_, _| {})
}

/// As [`approximate`], calling `observe` with every intermediate automaton.
/// With `use_scc` the observer sees the steps of each subgrammar.
pub fn approximate_observed(
    g: &Grammar,
    opts: &ApproxOptions,
    observe: &mut dyn FnMut(&Step, &Automaton),
) -> Result<Approximation> {
    opts.validate(g)?;
    if opts.use_scc {
        approximate_by_components(g, opts, observe)
    } else {
        let target = Arc::new(terminal_alphabet(g));
        Run::new(g, opts, observe, "").execute(target)
    }
}

fn approximate_by_components(
    g: &Grammar,
    opts: &ApproxOptions,
    observe: &mut dyn FnMut(&Step, &Automaton),
) -> Result<Approximation> {
    let plan = scc_decompose(g);
    let mut per = HashMap::new();
    let mut trace = StepTrace::default();
    for x in plan.required() {
        let sub = plan.subgrammar(g, x)?;
        let sub_opts = ApproxOptions {
            use_scc: false,
            full_rule_nonterminals: opts.full_rule_nonterminals.as_ref().map(|names| {
                names
                    .iter()
                    .filter(|n| sub.nonterminal_id(n).is_some())
                    .cloned()
                    .collect()
            }),
            ..opts.clone()
        };
        let prefix = format!("{}/", g.nonterminals()[x]);
        let target = Arc::new(terminal_alphabet(&sub));
        let part = Run::new(&sub, &sub_opts, observe, &prefix).execute(target)?;
        trace.steps.extend(part.trace.steps);
        per.insert(x, part.automaton);
    }
    let target = Arc::new(terminal_alphabet(g));
    let automaton = compose_approximations(&plan, &per, target)?;
    let step = Step {
        label: "compose".into(),
        states: automaton.num_states(),
    };
    if opts.trace {
        eprintln!("step {} states={}", step.label, step.states);
    }
    observe(&step, &automaton);
    trace.steps.push(step);
    Ok(Approximation { automaton, trace })
}

struct Run<'a> {
    g: &'a Grammar,
    opts: &'a ApproxOptions,
    observe: &'a mut dyn FnMut(&Step, &Automaton),
    prefix: &'a str,
    alphabet: Arc<Alphabet>,
    current: Automaton,
    trace: StepTrace,
}

impl<'a> Run<'a> {
    fn new(
        g: &'a Grammar,
        opts: &'a ApproxOptions,
        observe: &'a mut dyn FnMut(&Step, &Automaton),
        prefix: &'a str,
    ) -> Self {
        let alphabet = Arc::new(build_alphabet(g));
        Run {
            g,
            opts,
            observe,
            prefix,
            current: Automaton::empty(alphabet.clone()),
            alphabet,
            trace: StepTrace::default(),
        }
    }

    fn name(&self, x: usize, m: u32, pos: Position) -> String {
        format!("<{},{},{}>", self.g.nonterminals()[x], m, pos)
    }

    fn record(&mut self, label: String) -> Result<()> {
        let states = self.current.num_states();
        let step = Step { label, states };
        if self.opts.trace {
            eprintln!("step {}{} states={}", self.prefix, step.label, step.states);
        }
        (self.observe)(&step, &self.current);
        if states > self.opts.state_cap {
            return Err(Error::StateCapExceeded {
                step: format!("{}{}", self.prefix, step.label),
                states,
                cap: self.opts.state_cap,
            });
        }
        self.trace.steps.push(Step {
            label: format!("{}{}", self.prefix, step.label),
            states,
        });
        Ok(())
    }

    fn subtract(&mut self, label: String, expr: PatternExpr) -> Result<()> {
        let bad = expr.eval(&self.alphabet)?;
        self.current = self.current.difference(&bad)?;
        self.record(label)
    }

    fn erase(
        &mut self,
        label: String,
        pred: impl Fn(Symbol) -> bool,
        target: Arc<Alphabet>,
    ) -> Result<()> {
        let mapping: HashMap<Symbol, Image> = self
            .current
            .alphabet()
            .symbols()
            .filter(|&s| pred(s))
            .map(|s| (s, Image::Epsilon))
            .collect();
        self.current = self
            .current
            .substitute_with_limit(&mapping, target, Some(self.opts.state_cap))
            .map_err(|e| match e {
                Error::StateCapExceeded { states, cap, .. } => Error::StateCapExceeded {
                    step: format!("{}{}", self.prefix, label),
                    states,
                    cap,
                },
                other => other,
            })?;
        self.record(label)
    }

    fn execute(mut self, target: Arc<Alphabet>) -> Result<Approximation> {
        let g = self.g;
        self.current = initial_pattern(g).eval(&self.alphabet)?;
        self.record("initial".into())?;
        self.subtract("start".into(), constraint_start())?;
        self.subtract("end".into(), constraint_end())?;

        for x in 0..g.nonterminals().len() {
            for (m, p) in g.productions_of(x) {
                if p.is_epsilon() {
                    let (follow, precede) = constraint_eps(g, x, m)?;
                    self.subtract(format!("eps-follow:{}", self.name(x, m, Position::At(0))), follow)?;
                    self.subtract(format!("eps-precede:{}", self.name(x, m, Position::End)), precede)?;
                    continue;
                }
                let len = p.rhs.len();
                for n in 0..len {
                    let label = format!("next:{}", self.name(x, m, Position::At(n as u32)));
                    self.subtract(label, constraint_next(g, x, m, n)?)?;
                }
                let positions = (1..len as u32).map(Position::At).chain([Position::End]);
                for pos in positions {
                    let label = format!("prev:{}", self.name(x, m, pos));
                    self.subtract(label, constraint_prev(g, x, m, pos)?)?;
                }
            }
        }

        let recursive: Vec<(usize, u32)> = (0..g.nonterminals().len())
            .filter(|&x| self.opts.gets_recursion(&g.nonterminals()[x]))
            .flat_map(|x| {
                g.productions_of(x)
                    .filter(|(_, p)| !p.is_epsilon())
                    .map(move |(m, _)| (x, m))
            })
            .collect();

        if self.opts.constraints == ConstraintSet::Full {
            let keep: HashSet<(u32, u32)> =
                recursive.iter().map(|&(x, m)| (x as u32, m)).collect();
            if keep.len() < g.productions().len() {
                let al = self.alphabet.clone();
                let pred = |s: Symbol| rule_key(&al, s).is_some_and(|k| !keep.contains(&k));
                self.erase("erase-nonrecursive".into(), pred, al.clone())?;
            }
            for &(x, m) in &recursive {
                let len = g.production(x, m).unwrap().rhs.len();
                for n in 0..len {
                    let (forward, backward) = constraint_recursion(g, x, m, n)?;
                    let here = self.name(x, m, Position::At(n as u32));
                    let succ = self.name(x, m, dot_position(len, n + 1));
                    self.subtract(format!("rec-forward:{here}"), forward)?;
                    self.subtract(format!("rec-backward:{succ}"), backward)?;
                }
                let al = self.alphabet.clone();
                let label = format!("erase:{}/{}", g.nonterminals()[x], m);
                let key = (x as u32, m);
                self.erase(label, |s| rule_key(&al, s) == Some(key), al.clone())?;
            }
        }

        let alphabet = self.alphabet.clone();
        self.erase("final".into(), |s| alphabet.is_dotted(s), target)?;
        Ok(Approximation {
            automaton: self.current,
            trace: self.trace,
        })
    }
}

/// `(X, m)` of a dotted symbol.
fn rule_key(alphabet: &Alphabet, s: Symbol) -> Option<(u32, u32)> {
    match alphabet.kind(s) {
        SymbolKind::Dotted { lhs, prod, .. } => Some((*lhs, *prod)),
        SymbolKind::Terminal(_) => None,
    }
}
