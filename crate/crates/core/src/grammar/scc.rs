//! Decomposition of a grammar into strongly connected subgrammars.
//!
//! `A R B` holds when `B` occurs on the right-hand side of a production for
//! `A`. The classes of mutual reachability are approximated separately, with
//! nonterminals of other classes standing in as terminals, then composed by
//! substitution, dependencies first.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::alphabet::{Alphabet, SymbolKind};
use crate::error::{Error, Result};
use crate::fsa::{Automaton, Image};

use super::{GSymbol, Grammar, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgrammarPlan {
    names: Vec<String>,
    start: usize,
    /// Classes ordered so that every class comes after the classes it
    /// depends on.
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// Per class, the out-of-class nonterminals its productions mention.
    external: Vec<BTreeSet<usize>>,
}

impl SubgrammarPlan {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn external(&self, class: usize) -> &BTreeSet<usize> {
        &self.external[class]
    }

    pub fn class_names(&self, class: usize) -> Vec<&str> {
        self.classes[class].iter().map(|&x| self.names[x].as_str()).collect()
    }

    /// Nonterminals whose own approximation is needed for composition: the
    /// start symbol and everything referenced across a class boundary from
    /// a needed class.
    pub fn required(&self) -> Vec<usize> {
        let mut seen = HashSet::from([self.start]);
        let mut stack = vec![self.start];
        while let Some(x) = stack.pop() {
            for &y in &self.external[self.class_of[x]] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        // dependencies first
        out.sort_by_key(|&x| (self.class_of[x], x));
        out
    }

    /// The productions of `x`'s class, with `x` as start. Other nonterminals
    /// become terminals of the subgrammar because they have no productions
    /// there.
    pub fn subgrammar(&self, g: &Grammar, x: usize) -> Result<Grammar> {
        let class = self.class_of[x];
        let mut rules: Vec<Rule> = g
            .rules()
            .into_iter()
            .zip(g.productions())
            .filter(|(_, p)| self.class_of[p.lhs] == class)
            .map(|(r, _)| r)
            .collect();
        // put x's productions first so it becomes the default start, while
        // keeping per-nonterminal production order
        rules.sort_by_key(|(lhs, _)| *lhs != g.nonterminals()[x]);
        Grammar::from_rules(rules)?.with_start(&g.nonterminals()[x])
    }
}

/// Tarjan's algorithm, iterative. Components come out dependencies first.
pub fn scc_decompose(g: &Grammar) -> SubgrammarPlan {
    let n = g.nonterminals().len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for p in g.productions() {
        for &s in &p.rhs {
            if let GSymbol::Nonterminal(b) = s {
                succ[p.lhs].insert(b);
            }
        }
    }
    let succ: Vec<Vec<usize>> = succ.into_iter().map(|s| s.into_iter().collect()).collect();

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (node, next successor offset)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut class = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    class.push(w);
                    if w == v {
                        break;
                    }
                }
                class.sort_unstable();
                classes.push(class);
            }
        }
    }

    let mut class_of = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }
    let mut external = vec![BTreeSet::new(); classes.len()];
    for (x, ys) in succ.iter().enumerate() {
        for &y in ys {
            if class_of[y] != class_of[x] {
                external[class_of[x]].insert(y);
            }
        }
    }
    SubgrammarPlan {
        names: g.nonterminals().to_vec(),
        start: g.start(),
        classes,
        class_of,
        external,
    }
}

/// Composes per-nonterminal approximations. Each automaton in
/// `approximations` is over terminals plus out-of-class nonterminal names;
/// the result is over `target`.
pub fn compose_approximations(
    plan: &SubgrammarPlan,
    approximations: &HashMap<usize, Automaton>,
    target: Arc<Alphabet>,
) -> Result<Automaton> {
    let mut composed: HashMap<usize, Automaton> = HashMap::new();
    for x in plan.required() {
        let approx = approximations
            .get(&x)
            .ok_or_else(|| Error::MissingApproximation(plan.names[x].clone()))?;
        let mut mapping = HashMap::new();
        for s in approx.alphabet().symbols() {
            let SymbolKind::Terminal(name) = approx.alphabet().kind(s) else {
                continue;
            };
            let Some(y) = plan.names.iter().position(|n| n == name) else {
                continue;
            };
            if plan.class_of[y] == plan.class_of[x] {
                continue;
            }
            let sub = composed
                .get(&y)
                .ok_or_else(|| Error::MissingApproximation(name.clone()))?;
            mapping.insert(s, Image::Language(sub.clone()));
        }
        let result = approx.substitute(&mapping, target.clone())?;
        composed.insert(x, result);
    }
    composed
        .remove(&plan.start)
        .ok_or_else(|| Error::MissingApproximation(plan.names[plan.start].clone()))
}
