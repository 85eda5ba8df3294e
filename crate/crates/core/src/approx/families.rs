//! Parameterized grammar families with known approximation behaviour.

use std::sync::Arc;

use crate::error::Result;
use crate::fsa::Automaton;
use crate::grammar::{terminal_alphabet, Grammar, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `S -> S aᵢ | ε`
    LeftLinear,
    /// `S -> aᵢ S | ε`
    RightLinear,
    /// `S -> aᵢ S aᵢ | ε`
    Palindrome,
    /// `S -> aᵢ S | aᵢ Aᵢ`, `Aᵢ -> aⱼ Aᵢ (j ≠ i) | aᵢ X`, `X -> ε`
    Repeated,
}

#[derive(Debug, Clone)]
pub enum Expected {
    /// The approximation must equal this language.
    Language(Automaton),
    /// The canonical approximation must have this many states.
    States(usize),
}

#[derive(Debug, Clone)]
pub struct Family {
    pub kind: FamilyKind,
    pub n: usize,
    pub grammar: Grammar,
    pub expected: Expected,
}

fn terminal(i: usize) -> String {
    format!("a{i}")
}

fn rule(lhs: &str, rhs: &[&str]) -> Rule {
    (lhs.to_string(), rhs.iter().map(|s| s.to_string()).collect())
}

pub fn family_grammar(kind: FamilyKind, n: usize) -> Result<Grammar> {
    let ts: Vec<String> = (1..=n).map(terminal).collect();
    let mut rules: Vec<Rule> = Vec::new();
    match kind {
        FamilyKind::LeftLinear => {
            rules.extend(ts.iter().map(|a| rule("S", &["S", a])));
            rules.push(rule("S", &[]));
        }
        FamilyKind::RightLinear => {
            rules.extend(ts.iter().map(|a| rule("S", &[a, "S"])));
            rules.push(rule("S", &[]));
        }
        FamilyKind::Palindrome => {
            rules.extend(ts.iter().map(|a| rule("S", &[a, "S", a])));
            rules.push(rule("S", &[]));
        }
        FamilyKind::Repeated => {
            for (i, a) in ts.iter().enumerate() {
                rules.push(rule("S", &[a, "S"]));
                rules.push(rule("S", &[a, &format!("A{}", i + 1)]));
            }
            for i in 0..n {
                let lhs = format!("A{}", i + 1);
                for (j, a) in ts.iter().enumerate() {
                    if i == j {
                        rules.push(rule(&lhs, &[a, "X"]));
                    } else {
                        rules.push(rule(&lhs, &[a, &lhs]));
                    }
                }
            }
            rules.push(rule("X", &[]));
        }
    }
    Grammar::from_rules(rules)
}

/// The four families at size `n`: the two linear ones are approximated
/// exactly, as `(a₁+…+aₙ)*`; the palindrome family yields `3ⁿ` states and
/// the repeated-symbol family `2ⁿ⁺¹−1`.
pub fn exactness_families(n: usize) -> Result<Vec<Family>> {
    assert!(n >= 1, "family size must be positive");
    let mut out = Vec::new();
    for kind in [FamilyKind::LeftLinear, FamilyKind::RightLinear] {
        let grammar = family_grammar(kind, n)?;
        let al = Arc::new(terminal_alphabet(&grammar));
        let expected = Expected::Language(Automaton::universal(al));
        out.push(Family {
            kind,
            n,
            grammar,
            expected,
        });
    }
    out.push(Family {
        kind: FamilyKind::Palindrome,
        n,
        grammar: family_grammar(FamilyKind::Palindrome, n)?,
        expected: Expected::States(3usize.pow(n as u32)),
    });
    out.push(Family {
        kind: FamilyKind::Repeated,
        n,
        grammar: family_grammar(FamilyKind::Repeated, n)?,
        expected: Expected::States((1usize << (n + 1)) - 1),
    });
    Ok(out)
}
