use std::collections::HashMap;

use super::{Automaton, Builder, StateId};

/// Raised when subset construction would exceed a state limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitExceeded(pub usize);

impl Automaton {
    /// Subset construction with epsilon closure. Only reachable subsets are
    /// built; the empty subset is never materialized, so the result is
    /// partial.
    pub fn determinize(&self) -> Automaton {
        match self.try_determinize(None) {
            Ok(a) => a,
            Err(_) => unreachable!("no limit given"),
        }
    }

    pub fn try_determinize(&self, limit: Option<usize>) -> Result<Automaton, LimitExceeded> {
        if self.is_deterministic() {
            return Ok(self.clone());
        }
        let mut b = Builder::new(self.alphabet.clone());
        let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut queue: Vec<Vec<StateId>> = Vec::new();

        let mut start = vec![self.initial];
        self.close(&mut start);
        let q0 = b.add_state();
        b.set_final(q0, start.iter().any(|&q| self.is_final(q)));
        ids.insert(start.clone(), q0);
        queue.push(start);

        let mut head = 0;
        let mut moves = Vec::new();
        while head < queue.len() {
            let src = ids[&queue[head]];
            moves.clear();
            for &q in &queue[head] {
                moves.extend_from_slice(&self.trans[q as usize]);
            }
            head += 1;
            moves.sort_unstable();
            moves.dedup();

            let mut i = 0;
            while i < moves.len() {
                let sym = moves[i].0;
                let mut j = i;
                let mut target = Vec::new();
                while j < moves.len() && moves[j].0 == sym {
                    target.push(moves[j].1);
                    j += 1;
                }
                i = j;
                self.close(&mut target);
                let dst = match ids.get(&target) {
                    Some(&d) => d,
                    None => {
                        let d = b.add_state();
                        if let Some(cap) = limit {
                            if b.num_states() > cap {
                                return Err(LimitExceeded(b.num_states()));
                            }
                        }
                        b.set_final(d, target.iter().any(|&q| self.is_final(q)));
                        ids.insert(target.clone(), d);
                        queue.push(target);
                        d
                    }
                };
                b.add_transition(src, sym, dst);
            }
        }
        Ok(b.build())
    }
}

impl Automaton {
    /// Canonical form of an NFA whose subset construction stays within
    /// `limit` states in at least one direction. Forward subset construction
    /// and double reversal are tried alternately under a growing budget, so
    /// the cost is bounded by a small multiple of the cheaper route.
    pub(crate) fn try_minimize(&self, limit: Option<usize>) -> Result<Automaton, LimitExceeded> {
        if self.is_deterministic() {
            return Ok(self.minimize());
        }
        let cap = limit.unwrap_or(usize::MAX);
        let mut budget = (16 * self.num_states()).clamp(1024, cap.max(1));
        loop {
            if let Ok(d) = self.try_determinize(Some(budget)) {
                return Ok(d.minimize());
            }
            if let Ok(r) = self.reverse_nfa().try_determinize(Some(budget)) {
                if let Ok(d) = r.reverse_nfa().try_determinize(Some(budget)) {
                    return Ok(d.minimize());
                }
            }
            if budget >= cap {
                return Err(LimitExceeded(budget.saturating_add(1)));
            }
            budget = budget.saturating_mul(4).min(cap);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Symbol};
    use std::sync::Arc;

    // (a+b)*a(a+b)
    fn second_to_last_a() -> Automaton {
        let al = Arc::new(Alphabet::from_terminals(["a", "b"]));
        let (a, b_) = (Symbol(0), Symbol(1));
        let mut b = Automaton::builder(al);
        let q0 = b.add_state();
        let q1 = b.add_state();
        let q2 = b.add_state();
        b.add_transition(q0, a, q0);
        b.add_transition(q0, b_, q0);
        b.add_transition(q0, a, q1);
        b.add_transition(q1, a, q2);
        b.add_transition(q1, b_, q2);
        b.set_final(q2, true);
        b.build()
    }

    #[test]
    fn subset_construction_gives_four_states() {
        // {0} {0,1} {0,1,2} {0,2}
        let nfa = second_to_last_a();
        let dfa = nfa.determinize();
        assert!(dfa.is_deterministic());
        assert_eq!(dfa.num_states(), 4);
        assert_eq!(dfa.minimize().num_states(), 4);
        assert_eq!(nfa.enumerate(6), dfa.enumerate(6));
    }

    #[test]
    fn deterministic_input_is_unchanged() {
        let dfa = second_to_last_a().minimize();
        let again = dfa.determinize();
        assert!(again.same_structure(&dfa));
    }

    #[test]
    fn limit_is_enforced() {
        assert_eq!(
            second_to_last_a().try_determinize(Some(2)).unwrap_err(),
            LimitExceeded(3)
        );
    }
}
