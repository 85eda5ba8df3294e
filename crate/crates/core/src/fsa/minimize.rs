//! Hopcroft partition refinement on the sink-completed DFA.

use std::collections::VecDeque;

use super::{Automaton, Builder, StateId};
use crate::alphabet::Symbol;

impl Automaton {
    /// Canonical form: determinize if needed, drop useless states, merge
    /// equivalent states, renumber breadth-first.
    pub fn minimize(&self) -> Automaton {
        if self.canonical {
            return self.clone();
        }
        let dfa = if self.is_deterministic() {
            self.clone()
        } else {
            self.determinize()
        };
        match dfa.trim() {
            None => Automaton::empty(self.alphabet.clone()),
            Some(t) => t.merge_equivalent().renumber(),
        }
    }

    /// Restricts to states that are reachable and co-reachable. `None` when
    /// the language is empty.
    pub(crate) fn trim(&self) -> Option<Automaton> {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut stack = vec![self.initial];
        fwd[self.initial as usize] = true;
        while let Some(q) = stack.pop() {
            let succ = self.trans[q as usize]
                .iter()
                .map(|&(_, d)| d)
                .chain(self.eps[q as usize].iter().copied());
            for d in succ {
                if !fwd[d as usize] {
                    fwd[d as usize] = true;
                    stack.push(d);
                }
            }
        }
        let mut pred: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..n {
            for &(_, d) in &self.trans[q] {
                pred[d as usize].push(q as StateId);
            }
            for &d in &self.eps[q] {
                pred[d as usize].push(q as StateId);
            }
        }
        let mut bwd = vec![false; n];
        for q in 0..n {
            if self.finals[q] && fwd[q] {
                bwd[q] = true;
                stack.push(q as StateId);
            }
        }
        while let Some(q) = stack.pop() {
            for &p in &pred[q as usize] {
                if !bwd[p as usize] {
                    bwd[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        if !bwd[self.initial as usize] {
            return None;
        }
        let mut map = vec![u32::MAX; n];
        let mut b = Builder::new(self.alphabet.clone());
        for q in 0..n {
            if fwd[q] && bwd[q] {
                map[q] = b.add_state();
                b.set_final(map[q], self.finals[q]);
            }
        }
        for q in 0..n {
            if map[q] == u32::MAX {
                continue;
            }
            for &(s, d) in &self.trans[q] {
                if map[d as usize] != u32::MAX {
                    b.add_transition(map[q], s, map[d as usize]);
                }
            }
            for &d in &self.eps[q] {
                if map[d as usize] != u32::MAX {
                    b.add_epsilon(map[q], map[d as usize]);
                }
            }
        }
        b.set_initial(map[self.initial as usize]);
        Some(b.build())
    }

    /// Quotient of a trimmed DFA by language equivalence of states.
    fn merge_equivalent(&self) -> Automaton {
        let n = self.num_states();
        let sink = n;
        let total = n + 1;
        let sigma = self.alphabet.len();

        // inverse transitions of the completed automaton, per target
        let mut inv: Vec<Vec<(Symbol, StateId)>> = vec![Vec::new(); total];
        for q in 0..n {
            let t = &self.trans[q];
            let mut k = 0;
            for s in 0..sigma as u32 {
                if k < t.len() && t[k].0 .0 == s {
                    inv[t[k].1 as usize].push((t[k].0, q as StateId));
                    k += 1;
                } else {
                    inv[sink].push((Symbol(s), q as StateId));
                }
            }
        }
        for s in 0..sigma as u32 {
            inv[sink].push((Symbol(s), sink as StateId));
        }

        let mut p = Partition::new(total, |q| q < n && self.finals[q]);
        let mut pending: Vec<bool> = vec![true; p.num_blocks()];
        let mut work: Vec<usize> = (0..p.num_blocks()).collect();
        let mut pairs: Vec<(Symbol, StateId)> = Vec::new();
        let mut touched: Vec<usize> = Vec::new();

        while let Some(splitter) = work.pop() {
            pending[splitter] = false;
            pairs.clear();
            for &q in p.members(splitter) {
                pairs.extend_from_slice(&inv[q as usize]);
            }
            pairs.sort_unstable();
            let mut i = 0;
            while i < pairs.len() {
                let sym = pairs[i].0;
                touched.clear();
                while i < pairs.len() && pairs[i].0 == sym {
                    let b = p.mark(pairs[i].1 as usize);
                    if p.marked[b] == 1 {
                        touched.push(b);
                    }
                    i += 1;
                }
                for &b in &touched {
                    if let Some(nb) = p.split(b) {
                        pending.push(false);
                        if pending[b] {
                            pending[nb] = true;
                            work.push(nb);
                        } else {
                            let smaller = if p.size(nb) < p.size(b) { nb } else { b };
                            pending[smaller] = true;
                            work.push(smaller);
                        }
                    }
                }
            }
        }

        let dead = p.block_of[sink];
        let mut map = vec![u32::MAX; p.num_blocks()];
        let mut b = Builder::new(self.alphabet.clone());
        for (blk, slot) in map.iter_mut().enumerate() {
            if blk != dead {
                *slot = b.add_state();
            }
        }
        for blk in 0..p.num_blocks() {
            if blk == dead {
                continue;
            }
            let rep = p.members(blk)[0] as usize;
            b.set_final(map[blk], self.finals[rep]);
            for &(s, d) in &self.trans[rep] {
                let db = p.block_of[d as usize];
                if db != dead {
                    b.add_transition(map[blk], s, map[db]);
                }
            }
        }
        b.set_initial(map[p.block_of[self.initial as usize]]);
        b.build()
    }

    /// Breadth-first renumbering from the initial state; transitions are
    /// visited in symbol order, so the numbering is canonical for a DFA.
    fn renumber(&self) -> Automaton {
        let n = self.num_states();
        let mut map = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        map[self.initial as usize] = 0;
        order.push(self.initial);
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            for &(_, d) in &self.trans[q as usize] {
                if map[d as usize] == u32::MAX {
                    map[d as usize] = order.len() as u32;
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut b = Builder::new(self.alphabet.clone());
        b.add_states(order.len());
        for (new, &old) in order.iter().enumerate() {
            b.set_final(new as StateId, self.finals[old as usize]);
            for &(s, d) in &self.trans[old as usize] {
                b.add_transition(new as StateId, s, map[d as usize]);
            }
        }
        b.build().mark_canonical()
    }
}

/// Refinable partition of `0..n` with O(1) marking.
struct Partition {
    elems: Vec<StateId>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Partition {
    fn new(n: usize, is_final: impl Fn(usize) -> bool) -> Self {
        let mut elems: Vec<StateId> = (0..n as StateId).filter(|&q| is_final(q as usize)).collect();
        let nf = elems.len();
        elems.extend((0..n as StateId).filter(|&q| !is_final(q as usize)));
        let mut p = Partition {
            loc: vec![0; n],
            block_of: vec![0; n],
            elems,
            start: Vec::new(),
            end: Vec::new(),
            marked: Vec::new(),
        };
        for (i, &q) in p.elems.iter().enumerate() {
            p.loc[q as usize] = i;
        }
        let mut bounds = vec![(0, nf), (nf, n)];
        bounds.retain(|&(s, e)| s < e);
        for (b, (s, e)) in bounds.into_iter().enumerate() {
            p.start.push(s);
            p.end.push(e);
            p.marked.push(0);
            for i in s..e {
                p.block_of[p.elems[i] as usize] = b;
            }
        }
        p
    }

    fn num_blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn members(&self, b: usize) -> &[StateId] {
        &self.elems[self.start[b]..self.end[b]]
    }

    /// Moves `q` into the marked prefix of its block; returns the block.
    fn mark(&mut self, q: usize) -> usize {
        let b = self.block_of[q];
        let i = self.loc[q];
        let j = self.start[b] + self.marked[b];
        if i >= j {
            self.elems.swap(i, j);
            self.loc[self.elems[i] as usize] = i;
            self.loc[self.elems[j] as usize] = j;
            self.marked[b] += 1;
        }
        b
    }

    /// Splits the marked prefix off `b` when it is a proper subset.
    fn split(&mut self, b: usize) -> Option<usize> {
        let m = self.marked[b];
        self.marked[b] = 0;
        if m == 0 || m == self.size(b) {
            return None;
        }
        let nb = self.num_blocks();
        let s = self.start[b];
        self.start.push(s);
        self.end.push(s + m);
        self.marked.push(0);
        self.start[b] = s + m;
        for i in s..s + m {
            self.block_of[self.elems[i] as usize] = nb;
        }
        Some(nb)
    }
}
