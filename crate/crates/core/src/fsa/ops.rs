use std::borrow::Cow;
use std::collections::HashMap;
use std::sync::Arc;

use super::determinize::LimitExceeded;
use super::{Automaton, Builder, StateId};
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Image of a symbol under a regular substitution.
#[derive(Debug, Clone)]
pub enum Image {
    Symbol(Symbol),
    Epsilon,
    Language(Automaton),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Product {
    Union,
    Intersect,
    Difference,
}

fn as_dfa(a: &Automaton) -> Cow<'_, Automaton> {
    if a.is_deterministic() {
        Cow::Borrowed(a)
    } else {
        Cow::Owned(a.minimize())
    }
}

impl Automaton {
    pub fn union(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, Product::Union)
    }

    pub fn intersect(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, Product::Intersect)
    }

    pub fn difference(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, Product::Difference)
    }

    /// `Σ* − L(self)` relative to the automaton's alphabet.
    pub fn complement(&self) -> Automaton {
        Automaton::universal(self.alphabet.clone())
            .difference(self)
            .expect("same alphabet")
    }

    /// Product construction over partial DFAs. A missing transition stands
    /// for the implicit dead sink, encoded as `None`.
    fn product(&self, other: &Automaton, mode: Product) -> Result<Automaton> {
        self.check_same_alphabet(other)?;
        let a = as_dfa(self);
        let b = as_dfa(other);
        type Pair = (Option<StateId>, Option<StateId>);
        let accept = |(p, q): Pair| {
            let fa = p.is_some_and(|p| a.is_final(p));
            let fb = q.is_some_and(|q| b.is_final(q));
            match mode {
                Product::Union => fa || fb,
                Product::Intersect => fa && fb,
                Product::Difference => fa && !fb,
            }
        };

        let mut out = Builder::new(self.alphabet.clone());
        let mut ids: HashMap<Pair, StateId> = HashMap::new();
        let mut queue: Vec<Pair> = Vec::new();
        let start = (Some(a.initial), Some(b.initial));
        let q0 = out.add_state();
        out.set_final(q0, accept(start));
        ids.insert(start, q0);
        queue.push(start);

        let empty: &[(Symbol, StateId)] = &[];
        let mut head = 0;
        while head < queue.len() {
            let pair = queue[head];
            head += 1;
            let src = ids[&pair];
            let ta = pair.0.map_or(empty, |p| a.transitions(p));
            let tb = pair.1.map_or(empty, |q| b.transitions(q));
            let (mut i, mut j) = (0, 0);
            loop {
                let next: Option<(Symbol, Pair)> = match (ta.get(i), tb.get(j)) {
                    (None, None) => break,
                    (Some(&(s, d)), None) => {
                        i += 1;
                        (mode != Product::Intersect).then_some((s, (Some(d), None)))
                    }
                    (None, Some(&(s, d))) => {
                        j += 1;
                        (mode == Product::Union).then_some((s, (None, Some(d))))
                    }
                    (Some(&(s, d)), Some(&(t, e))) => {
                        if s == t {
                            i += 1;
                            j += 1;
                            Some((s, (Some(d), Some(e))))
                        } else if s < t {
                            i += 1;
                            (mode != Product::Intersect).then_some((s, (Some(d), None)))
                        } else {
                            j += 1;
                            (mode == Product::Union).then_some((t, (None, Some(e))))
                        }
                    }
                };
                let Some((sym, target)) = next else { continue };
                let dst = *ids.entry(target).or_insert_with(|| {
                    let d = out.add_state();
                    out.set_final(d, accept(target));
                    queue.push(target);
                    d
                });
                out.add_transition(src, sym, dst);
            }
        }
        Ok(out.build().minimize())
    }

    pub fn concat(&self, other: &Automaton) -> Result<Automaton> {
        self.check_same_alphabet(other)?;
        let mut b = Builder::new(self.alphabet.clone());
        let left = b.embed(self);
        let right = b.embed(other);
        for q in self.final_states() {
            b.set_final(left + q, false);
            b.add_epsilon(left + q, right + other.initial);
        }
        b.set_initial(left + self.initial);
        Ok(b.build().minimize())
    }

    /// Concatenation of a sequence; `{ε}` when empty.
    pub fn concat_all<'a, I>(alphabet: Arc<Alphabet>, parts: I) -> Result<Automaton>
    where
        I: IntoIterator<Item = &'a Automaton>,
    {
        let mut acc = Automaton::epsilon(alphabet);
        for p in parts {
            acc = acc.concat(p)?;
        }
        Ok(acc)
    }

    /// Positive closure `L⁺`.
    pub fn plus(&self) -> Automaton {
        let mut b = Builder::new(self.alphabet.clone());
        let off = b.embed(self);
        for q in self.final_states() {
            b.add_epsilon(off + q, off + self.initial);
        }
        b.set_initial(off + self.initial);
        b.build().minimize()
    }

    /// Kleene closure, `ε + L⁺`.
    pub fn star(&self) -> Automaton {
        let mut b = Builder::new(self.alphabet.clone());
        let start = b.add_state();
        b.set_final(start, true);
        let off = b.embed(self);
        b.add_epsilon(start, off + self.initial);
        for q in self.final_states() {
            b.add_epsilon(off + q, start);
        }
        b.set_initial(start);
        b.build().minimize()
    }

    /// Mirror image language.
    pub fn reverse(&self) -> Automaton {
        self.reverse_nfa().minimize()
    }

    /// Mirror image without determinization.
    pub(crate) fn reverse_nfa(&self) -> Automaton {
        let mut b = Builder::new(self.alphabet.clone());
        let start = b.add_state();
        let off = b.add_states(self.num_states());
        for q in 0..self.num_states() as StateId {
            for &(s, d) in self.transitions(q) {
                b.add_transition(off + d, s, off + q);
            }
            for &d in self.epsilons(q) {
                b.add_epsilon(off + d, off + q);
            }
            if self.is_final(q) {
                b.add_epsilon(start, off + q);
            }
        }
        b.set_final(off + self.initial, true);
        b.set_initial(start);
        b.build()
    }

    /// Regular substitution into `target`. Symbols absent from `mapping`
    /// keep their identity and are looked up in `target` by printed name.
    pub fn substitute(
        &self,
        mapping: &HashMap<Symbol, Image>,
        target: Arc<Alphabet>,
    ) -> Result<Automaton> {
        self.substitute_with_limit(mapping, target, None)
    }

    /// As [`Automaton::substitute`], aborting when determinization of the
    /// substituted automaton would exceed `limit` states. The error carries
    /// an empty step label for the caller to fill in.
    pub fn substitute_with_limit(
        &self,
        mapping: &HashMap<Symbol, Image>,
        target: Arc<Alphabet>,
        limit: Option<usize>,
    ) -> Result<Automaton> {
        let mut images: Vec<Option<&Image>> = vec![None; self.alphabet.len()];
        let mut relabel: Vec<Option<Symbol>> = vec![None; self.alphabet.len()];
        for s in self.alphabet.symbols() {
            match mapping.get(&s) {
                Some(img) => {
                    match img {
                        Image::Symbol(t) if t.index() >= target.len() => {
                            return Err(Error::UnknownSymbol(format!("#{}", t.0)))
                        }
                        Image::Language(m) if !Alphabet::compatible(m.alphabet(), &target) => {
                            return Err(Error::AlphabetMismatch)
                        }
                        _ => {}
                    }
                    images[s.index()] = Some(img);
                }
                None => relabel[s.index()] = target.resolve(&self.alphabet.name(s)).ok(),
            }
        }

        let mut b = Builder::new(target.clone());
        let off = b.add_states(self.num_states());
        for q in 0..self.num_states() as StateId {
            b.set_final(off + q, self.is_final(q));
            for &d in self.epsilons(q) {
                b.add_epsilon(off + q, off + d);
            }
            for &(s, d) in self.transitions(q) {
                match images[s.index()] {
                    None => match relabel[s.index()] {
                        Some(t) => b.add_transition(off + q, t, off + d),
                        None => return Err(Error::UnknownSymbol(self.alphabet.name(s))),
                    },
                    Some(Image::Symbol(t)) => b.add_transition(off + q, *t, off + d),
                    Some(Image::Epsilon) => b.add_epsilon(off + q, off + d),
                    Some(Image::Language(m)) => {
                        let moff = b.embed(m);
                        b.add_epsilon(off + q, moff + m.initial);
                        for f in m.final_states() {
                            b.set_final(moff + f, false);
                            b.add_epsilon(moff + f, off + d);
                        }
                    }
                }
            }
        }
        b.set_initial(off + self.initial);
        let nfa = b.build();
        match nfa.try_minimize(limit) {
            Ok(d) => Ok(d),
            Err(LimitExceeded(states)) => Err(Error::StateCapExceeded {
                step: String::new(),
                states,
                cap: limit.unwrap_or(usize::MAX),
            }),
        }
    }

    /// The same language over another alphabet that contains every symbol
    /// of this one.
    pub fn relabel(&self, target: Arc<Alphabet>) -> Result<Automaton> {
        if Alphabet::compatible(&self.alphabet, &target) {
            return Ok(self.clone());
        }
        self.substitute(&HashMap::new(), target)
    }

    /// Both automata moved onto the union of their alphabets, this one's
    /// symbols first.
    pub fn lift_pair(&self, other: &Automaton) -> Result<(Automaton, Automaton)> {
        if Alphabet::compatible(&self.alphabet, &other.alphabet) {
            return Ok((self.clone(), other.clone()));
        }
        let names: Vec<String> = self
            .alphabet
            .symbols()
            .map(|s| self.alphabet.name(s))
            .chain(other.alphabet.symbols().map(|s| other.alphabet.name(s)))
            .collect();
        let joint = Arc::new(Alphabet::from_tokens(&names)?);
        Ok((self.relabel(joint.clone())?, other.relabel(joint)?))
    }

    /// Erases every symbol satisfying `pred` (substitution by ε), keeping
    /// the alphabet.
    pub fn erase(&self, pred: impl Fn(Symbol) -> bool) -> Automaton {
        let mapping: HashMap<Symbol, Image> = self
            .alphabet
            .symbols()
            .filter(|&s| pred(s))
            .map(|s| (s, Image::Epsilon))
            .collect();
        self.substitute(&mapping, self.alphabet.clone())
            .expect("erasure stays inside the alphabet")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> (Arc<Alphabet>, Automaton, Automaton) {
        let al = Arc::new(Alphabet::from_terminals(["a", "b"]));
        let a = Automaton::symbols(al.clone(), &[Symbol(0)]);
        let b = Automaton::symbols(al.clone(), &[Symbol(1)]);
        (al, a, b)
    }

    fn strs(m: &Automaton, n: usize) -> Vec<String> {
        m.enumerate(n)
            .iter()
            .map(|w| m.alphabet().render_word(w))
            .collect()
    }

    #[test]
    fn boolean_identities() {
        let (al, a, b) = ab();
        let none = Automaton::empty(al.clone());
        let all = Automaton::universal(al.clone());
        assert!(none.union(&a).unwrap().equivalent(&a).unwrap());
        assert_eq!(strs(&a.union(&b).unwrap(), 3), ["a", "b"]);
        assert!(a.union(&a.complement()).unwrap().equivalent(&all).unwrap());
        assert!(all.intersect(&a).unwrap().equivalent(&a).unwrap());
        assert!(a.difference(&none).unwrap().equivalent(&a).unwrap());
        assert!(a.difference(&a).unwrap().is_empty());
        assert!(all.complement().is_empty());
        assert!(none.complement().equivalent(&all).unwrap());
    }

    #[test]
    fn rational_identities() {
        let (al, a, b) = ab();
        let eps = Automaton::epsilon(al.clone());
        assert!(eps.concat(&a).unwrap().equivalent(&a).unwrap());
        let none = Automaton::empty(al.clone());
        assert!(none.star().equivalent(&eps).unwrap());
        let apbp = a.plus().concat(&b.plus()).unwrap();
        let w = al.parse_word("a a b b b").unwrap();
        assert!(apbp.accepts(&w).unwrap());
        assert!(!apbp.accepts(&al.parse_word("a b a").unwrap()).unwrap());
        assert!(a.star().star().equivalent(&a.star()).unwrap());
    }

    #[test]
    fn alphabet_mismatch() {
        let (_, a, _) = ab();
        let other = Automaton::universal(Arc::new(Alphabet::from_terminals(["a"])));
        assert!(matches!(a.union(&other), Err(Error::AlphabetMismatch)));
        assert!(matches!(a.concat(&other), Err(Error::AlphabetMismatch)));
    }

    #[test]
    fn substitution_by_language() {
        let al = Arc::new(Alphabet::from_terminals(["a", "b", "N"]));
        let (a, b, n) = (Symbol(0), Symbol(1), Symbol(2));
        let nb = Automaton::word(al.clone(), &[n, b]);
        let aa = Automaton::word(al.clone(), &[a, a]);
        let mapping = HashMap::from([(n, Image::Language(aa))]);
        let out = nb.substitute(&mapping, al.clone()).unwrap();
        assert_eq!(strs(&out, 5), ["a a b"]);
    }

    #[test]
    fn substitution_into_smaller_alphabet() {
        let al = Arc::new(Alphabet::from_terminals(["a", "x", "b"]));
        let target = Arc::new(Alphabet::from_terminals(["a", "b"]));
        let w = Automaton::word(al.clone(), &al.parse_word("a x b x").unwrap());
        let mapping = HashMap::from([(Symbol(1), Image::Epsilon)]);
        let out = w.substitute(&mapping, target.clone()).unwrap();
        assert_eq!(strs(&out, 4), ["a b"]);
        // unmapped x has no counterpart in the target
        assert!(w.substitute(&HashMap::new(), target).is_err());
    }

    #[test]
    fn identity_substitution() {
        let (al, a, b) = ab();
        let m = a.concat(&b.star()).unwrap();
        let same = m.substitute(&HashMap::new(), al).unwrap();
        assert!(same.equivalent(&m).unwrap());
    }

    #[test]
    fn reverse_language() {
        let (al, a, b) = ab();
        let ab_star = a.concat(&b.star()).unwrap();
        let rev = ab_star.reverse();
        assert!(rev.accepts(&al.parse_word("b b a").unwrap()).unwrap());
        assert!(!rev.accepts(&al.parse_word("a b").unwrap()).unwrap());
    }
}
