//! Property tests for the automaton operations, checked against brute-force
//! membership on the raw transition lists.

mod common;

use std::sync::Arc;

use common::{all_words, brute_accepts, random_nfa, rng};
use fsa_approx::{Alphabet, Automaton, Symbol};
use proptest::prelude::*;

const MAX_LEN: usize = 5;

fn alphabet() -> Arc<Alphabet> {
    Arc::new(Alphabet::from_terminals(["a", "b", "c"]))
}

fn pair(seed: u64) -> (Automaton, Automaton) {
    let al = alphabet();
    let mut r = rng(seed);
    (random_nfa(&mut r, &al, 6), random_nfa(&mut r, &al, 6))
}

fn words() -> Vec<Vec<Symbol>> {
    all_words(3, MAX_LEN)
}

fn in_concat(a: &Automaton, b: &Automaton, w: &[Symbol]) -> bool {
    (0..=w.len()).any(|i| brute_accepts(a, &w[..i]) && brute_accepts(b, &w[i..]))
}

fn in_star(a: &Automaton, w: &[Symbol]) -> bool {
    // reach[i]: prefix of length i is a concatenation of members of `a`
    let mut reach = vec![false; w.len() + 1];
    reach[0] = true;
    for j in 1..=w.len() {
        reach[j] = (0..j).any(|i| reach[i] && brute_accepts(a, &w[i..j]));
    }
    reach[w.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinize_and_minimize_preserve_language(seed in any::<u64>()) {
        let (a, _) = pair(seed);
        let d = a.determinize();
        let m = a.minimize();
        prop_assert!(d.is_deterministic());
        for w in words() {
            let expected = brute_accepts(&a, &w);
            prop_assert_eq!(d.accepts(&w).unwrap(), expected);
            prop_assert_eq!(m.accepts(&w).unwrap(), expected);
        }
    }

    #[test]
    fn minimization_is_canonical(seed in any::<u64>()) {
        let (a, _) = pair(seed);
        let m = a.minimize();
        prop_assert!(m.is_canonical() && m.is_deterministic());
        prop_assert!(m.minimize().same_structure(&m));
        // equal languages reached by different routes give identical automata
        let other = a.reverse().reverse().determinize().minimize();
        prop_assert!(other.same_structure(&m));
        let via_union = a.union(&a).unwrap().minimize();
        prop_assert!(via_union.same_structure(&m));
        prop_assert!(m.num_states() <= a.determinize().num_states().max(1));
    }

    #[test]
    fn boolean_operations(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let union = a.union(&b).unwrap();
        let inter = a.intersect(&b).unwrap();
        let diff = a.difference(&b).unwrap();
        let comp = a.complement();
        for w in words() {
            let (x, y) = (brute_accepts(&a, &w), brute_accepts(&b, &w));
            prop_assert_eq!(union.accepts(&w).unwrap(), x || y);
            prop_assert_eq!(inter.accepts(&w).unwrap(), x && y);
            prop_assert_eq!(diff.accepts(&w).unwrap(), x && !y);
            prop_assert_eq!(comp.accepts(&w).unwrap(), !x);
        }
    }

    #[test]
    fn de_morgan_and_double_complement(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let lhs = a.union(&b).unwrap().complement();
        let rhs = a.complement().intersect(&b.complement()).unwrap();
        prop_assert!(lhs.equivalent(&rhs).unwrap());
        let lhs = a.intersect(&b).unwrap().complement();
        let rhs = a.complement().union(&b.complement()).unwrap();
        prop_assert!(lhs.equivalent(&rhs).unwrap());
        prop_assert!(a.complement().complement().equivalent(&a).unwrap());
        prop_assert!(a.complement().complement().minimize().same_structure(&a.minimize()));
    }

    #[test]
    fn rational_operations(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let cat = a.concat(&b).unwrap();
        let star = a.star();
        let plus = a.plus();
        let rev = a.reverse();
        for w in all_words(3, 4) {
            prop_assert_eq!(cat.accepts(&w).unwrap(), in_concat(&a, &b, &w));
            prop_assert_eq!(star.accepts(&w).unwrap(), in_star(&a, &w));
            let reversed: Vec<Symbol> = w.iter().rev().copied().collect();
            prop_assert_eq!(rev.accepts(&w).unwrap(), brute_accepts(&a, &reversed));
            let in_plus = in_concat(&a, &star, &w);
            prop_assert_eq!(plus.accepts(&w).unwrap(), in_plus);
        }
    }

    #[test]
    fn kleene_laws(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let al = a.alphabet().clone();
        let eps = Automaton::epsilon(al.clone());
        prop_assert!(a.star().star().equivalent(&a.star()).unwrap());
        prop_assert!(a.star().equivalent(&eps.union(&a.plus()).unwrap()).unwrap());
        prop_assert!(a.concat(&eps).unwrap().equivalent(&a).unwrap());
        let empty = Automaton::empty(al);
        prop_assert!(a.concat(&empty).unwrap().is_empty());
        // (a+b)* = (a*b*)*
        let lhs = a.union(&b).unwrap().star();
        let rhs = a.star().concat(&b.star()).unwrap().star();
        prop_assert!(lhs.equivalent(&rhs).unwrap());
        prop_assert!(a.subset_of(&lhs).unwrap());
    }

    #[test]
    fn enumeration_order_and_content(seed in any::<u64>()) {
        let (a, _) = pair(seed);
        let listed = a.enumerate(4);
        let expected: Vec<Vec<Symbol>> = all_words(3, 4).into_iter().filter(|w| brute_accepts(&a, w)).collect();
        prop_assert_eq!(listed, expected);
    }

    #[test]
    fn tab_round_trip(seed in any::<u64>()) {
        let (a, _) = pair(seed);
        let m = a.minimize();
        let back = Automaton::from_tab_with(&a.to_tab(), a.alphabet().clone()).unwrap();
        prop_assert!(back.minimize().same_structure(&m));
        prop_assert_eq!(back.to_tab(), a.to_tab());
    }
}
