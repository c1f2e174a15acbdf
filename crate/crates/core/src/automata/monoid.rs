use std::collections::HashMap;

use super::{AutomataError, Dfa};

pub const DEFAULT_MONOID_CAP: usize = 1_000_000;

/// A state map induced by a word, with its shortlex-least representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidElement {
    pub map: Vec<usize>,
    pub word: String,
}

impl MonoidElement {
    /// `self` followed by `other`.
    pub fn then(&self, other: &[usize]) -> Vec<usize> {
        self.map.iter().map(|&q| other[q]).collect()
    }

    /// The map of the `k`-th power.
    pub fn power(&self, k: usize) -> Vec<usize> {
        let mut acc: Vec<usize> = (0..self.map.len()).collect();
        for _ in 0..k {
            acc = acc.iter().map(|&q| self.map[q]).collect();
        }
        acc
    }

    /// Smallest `k ≥ 1` with `t^k = t^{k+1}`, if the powers of `t` stabilise.
    pub fn aperiodic_index(&self) -> Option<usize> {
        let (index, period) = self.index_and_period();
        (period == 1).then_some(index.max(1))
    }

    /// Index and period of the cyclic subsemigroup `{t, t², …}`: the least `i ≥ 1`
    /// and `p ≥ 1` with `t^i = t^{i+p}`.
    pub fn index_and_period(&self) -> (usize, usize) {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut cur = self.map.clone();
        let mut k = 1;
        loop {
            if let Some(&first) = seen.get(&cur) {
                return (first, k - first);
            }
            seen.insert(cur.clone(), k);
            cur = cur.iter().map(|&q| self.map[q]).collect();
            k += 1;
        }
    }
}

/// The transition monoid of a DFA, closed under composition.
#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    elements: Vec<MonoidElement>,
    index: HashMap<Vec<usize>, usize>,
}

impl TransitionMonoid {
    /// Breadth-first closure from the identity over sorted letters, so each element
    /// keeps its shortlex-least word.
    pub fn of(dfa: &Dfa, cap: usize) -> Result<TransitionMonoid, AutomataError> {
        let n = dfa.num_states();
        let identity: Vec<usize> = (0..n).collect();
        let mut elements = vec![MonoidElement {
            map: identity.clone(),
            word: String::new(),
        }];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut i = 0;
        while i < elements.len() {
            for (a, &c) in dfa.alphabet().letters().iter().enumerate() {
                let map: Vec<usize> = elements[i].map.iter().map(|&q| dfa.next(q, a)).collect();
                if index.contains_key(&map) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(AutomataError::ResourceCap {
                        what: "transition monoid",
                        cap,
                    });
                }
                let mut word = elements[i].word.clone();
                word.push(c);
                index.insert(map.clone(), elements.len());
                elements.push(MonoidElement { map, word });
            }
            i += 1;
        }
        Ok(TransitionMonoid { elements, index })
    }

    pub fn elements(&self) -> &[MonoidElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, map: &[usize]) -> bool {
        self.index.contains_key(map)
    }

    /// Every product of two elements is again an element.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|x| self.elements.iter().all(|y| self.contains(&x.then(&y.map))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::regex::parse_regex;

    fn dfa(src: &str, v: &str) -> Dfa {
        let a = Alphabet::parse(v).unwrap();
        Dfa::from_regex(&parse_regex(src, &a).unwrap(), &a)
    }

    #[test]
    fn one_state_monoid_is_trivial() {
        let m = TransitionMonoid::of(&dfa("a*", "a"), DEFAULT_MONOID_CAP).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.elements()[0].map, vec![0]);
    }

    #[test]
    fn even_a_monoid_is_cyclic_of_order_two() {
        let m = TransitionMonoid::of(&dfa("(aa)*", "a"), DEFAULT_MONOID_CAP).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.elements()[1].map, vec![1, 0]);
        assert_eq!(m.elements()[1].word, "a");
        assert_eq!(m.elements()[1].aperiodic_index(), None);
        assert!(m.is_closed());
    }

    #[test]
    fn ab_star_monoid() {
        // maps on {start, after-a, sink}: 1, a, b, ab, ba, aa(=zero)
        let m = TransitionMonoid::of(&dfa("(ab)*", "ab"), DEFAULT_MONOID_CAP).unwrap();
        assert_eq!(m.len(), 6);
        assert!(m.len() <= 15);
        assert!(m.is_closed());
        let words: Vec<&str> = m.elements().iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["", "a", "b", "aa", "ab", "ba"]);
        assert!(m.elements().iter().all(|e| e.aperiodic_index().is_some()));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            TransitionMonoid::of(&dfa("(ab)*", "ab"), 3),
            Err(AutomataError::ResourceCap { .. })
        ));
    }

    #[test]
    fn index_and_period() {
        let e = MonoidElement {
            map: vec![1, 2, 3, 2],
            word: "x".into(),
        };
        // t = 0→1→2→3→2 ; t² maps 0→2, t³ maps 0→3, t⁴ maps 0→2
        assert_eq!(e.index_and_period(), (2, 2));
        assert_eq!(e.power(0), vec![0, 1, 2, 3]);
        assert_eq!(e.power(2), vec![2, 3, 2, 3]);
    }
}
