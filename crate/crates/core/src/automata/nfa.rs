use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{AutomataError, Dfa};
use crate::alphabet::Alphabet;
use crate::regex::Regex;

/// Nondeterministic automaton with ε-moves and several initial states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    pub(crate) alphabet: Alphabet,
    /// `trans[state][letter]` lists successor states.
    pub(crate) trans: Vec<Vec<Vec<usize>>>,
    pub(crate) eps: Vec<Vec<usize>>,
    pub(crate) initial: Vec<usize>,
    pub(crate) accepting: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            trans: Vec::new(),
            eps: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.trans[q][letter]
    }

    pub fn eps_successors(&self, q: usize) -> &[usize] {
        &self.eps[q]
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.trans.push(vec![Vec::new(); self.alphabet.len()]);
        self.eps.push(Vec::new());
        self.accepting.push(accepting);
        self.trans.len() - 1
    }

    pub fn add_transition(&mut self, from: usize, letter: usize, to: usize) {
        self.trans[from][letter].push(to);
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    pub fn set_initial(&mut self, q: usize) {
        if !self.initial.contains(&q) {
            self.initial.push(q);
        }
    }

    pub fn set_accepting(&mut self, q: usize, acc: bool) {
        self.accepting[q] = acc;
    }

    /// Thompson construction. Letters outside `alphabet` make the symbol denote `∅`.
    pub fn from_regex(r: &Regex, alphabet: &Alphabet) -> Nfa {
        let mut n = Nfa::new(alphabet.clone());
        let (s, f) = n.thompson(r);
        n.set_initial(s);
        n.set_accepting(f, true);
        n
    }

    fn thompson(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Empty => (self.add_state(false), self.add_state(false)),
            Regex::Symbol(c) => {
                let s = self.add_state(false);
                let f = self.add_state(false);
                if let Some(i) = self.alphabet.index_of(*c) {
                    self.add_transition(s, i, f);
                }
                (s, f)
            }
            Regex::Concat(l, rr) => {
                let (s1, f1) = self.thompson(l);
                let (s2, f2) = self.thompson(rr);
                self.add_eps(f1, s2);
                (s1, f2)
            }
            Regex::Union(l, rr) => {
                let s = self.add_state(false);
                let (s1, f1) = self.thompson(l);
                let (s2, f2) = self.thompson(rr);
                let f = self.add_state(false);
                self.add_eps(s, s1);
                self.add_eps(s, s2);
                self.add_eps(f1, f);
                self.add_eps(f2, f);
                (s, f)
            }
            Regex::Star(inner) => {
                let s = self.add_state(false);
                let (s1, f1) = self.thompson(inner);
                let f = self.add_state(false);
                self.add_eps(s, s1);
                self.add_eps(s, f);
                self.add_eps(f1, s1);
                self.add_eps(f1, f);
                (s, f)
            }
        }
    }

    pub fn from_dfa(d: &Dfa) -> Nfa {
        let mut n = Nfa::new(d.alphabet().clone());
        for q in 0..d.num_states() {
            n.add_state(d.is_accepting(q));
        }
        for q in 0..d.num_states() {
            for a in 0..d.alphabet().len() {
                n.add_transition(q, a, d.next(q, a));
            }
        }
        n.set_initial(d.initial());
        n
    }

    fn check_alphabet(&self, other: &Nfa) -> Result<(), AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    /// Copies `other` into `self`, returning the state offset.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.num_states();
        for q in 0..other.num_states() {
            self.trans.push(
                other.trans[q]
                    .iter()
                    .map(|ts| ts.iter().map(|t| t + off).collect())
                    .collect(),
            );
            self.eps
                .push(other.eps[q].iter().map(|t| t + off).collect());
            self.accepting.push(other.accepting[q]);
        }
        off
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa, AutomataError> {
        self.check_alphabet(other)?;
        let mut n = self.clone();
        let off = n.absorb(other);
        for &q in &other.initial {
            n.set_initial(q + off);
        }
        Ok(n)
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa, AutomataError> {
        self.check_alphabet(other)?;
        let mut n = self.clone();
        let off = n.absorb(other);
        for q in 0..self.num_states() {
            if self.accepting[q] {
                n.accepting[q] = false;
                for &i in &other.initial {
                    n.add_eps(q, i + off);
                }
            }
        }
        Ok(n)
    }

    pub fn star(&self) -> Nfa {
        let mut n = self.clone();
        let s = n.add_state(true);
        for &i in &self.initial {
            n.add_eps(s, i);
        }
        for q in 0..self.num_states() {
            if self.accepting[q] {
                n.add_eps(q, s);
            }
        }
        n.initial = vec![s];
        n
    }

    /// Automaton of `{ w^R : w ∈ L }`.
    pub fn reverse(&self) -> Nfa {
        let k = self.num_states();
        let mut n = Nfa::new(self.alphabet.clone());
        for _ in 0..k {
            n.add_state(false);
        }
        for q in 0..k {
            for a in 0..self.alphabet.len() {
                for &t in &self.trans[q][a] {
                    n.add_transition(t, a, q);
                }
            }
            for &t in &self.eps[q] {
                n.add_eps(t, q);
            }
        }
        for &i in &self.initial {
            n.set_accepting(i, true);
        }
        for q in 0..k {
            if self.accepting[q] {
                n.set_initial(q);
            }
        }
        n
    }

    /// Makes every state initial; the result accepts every suffix of every word
    /// readable from the initial states that ends in an accepting state, provided
    /// the automaton is trimmed to reachable states first.
    pub fn all_reachable_initial(&self) -> Nfa {
        let reach = self.reachable();
        let mut n = self.clone();
        n.initial = (0..self.num_states()).filter(|&q| reach[q]).collect();
        n
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = self.initial.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            let succ = self.trans[q].iter().flatten().chain(self.eps[q].iter());
            for &t in succ {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    fn eps_closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    pub fn accepts(&self, word: &str) -> bool {
        let Some(letters) = self.alphabet.encode(word) else {
            return false;
        };
        let mut cur: BTreeSet<usize> = self.initial.iter().copied().collect();
        self.eps_closure(&mut cur);
        for a in letters {
            let mut next = BTreeSet::new();
            for &q in &cur {
                next.extend(self.trans[q][a].iter().copied());
            }
            self.eps_closure(&mut next);
            cur = next;
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    /// Subset construction; the empty subset becomes the sink.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut start: BTreeSet<usize> = self.initial.iter().copied().collect();
        self.eps_closure(&mut start);
        let start: Vec<usize> = start.into_iter().collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        index.insert(start.clone(), 0);
        sets.push(start);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut next = BTreeSet::new();
                for &q in &sets[i] {
                    next.extend(self.trans[q][a].iter().copied());
                }
                self.eps_closure(&mut next);
                let next: Vec<usize> = next.into_iter().collect();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        index.insert(next.clone(), id);
                        sets.push(next);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            delta.push(row);
        }
        let accepting = sets
            .iter()
            .map(|s| s.iter().any(|&q| self.accepting[q]))
            .collect();
        Dfa::from_parts(self.alphabet.clone(), delta, 0, accepting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn nfa(src: &str, v: &str) -> Nfa {
        let a = Alphabet::parse(v).unwrap();
        Nfa::from_regex(&parse_regex(src, &a).unwrap(), &a)
    }

    #[test]
    fn empty_regex_accepts_nothing() {
        let n = nfa("0", "a");
        assert!(!n.accepts(""));
        assert!(!n.accepts("a"));
        assert!(n.determinize().minimize().is_empty_language());
    }

    #[test]
    fn epsilon_regex_accepts_only_lambda() {
        let n = nfa("1", "a");
        assert!(n.accepts(""));
        assert!(!n.accepts("a"));
    }

    #[test]
    fn thompson_agrees_with_direct_matching() {
        let a = Alphabet::parse("ab").unwrap();
        let r = parse_regex("(ab)*", &a).unwrap();
        let n = Nfa::from_regex(&r, &a);
        for w in a.words_up_to(6) {
            assert_eq!(n.accepts(&w), r.matches(&w), "{w}");
        }
        assert!(n.accepts("") && n.accepts("ab") && n.accepts("abab"));
    }

    #[test]
    fn reverse_flips_words() {
        let n = nfa("a*b", "ab").reverse();
        assert!(n.accepts("b"));
        assert!(n.accepts("baa"));
        assert!(!n.accepts("ab"));
    }

    #[test]
    fn union_rejects_alphabet_mismatch() {
        assert!(matches!(
            nfa("a", "a").union(&nfa("a", "ab")),
            Err(AutomataError::AlphabetMismatch { .. })
        ));
    }
}
