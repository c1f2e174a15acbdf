use std::collections::{HashMap, VecDeque};

use super::{AutomataError, Nfa};
use crate::alphabet::{Alphabet, FiniteWordSet};
use crate::regex::Regex;

/// Default bound on the word length accepted by [`Dfa::enumerate`].
pub const DEFAULT_ENUM_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Cardinality {
    Empty,
    FiniteNonempty,
    Infinite,
}

/// Complete deterministic automaton `(V, Z, z₀, F, δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Validating constructor.
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Result<Dfa, AutomataError> {
        let n = delta.len();
        if n == 0 {
            return Err(AutomataError::Malformed("no states".into()));
        }
        if accepting.len() != n {
            return Err(AutomataError::Malformed(
                "accepting flags do not match the state count".into(),
            ));
        }
        if initial >= n {
            return Err(AutomataError::UnknownState(initial));
        }
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(AutomataError::Malformed(
                    "transition function is not total".into(),
                ));
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(AutomataError::UnknownState(bad));
            }
        }
        Ok(Dfa::from_parts(alphabet, delta, initial, accepting))
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Dfa {
        Dfa {
            alphabet,
            delta,
            initial,
            accepting,
        }
    }

    /// Minimal DFA of `L(r)`.
    pub fn from_regex(r: &Regex, alphabet: &Alphabet) -> Dfa {
        Nfa::from_regex(r, alphabet).determinize().minimize()
    }

    pub fn empty(alphabet: &Alphabet) -> Dfa {
        Dfa::from_parts(
            alphabet.clone(),
            vec![vec![0; alphabet.len()]],
            0,
            vec![false],
        )
    }

    pub fn universal(alphabet: &Alphabet) -> Dfa {
        Dfa::from_parts(
            alphabet.clone(),
            vec![vec![0; alphabet.len()]],
            0,
            vec![true],
        )
    }

    pub fn epsilon(alphabet: &Alphabet) -> Dfa {
        Dfa::from_parts(
            alphabet.clone(),
            vec![vec![1; alphabet.len()], vec![1; alphabet.len()]],
            0,
            vec![true, false],
        )
    }

    /// Minimal DFA of a finite word list; words with foreign letters are ignored.
    pub fn from_words<'a, I: IntoIterator<Item = &'a String>>(
        alphabet: &Alphabet,
        words: I,
    ) -> Dfa {
        Dfa::from_regex(
            &Regex::words(words.into_iter().filter(|w| alphabet.is_word(w))),
            alphabet,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.num_states())
            .filter(|&q| self.accepting[q])
            .collect()
    }

    pub fn next(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn run_letters(&self, mut q: usize, letters: &[usize]) -> usize {
        for &a in letters {
            q = self.delta[q][a];
        }
        q
    }

    /// State reached from `q` on `word`, or `None` for a foreign letter.
    pub fn run(&self, q: usize, word: &str) -> Option<usize> {
        let mut q = q;
        for c in word.chars() {
            q = self.delta[q][self.alphabet.index_of(c)?];
        }
        Some(q)
    }

    pub fn accepts(&self, word: &str) -> bool {
        self.run(self.initial, word)
            .map(|q| self.accepting[q])
            .unwrap_or(false)
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which an accepting state can be reached.
    pub fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for &t in &self.delta[q] {
                rev[t].push(q);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Minimal complete DFA, canonically numbered.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let states: Vec<usize> = (0..self.num_states()).filter(|&q| reach[q]).collect();
        let k = self.alphabet.len();
        let mut class = vec![0usize; self.num_states()];
        for &q in &states {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut count = {
            let mut seen = [false; 2];
            for &q in &states {
                seen[class[q]] = true;
            }
            seen.iter().filter(|&&b| b).count()
        };
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0usize; self.num_states()];
            for &q in &states {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend(self.delta[q].iter().map(|&t| class[t]));
                let fresh = ids.len();
                next[q] = *ids.entry(sig).or_insert(fresh);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Canonical numbering: breadth-first over sorted letters.
        let mut number: Vec<Option<usize>> = vec![None; count];
        let mut rep: Vec<usize> = Vec::with_capacity(count);
        number[class[self.initial]] = Some(0);
        rep.push(self.initial);
        let mut i = 0;
        while i < rep.len() {
            let q = rep[i];
            for a in 0..k {
                let c = class[self.delta[q][a]];
                if number[c].is_none() {
                    number[c] = Some(rep.len());
                    rep.push(self.delta[q][a]);
                }
            }
            i += 1;
        }
        let delta = rep
            .iter()
            .map(|&q| {
                (0..k)
                    .map(|a| number[class[self.delta[q][a]]].expect("reachable class"))
                    .collect()
            })
            .collect();
        let accepting = rep.iter().map(|&q| self.accepting[q]).collect();
        Dfa::from_parts(self.alphabet.clone(), delta, 0, accepting)
    }

    fn same_alphabet(&self, other: &Dfa) -> Result<(), AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    /// Reachable part of the product automaton with acceptance given by `op`.
    fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Result<Dfa, AutomataError> {
        self.same_alphabet(other)?;
        let k = self.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let t = (self.delta[p][a], other.delta[q][a]);
                let id = *index.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    pairs.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| op(self.accepting[p], other.accepting[q]))
            .collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), delta, 0, accepting).minimize())
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Dfa {
        Dfa::from_parts(
            self.alphabet.clone(),
            self.delta.clone(),
            self.initial,
            self.accepting.iter().map(|a| !a).collect(),
        )
        .minimize()
    }

    pub fn concat(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        Ok(Nfa::from_dfa(self)
            .concat(&Nfa::from_dfa(other))?
            .determinize()
            .minimize())
    }

    pub fn star(&self) -> Dfa {
        Nfa::from_dfa(self).star().determinize().minimize()
    }

    pub fn reverse(&self) -> Dfa {
        Nfa::from_dfa(self).reverse().determinize().minimize()
    }

    /// Shortest word (shortlex-least) accepted by exactly one of the two automata.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<String>, AutomataError> {
        self.same_alphabet(other)?;
        let k = self.alphabet.len();
        let start = (self.initial, other.initial);
        type Pair = (usize, usize);
        let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.accepting[p] != other.accepting[q] {
                let mut letters = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    letters.push(*a);
                    cur = *prev;
                }
                letters.reverse();
                return Ok(Some(self.alphabet.decode(&letters)));
            }
            for a in 0..k {
                let t = (self.delta[p][a], other.delta[q][a]);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                    e.insert(Some(((p, q), a)));
                    queue.push_back(t);
                }
            }
        }
        Ok(None)
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool, AutomataError> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// `L(self) ⊆ L(other)`.
    pub fn subset(&self, other: &Dfa) -> Result<bool, AutomataError> {
        self.same_alphabet(other)?;
        Ok(self.includes_from(self.initial, other, other.initial))
    }

    /// Whether the language of `self` from `p` is included in that of `other` from `q`.
    pub(crate) fn includes_from(&self, p: usize, other: &Dfa, q: usize) -> bool {
        let k = self.alphabet.len();
        let mut seen = std::collections::HashSet::new();
        seen.insert((p, q));
        let mut stack = vec![(p, q)];
        while let Some((p, q)) = stack.pop() {
            if self.accepting[p] && !other.accepting[q] {
                return false;
            }
            for a in 0..k {
                let t = (self.delta[p][a], other.delta[q][a]);
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        true
    }

    pub fn is_empty_language(&self) -> bool {
        let reach = self.reachable();
        !(0..self.num_states()).any(|q| reach[q] && self.accepting[q])
    }

    pub fn is_universal(&self) -> bool {
        let reach = self.reachable();
        (0..self.num_states()).all(|q| !reach[q] || self.accepting[q])
    }

    /// Whether the language is exactly `{λ}`.
    pub fn is_epsilon_only(&self) -> bool {
        self.equivalent(&Dfa::epsilon(&self.alphabet))
            .unwrap_or(false)
    }

    pub fn cardinality(&self) -> Cardinality {
        let reach = self.reachable();
        let co = self.coaccessible();
        let useful: Vec<bool> = (0..self.num_states()).map(|q| reach[q] && co[q]).collect();
        if !useful.iter().any(|&u| u) || !useful[self.initial] {
            return Cardinality::Empty;
        }
        // Cycle detection restricted to useful states.
        let n = self.num_states();
        let mut color = vec![0u8; n];
        for root in 0..n {
            if !useful[root] || color[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            color[root] = 1;
            while let Some(&mut (q, ref mut i)) = stack.last_mut() {
                if *i < self.delta[q].len() {
                    let t = self.delta[q][*i];
                    *i += 1;
                    if !useful[t] {
                        continue;
                    }
                    match color[t] {
                        0 => {
                            color[t] = 1;
                            stack.push((t, 0));
                        }
                        1 => return Cardinality::Infinite,
                        _ => {}
                    }
                } else {
                    color[q] = 2;
                    stack.pop();
                }
            }
        }
        Cardinality::FiniteNonempty
    }

    /// `L ∩ V^{≤n}` in shortlex order, with the default length cap.
    pub fn enumerate(&self, n: usize) -> Result<Vec<String>, AutomataError> {
        self.enumerate_capped(n, DEFAULT_ENUM_CAP)
    }

    pub fn enumerate_capped(&self, n: usize, cap: usize) -> Result<Vec<String>, AutomataError> {
        if n > cap {
            return Err(AutomataError::ResourceCap {
                what: "enumeration length",
                cap,
            });
        }
        Ok(self.enumerate_unchecked(n))
    }

    fn enumerate_unchecked(&self, n: usize) -> Vec<String> {
        let dist = self.distance_to_accept();
        let mut out = Vec::new();
        let mut layer: Vec<(String, usize)> = vec![(String::new(), self.initial)];
        for len in 0..=n {
            let mut next = Vec::new();
            for (w, q) in &layer {
                if self.accepting[*q] {
                    out.push(w.clone());
                }
                if len == n {
                    continue;
                }
                for (a, &c) in self.alphabet.letters().iter().enumerate() {
                    let t = self.delta[*q][a];
                    if dist[t].is_some_and(|d| d < n - len) {
                        let mut v = w.clone();
                        v.push(c);
                        next.push((v, t));
                    }
                }
            }
            layer = next;
        }
        out
    }

    fn distance_to_accept(&self) -> Vec<Option<usize>> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for &t in &self.delta[q] {
                rev[t].push(q);
            }
        }
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        for (q, &acc) in self.accepting.iter().enumerate() {
            if acc {
                dist[q] = Some(0);
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            let d = dist[q].unwrap();
            for &p in &rev[q] {
                if dist[p].is_none() {
                    dist[p] = Some(d + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// All words of a finite language, or `None` when it is infinite.
    pub fn finite_words(&self) -> Option<FiniteWordSet> {
        match self.cardinality() {
            Cardinality::Infinite => None,
            Cardinality::Empty => Some(FiniteWordSet::empty()),
            // Longest word of a finite language is shorter than the state count.
            Cardinality::FiniteNonempty => Some(FiniteWordSet::new(
                self.enumerate_unchecked(self.num_states()),
            )),
        }
    }

    /// Language accepted from state `q`.
    pub fn residual(&self, q: usize) -> Result<Dfa, AutomataError> {
        if q >= self.num_states() {
            return Err(AutomataError::UnknownState(q));
        }
        Ok(Dfa::from_parts(
            self.alphabet.clone(),
            self.delta.clone(),
            q,
            self.accepting.clone(),
        )
        .minimize())
    }

    /// `w⁻¹L = { x : wx ∈ L }`.
    pub fn left_word_quotient(&self, w: &str) -> Result<Dfa, AutomataError> {
        let letters: Vec<usize> = w
            .chars()
            .map(|c| {
                self.alphabet
                    .index_of(c)
                    .ok_or(AutomataError::UnknownLetter(c))
            })
            .collect::<Result<_, _>>()?;
        self.residual(self.run_letters(self.initial, &letters))
    }

    /// `{ g ∈ V* : g·L ⊆ L }`: words leading to a state whose residual contains `L`.
    pub fn left_stabilizer(&self) -> Dfa {
        let m = self.minimize();
        let accepting = (0..m.num_states())
            .map(|p| m.includes_from(m.initial, &m, p))
            .collect();
        Dfa::from_parts(m.alphabet.clone(), m.delta.clone(), m.initial, accepting).minimize()
    }

    /// Same language over a larger alphabet; new letters lead to a sink.
    pub fn with_alphabet(&self, bigger: &Alphabet) -> Result<Dfa, AutomataError> {
        if !self.alphabet.is_subset_of(bigger) {
            return Err(AutomataError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: bigger.to_string(),
            });
        }
        let n = self.num_states();
        let sink = n;
        let mut delta = Vec::with_capacity(n + 1);
        for q in 0..=n {
            let row = bigger
                .letters()
                .iter()
                .map(|&c| match self.alphabet.index_of(c) {
                    Some(a) if q < n => self.delta[q][a],
                    _ => sink,
                })
                .collect();
            delta.push(row);
        }
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Ok(Dfa::from_parts(bigger.clone(), delta, self.initial, accepting).minimize())
    }

    /// A regex for the language, by state elimination.
    pub fn to_regex(&self) -> Regex {
        super::to_regex::dfa_to_regex(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn dfa(src: &str, v: &str) -> Dfa {
        let a = Alphabet::parse(v).unwrap();
        Dfa::from_regex(&parse_regex(src, &a).unwrap(), &a)
    }

    #[test]
    fn minimal_dfa_of_ab_star_has_three_states() {
        // start/accept, after `a`, sink
        let d = dfa("(ab)*", "ab");
        assert_eq!(d.num_states(), 3);
        assert_eq!(d.transitions(), &[vec![1, 2], vec![2, 0], vec![2, 2]]);
        assert_eq!(d.accepting_states(), vec![0]);
    }

    #[test]
    fn empty_language_is_a_single_sink() {
        let d = dfa("0", "ab");
        assert_eq!(d.num_states(), 1);
        assert!(!d.is_accepting(0));
    }

    #[test]
    fn a_or_b_has_three_states() {
        assert_eq!(dfa("a|b", "ab").num_states(), 3);
    }

    #[test]
    fn minimization_is_idempotent_and_canonical() {
        let d = dfa("(a|b)*abb", "ab");
        assert_eq!(d.minimize(), d);
        assert_eq!(dfa("(a*b*)*", "ab"), dfa("(a|b)*", "ab"));
    }

    #[test]
    fn equivalence_and_containment() {
        assert!(dfa("(a|b)*", "ab")
            .equivalent(&dfa("(a*b*)*", "ab"))
            .unwrap());
        assert!(dfa("a*", "ab").subset(&dfa("(a|b)*", "ab")).unwrap());
        assert!(!dfa("1", "ab").equivalent(&dfa("0", "ab")).unwrap());
        assert!(matches!(
            dfa("a", "a").equivalent(&dfa("a", "ab")),
            Err(AutomataError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn distinguishing_word_is_shortest() {
        let w = dfa("a*", "ab")
            .distinguishing_word(&dfa("a*|b", "ab"))
            .unwrap();
        assert_eq!(w.as_deref(), Some("b"));
    }

    #[test]
    fn cardinality_classes() {
        assert_eq!(dfa("0", "a").cardinality(), Cardinality::Empty);
        assert_eq!(dfa("1|a", "a").cardinality(), Cardinality::FiniteNonempty);
        assert_eq!(dfa("a*b", "ab").cardinality(), Cardinality::Infinite);
        assert_eq!(dfa("0a*", "a").cardinality(), Cardinality::Empty);
    }

    #[test]
    fn boolean_and_rational_operations() {
        let l = dfa("a*b", "ab");
        assert!(l.reverse().equivalent(&dfa("ba*", "ab")).unwrap());
        assert!(dfa("0", "a").star().equivalent(&dfa("1", "a")).unwrap());
        let ab = dfa("(ab)*", "ab");
        assert!(ab.complement().complement().equivalent(&ab).unwrap());
        let inter = dfa("a*b*", "ab").intersect(&dfa("b*a*", "ab")).unwrap();
        assert!(inter.equivalent(&dfa("a*|b*", "ab")).unwrap());
        let diff = dfa("a*", "ab").difference(&dfa("1", "ab")).unwrap();
        assert!(diff.equivalent(&dfa("aa*", "ab")).unwrap());
        let cat = dfa("a", "ab").concat(&dfa("b*", "ab")).unwrap();
        assert!(cat.equivalent(&dfa("ab*", "ab")).unwrap());
    }

    #[test]
    fn enumeration_is_shortlex() {
        assert_eq!(dfa("(ab)*", "ab").enumerate(4).unwrap(), ["", "ab", "abab"]);
        assert!(dfa("0", "ab").enumerate(5).unwrap().is_empty());
        assert_eq!(dfa("(a|b)*", "ab").enumerate(1).unwrap(), ["", "a", "b"]);
        assert!(matches!(
            dfa("a", "a").enumerate(33),
            Err(AutomataError::ResourceCap { .. })
        ));
    }

    #[test]
    fn quotients_and_residuals() {
        let l = dfa("a*b", "ab");
        assert!(l.left_word_quotient("a").unwrap().equivalent(&l).unwrap());
        assert!(l
            .left_word_quotient("b")
            .unwrap()
            .equivalent(&dfa("1", "ab"))
            .unwrap());
        let sink = (0..l.num_states()).find(|&q| !l.coaccessible()[q]).unwrap();
        assert!(l.residual(sink).unwrap().is_empty_language());
        assert_eq!(l.residual(9), Err(AutomataError::UnknownState(9)));
        assert_eq!(
            l.left_word_quotient("c"),
            Err(AutomataError::UnknownLetter('c'))
        );
    }

    #[test]
    fn stabilizer_special_cases() {
        let v = "ab";
        assert!(dfa("a*b", v)
            .left_stabilizer()
            .equivalent(&dfa("a*", v))
            .unwrap());
        assert!(dfa("1", v)
            .left_stabilizer()
            .equivalent(&dfa("1", v))
            .unwrap());
        assert!(dfa("0", v).left_stabilizer().is_universal());
    }

    #[test]
    fn finite_words_of_finite_language() {
        let w = dfa("1|a|ab", "ab").finite_words().unwrap();
        assert_eq!(w.words(), ["", "a", "ab"]);
        assert!(dfa("a*", "ab").finite_words().is_none());
    }

    #[test]
    fn alphabet_extension_adds_sink() {
        let big = Alphabet::parse("abx").unwrap();
        let d = dfa("(ab)*", "ab").with_alphabet(&big).unwrap();
        assert!(d.accepts("abab"));
        assert!(!d.accepts("axb"));
        assert_eq!(d.num_states(), 3);
    }

    #[test]
    fn validating_constructor() {
        let v = Alphabet::parse("a").unwrap();
        assert!(Dfa::new(v.clone(), vec![vec![0]], 0, vec![true]).is_ok());
        assert_eq!(
            Dfa::new(v.clone(), vec![vec![3]], 0, vec![true]),
            Err(AutomataError::UnknownState(3))
        );
        assert!(Dfa::new(v, vec![vec![]], 0, vec![true]).is_err());
    }
}
