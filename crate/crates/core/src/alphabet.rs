//! Alphabets, words and explicit finite word sets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Characters with a fixed meaning in the regex syntax; they can never be letters.
pub const RESERVED: &[char] = &['0', '1', '|', '*', '(', ')', 'ε'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("an alphabet must contain at least one letter")]
    Empty,
    #[error("letter {0:?} is reserved by the regex syntax")]
    Reserved(char),
    #[error("letter {0:?} is whitespace")]
    Whitespace(char),
}

/// A non-empty, duplicate-free, sorted set of single-character letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Self, AlphabetError> {
        let set: BTreeSet<char> = letters.into_iter().collect();
        if set.is_empty() {
            return Err(AlphabetError::Empty);
        }
        for &c in &set {
            if RESERVED.contains(&c) {
                return Err(AlphabetError::Reserved(c));
            }
            if c.is_whitespace() {
                return Err(AlphabetError::Whitespace(c));
            }
        }
        Ok(Alphabet {
            letters: set.into_iter().collect(),
        })
    }

    /// Parses `"abc"` or `"a,b,c"` style letter lists.
    pub fn parse(text: &str) -> Result<Self, AlphabetError> {
        Self::new(text.chars().filter(|c| *c != ',' && !c.is_whitespace()))
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.binary_search(&c).ok()
    }

    pub fn letter(&self, i: usize) -> char {
        self.letters[i]
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.letters.iter().all(|&c| other.contains(c))
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet {
            letters: self
                .letters
                .iter()
                .chain(other.letters.iter())
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }

    pub fn with_letter(&self, c: char) -> Result<Alphabet, AlphabetError> {
        Alphabet::new(self.letters.iter().copied().chain(std::iter::once(c)))
    }

    /// Letter indices of `word`, or `None` if it uses a foreign letter.
    pub fn encode(&self, word: &str) -> Option<Vec<usize>> {
        word.chars().map(|c| self.index_of(c)).collect()
    }

    pub fn decode(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.letters[i]).collect()
    }

    pub fn is_word(&self, word: &str) -> bool {
        word.chars().all(|c| self.contains(c))
    }

    /// All words of length at most `n`, in shortlex order.
    pub fn words_up_to(&self, n: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for &c in &self.letters {
                    let mut v = w.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<String> {
        let mut layer = vec![String::new()];
        for _ in 0..n {
            layer = layer
                .iter()
                .flat_map(|w| {
                    self.letters.iter().map(move |&c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        layer
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.letters.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let mut letters = Vec::with_capacity(v.len());
        for s in v {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => letters.push(c),
                _ => {
                    return Err(serde::de::Error::custom(format!(
                        "alphabet entries must be single letters, got {s:?}"
                    )))
                }
            }
        }
        Alphabet::new(letters).map_err(serde::de::Error::custom)
    }
}

/// Length first, then lexicographic.
pub fn shortlex(a: &str, b: &str) -> Ordering {
    a.chars()
        .count()
        .cmp(&b.chars().count())
        .then_with(|| a.cmp(b))
}

pub fn reverse_word(w: &str) -> String {
    w.chars().rev().collect()
}

/// Renders a word for humans, with `ε` for the empty word.
pub fn show_word(w: &str) -> &str {
    if w.is_empty() {
        "ε"
    } else {
        w
    }
}

/// An explicit finite set of words, kept in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteWordSet {
    words: Vec<String>,
}

impl FiniteWordSet {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut words: Vec<String> = words.into_iter().map(Into::into).collect();
        words.sort_by(|a, b| shortlex(a, b));
        words.dedup();
        FiniteWordSet { words }
    }

    pub fn empty() -> Self {
        FiniteWordSet::default()
    }

    pub fn epsilon() -> Self {
        FiniteWordSet::new([""])
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &str) -> bool {
        self.words.binary_search_by(|x| shortlex(x, w)).is_ok()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.words.iter().map(|w| w.chars().count()).max()
    }

    pub fn union(&self, other: &FiniteWordSet) -> FiniteWordSet {
        FiniteWordSet::new(self.words.iter().chain(other.words.iter()).cloned())
    }

    pub fn reversed(&self) -> FiniteWordSet {
        FiniteWordSet::new(self.words.iter().map(|w| reverse_word(w)))
    }

    pub fn is_over(&self, alphabet: &Alphabet) -> bool {
        self.words.iter().all(|w| alphabet.is_word(w))
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.words.iter()
    }
}

impl Serialize for FiniteWordSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.words.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteWordSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(FiniteWordSet::new(Vec::<String>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_is_sorted_and_deduplicated() {
        let v = Alphabet::parse("cab,a").unwrap();
        assert_eq!(v.letters(), &['a', 'b', 'c']);
        assert_eq!(v.index_of('b'), Some(1));
        assert_eq!(v.to_string(), "abc");
    }

    #[test]
    fn alphabet_rejects_empty_and_reserved() {
        assert_eq!(Alphabet::parse(""), Err(AlphabetError::Empty));
        assert_eq!(Alphabet::parse("a1"), Err(AlphabetError::Reserved('1')));
        assert_eq!(Alphabet::parse("a*"), Err(AlphabetError::Reserved('*')));
    }

    #[test]
    fn words_up_to_is_shortlex() {
        let v = Alphabet::parse("ab").unwrap();
        let w = v.words_up_to(2);
        assert_eq!(w, ["", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(v.words_of_length(3).len(), 8);
    }

    #[test]
    fn finite_word_set_orders_and_dedups() {
        let s = FiniteWordSet::new(["ba", "", "a", "ba"]);
        assert_eq!(s.words(), ["", "a", "ba"]);
        assert!(s.contains("a"));
        assert!(!s.contains("ab"));
        assert_eq!(s.max_len(), Some(2));
        assert_eq!(s.reversed().words(), ["", "a", "ab"]);
    }
}
