//! Regular-expression syntax trees over a declared alphabet.
//!
//! Concrete syntax: `0` is the empty set, `1` abbreviates `0*` (the set holding
//! only the empty word), juxtaposition concatenates, `|` unites, postfix `*` is
//! the Kleene closure. Star binds tightest, then concatenation, then union; both
//! binary operators associate to the left.

mod parse;
mod rewrite;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::alphabet::Alphabet;

pub use parse::{parse_regex, ParseError};
pub use rewrite::{
    star_decomposition, union_normal_form, StarDecomposition, StarDecompositionError,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regex {
    Empty,
    Symbol(char),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn sym(c: char) -> Regex {
        Regex::Symbol(c)
    }

    /// `0*`, the only way to write the empty word.
    pub fn epsilon() -> Regex {
        Regex::Star(Box::new(Regex::Empty))
    }

    pub fn concat(l: Regex, r: Regex) -> Regex {
        Regex::Concat(Box::new(l), Box::new(r))
    }

    pub fn union(l: Regex, r: Regex) -> Regex {
        Regex::Union(Box::new(l), Box::new(r))
    }

    pub fn star(r: Regex) -> Regex {
        Regex::Star(Box::new(r))
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self, Regex::Star(inner) if **inner == Regex::Empty)
    }

    /// Left-folded concatenation; the empty sequence is `1`.
    pub fn concat_all<I: IntoIterator<Item = Regex>>(parts: I) -> Regex {
        parts
            .into_iter()
            .reduce(Regex::concat)
            .unwrap_or_else(Regex::epsilon)
    }

    /// Left-folded union; the empty sequence is `0`.
    pub fn union_all<I: IntoIterator<Item = Regex>>(parts: I) -> Regex {
        parts
            .into_iter()
            .reduce(Regex::union)
            .unwrap_or(Regex::Empty)
    }

    /// The regex of a single word (`1` for the empty word).
    pub fn word(w: &str) -> Regex {
        Regex::concat_all(w.chars().map(Regex::Symbol))
    }

    /// The regex of a finite set of words (`0` for the empty set).
    pub fn words<'a, I: IntoIterator<Item = &'a String>>(ws: I) -> Regex {
        Regex::union_all(ws.into_iter().map(|w| Regex::word(w)))
    }

    /// `(a|b|...)*` over every letter of `v`.
    pub fn universe(v: &Alphabet) -> Regex {
        Regex::star(Regex::union_all(
            v.letters().iter().map(|&c| Regex::Symbol(c)),
        ))
    }

    /// Number of operator nodes, i.e. the construction depth.
    pub fn construction_depth(&self) -> usize {
        match self {
            Regex::Empty | Regex::Symbol(_) => 0,
            Regex::Concat(l, r) | Regex::Union(l, r) => {
                1 + l.construction_depth() + r.construction_depth()
            }
            Regex::Star(i) => 1 + i.construction_depth(),
        }
    }

    /// Total number of nodes, leaves included.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Symbol(_) => 1,
            Regex::Concat(l, r) | Regex::Union(l, r) => 1 + l.size() + r.size(),
            Regex::Star(i) => 1 + i.size(),
        }
    }

    pub fn is_syntactically_union_free(&self) -> bool {
        match self {
            Regex::Empty | Regex::Symbol(_) => true,
            Regex::Union(..) => false,
            Regex::Concat(l, r) => {
                l.is_syntactically_union_free() && r.is_syntactically_union_free()
            }
            Regex::Star(i) => i.is_syntactically_union_free(),
        }
    }

    pub fn symbols(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Empty => {}
            Regex::Symbol(c) => {
                out.insert(*c);
            }
            Regex::Concat(l, r) | Regex::Union(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
            Regex::Star(i) => i.collect_symbols(out),
        }
    }

    pub fn is_over(&self, alphabet: &Alphabet) -> bool {
        self.symbols().iter().all(|&c| alphabet.contains(c))
    }

    /// Syntactic reversal: `L(r.reversed()) = L(r)^R`.
    pub fn reversed(&self) -> Regex {
        match self {
            Regex::Empty | Regex::Symbol(_) => self.clone(),
            Regex::Concat(l, r) => Regex::concat(r.reversed(), l.reversed()),
            Regex::Union(l, r) => Regex::union(l.reversed(), r.reversed()),
            Regex::Star(i) => Regex::star(i.reversed()),
        }
    }

    /// Re-associates concatenation and union chains to the left, which is the
    /// shape `parse_regex` produces for any rendered expression.
    pub fn canonical(&self) -> Regex {
        match self {
            Regex::Empty | Regex::Symbol(_) => self.clone(),
            Regex::Star(i) => Regex::star(i.canonical()),
            Regex::Concat(..) => {
                let mut parts = Vec::new();
                self.flatten_concat(&mut parts);
                Regex::concat_all(parts.into_iter().map(Regex::canonical))
            }
            Regex::Union(..) => {
                let mut parts = Vec::new();
                self.flatten_union(&mut parts);
                Regex::union_all(parts.into_iter().map(Regex::canonical))
            }
        }
    }

    fn flatten_concat<'a>(&'a self, out: &mut Vec<&'a Regex>) {
        match self {
            Regex::Concat(l, r) => {
                l.flatten_concat(out);
                r.flatten_concat(out);
            }
            other => out.push(other),
        }
    }

    fn flatten_union<'a>(&'a self, out: &mut Vec<&'a Regex>) {
        match self {
            Regex::Union(l, r) => {
                l.flatten_union(out);
                r.flatten_union(out);
            }
            other => out.push(other),
        }
    }

    /// Direct membership test on the syntax tree, following the inductive
    /// semantics. Independent of the automata module; used as a test oracle.
    pub fn matches(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        let mut memo = HashMap::new();
        self.matches_span(&w, 0, w.len(), &mut memo)
    }

    fn matches_span(
        &self,
        w: &[char],
        i: usize,
        j: usize,
        memo: &mut HashMap<(*const Regex, usize, usize), bool>,
    ) -> bool {
        let key = (self as *const Regex, i, j);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let v = match self {
            Regex::Empty => false,
            Regex::Symbol(c) => j == i + 1 && w[i] == *c,
            Regex::Union(l, r) => l.matches_span(w, i, j, memo) || r.matches_span(w, i, j, memo),
            Regex::Concat(l, r) => {
                (i..=j).any(|k| l.matches_span(w, i, k, memo) && r.matches_span(w, k, j, memo))
            }
            Regex::Star(inner) => {
                i == j
                    || (i + 1..=j).any(|k| {
                        inner.matches_span(w, i, k, memo) && self.matches_span(w, k, j, memo)
                    })
            }
        };
        memo.insert(key, v);
        v
    }

    fn render(&self, ctx: u8, out: &mut String) {
        match self {
            Regex::Empty => out.push('0'),
            Regex::Symbol(c) => out.push(*c),
            Regex::Star(inner) if **inner == Regex::Empty => out.push('1'),
            Regex::Union(l, r) => {
                let wrap = ctx > 0;
                if wrap {
                    out.push('(');
                }
                l.render(0, out);
                out.push('|');
                r.render(0, out);
                if wrap {
                    out.push(')');
                }
            }
            Regex::Concat(l, r) => {
                let wrap = ctx > 1;
                if wrap {
                    out.push('(');
                }
                l.render(1, out);
                r.render(1, out);
                if wrap {
                    out.push(')');
                }
            }
            Regex::Star(inner) => {
                inner.render(2, out);
                out.push('*');
            }
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(0, &mut s);
        f.write_str(&s)
    }
}

impl Serialize for Regex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    #[test]
    fn construction_depth_counts_operators() {
        assert_eq!(Regex::sym('a').construction_depth(), 0);
        assert_eq!(
            Regex::union(Regex::sym('a'), Regex::sym('b')).construction_depth(),
            1
        );
        assert_eq!(
            Regex::star(Regex::union(Regex::sym('a'), Regex::sym('b'))).construction_depth(),
            2
        );
    }

    #[test]
    fn syntactic_union_freeness() {
        let a = Regex::sym('a');
        let b = Regex::sym('b');
        let c = Regex::sym('c');
        assert!(Regex::star(Regex::concat(a.clone(), b.clone())).is_syntactically_union_free());
        assert!(!Regex::union(a.clone(), b.clone()).is_syntactically_union_free());
        assert!(!Regex::concat(a, Regex::star(Regex::union(b, c))).is_syntactically_union_free());
    }

    #[test]
    fn rendering_uses_minimal_parentheses() {
        let v = Alphabet::parse("abcd").unwrap();
        for src in [
            "a(b|c)*d",
            "(a|b)*",
            "ab*|c",
            "1",
            "0",
            "(ab)*c",
            "a**",
            "(a|b)(c|d)",
        ] {
            assert_eq!(parse_regex(src, &v).unwrap().to_string(), src);
        }
    }

    #[test]
    fn matcher_follows_inductive_semantics() {
        let r = parse_regex("(ab)*", &ab()).unwrap();
        assert!(r.matches(""));
        assert!(r.matches("abab"));
        assert!(!r.matches("aba"));
        assert!(!Regex::Empty.matches(""));
        assert!(Regex::epsilon().matches(""));
        assert!(!Regex::epsilon().matches("a"));
    }

    #[test]
    fn reversal_is_syntactic() {
        let r = parse_regex("a*b", &ab()).unwrap();
        assert_eq!(r.reversed().to_string(), "ba*");
    }

    #[test]
    fn canonical_reassociates_left() {
        let a = Regex::sym('a');
        let b = Regex::sym('b');
        let right = Regex::concat(a.clone(), Regex::concat(b.clone(), a.clone()));
        let left = Regex::concat(Regex::concat(a.clone(), b.clone()), a.clone());
        assert_eq!(right.canonical(), left);
        assert_eq!(right.to_string(), "aba");
    }
}
