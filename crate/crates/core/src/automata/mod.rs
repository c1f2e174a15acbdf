//! Finite automata: the semantic ground truth for every language question.
//!
//! All [`Dfa`] values are complete. Minimal DFAs are numbered breadth-first from
//! the initial state over the sorted alphabet, so two minimal DFAs of the same
//! language are structurally identical.

mod dfa;
mod io;
mod monoid;
mod nfa;
mod to_regex;

use thiserror::Error;

pub use dfa::{Cardinality, Dfa, DEFAULT_ENUM_CAP};
pub use io::{dfa_to_dot, nfa_to_dot, parse_dfa_text, write_dfa_text};
pub use monoid::{MonoidElement, TransitionMonoid, DEFAULT_MONOID_CAP};
pub use nfa::Nfa;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("unknown state {0}")]
    UnknownState(usize),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("{what} exceeds the configured cap of {cap}")]
    ResourceCap { what: &'static str, cap: usize },
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// Thompson automaton of a regex over `alphabet`.
pub fn compile(r: &crate::regex::Regex, alphabet: &crate::alphabet::Alphabet) -> Nfa {
    Nfa::from_regex(r, alphabet)
}

pub fn determinize_minimize(n: &Nfa) -> Dfa {
    n.determinize().minimize()
}
