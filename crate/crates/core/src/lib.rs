//! Executable subregular language families, two-sided comet normal forms and
//! external contextual grammars with regular selection.
//!
//! The crate is layered bottom-up:
//!
//! * [`regex`]: syntax trees, parsing, printing and structural rewriting
//! * [`automata`]: NFA/DFA construction and every semantic question
//! * [`classify`]: family deciders with three-valued, certificate-carrying verdicts
//! * [`comet`]: finite-first-tail normal forms of two-sided comets
//! * [`grammar`]: external contextual grammars, derivation and transformations
//! * [`hierarchy`]: inclusion diagrams, witness registry and consistency checks

pub mod alphabet;
pub mod automata;
pub mod classify;
pub mod comet;
pub mod grammar;
pub mod hierarchy;
pub mod regex;

pub use alphabet::{Alphabet, FiniteWordSet};
pub use automata::{Dfa, Nfa};
pub use classify::{classify, classify_all, Family, LanguageHandle, Outcome, Verdict};
pub use regex::{parse_regex, Regex};
