//! Membership predicates for the subregular families, relative to a declared
//! alphabet.
//!
//! Most families have exact deciders on the minimal DFA. Families without a known
//! complete procedure here (SYDEF, 2COM, UF, and ORD beyond its search cap)
//! answer `Unknown` when bounded search finds nothing; every `Yes` for them
//! carries a certificate that [`verify_certificate`] re-checks from scratch.

mod certificate;
mod deciders;
mod family;
mod order;
mod search;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::automata::{Dfa, DEFAULT_MONOID_CAP};
use crate::regex::{parse_regex, ParseError, Regex};

pub use certificate::{verify_certificate, Certificate, CertificateError, OrderedAutomaton};
pub use family::{Family, UnknownFamily};
pub use order::find_ordered_automaton;
pub use search::decide_2com_bounded;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub family: Family,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict {
    pub fn yes(family: Family) -> Verdict {
        Verdict {
            family,
            outcome: Outcome::Yes,
            certificate: None,
            reason: None,
        }
    }

    pub fn no(family: Family) -> Verdict {
        Verdict {
            family,
            outcome: Outcome::No,
            certificate: None,
            reason: None,
        }
    }

    pub fn unknown(family: Family, reason: impl Into<String>) -> Verdict {
        Verdict {
            family,
            outcome: Outcome::Unknown,
            certificate: None,
            reason: Some(reason.into()),
        }
    }

    pub fn with_certificate(mut self, c: Certificate) -> Verdict {
        self.certificate = Some(c);
        self
    }

    pub fn because(mut self, reason: impl Into<String>) -> Verdict {
        self.reason = Some(reason.into());
        self
    }

    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HandleError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("regex uses letters outside the alphabet {0}")]
    ForeignLetter(String),
    #[error("compiled automaton disagrees with the regex on {0:?}")]
    CompileMismatch(String),
}

/// A regular language together with the alphabet it is judged against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageHandle {
    alphabet: Alphabet,
    regex: Regex,
    dfa: Dfa,
}

impl LanguageHandle {
    /// Compiles `regex` and cross-checks the automaton against the syntax tree on
    /// every word of length at most 4.
    pub fn new(alphabet: Alphabet, regex: Regex) -> Result<Self, HandleError> {
        if !regex.is_over(&alphabet) {
            return Err(HandleError::ForeignLetter(alphabet.to_string()));
        }
        let dfa = Dfa::from_regex(&regex, &alphabet);
        for w in alphabet.words_up_to(4) {
            if dfa.accepts(&w) != regex.matches(&w) {
                return Err(HandleError::CompileMismatch(w));
            }
        }
        Ok(LanguageHandle {
            alphabet,
            regex,
            dfa,
        })
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, HandleError> {
        Self::new(alphabet.clone(), parse_regex(text, alphabet)?)
    }

    /// Wraps an automaton; the regex is obtained by state elimination.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let dfa = dfa.minimize();
        LanguageHandle {
            alphabet: dfa.alphabet().clone(),
            regex: dfa.to_regex(),
            dfa,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn regex(&self) -> &Regex {
        &self.regex
    }

    /// The minimal DFA.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn reversed(&self) -> LanguageHandle {
        LanguageHandle {
            alphabet: self.alphabet.clone(),
            regex: self.regex.reversed(),
            dfa: self.dfa.reverse(),
        }
    }

    pub fn accepts(&self, w: &str) -> bool {
        self.dfa.accepts(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifierConfig {
    /// Word-length bound for the SYDEF and 2COM certificate searches.
    pub search_bound: usize,
    pub monoid_cap: usize,
    /// ORD search is skipped (Unknown) for minimal DFAs above this size.
    pub ord_state_cap: usize,
    /// Longest ordered automaton tried, as a multiple of the minimal state count.
    pub ord_length_factor: usize,
    /// Search-node budget for the ORD search.
    pub ord_budget: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            search_bound: 2,
            monoid_cap: DEFAULT_MONOID_CAP,
            ord_state_cap: 10,
            ord_length_factor: 3,
            ord_budget: 20_000,
        }
    }
}

pub fn classify(l: &LanguageHandle, f: Family) -> Verdict {
    classify_with(l, f, &ClassifierConfig::default())
}

pub fn classify_with(l: &LanguageHandle, f: Family, cfg: &ClassifierConfig) -> Verdict {
    deciders::Session::new(l, cfg).decide(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inconsistent verdicts: {premise} = yes but {conclusion} = no")]
pub struct Inconsistency {
    pub premise: Family,
    pub conclusion: Family,
}

/// Inclusions between families that every verdict vector must respect.
pub const IMPLICATIONS: &[(Family, Family)] = &[
    (Family::Mon, Family::Star),
    (Family::Mon, Family::Sydef),
    (Family::Mon, Family::Nil),
    (Family::Mon, Family::Suf),
    (Family::Mon, Family::Comm),
    (Family::Sydef, Family::Lcom),
    (Family::Sydef, Family::Rcom),
    (Family::Lcom, Family::TwoCom),
    (Family::Rcom, Family::TwoCom),
    (Family::Fin, Family::Nil),
    (Family::Nil, Family::Def),
    (Family::Comb, Family::Def),
    (Family::Comb, Family::Sydef),
    (Family::Def, Family::Ord),
    (Family::Ord, Family::Nc),
    (Family::Nc, Family::Sf),
    (Family::Sf, Family::Nc),
    (Family::Nc, Family::Ps),
    (Family::Suf, Family::Ps),
    (Family::Sydef, Family::Ps),
    (Family::Comm, Family::Circ),
    (Family::Star, Family::Uf),
];

pub type VerdictMap = BTreeMap<Family, Verdict>;

pub fn classify_all(l: &LanguageHandle) -> Result<VerdictMap, Inconsistency> {
    classify_all_with(l, &ClassifierConfig::default())
}

pub fn classify_all_with(
    l: &LanguageHandle,
    cfg: &ClassifierConfig,
) -> Result<VerdictMap, Inconsistency> {
    let mut session = deciders::Session::new(l, cfg);
    let map: VerdictMap = Family::ALL
        .iter()
        .map(|&f| (f, session.decide(f)))
        .collect();
    check_consistency(&map)?;
    Ok(map)
}

pub fn check_consistency(map: &VerdictMap) -> Result<(), Inconsistency> {
    for &(x, y) in IMPLICATIONS {
        if let (Some(vx), Some(vy)) = (map.get(&x), map.get(&y)) {
            if vx.is_yes() && vy.is_no() {
                return Err(Inconsistency {
                    premise: x,
                    conclusion: y,
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictEntry {
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

/// Serializable result of classifying one language against every family.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub alphabet: Alphabet,
    pub regex: Regex,
    pub minimal_states: usize,
    pub verdicts: Vec<VerdictEntry>,
}

impl VerdictReport {
    /// Classifies against every family. Timings are recorded only on request so
    /// that the default report is byte-stable.
    pub fn build(
        l: &LanguageHandle,
        cfg: &ClassifierConfig,
        timing: bool,
    ) -> Result<Self, Inconsistency> {
        let mut session = deciders::Session::new(l, cfg);
        let mut verdicts = Vec::with_capacity(Family::ALL.len());
        for &f in Family::ALL {
            let t = Instant::now();
            let verdict = session.decide(f);
            let elapsed_us = timing.then(|| t.elapsed().as_micros() as u64);
            verdicts.push(VerdictEntry {
                verdict,
                elapsed_us,
            });
        }
        let map: VerdictMap = verdicts
            .iter()
            .map(|e| (e.verdict.family, e.verdict.clone()))
            .collect();
        check_consistency(&map)?;
        Ok(VerdictReport {
            alphabet: l.alphabet().clone(),
            regex: l.regex().clone(),
            minimal_states: l.dfa().num_states(),
            verdicts,
        })
    }

    pub fn get(&self, f: Family) -> Option<&Verdict> {
        self.verdicts
            .iter()
            .map(|e| &e.verdict)
            .find(|v| v.family == f)
    }
}
