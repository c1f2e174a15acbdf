use serde::Serialize;
use thiserror::Error;

use super::{Family, LanguageHandle};
use crate::alphabet::Alphabet;
use crate::automata::{Dfa, TransitionMonoid};
use crate::regex::Regex;

/// A DFA whose states are linearly ordered by index, with every transition map
/// monotone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderedAutomaton {
    /// `transitions[q][a]`, letters in alphabet order.
    pub transitions: Vec<Vec<usize>>,
    pub initial: usize,
    pub accepting: Vec<usize>,
    /// Minimal-DFA state represented by each position.
    pub labels: Vec<usize>,
}

impl OrderedAutomaton {
    pub fn to_dfa(&self, alphabet: &Alphabet) -> Result<Dfa, CertificateError> {
        let n = self.transitions.len();
        let mut acc = vec![false; n];
        for &q in &self.accepting {
            *acc.get_mut(q)
                .ok_or_else(|| malformed("accepting state out of range"))? = true;
        }
        Dfa::new(
            alphabet.clone(),
            self.transitions.clone(),
            self.initial,
            acc,
        )
        .map_err(|e| CertificateError::Malformed(e.to_string()))
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.transitions.len();
        let k = self.transitions.first().map_or(0, Vec::len);
        (0..k).all(|a| (1..n).all(|q| self.transitions[q - 1][a] <= self.transitions[q][a]))
    }
}

/// Evidence that a language belongs to a family. Languages are regexes over the
/// alphabet of the language being certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `L = E·G*·H`.
    Comet {
        e: Regex,
        g: Regex,
        h: Regex,
    },
    /// `L = E·V*·H`.
    SymmetricDefinite {
        e: Regex,
        h: Regex,
    },
    /// `L = V*·X` with `X ⊆ V`.
    Combinational {
        letters: Vec<char>,
    },
    /// `L = A ∪ V*·B`, `A ⊆ V^{<window}`, `B ⊆ V^{window}`.
    Definite {
        window: usize,
        a: Vec<String>,
        b: Vec<String>,
    },
    Ordered(OrderedAutomaton),
    /// `t^index = t^{index+1}` for every element of the transition monoid.
    Aperiodic {
        index: usize,
    },
    /// For every word `x`, membership of `x^n` is constant for `n ≥ m`.
    PowerSeparating {
        m: usize,
    },
    /// `L = H*`.
    Star {
        h: Regex,
    },
    UnionFree {
        regex: Regex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("certificate kind does not fit family {0}")]
    WrongKind(Family),
}

fn malformed(msg: &str) -> CertificateError {
    CertificateError::Malformed(msg.to_string())
}

fn lang(r: &Regex, v: &Alphabet) -> Result<Dfa, CertificateError> {
    if !r.is_over(v) {
        return Err(malformed("regex uses letters outside the alphabet"));
    }
    Ok(Dfa::from_regex(r, v))
}

fn same(x: &Dfa, y: &Dfa) -> bool {
    x.equivalent(y)
        .expect("certificate languages share the alphabet")
}

fn cat(x: &Dfa, y: &Dfa) -> Dfa {
    x.concat(y)
        .expect("certificate languages share the alphabet")
}

fn words_dfa(ws: &[String], v: &Alphabet) -> Result<Dfa, CertificateError> {
    if !ws.iter().all(|w| v.is_word(w)) {
        return Err(malformed("word uses letters outside the alphabet"));
    }
    Ok(Dfa::from_words(v, ws))
}

/// Re-checks a certificate against `L` from scratch. `Ok(false)` means the
/// certificate is well formed but wrong.
pub fn verify_certificate(
    l: &LanguageHandle,
    family: Family,
    cert: &Certificate,
) -> Result<bool, CertificateError> {
    let v = l.alphabet();
    let target = l.dfa();
    let universe = Dfa::universal(v);
    match (family, cert) {
        (Family::TwoCom | Family::Lcom | Family::Rcom, Certificate::Comet { e, g, h }) => {
            let (e, g, h) = (lang(e, v)?, lang(g, v)?, lang(h, v)?);
            if g.is_empty_language() || g.is_epsilon_only() {
                return Ok(false);
            }
            if family == Family::Rcom && !e.is_epsilon_only() {
                return Ok(false);
            }
            if family == Family::Lcom && !h.is_epsilon_only() {
                return Ok(false);
            }
            Ok(same(&cat(&cat(&e, &g.star()), &h), target))
        }
        (Family::Sydef, Certificate::SymmetricDefinite { e, h }) => {
            let (e, h) = (lang(e, v)?, lang(h, v)?);
            Ok(same(&cat(&cat(&e, &universe), &h), target))
        }
        (Family::Comb, Certificate::Combinational { letters }) => {
            if !letters.iter().all(|&c| v.contains(c)) {
                return Err(malformed("letter outside the alphabet"));
            }
            let x = Regex::union_all(letters.iter().map(|&c| Regex::sym(c)));
            Ok(same(&cat(&universe, &lang(&x, v)?), target))
        }
        (Family::Def, Certificate::Definite { window, a, b }) => {
            if a.iter().any(|w| w.chars().count() >= *window)
                || b.iter().any(|w| w.chars().count() != *window)
            {
                return Ok(false);
            }
            let (a, b) = (words_dfa(a, v)?, words_dfa(b, v)?);
            let candidate = a.union(&cat(&universe, &b)).expect("same alphabet");
            Ok(same(&candidate, target))
        }
        (Family::Ord, Certificate::Ordered(o)) => {
            let d = o.to_dfa(v)?;
            Ok(o.is_monotone() && same(&d.minimize(), target))
        }
        (Family::Nc | Family::Sf, Certificate::Aperiodic { index }) => {
            let monoid =
                TransitionMonoid::of(target, usize::MAX).map_err(|e| malformed(&e.to_string()))?;
            Ok(monoid
                .elements()
                .iter()
                .all(|t| t.power(*index) == t.power(index + 1)))
        }
        (Family::Ps, Certificate::PowerSeparating { m }) => {
            if *m == 0 {
                return Ok(false);
            }
            let monoid =
                TransitionMonoid::of(target, usize::MAX).map_err(|e| malformed(&e.to_string()))?;
            let horizon = m + 2 * target.num_states();
            Ok(monoid.elements().iter().all(|t| {
                let mut q = target.initial();
                for _ in 0..*m {
                    q = t.map[q];
                }
                let first = target.is_accepting(q);
                (*m..=horizon).all(|_| {
                    let ok = target.is_accepting(q) == first;
                    q = t.map[q];
                    ok
                })
            }))
        }
        (Family::Star, Certificate::Star { h }) => Ok(same(&lang(h, v)?.star(), target)),
        (Family::Uf, Certificate::UnionFree { regex }) => {
            Ok(regex.is_syntactically_union_free() && same(&lang(regex, v)?, target))
        }
        _ => Err(CertificateError::WrongKind(family)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn handle(src: &str) -> LanguageHandle {
        LanguageHandle::parse(src, &Alphabet::parse("ab").unwrap()).unwrap()
    }

    fn re(src: &str) -> Regex {
        parse_regex(src, &Alphabet::parse("ab").unwrap()).unwrap()
    }

    #[test]
    fn comet_certificates() {
        let wrong = Certificate::Comet {
            e: re("1"),
            g: re("a"),
            h: re("1|a"),
        };
        assert_eq!(
            verify_certificate(&handle("1|a"), Family::TwoCom, &wrong),
            Ok(false)
        );
        let empty = Certificate::Comet {
            e: re("0"),
            g: re("a"),
            h: re("0"),
        };
        assert_eq!(
            verify_certificate(&handle("0"), Family::TwoCom, &empty),
            Ok(true)
        );
        let lambda_g = Certificate::Comet {
            e: re("a"),
            g: re("1"),
            h: re("1"),
        };
        assert_eq!(
            verify_certificate(&handle("a"), Family::TwoCom, &lambda_g),
            Ok(false)
        );
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let c = Certificate::Star { h: re("a") };
        assert_eq!(
            verify_certificate(&handle("a*"), Family::Mon, &c),
            Err(CertificateError::WrongKind(Family::Mon))
        );
    }

    #[test]
    fn ordered_certificate_needs_monotone_maps() {
        // (ab)* on 3 states in minimal order: δ_b = [2, 0, 2] is not monotone.
        let o = OrderedAutomaton {
            transitions: vec![vec![1, 2], vec![2, 0], vec![2, 2]],
            initial: 0,
            accepting: vec![0],
            labels: vec![0, 1, 2],
        };
        assert_eq!(
            verify_certificate(&handle("(ab)*"), Family::Ord, &Certificate::Ordered(o)),
            Ok(false)
        );
    }
}
