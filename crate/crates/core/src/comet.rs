//! Two-sided comets `E·G*·H` and their normal forms with a finite first (or last)
//! tail.

use serde::Serialize;
use thiserror::Error;

use crate::alphabet::{Alphabet, FiniteWordSet};
use crate::automata::Dfa;
use crate::regex::{star_decomposition, union_normal_form, Regex, StarDecompositionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CometError {
    #[error("the middle language must be neither empty nor {{λ}}")]
    DegenerateMiddle,
    #[error("regex uses letters outside the alphabet {0}")]
    ForeignLetter(String),
    #[error("first tail is not union-free")]
    NotUnionFree,
    #[error(transparent)]
    Star(#[from] StarDecompositionError),
}

/// `L = E·G*·H` over a fixed alphabet, with `L(G) ∉ {∅, {λ}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CometDecomposition {
    pub alphabet: Alphabet,
    pub e: Regex,
    pub g: Regex,
    pub h: Regex,
}

impl CometDecomposition {
    pub fn new(alphabet: Alphabet, e: Regex, g: Regex, h: Regex) -> Result<Self, CometError> {
        for r in [&e, &g, &h] {
            if !r.is_over(&alphabet) {
                return Err(CometError::ForeignLetter(alphabet.to_string()));
            }
        }
        let gd = Dfa::from_regex(&g, &alphabet);
        if gd.is_empty_language() || gd.is_epsilon_only() {
            return Err(CometError::DegenerateMiddle);
        }
        Ok(CometDecomposition { alphabet, e, g, h })
    }

    /// The language `E·G*·H` as a regex.
    pub fn regex(&self) -> Regex {
        Regex::concat_all([self.e.clone(), Regex::star(self.g.clone()), self.h.clone()])
    }

    pub fn dfa(&self) -> Dfa {
        Dfa::from_regex(&self.regex(), &self.alphabet)
    }

    pub fn reversed(&self) -> CometDecomposition {
        CometDecomposition {
            alphabet: self.alphabet.clone(),
            e: self.h.reversed(),
            g: self.g.reversed(),
            h: self.e.reversed(),
        }
    }
}

/// Concatenation that drops `1` operands.
fn cat(l: Regex, r: Regex) -> Regex {
    if l.is_epsilon() {
        r
    } else if r.is_epsilon() {
        l
    } else {
        Regex::concat(l, r)
    }
}

/// One decomposition per union-free component of `E`.
pub fn decompose_first_tail(d: &CometDecomposition) -> Vec<CometDecomposition> {
    union_normal_form(&d.e)
        .into_iter()
        .map(|e| CometDecomposition { e, ..d.clone() })
        .collect()
}

/// `(E', G', H')` with `E'` an explicit finite word set and the same language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTail {
    pub e: FiniteWordSet,
    pub g: Regex,
    pub h: Regex,
}

/// Makes the first tail finite: a finite `E` is listed outright, and an infinite
/// union-free `E = E_l·E_i*·E_r` moves its star into the middle, giving
/// `(E_l, E_i, E_r·G*·H)`.
pub fn finite_first_tail(d: &CometDecomposition) -> Result<FiniteTail, CometError> {
    if !d.e.is_syntactically_union_free() {
        return Err(CometError::NotUnionFree);
    }
    let v = &d.alphabet;
    if d.dfa().is_empty_language() {
        return Ok(FiniteTail {
            e: FiniteWordSet::empty(),
            g: Regex::sym(v.letter(0)),
            h: d.h.clone(),
        });
    }
    let e_dfa = Dfa::from_regex(&d.e, v);
    if let Some(words) = e_dfa.finite_words() {
        return Ok(FiniteTail {
            e: words,
            g: d.g.clone(),
            h: d.h.clone(),
        });
    }
    let s = star_decomposition(&d.e, v)?;
    let left = Dfa::from_regex(&s.left, v)
        .finite_words()
        .expect("left part of a star decomposition is finite");
    Ok(FiniteTail {
        e: left,
        g: s.middle,
        h: cat(cat(s.right, Regex::star(d.g.clone())), d.h.clone()),
    })
}

/// A tail that is either an explicit word set or a regex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Tail {
    Words(FiniteWordSet),
    Regex(Regex),
}

impl Tail {
    pub fn regex(&self) -> Regex {
        match self {
            Tail::Words(w) => Regex::words(w.iter()),
            Tail::Regex(r) => r.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalComponent {
    pub e: Tail,
    pub g: Regex,
    pub h: Tail,
}

impl NormalComponent {
    pub fn regex(&self) -> Regex {
        Regex::concat_all([self.e.regex(), Regex::star(self.g.clone()), self.h.regex()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// First tail finite.
    Left,
    /// Last tail finite.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFormResult {
    pub side: Side,
    pub components: Vec<NormalComponent>,
    /// The components recombined into one comet.
    pub single_comet: bool,
    /// The union of the components equals the input language.
    pub verified: bool,
}

impl NormalFormResult {
    pub fn regex(&self) -> Regex {
        Regex::union_all(self.components.iter().map(NormalComponent::regex))
    }
}

fn union_dfa(parts: &[NormalComponent], v: &Alphabet) -> Dfa {
    parts.iter().fold(Dfa::empty(v), |acc, c| {
        acc.union(&Dfa::from_regex(&c.regex(), v))
            .expect("same alphabet")
    })
}

/// Finite union of comets with explicit finite first tails, recombined into one
/// comet when every component has the same middle and last tail languages.
pub fn left_normal_form(d: &CometDecomposition) -> Result<NormalFormResult, CometError> {
    let v = &d.alphabet;
    let target = d.dfa();
    let mut tails = Vec::new();
    for part in decompose_first_tail(d) {
        tails.push(finite_first_tail(&part)?);
    }
    let nonempty: Vec<FiniteTail> = tails.iter().filter(|t| !t.e.is_empty()).cloned().collect();
    if !nonempty.is_empty() {
        tails = nonempty;
    } else {
        tails.truncate(1);
    }
    let shapes: Vec<(Dfa, Dfa)> = tails
        .iter()
        .map(|t| (Dfa::from_regex(&t.g, v), Dfa::from_regex(&t.h, v)))
        .collect();
    let shared = shapes.windows(2).all(|w| w[0] == w[1]);
    let components: Vec<NormalComponent> = if shared {
        let e = tails
            .iter()
            .fold(FiniteWordSet::empty(), |acc, t| acc.union(&t.e));
        vec![NormalComponent {
            e: Tail::Words(e),
            g: tails[0].g.clone(),
            h: Tail::Regex(tails[0].h.clone()),
        }]
    } else {
        tails
            .into_iter()
            .map(|t| NormalComponent {
                e: Tail::Words(t.e),
                g: t.g,
                h: Tail::Regex(t.h),
            })
            .collect()
    };
    let verified = union_dfa(&components, v) == target;
    Ok(NormalFormResult {
        side: Side::Left,
        single_comet: components.len() == 1,
        components,
        verified,
    })
}

/// Mirror image of [`left_normal_form`]: every last tail is finite.
pub fn right_normal_form(d: &CometDecomposition) -> Result<NormalFormResult, CometError> {
    let v = &d.alphabet;
    let left = left_normal_form(&d.reversed())?;
    let components: Vec<NormalComponent> = left
        .components
        .into_iter()
        .map(|c| {
            let words = match c.e {
                Tail::Words(w) => w.reversed(),
                Tail::Regex(_) => unreachable!("left normal form has finite first tails"),
            };
            NormalComponent {
                e: Tail::Regex(c.h.regex().reversed()),
                g: c.g.reversed(),
                h: Tail::Words(words),
            }
        })
        .collect();
    let verified = union_dfa(&components, v) == d.dfa();
    Ok(NormalFormResult {
        side: Side::Right,
        single_comet: left.single_comet,
        components,
        verified,
    })
}

/// Whether the first tail of every component is a finite word set and every
/// middle language avoids `∅` and `{λ}`.
pub fn is_well_formed(r: &NormalFormResult, v: &Alphabet) -> bool {
    r.components.iter().all(|c| {
        let finite = match r.side {
            Side::Left => matches!(c.e, Tail::Words(_)),
            Side::Right => matches!(c.h, Tail::Words(_)),
        };
        let g = Dfa::from_regex(&c.g, v);
        finite && !g.is_empty_language() && !g.is_epsilon_only()
    })
}
