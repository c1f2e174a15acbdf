//! Structural rewriting: union-free decomposition and star decomposition.

use thiserror::Error;

use super::Regex;
use crate::alphabet::Alphabet;
use crate::automata::{Cardinality, Dfa};

/// Splits `r` into syntactically union-free regexes whose languages unite to `L(r)`.
///
/// The result is what the rewriting system
/// `(R|S)* -> (R*S*)*`, `(R|S)T -> RT|ST`, `T(R|S) -> TR|TS`
/// produces when run leftmost-outermost with star-of-union rewritten first and the
/// remaining unions flattened to the top level. Structural duplicates are dropped;
/// component order follows the left-to-right order of the alternatives.
pub fn union_normal_form(r: &Regex) -> Vec<Regex> {
    match r {
        Regex::Empty | Regex::Symbol(_) => vec![r.clone()],
        Regex::Union(l, rr) => {
            let mut out = union_normal_form(l);
            for c in union_normal_form(rr) {
                push_unique(&mut out, c);
            }
            out
        }
        Regex::Concat(l, rr) => {
            let left = union_normal_form(l);
            let right = union_normal_form(rr);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for a in &left {
                for b in &right {
                    push_unique(&mut out, Regex::concat(a.clone(), b.clone()));
                }
            }
            out
        }
        Regex::Star(inner) => {
            let parts = union_normal_form(inner);
            if parts.len() == 1 {
                vec![Regex::star(parts.into_iter().next().unwrap())]
            } else {
                vec![Regex::star(Regex::concat_all(
                    parts.into_iter().map(Regex::star),
                ))]
            }
        }
    }
}

fn push_unique(out: &mut Vec<Regex>, r: Regex) {
    if !out.contains(&r) {
        out.push(r);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDecomposition {
    /// Finite left part.
    pub left: Regex,
    /// Iterated middle; its language is neither empty nor `{λ}`.
    pub middle: Regex,
    pub right: Regex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarDecompositionError {
    #[error("star decomposition needs a union-free regex")]
    HasUnion,
    #[error("star decomposition needs an infinite language")]
    Finite,
    #[error("regex uses letters outside the alphabet")]
    ForeignLetter,
}

/// Writes an infinite union-free language as `left · middle* · right` with a finite
/// `left`, recursing along the construction of the regex: a star is its own
/// decomposition, and a concatenation decomposes whichever factor is infinite
/// (the left one when both are), gluing the other factor onto the matching side.
pub fn star_decomposition(
    r: &Regex,
    alphabet: &Alphabet,
) -> Result<StarDecomposition, StarDecompositionError> {
    if !r.is_syntactically_union_free() {
        return Err(StarDecompositionError::HasUnion);
    }
    if !r.is_over(alphabet) {
        return Err(StarDecompositionError::ForeignLetter);
    }
    if !is_infinite(r, alphabet) {
        return Err(StarDecompositionError::Finite);
    }
    Ok(decompose(r, alphabet))
}

fn is_infinite(r: &Regex, alphabet: &Alphabet) -> bool {
    Dfa::from_regex(r, alphabet).cardinality() == Cardinality::Infinite
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

fn decompose(r: &Regex, alphabet: &Alphabet) -> StarDecomposition {
    match r {
        Regex::Star(inner) => StarDecomposition {
            left: Regex::epsilon(),
            middle: (**inner).clone(),
            right: Regex::epsilon(),
        },
        Regex::Concat(s, t) => {
            if is_infinite(s, alphabet) {
                let d = decompose(s, alphabet);
                StarDecomposition {
                    left: d.left,
                    middle: d.middle,
                    right: cat(d.right, (**t).clone()),
                }
            } else {
                let d = decompose(t, alphabet);
                StarDecomposition {
                    left: cat((**s).clone(), d.left),
                    middle: d.middle,
                    right: d.right,
                }
            }
        }
        // Empty, Symbol and Union never reach here: the first two are finite and
        // the last is rejected up front.
        _ => unreachable!("decompose called on a finite or non-union-free regex"),
    }
}
