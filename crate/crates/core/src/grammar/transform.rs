//! Language-preserving rewrites of contextual grammars.

use super::{member, ContextualGrammar, GrammarError, SelectionComponent};
use crate::alphabet::{Alphabet, FiniteWordSet};
use crate::classify::{classify, verify_certificate, Certificate, Family, LanguageHandle};
use crate::regex::Regex;

/// Letters tried, in order, when a transformation needs a new symbol.
pub const DEFAULT_FRESH_POOL: &[char] = &[
    'X', 'Y', 'Z', 'W', 'U', 'T', 'S', 'R', 'Q', 'P', 'O', 'N', 'M', 'L', 'K', 'J', 'I', 'H', 'G',
    'F', 'E', 'D', 'C', 'B', 'A',
];

fn fresh_letter(g: &ContextualGrammar, pool: &[char]) -> Result<char, GrammarError> {
    let used = |c: char| {
        g.alphabet.contains(c)
            || g.metadata.fresh_letters.contains(&c)
            || g.components
                .iter()
                .any(|s| s.selection.alphabet().contains(c))
    };
    pool.iter()
        .copied()
        .find(|&c| !used(c))
        .ok_or(GrammarError::FreshLetterExhausted)
}

fn with_fresh_letter(
    g: &ContextualGrammar,
    pool: &[char],
    wrap: impl Fn(Regex, Regex) -> Regex,
) -> Result<ContextualGrammar, GrammarError> {
    let x = fresh_letter(g, pool)?;
    let alphabet = g.alphabet.with_letter(x)?;
    let mut components = Vec::with_capacity(g.components.len());
    for (i, c) in g.components.iter().enumerate() {
        let u = c.selection.alphabet().with_letter(x)?;
        let regex = wrap(Regex::star(Regex::sym(x)), c.selection.regex().clone());
        let selection =
            LanguageHandle::new(u, regex).map_err(|source| GrammarError::Selection {
                component: i,
                source,
            })?;
        components.push(SelectionComponent::new(selection, c.contexts.clone()));
    }
    let mut metadata = g.metadata.clone();
    metadata.fresh_letters.push(x);
    Ok(ContextualGrammar {
        alphabet,
        components,
        axioms: g.axioms.clone(),
        metadata,
    })
}

/// Replaces every selection `S` by `X*·S` for a fresh letter `X`.
pub fn transform_to_rcom(g: &ContextualGrammar) -> Result<ContextualGrammar, GrammarError> {
    transform_to_rcom_with_pool(g, DEFAULT_FRESH_POOL)
}

pub fn transform_to_rcom_with_pool(
    g: &ContextualGrammar,
    pool: &[char],
) -> Result<ContextualGrammar, GrammarError> {
    with_fresh_letter(g, pool, Regex::concat)
}

/// Replaces every selection `S` by `S·X*` for a fresh letter `X`.
pub fn transform_to_lcom(g: &ContextualGrammar) -> Result<ContextualGrammar, GrammarError> {
    transform_to_lcom_with_pool(g, DEFAULT_FRESH_POOL)
}

pub fn transform_to_lcom_with_pool(
    g: &ContextualGrammar,
    pool: &[char],
) -> Result<ContextualGrammar, GrammarError> {
    with_fresh_letter(g, pool, |x, s| Regex::concat(s, x))
}

/// Drops the components selecting exactly `{λ}`; when `λ ∈ L(G)` their
/// one-step products `u·v` become axioms.
pub fn eliminate_empty_word_selection(g: &ContextualGrammar) -> ContextualGrammar {
    let (lambda, rest): (Vec<&SelectionComponent>, Vec<&SelectionComponent>) = g
        .components
        .iter()
        .partition(|c| c.selection.dfa().is_epsilon_only());
    let mut axioms = g.axioms.clone();
    if !lambda.is_empty() && member(g, "") {
        let extra = lambda
            .iter()
            .flat_map(|c| c.contexts.iter().map(|ctx| ctx.wrap("")));
        axioms = axioms.union(&FiniteWordSet::new(extra));
    }
    ContextualGrammar {
        alphabet: g.alphabet.clone(),
        components: rest.into_iter().cloned().collect(),
        axioms,
        metadata: g.metadata.clone(),
    }
}

/// Rewrites definite selections `S = A ∪ U*·B` as `U*·B`, moving the finitely
/// many words `u·w·v` with `w ∈ A ∩ L(G)` into the axioms. Components with
/// `B = ∅` disappear.
pub fn definite_to_sydef(g: &ContextualGrammar) -> Result<ContextualGrammar, GrammarError> {
    let mut components = Vec::new();
    let mut extra = Vec::new();
    for (i, c) in g.components.iter().enumerate() {
        let verdict = classify(&c.selection, Family::Def);
        let cert = verdict.certificate.ok_or(GrammarError::NotDefinite(i))?;
        let (a, b) = match &cert {
            Certificate::Definite { a, b, .. } => (a.clone(), b.clone()),
            _ => return Err(GrammarError::NotDefinite(i)),
        };
        if verify_certificate(&c.selection, Family::Def, &cert) != Ok(true) {
            return Err(GrammarError::NotDefinite(i));
        }
        for w in a.iter().filter(|w| member(g, w)) {
            extra.extend(c.contexts.iter().map(|ctx| ctx.wrap(w)));
        }
        if b.is_empty() {
            continue;
        }
        if a.is_empty() {
            components.push(c.clone());
            continue;
        }
        let u: &Alphabet = c.selection.alphabet();
        let regex = Regex::concat(Regex::universe(u), Regex::words(b.iter()));
        let selection =
            LanguageHandle::new(u.clone(), regex).map_err(|source| GrammarError::Selection {
                component: i,
                source,
            })?;
        components.push(SelectionComponent::new(selection, c.contexts.clone()));
    }
    Ok(ContextualGrammar {
        alphabet: g.alphabet.clone(),
        components,
        axioms: g.axioms.union(&FiniteWordSet::new(extra)),
        metadata: g.metadata.clone(),
    })
}
