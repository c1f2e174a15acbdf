//! External contextual grammars with regular selection.
//!
//! A grammar `(V, {(S₁,C₁),…,(Sₙ,Cₙ)}, A)` derives `x ⇒ u·x·v` whenever `x ∈ Sᵢ`
//! and `(u,v) ∈ Cᵢ`. Every context is nonempty, so derivations strictly lengthen
//! words; bounded enumeration and membership both rely on this.

mod fixtures;
mod transform;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{shortlex, Alphabet, AlphabetError, FiniteWordSet};
use crate::classify::{classify_all, HandleError, Inconsistency, LanguageHandle, VerdictMap};
use crate::regex::Regex;

pub use fixtures::{fixture, fixtures, Fixture};
pub use transform::{
    definite_to_sydef, eliminate_empty_word_selection, transform_to_lcom,
    transform_to_lcom_with_pool, transform_to_rcom, transform_to_rcom_with_pool,
    DEFAULT_FRESH_POOL,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("invalid grammar JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("component {component}: {source}")]
    Selection {
        component: usize,
        source: HandleError,
    },
    #[error("component {component}: context ({u:?}, {v:?}) violates uv≠λ")]
    EmptyContext {
        component: usize,
        u: String,
        v: String,
    },
    #[error("component {component}: no contexts")]
    NoContexts { component: usize },
    #[error("component {component}: context ({u:?}, {v:?}) uses letters outside V")]
    ContextNotOverV {
        component: usize,
        u: String,
        v: String,
    },
    #[error(
        "component {component}: selection alphabet {selection} is not a subset of V = {grammar}"
    )]
    SelectionAlphabet {
        component: usize,
        selection: String,
        grammar: String,
    },
    #[error("the axiom set is empty")]
    EmptyAxioms,
    #[error("axiom {0:?} is not over V")]
    AxiomNotOverV(String),
    #[error("no fresh letter left in the pool")]
    FreshLetterExhausted,
    #[error("component {0}: selection language is not definite")]
    NotDefinite(usize),
    #[error(transparent)]
    Inconsistent(#[from] Inconsistency),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Context {
    pub u: String,
    pub v: String,
}

impl Context {
    pub fn new(u: impl Into<String>, v: impl Into<String>) -> Self {
        Context {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn wrap(&self, w: &str) -> String {
        format!("{}{}{}", self.u, w, self.v)
    }

    pub fn len(&self) -> usize {
        self.u.chars().count() + self.v.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty() && self.v.is_empty()
    }

    /// The `x` with `w = u·x·v`, if any.
    pub fn unwrap_from<'w>(&self, w: &'w str) -> Option<&'w str> {
        w.strip_prefix(self.u.as_str())?
            .strip_suffix(self.v.as_str())
    }
}

/// A selection pair `S → C`, with `S` over its own alphabet `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionComponent {
    pub selection: LanguageHandle,
    pub contexts: Vec<Context>,
}

impl SelectionComponent {
    pub fn new(selection: LanguageHandle, contexts: Vec<Context>) -> Self {
        let mut contexts = contexts;
        contexts.sort();
        contexts.dedup();
        SelectionComponent {
            selection,
            contexts,
        }
    }

    pub fn selects(&self, w: &str) -> bool {
        self.selection.accepts(w)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    /// Letters introduced by transformations, oldest first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fresh_letters: Vec<char>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextualGrammar {
    pub alphabet: Alphabet,
    pub components: Vec<SelectionComponent>,
    pub axioms: FiniteWordSet,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Measures {
    pub l_a: usize,
    pub l_c: usize,
    pub l: usize,
}

#[derive(Serialize, Deserialize)]
struct SelectionJson {
    alphabet: Alphabet,
    regex: String,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    selection: SelectionJson,
    contexts: Vec<Context>,
}

#[derive(Serialize, Deserialize)]
struct GrammarJson {
    alphabet: Alphabet,
    axioms: Vec<String>,
    components: Vec<ComponentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

impl ContextualGrammar {
    pub fn new(
        alphabet: Alphabet,
        components: Vec<SelectionComponent>,
        axioms: FiniteWordSet,
    ) -> Self {
        ContextualGrammar {
            alphabet,
            components,
            axioms,
            metadata: Metadata::default(),
        }
    }

    /// Parses the JSON form. Structural invariants are left to [`validate`].
    pub fn from_json(text: &str) -> Result<Self, GrammarError> {
        let raw: GrammarJson =
            serde_json::from_str(text).map_err(|e| GrammarError::Json(e.to_string()))?;
        let mut components = Vec::with_capacity(raw.components.len());
        for (i, c) in raw.components.into_iter().enumerate() {
            let selection = LanguageHandle::parse(&c.selection.regex, &c.selection.alphabet)
                .map_err(|source| GrammarError::Selection {
                    component: i,
                    source,
                })?;
            components.push(SelectionComponent::new(selection, c.contexts));
        }
        Ok(ContextualGrammar {
            alphabet: raw.alphabet,
            components,
            axioms: FiniteWordSet::new(raw.axioms),
            metadata: raw.metadata.unwrap_or_default(),
        })
    }

    pub fn to_json(&self) -> String {
        let raw = GrammarJson {
            alphabet: self.alphabet.clone(),
            axioms: self.axioms.words().to_vec(),
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    selection: SelectionJson {
                        alphabet: c.selection.alphabet().clone(),
                        regex: c.selection.regex().to_string(),
                    },
                    contexts: c.contexts.clone(),
                })
                .collect(),
            metadata: (self.metadata != Metadata::default()).then(|| self.metadata.clone()),
        };
        serde_json::to_string_pretty(&raw).expect("grammar serializes")
    }
}

/// Checks `uv ≠ λ`, nonempty context sets, `U ⊆ V`, and a nonempty axiom set over `V`.
pub fn validate(g: &ContextualGrammar) -> Result<(), GrammarError> {
    if g.axioms.is_empty() {
        return Err(GrammarError::EmptyAxioms);
    }
    if let Some(w) = g.axioms.iter().find(|w| !g.alphabet.is_word(w)) {
        return Err(GrammarError::AxiomNotOverV(w.clone()));
    }
    for (i, c) in g.components.iter().enumerate() {
        if !c.selection.alphabet().is_subset_of(&g.alphabet) {
            return Err(GrammarError::SelectionAlphabet {
                component: i,
                selection: c.selection.alphabet().to_string(),
                grammar: g.alphabet.to_string(),
            });
        }
        if c.contexts.is_empty() {
            return Err(GrammarError::NoContexts { component: i });
        }
        for ctx in &c.contexts {
            if ctx.is_empty() {
                return Err(GrammarError::EmptyContext {
                    component: i,
                    u: ctx.u.clone(),
                    v: ctx.v.clone(),
                });
            }
            if !g.alphabet.is_word(&ctx.u) || !g.alphabet.is_word(&ctx.v) {
                return Err(GrammarError::ContextNotOverV {
                    component: i,
                    u: ctx.u.clone(),
                    v: ctx.v.clone(),
                });
            }
        }
    }
    Ok(())
}

pub fn measures(g: &ContextualGrammar) -> Result<Measures, GrammarError> {
    let l_a = g
        .axioms
        .iter()
        .map(|w| w.chars().count())
        .max()
        .ok_or(GrammarError::EmptyAxioms)?;
    let l_c = g
        .components
        .iter()
        .flat_map(|c| c.contexts.iter().map(Context::len))
        .max()
        .unwrap_or(0);
    Ok(Measures {
        l_a,
        l_c,
        l: l_a + l_c + 1,
    })
}

fn sorted(set: BTreeSet<String>) -> Vec<String> {
    let mut out: Vec<String> = set.into_iter().collect();
    out.sort_by(|a, b| shortlex(a, b));
    out
}

/// All words derivable from `w` in one step, in shortlex order.
pub fn derive_step(g: &ContextualGrammar, w: &str) -> Vec<String> {
    let mut out = BTreeSet::new();
    for c in &g.components {
        if c.selects(w) {
            out.extend(c.contexts.iter().map(|ctx| ctx.wrap(w)));
        }
    }
    sorted(out)
}

/// `L(G) ∩ V^{≤n}` in shortlex order.
pub fn enumerate_language(g: &ContextualGrammar, n: usize) -> Vec<String> {
    let mut seen: BTreeSet<String> = g
        .axioms
        .iter()
        .filter(|w| w.chars().count() <= n)
        .cloned()
        .collect();
    let mut frontier: Vec<String> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for y in derive_step(g, w) {
                if y.chars().count() <= n && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    sorted(seen)
}

/// Membership by backward search: peel a context off `w` and recurse on the
/// selected core.
pub fn member(g: &ContextualGrammar, w: &str) -> bool {
    fn go(g: &ContextualGrammar, w: &str, memo: &mut HashMap<String, bool>) -> bool {
        if let Some(&b) = memo.get(w) {
            return b;
        }
        let found = g.axioms.contains(w)
            || g.components.iter().any(|c| {
                c.contexts.iter().any(|ctx| {
                    ctx.unwrap_from(w)
                        .is_some_and(|x| x.len() < w.len() && c.selects(x) && go(g, x, memo))
                })
            });
        memo.insert(w.to_string(), found);
        found
    }
    go(g, w, &mut HashMap::new())
}

/// Classifier verdicts for each selection language over its own alphabet `U`.
pub fn classify_selections(g: &ContextualGrammar) -> Result<Vec<VerdictMap>, GrammarError> {
    g.components
        .iter()
        .map(|c| classify_all(&c.selection).map_err(GrammarError::from))
        .collect()
}

/// Regex of the selection language of component `i`, for display.
pub fn selection_regex(g: &ContextualGrammar, i: usize) -> Option<&Regex> {
    g.components.get(i).map(|c| c.selection.regex())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> ContextualGrammar {
        fixture("ex1").unwrap().grammar
    }

    #[test]
    fn example_grammar_steps() {
        let g = ex1();
        assert!(validate(&g).is_ok());
        assert_eq!(derive_step(&g, "ab"), ["aba", "abb", "cabc"]);
        assert!(derive_step(&g, "cc").is_empty());
        assert_eq!(derive_step(&g, ""), ["a", "b", "cc"]);
    }

    #[test]
    fn example_grammar_measures() {
        assert_eq!(
            measures(&ex1()).unwrap(),
            Measures {
                l_a: 0,
                l_c: 2,
                l: 3
            }
        );
        let g = fixture("nil_o_star").unwrap().grammar;
        assert_eq!(
            measures(&g).unwrap(),
            Measures {
                l_a: 4,
                l_c: 1,
                l: 6
            }
        );
    }

    #[test]
    fn example_grammar_language() {
        let g = ex1();
        assert_eq!(
            enumerate_language(&g, 2),
            ["", "a", "b", "aa", "ab", "ba", "bb", "cc"]
        );
        assert!(enumerate_language(&g, 4).contains(&"cabc".to_string()));
        assert!(member(&g, "cabc"));
        assert!(!member(&g, "cbac"));
    }

    #[test]
    fn invalid_grammars_are_named() {
        let mut g = ex1();
        g.components[1].contexts.push(Context::new("", ""));
        assert!(matches!(
            validate(&g),
            Err(GrammarError::EmptyContext { component: 1, .. })
        ));
        let mut g = ex1();
        g.axioms = FiniteWordSet::new(["d"]);
        assert_eq!(validate(&g), Err(GrammarError::AxiomNotOverV("d".into())));
        let mut g = ex1();
        g.axioms = FiniteWordSet::empty();
        assert_eq!(validate(&g), Err(GrammarError::EmptyAxioms));
        assert_eq!(measures(&g), Err(GrammarError::EmptyAxioms));
    }

    #[test]
    fn json_round_trip() {
        let g = ex1();
        let back = ContextualGrammar::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(matches!(
            ContextualGrammar::from_json("{"),
            Err(GrammarError::Json(_))
        ));
    }
}
