use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{normalize_node, HierarchyGraph};
use crate::alphabet::Alphabet;
use crate::automata::Dfa;
use crate::classify::{classify, verify_certificate, Family, LanguageHandle, Outcome, VerdictMap};
use crate::grammar::{
    definite_to_sydef, eliminate_empty_word_selection, enumerate_language, fixture,
    transform_to_lcom, transform_to_rcom, validate, ContextualGrammar,
};

const REGISTRY: &str = include_str!("../../data/hierarchy/registry.json");

/// Fixture grammars are compared with their closed form up to this length.
const FIXTURE_LENGTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub family: String,
    pub expected: Outcome,
    pub provenance: String,
    #[serde(default = "yes")]
    pub verifiable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Grammar transformation applied to the fixture before checking.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<String>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageSpec {
    pub alphabet: String,
    pub regex: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub id: String,
    pub graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language: Option<LanguageSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    pub claims: Vec<Claim>,
}

/// What a witness entry talks about.
#[derive(Debug, Clone)]
pub enum WitnessSubject {
    Language(LanguageHandle),
    Grammar {
        grammar: ContextualGrammar,
        closed_form: Vec<String>,
    },
}

impl WitnessEntry {
    pub fn subject(&self) -> Result<WitnessSubject, String> {
        match (&self.language, &self.fixture) {
            (Some(spec), None) => {
                let v = Alphabet::parse(&spec.alphabet).map_err(|e| e.to_string())?;
                LanguageHandle::parse(&spec.regex, &v)
                    .map(WitnessSubject::Language)
                    .map_err(|e| e.to_string())
            }
            (None, Some(name)) => {
                let f = fixture(name).ok_or_else(|| format!("unknown fixture {name:?}"))?;
                let closed = Dfa::from_regex(&f.closed_form, &f.grammar.alphabet);
                let closed_form = closed
                    .enumerate(FIXTURE_LENGTH)
                    .map_err(|e| e.to_string())?;
                Ok(WitnessSubject::Grammar {
                    grammar: f.grammar,
                    closed_form,
                })
            }
            _ => Err("a witness names exactly one of language and fixture".into()),
        }
    }

    /// Whether the claims say `family = Yes`.
    pub fn claims_yes(&self, family: &str) -> bool {
        self.claims_outcome(family, Outcome::Yes)
    }

    pub fn claims_no(&self, family: &str) -> bool {
        self.claims_outcome(family, Outcome::No)
    }

    fn claims_outcome(&self, family: &str, o: Outcome) -> bool {
        let f = normalize_node(family);
        self.claims
            .iter()
            .any(|c| normalize_node(&c.family) == f && c.expected == o)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub version: u32,
    pub witnesses: Vec<WitnessEntry>,
}

impl Registry {
    pub fn shipped() -> Registry {
        Registry::from_json(REGISTRY).expect("shipped registry is valid")
    }

    pub fn from_json(text: &str) -> Result<Registry, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn witness(&self, id: &str) -> Option<&WitnessEntry> {
        self.witnesses.iter().find(|w| w.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Fail { detail: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub witness: String,
    pub family: String,
    pub expected: Outcome,
    pub provenance: String,
    #[serde(flatten)]
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub results: Vec<ClaimResult>,
}

impl WitnessReport {
    pub fn is_ok(&self) -> bool {
        self.failed == 0
    }
}

fn check_language(l: &LanguageHandle, claim: &Claim) -> ClaimStatus {
    let family: Family = match claim.family.parse() {
        Ok(f) => f,
        Err(_) => {
            return ClaimStatus::Fail {
                detail: format!("{} is not a subregular family", claim.family),
            }
        }
    };
    let v = classify(l, family);
    if v.outcome != claim.expected {
        return ClaimStatus::Fail {
            detail: format!("classified {}", v.outcome),
        };
    }
    match &v.certificate {
        Some(cert) if v.is_yes() => match verify_certificate(l, family, cert) {
            Ok(true) => ClaimStatus::Pass,
            Ok(false) => ClaimStatus::Fail {
                detail: "certificate does not verify".into(),
            },
            Err(e) => ClaimStatus::Fail {
                detail: e.to_string(),
            },
        },
        _ => ClaimStatus::Pass,
    }
}

fn apply_transform(g: &ContextualGrammar, name: &str) -> Result<ContextualGrammar, String> {
    match name {
        "rcom" => transform_to_rcom(g).map_err(|e| e.to_string()),
        "lcom" => transform_to_lcom(g).map_err(|e| e.to_string()),
        "elimlambda" => Ok(eliminate_empty_word_selection(g)),
        "def2sydef" => definite_to_sydef(g).map_err(|e| e.to_string()),
        _ => Err(format!("unknown transformation {name:?}")),
    }
}

/// A grammar witnesses `L ∈ EC(F)` when it is valid, every selection lies in
/// `F` and its bounded language matches the closed form.
fn check_grammar(g: &ContextualGrammar, closed_form: &[String], claim: &Claim) -> ClaimStatus {
    let fail = |detail: String| ClaimStatus::Fail { detail };
    let Some(sel) = HierarchyGraph::selection_family(&claim.family) else {
        return fail(format!("{} is not a grammar family", claim.family));
    };
    let g = match claim.transform.as_deref().map(|t| apply_transform(g, t)) {
        None => g.clone(),
        Some(Ok(t)) => t,
        Some(Err(e)) => return fail(e),
    };
    if let Err(e) = validate(&g) {
        return fail(e.to_string());
    }
    if sel != "REG" {
        let Ok(family) = sel.parse::<Family>() else {
            return fail(format!("{sel} is not a subregular family"));
        };
        for (i, c) in g.components.iter().enumerate() {
            let v = classify(&c.selection, family);
            if !v.is_yes() {
                return fail(format!(
                    "selection {i} classified {} for {family}",
                    v.outcome
                ));
            }
            if let Some(cert) = &v.certificate {
                if verify_certificate(&c.selection, family, cert) != Ok(true) {
                    return fail(format!("selection {i}: certificate does not verify"));
                }
            }
        }
    }
    let got = enumerate_language(&g, FIXTURE_LENGTH);
    if got != closed_form {
        let got: BTreeSet<&String> = got.iter().collect();
        let want: BTreeSet<&String> = closed_form.iter().collect();
        let diff = got
            .symmetric_difference(&want)
            .next()
            .map(|w| w.to_string());
        return fail(format!(
            "enumeration differs from the closed form at {diff:?}"
        ));
    }
    ClaimStatus::Pass
}

fn skip_reason(claim: &Claim) -> String {
    if let Some(r) = &claim.reason {
        return format!("provenance only: {r}");
    }
    if HierarchyGraph::selection_family(&claim.family).is_some() && claim.expected == Outcome::No {
        "provenance only: non-membership in a grammar family is not machine-checked".into()
    } else {
        "provenance only".into()
    }
}

/// Checks every verifiable claim of the registry; the remaining claims are
/// reported as skipped together with the reason.
pub fn verify_witnesses(registry: &Registry) -> WitnessReport {
    let mut results = Vec::new();
    for w in &registry.witnesses {
        let subject = w.subject();
        for claim in &w.claims {
            let status = if !claim.verifiable {
                ClaimStatus::Skipped {
                    reason: skip_reason(claim),
                }
            } else {
                match &subject {
                    Err(e) => ClaimStatus::Fail { detail: e.clone() },
                    Ok(WitnessSubject::Language(l)) => check_language(l, claim),
                    Ok(WitnessSubject::Grammar {
                        grammar,
                        closed_form,
                    }) => check_grammar(grammar, closed_form, claim),
                }
            };
            results.push(ClaimResult {
                witness: w.id.clone(),
                family: normalize_node(&claim.family),
                expected: claim.expected,
                provenance: claim.provenance.clone(),
                status,
            });
        }
    }
    let count = |p: fn(&ClaimStatus) -> bool| results.iter().filter(|r| p(&r.status)).count();
    WitnessReport {
        passed: count(|s| matches!(s, ClaimStatus::Pass)),
        failed: count(|s| matches!(s, ClaimStatus::Fail { .. })),
        skipped: count(|s| matches!(s, ClaimStatus::Skipped { .. })),
        results,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Properness {
    Witnessed { witness: String },
    ProvenanceOnly,
}

/// Corpus language `index` lies in `from` but not in `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCheck {
    pub from: String,
    pub to: String,
    pub provenance: String,
    pub properness: Properness,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityViolation {
    pub x: String,
    pub y: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    pub graph: String,
    pub corpus_size: usize,
    pub edges: Vec<EdgeCheck>,
    pub equality_violations: Vec<EqualityViolation>,
}

impl EdgeReport {
    pub fn violation_count(&self) -> usize {
        self.edges.iter().map(|e| e.violations.len()).sum::<usize>()
            + self.equality_violations.len()
    }

    pub fn is_ok(&self) -> bool {
        self.violation_count() == 0
    }
}

/// Decided verdict of a diagram node; `REG` holds for every corpus language.
fn decided(map: &VerdictMap, node: &str) -> Option<Outcome> {
    match HierarchyGraph::family(node) {
        Some(f) => map
            .get(&f)
            .map(|v| v.outcome)
            .filter(|o| *o != Outcome::Unknown),
        None if node == "REG" => Some(Outcome::Yes),
        None => None,
    }
}

pub fn edge_consistency_check(graph: &HierarchyGraph, corpus: &[VerdictMap]) -> EdgeReport {
    edge_consistency_check_with(graph, corpus, &Registry::shipped())
}

/// For every edge `X → Y` and corpus language with decided verdicts checks
/// `X = Yes ⇒ Y = Yes`, and looks up a registered witness with `Y = Yes` and
/// `X = No`. Declared equalities must agree wherever both sides are decided.
/// The corpus is ignored for the grammar diagram, whose nodes are not
/// decided per language.
pub fn edge_consistency_check_with(
    graph: &HierarchyGraph,
    corpus: &[VerdictMap],
    registry: &Registry,
) -> EdgeReport {
    let corpus = if graph
        .nodes
        .iter()
        .any(|n| HierarchyGraph::family(n).is_some())
    {
        corpus
    } else {
        &[]
    };
    let edges = graph
        .edges
        .iter()
        .map(|e| {
            let violations = corpus
                .iter()
                .enumerate()
                .filter(|(_, m)| {
                    decided(m, &e.from) == Some(Outcome::Yes)
                        && decided(m, &e.to) == Some(Outcome::No)
                })
                .map(|(index, _)| Violation { index })
                .collect();
            let properness = registry
                .witnesses
                .iter()
                .find(|w| w.graph == graph.name && w.claims_yes(&e.to) && w.claims_no(&e.from))
                .map_or(Properness::ProvenanceOnly, |w| Properness::Witnessed {
                    witness: w.id.clone(),
                });
            EdgeCheck {
                from: e.from.clone(),
                to: e.to.clone(),
                provenance: e.provenance.clone(),
                properness,
                violations,
            }
        })
        .collect();
    let mut equality_violations = Vec::new();
    for q in &graph.equalities {
        for pair in q.nodes.windows(2) {
            for (index, m) in corpus.iter().enumerate() {
                if let (Some(a), Some(b)) = (decided(m, &pair[0]), decided(m, &pair[1])) {
                    if a != b {
                        equality_violations.push(EqualityViolation {
                            x: pair[0].clone(),
                            y: pair[1].clone(),
                            index,
                        });
                    }
                }
            }
        }
    }
    EdgeReport {
        graph: graph.name.clone(),
        corpus_size: corpus.len(),
        edges,
        equality_violations,
    }
}

/// The distinct languages of all complete DFAs with at most `max_states`
/// states over `alphabet`, as minimal DFAs in order of first appearance.
pub fn small_dfa_corpus(alphabet: &Alphabet, max_states: usize) -> Vec<Dfa> {
    let k = alphabet.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=max_states {
        let cells = n * k;
        let tables = n.pow(cells as u32);
        for t in 0..tables {
            let mut code = t;
            let delta: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    (0..k)
                        .map(|_| {
                            let q = code % n;
                            code /= n;
                            q
                        })
                        .collect()
                })
                .collect();
            for acc in 0..(1usize << n) {
                let accepting = (0..n).map(|q| acc >> q & 1 == 1).collect();
                let d = Dfa::new(alphabet.clone(), delta.clone(), 0, accepting)
                    .expect("well-formed table")
                    .minimize();
                if seen.insert(format!("{d:?}")) {
                    out.push(d);
                }
            }
        }
    }
    out
}
