//! Inclusion diagrams of the subregular families and of the families of
//! external contextual grammars, with a registry of witness languages.

mod registry;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::Family;

pub use registry::{
    edge_consistency_check, edge_consistency_check_with, small_dfa_corpus, verify_witnesses, Claim,
    ClaimResult, ClaimStatus, EdgeCheck, EdgeReport, EqualityViolation, Properness, Registry,
    Violation, WitnessEntry, WitnessReport, WitnessSubject,
};

const FIG1: &str = include_str!("../../data/hierarchy/fig1.json");
const FIG2: &str = include_str!("../../data/hierarchy/fig2.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("unknown family {0:?}")]
    UnknownNode(String),
    #[error("{x} and {y} live in different diagrams")]
    CrossGraph { x: String, y: String },
    #[error("unknown diagram {0:?}")]
    UnknownGraph(String),
    #[error("invalid diagram: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    ProperSubset,
    ProperSuperset,
    Equal,
    Incomparable,
}

impl Relation {
    pub fn converse(self) -> Relation {
        match self {
            Relation::ProperSubset => Relation::ProperSuperset,
            Relation::ProperSuperset => Relation::ProperSubset,
            r => r,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::ProperSubset => "proper subset",
            Relation::ProperSuperset => "proper superset",
            Relation::Equal => "equal",
            Relation::Incomparable => "incomparable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equality {
    pub nodes: Vec<String>,
    pub provenance: String,
}

/// A drawn inclusion diagram: an arrow `X → Y` is the proper inclusion
/// `X ⊂ Y`, declared equalities merge nodes, and unconnected families are
/// incomparable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyGraph {
    pub version: u32,
    pub name: String,
    pub title: String,
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    pub equalities: Vec<Equality>,
}

/// Canonical spelling of a node name: upper case, `TWOCOM` as `2COM`,
/// `ec(x)` as `EC(X)`.
pub fn normalize_node(name: &str) -> String {
    let up = name.trim().to_ascii_uppercase().replace(' ', "");
    let fam = |s: &str| {
        if s == "TWOCOM" {
            "2COM".to_string()
        } else {
            s.to_string()
        }
    };
    match up.strip_prefix("EC(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => format!("EC({})", fam(inner)),
        None => fam(&up),
    }
}

impl HierarchyGraph {
    pub fn fig1() -> HierarchyGraph {
        HierarchyGraph::from_json(FIG1).expect("shipped diagram is valid")
    }

    pub fn fig2() -> HierarchyGraph {
        HierarchyGraph::from_json(FIG2).expect("shipped diagram is valid")
    }

    pub fn shipped() -> Vec<HierarchyGraph> {
        vec![HierarchyGraph::fig1(), HierarchyGraph::fig2()]
    }

    pub fn by_name(name: &str) -> Result<HierarchyGraph, HierarchyError> {
        match name.to_ascii_lowercase().as_str() {
            "fig1" | "1" => Ok(HierarchyGraph::fig1()),
            "fig2" | "2" => Ok(HierarchyGraph::fig2()),
            _ => Err(HierarchyError::UnknownGraph(name.to_string())),
        }
    }

    pub fn from_json(text: &str) -> Result<HierarchyGraph, HierarchyError> {
        let g: HierarchyGraph =
            serde_json::from_str(text).map_err(|e| HierarchyError::Malformed(e.to_string()))?;
        let known: BTreeSet<&str> = g.nodes.iter().map(String::as_str).collect();
        if known.len() != g.nodes.len() {
            return Err(HierarchyError::Malformed("duplicate node".into()));
        }
        let mentioned = g
            .edges
            .iter()
            .flat_map(|e| [&e.from, &e.to])
            .chain(g.equalities.iter().flat_map(|q| q.nodes.iter()));
        for n in mentioned {
            if !known.contains(n.as_str()) {
                return Err(HierarchyError::UnknownNode(n.clone()));
            }
        }
        Ok(g)
    }

    pub fn contains(&self, node: &str) -> bool {
        self.nodes.iter().any(|n| *n == normalize_node(node))
    }

    fn index(&self, node: &str) -> Result<usize, HierarchyError> {
        let n = normalize_node(node);
        self.nodes
            .iter()
            .position(|m| *m == n)
            .ok_or_else(|| HierarchyError::UnknownNode(node.to_string()))
    }

    /// Representative node index for every node after merging equalities.
    fn classes(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for q in &self.equalities {
            let ids: Vec<usize> = q.nodes.iter().map(|n| self.index(n).unwrap()).collect();
            for w in ids.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..self.nodes.len())
            .map(|x| find(&mut parent, x))
            .collect()
    }

    fn class_successors(&self, cls: &[usize]) -> BTreeMap<usize, BTreeSet<usize>> {
        let mut succ: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = (
                cls[self.index(&e.from).unwrap()],
                cls[self.index(&e.to).unwrap()],
            );
            succ.entry(a).or_default().insert(b);
        }
        succ
    }

    fn reaches(
        succ: &BTreeMap<usize, BTreeSet<usize>>,
        from: usize,
        to: usize,
        skip: Option<(usize, usize)>,
    ) -> bool {
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &y in succ.get(&x).into_iter().flatten() {
                if skip == Some((x, y)) {
                    continue;
                }
                if y == to {
                    return true;
                }
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// How the family `x` relates to the family `y`.
    pub fn query(&self, x: &str, y: &str) -> Result<Relation, HierarchyError> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        let cls = self.classes();
        let (a, b) = (cls[i], cls[j]);
        if a == b {
            return Ok(Relation::Equal);
        }
        let succ = self.class_successors(&cls);
        Ok(if Self::reaches(&succ, a, b, None) {
            Relation::ProperSubset
        } else if Self::reaches(&succ, b, a, None) {
            Relation::ProperSuperset
        } else {
            Relation::Incomparable
        })
    }

    /// True when no directed cycle survives the merging of equal nodes.
    pub fn is_acyclic(&self) -> bool {
        let cls = self.classes();
        let succ = self.class_successors(&cls);
        self.edges.iter().all(|e| {
            let (a, b) = (
                cls[self.index(&e.from).unwrap()],
                cls[self.index(&e.to).unwrap()],
            );
            a != b && !Self::reaches(&succ, b, a, None)
        })
    }

    /// Edges implied by a longer path; empty when the drawn edge set is its
    /// own transitive reduction.
    pub fn redundant_edges(&self) -> Vec<&Edge> {
        let cls = self.classes();
        let succ = self.class_successors(&cls);
        self.edges
            .iter()
            .filter(|e| {
                let (a, b) = (
                    cls[self.index(&e.from).unwrap()],
                    cls[self.index(&e.to).unwrap()],
                );
                Self::reaches(&succ, a, b, Some((a, b)))
            })
            .collect()
    }

    /// Nodes merged with `node`, itself included, in declaration order.
    pub fn equal_to(&self, node: &str) -> Result<Vec<&str>, HierarchyError> {
        let i = self.index(node)?;
        let cls = self.classes();
        Ok(self
            .nodes
            .iter()
            .enumerate()
            .filter(|&(j, _)| cls[j] == cls[i])
            .map(|(_, n)| n.as_str())
            .collect())
    }

    /// The subregular family named by a node; `None` for `REG` and for the
    /// nodes of the grammar diagram.
    pub fn family(node: &str) -> Option<Family> {
        node.parse().ok()
    }

    /// The selection family `F` of a node `EC(F)`.
    pub fn selection_family(node: &str) -> Option<String> {
        let n = normalize_node(node);
        n.strip_prefix("EC(")
            .and_then(|s| s.strip_suffix(')'))
            .map(str::to_string)
    }

    /// Graphviz rendering: merged nodes share one box, arrows point upwards
    /// to the larger family and carry their provenance.
    pub fn to_dot(&self) -> String {
        let cls = self.classes();
        let mut out = format!("digraph {} {{\n", self.name);
        out.push_str(&format!(
            "  label={:?};\n  rankdir=BT;\n  node [shape=box];\n",
            self.title
        ));
        for (i, n) in self.nodes.iter().enumerate() {
            if cls[i] != i {
                continue;
            }
            let label = self
                .nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| cls[j] == i)
                .map(|(_, m)| m.as_str())
                .collect::<Vec<_>>()
                .join(" = ");
            out.push_str(&format!("  {:?} [label={:?}];\n", n, label));
        }
        for e in &self.edges {
            let (a, b) = (
                &self.nodes[cls[self.index(&e.from).unwrap()]],
                &self.nodes[cls[self.index(&e.to).unwrap()]],
            );
            out.push_str(&format!(
                "  {:?} -> {:?} [label={:?}];\n",
                a, b, e.provenance
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Query across both shipped diagrams; the node names decide the diagram.
pub fn query(x: &str, y: &str) -> Result<Relation, HierarchyError> {
    let graphs = HierarchyGraph::shipped();
    let home = |n: &str| {
        graphs
            .iter()
            .position(|g| g.contains(n))
            .ok_or_else(|| HierarchyError::UnknownNode(n.to_string()))
    };
    let (gx, gy) = (home(x)?, home(y)?);
    if gx != gy {
        return Err(HierarchyError::CrossGraph {
            x: normalize_node(x),
            y: normalize_node(y),
        });
    }
    graphs[gx].query(x, y)
}
