//! Line-oriented DFA text format and Graphviz export.
//!
//! ```text
//! alphabet: a b
//! states: 3
//! initial: 0
//! accepting: 0
//! 0 a 1
//! 0 b 2
//! ...
//! ```
//! One transition per line; `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{AutomataError, Dfa, Nfa};
use crate::alphabet::Alphabet;

pub fn write_dfa_text(d: &Dfa) -> String {
    let mut s = String::new();
    let letters: Vec<String> = d
        .alphabet()
        .letters()
        .iter()
        .map(|c| c.to_string())
        .collect();
    let acc: Vec<String> = d.accepting_states().iter().map(|q| q.to_string()).collect();
    let _ = writeln!(s, "alphabet: {}", letters.join(" "));
    let _ = writeln!(s, "states: {}", d.num_states());
    let _ = writeln!(s, "initial: {}", d.initial());
    let _ = writeln!(s, "accepting: {}", acc.join(" "));
    for q in 0..d.num_states() {
        for (a, c) in d.alphabet().letters().iter().enumerate() {
            let _ = writeln!(s, "{q} {c} {}", d.next(q, a));
        }
    }
    s
}

pub fn parse_dfa_text(text: &str) -> Result<Dfa, AutomataError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut accepting: Vec<usize> = Vec::new();
    let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
    let err = |line: usize, msg: &str| AutomataError::Format {
        line,
        msg: msg.to_string(),
    };
    let num = |line: usize, s: &str| {
        s.parse::<usize>()
            .map_err(|_| err(line, "expected a state number"))
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = content.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "alphabet" => {
                    alphabet = Some(Alphabet::parse(value).map_err(|e| err(line, &e.to_string()))?)
                }
                "states" => {
                    let n = num(line, value)?;
                    states = Some(n);
                }
                "initial" => initial = Some(num(line, value)?),
                "accepting" => {
                    for tok in value.split_whitespace() {
                        accepting.push(num(line, tok)?);
                    }
                }
                other => return Err(err(line, &format!("unknown header {other:?}"))),
            }
            continue;
        }
        let (Some(v), Some(n)) = (&alphabet, states) else {
            return Err(err(
                line,
                "transitions must follow the alphabet and states headers",
            ));
        };
        if delta.is_empty() {
            delta = vec![vec![None; v.len()]; n];
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(err(line, "expected `<from> <letter> <to>`"));
        }
        let from = num(line, toks[0])?;
        let to = num(line, toks[2])?;
        let mut cs = toks[1].chars();
        let letter = match (cs.next(), cs.next()) {
            (Some(c), None) => c,
            _ => return Err(err(line, "letters are single characters")),
        };
        let a = v
            .index_of(letter)
            .ok_or_else(|| err(line, &format!("letter {letter:?} not in alphabet")))?;
        if from >= n || to >= n {
            return Err(err(line, "state out of range"));
        }
        if delta[from][a].replace(to).is_some() {
            return Err(err(line, "duplicate transition"));
        }
    }
    let alphabet = alphabet.ok_or_else(|| err(0, "missing alphabet header"))?;
    let n = states.ok_or_else(|| err(0, "missing states header"))?;
    let initial = initial.ok_or_else(|| err(0, "missing initial header"))?;
    if delta.is_empty() {
        delta = vec![vec![None; alphabet.len()]; n];
    }
    let delta = delta
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<usize>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| err(0, "transition function is not total"))?;
    let mut acc = vec![false; n];
    for q in accepting {
        *acc.get_mut(q).ok_or(AutomataError::UnknownState(q))? = true;
    }
    Dfa::new(alphabet, delta, initial, acc)
}

fn edge_labels(edges: BTreeMap<(usize, usize), Vec<String>>, out: &mut String) {
    for ((p, q), labels) in edges {
        let _ = writeln!(out, "  {p} -> {q} [label=\"{}\"];", labels.join(","));
    }
}

/// Graphviz rendering; states in numeric order, parallel edges merged.
pub fn dfa_to_dot(d: &Dfa, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{name}\" {{");
    let _ = writeln!(s, "  rankdir=LR;");
    let _ = writeln!(s, "  __start [shape=point];");
    for q in 0..d.num_states() {
        let shape = if d.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(s, "  {q} [shape={shape}];");
    }
    let _ = writeln!(s, "  __start -> {};", d.initial());
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for q in 0..d.num_states() {
        for (a, c) in d.alphabet().letters().iter().enumerate() {
            edges
                .entry((q, d.next(q, a)))
                .or_default()
                .push(c.to_string());
        }
    }
    edge_labels(edges, &mut s);
    s.push_str("}\n");
    s
}

pub fn nfa_to_dot(n: &Nfa, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{name}\" {{");
    let _ = writeln!(s, "  rankdir=LR;");
    let _ = writeln!(s, "  __start [shape=point];");
    for q in 0..n.num_states() {
        let shape = if n.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(s, "  {q} [shape={shape}];");
    }
    for &i in n.initial() {
        let _ = writeln!(s, "  __start -> {i};");
    }
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for q in 0..n.num_states() {
        for (a, c) in n.alphabet().letters().iter().enumerate() {
            for &t in n.successors(q, a) {
                edges.entry((q, t)).or_default().push(c.to_string());
            }
        }
        for &t in n.eps_successors(q) {
            edges.entry((q, t)).or_default().push("ε".into());
        }
    }
    edge_labels(edges, &mut s);
    s.push_str("}\n");
    s
}
