//! Search for an ordered automaton recognising the language of a minimal DFA.
//!
//! Any DFA for `L` maps onto the minimal DFA, so an ordered DFA for `L` can be
//! described by the sequence `s` of minimal states labelling its positions in
//! order. After merging equal neighbours, `s` works exactly when `s` contains the
//! initial state and, for every letter `a`, the sequence `δ_a(s)` with repeats
//! collapsed is a subsequence of `s`. Greedy leftmost embedding then yields the
//! monotone transition maps. The search builds `s` left to right, keeping per
//! letter either the position of the last embedded image or the queue of images
//! still waiting to be placed.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::certificate::OrderedAutomaton;
use crate::automata::Dfa;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Track {
    /// Nothing embedded yet and nothing pending.
    Fresh,
    /// Last image embedded at this absolute position.
    At(usize),
    /// Images not yet embedded; they need positions beyond the current end.
    Owe(Vec<usize>),
}

#[derive(Debug, Clone)]
struct Node {
    labels: Vec<usize>,
    tracks: Vec<Track>,
    has_initial: bool,
}

impl Node {
    fn empty() -> Node {
        Node {
            labels: Vec::new(),
            tracks: Vec::new(),
            has_initial: false,
        }
    }

    fn done(&self) -> bool {
        self.has_initial && self.tracks.iter().all(|t| matches!(t, Track::At(_)))
    }

    /// Memo key: everything that influences how the sequence may continue.
    fn key(&self) -> Key {
        let len = self.labels.len();
        let base = self
            .tracks
            .iter()
            .filter_map(|t| match t {
                Track::At(p) => Some(*p),
                _ => None,
            })
            .min()
            .unwrap_or(len);
        let tracks = self
            .tracks
            .iter()
            .map(|t| match t {
                Track::At(p) => Track::At(p - base),
                other => other.clone(),
            })
            .collect();
        (
            self.labels[base..].to_vec(),
            tracks,
            self.has_initial,
            self.labels.last().copied(),
        )
    }

    fn extend(&self, d: &Dfa, c: usize) -> Node {
        let mut labels = self.labels.clone();
        labels.push(c);
        let i = labels.len() - 1;
        let tracks = self
            .tracks
            .iter()
            .enumerate()
            .map(|(a, t)| {
                let img = d.next(c, a);
                match t {
                    Track::Fresh => {
                        if img == c {
                            Track::At(i)
                        } else {
                            Track::Owe(vec![img])
                        }
                    }
                    Track::At(p) => {
                        if labels[*p] == img {
                            Track::At(*p)
                        } else if let Some(j) = (p + 1..=i).find(|&j| labels[j] == img) {
                            Track::At(j)
                        } else {
                            Track::Owe(vec![img])
                        }
                    }
                    Track::Owe(queue) => {
                        let mut queue = queue.clone();
                        if queue.first() == Some(&c) {
                            queue.remove(0);
                        }
                        if queue.is_empty() {
                            if img == c {
                                Track::At(i)
                            } else {
                                Track::Owe(vec![img])
                            }
                        } else {
                            if queue.last() != Some(&img) {
                                queue.push(img);
                            }
                            Track::Owe(queue)
                        }
                    }
                }
            })
            .collect();
        Node {
            labels,
            tracks,
            has_initial: self.has_initial || c == d.initial(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderSearch {
    Found(OrderedAutomaton),
    /// No ordered automaton with at most `max_len` states exists.
    NoneUpTo(usize),
    /// The node budget ran out first.
    Exhausted,
}

/// Positions that must still be appended: every owed image lies beyond the end.
fn owed(tracks: &[Track]) -> usize {
    tracks
        .iter()
        .map(|t| match t {
            Track::Owe(q) => q.len(),
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// Shortest ordered automaton for the language of the minimal DFA `d`, searching
/// sequences of at most `max_len` positions. Nodes are expanded in order of
/// their length plus the owed positions, a lower bound on any completion;
/// ties go to the longer sequence.
pub fn find_ordered_automaton(d: &Dfa, max_len: usize, budget: usize) -> OrderSearch {
    let n = d.num_states();
    let k = d.alphabet().len();
    let root = Node {
        labels: Vec::new(),
        tracks: vec![Track::Fresh; k],
        has_initial: false,
    };
    let mut seen: HashSet<Key> = HashSet::new();
    let mut nodes = vec![root];
    let mut queue = BinaryHeap::from([Reverse((0usize, Reverse(0usize), 0usize))]);
    let mut expanded = 0usize;
    while let Some(Reverse((_, _, id))) = queue.pop() {
        let node = std::mem::replace(&mut nodes[id], Node::empty());
        if node.done() {
            return OrderSearch::Found(build(d, &node.labels));
        }
        if node.labels.len() >= max_len {
            continue;
        }
        expanded += 1;
        if expanded > budget {
            return OrderSearch::Exhausted;
        }
        for c in 0..n {
            if node.labels.last() == Some(&c) {
                continue;
            }
            let child = node.extend(d, c);
            let bound = child.labels.len() + owed(&child.tracks);
            if bound > max_len || !seen.insert(child.key()) {
                continue;
            }
            queue.push(Reverse((bound, Reverse(child.labels.len()), nodes.len())));
            nodes.push(child);
        }
    }
    OrderSearch::NoneUpTo(max_len)
}

type Key = (Vec<usize>, Vec<Track>, bool, Option<usize>);

fn build(d: &Dfa, labels: &[usize]) -> OrderedAutomaton {
    let k = d.alphabet().len();
    let len = labels.len();
    let mut transitions = vec![vec![0; k]; len];
    for a in 0..k {
        let mut pos = 0;
        for (row, &c) in transitions.iter_mut().zip(labels) {
            let img = d.next(c, a);
            while labels[pos] != img {
                pos += 1;
            }
            row[a] = pos;
        }
    }
    OrderedAutomaton {
        transitions,
        initial: labels
            .iter()
            .position(|&c| c == d.initial())
            .expect("sequence contains the initial state"),
        accepting: (0..len).filter(|&i| d.is_accepting(labels[i])).collect(),
        labels: labels.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::regex::parse_regex;

    fn dfa(src: &str) -> Dfa {
        let v = Alphabet::parse("ab").unwrap();
        Dfa::from_regex(&parse_regex(src, &v).unwrap(), &v)
    }

    fn found(src: &str) -> OrderedAutomaton {
        let d = dfa(src);
        match find_ordered_automaton(&d, 3 * d.num_states(), 100_000) {
            OrderSearch::Found(o) => o,
            other => panic!("{src}: {other:?}"),
        }
    }

    #[test]
    fn ab_star_needs_a_fourth_state() {
        let o = found("(ab)*");
        assert_eq!(o.transitions.len(), 4);
        assert!(o.is_monotone());
        let v = Alphabet::parse("ab").unwrap();
        assert!(o.to_dfa(&v).unwrap().minimize() == dfa("(ab)*"));
    }

    #[test]
    fn monotone_minimal_dfa_is_found_directly() {
        let o = found("a*b*");
        assert_eq!(o.transitions.len(), 3);
    }

    #[test]
    fn counting_modulo_two_is_not_ordered() {
        let d = dfa("(aa)*");
        assert_eq!(
            find_ordered_automaton(&d, 12, 1_000_000),
            OrderSearch::NoneUpTo(12)
        );
    }
}
