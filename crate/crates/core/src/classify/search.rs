//! Bounded certificate searches for the families without a complete decider.

use super::certificate::Certificate;
use super::{Family, LanguageHandle, Verdict};
use crate::alphabet::Alphabet;
use crate::automata::{Cardinality, Dfa};
use crate::regex::{union_normal_form, Regex};

/// Subsets of at most this many candidate prefixes are tried.
const MAX_PREFIXES: usize = 12;

fn same(x: &Dfa, y: &Dfa) -> bool {
    x.equivalent(y).expect("same alphabet")
}

/// Words of length at most `bound` that are prefixes of some word of `L`.
fn live_prefixes(m: &Dfa, bound: usize) -> Vec<String> {
    let co = m.coaccessible();
    m.alphabet()
        .words_up_to(bound)
        .into_iter()
        .filter(|w| co[m.run(m.initial(), w).expect("word over the alphabet")])
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Two-sided comet search over finite first tails `E` of short prefixes,
/// middle `{g}` and last tail `M = ⋂_{e∈E} e⁻¹L`.
pub fn decide_2com_bounded(l: &LanguageHandle, bound: usize) -> Verdict {
    let m = l.dfa();
    let v = l.alphabet();
    match m.cardinality() {
        Cardinality::FiniteNonempty => {
            return Verdict::no(Family::TwoCom).because("nonempty finite languages are not comets")
        }
        Cardinality::Empty => {
            return Verdict::yes(Family::TwoCom).with_certificate(Certificate::Comet {
                e: Regex::Empty,
                g: Regex::sym(v.letter(0)),
                h: Regex::Empty,
            })
        }
        Cardinality::Infinite => {}
    }
    if bound == 0 {
        return Verdict::unknown(Family::TwoCom, "search bound is zero");
    }
    let mut prefixes = live_prefixes(m, bound);
    prefixes.truncate(MAX_PREFIXES);
    let middles: Vec<String> = v
        .words_up_to(bound)
        .into_iter()
        .filter(|g| !g.is_empty())
        .collect();
    for size in 1..=prefixes.len() {
        for pick in combinations(prefixes.len(), size) {
            let es: Vec<&String> = pick.iter().map(|&i| &prefixes[i]).collect();
            let mut tail = Dfa::universal(v);
            for e in &es {
                let q = m.run(m.initial(), e).expect("word over the alphabet");
                tail = tail
                    .intersect(&m.residual(q).expect("state exists"))
                    .expect("same alphabet");
            }
            if tail.is_empty_language() {
                continue;
            }
            let covered = Dfa::from_words(v, es.iter().copied())
                .concat(&tail)
                .expect("same alphabet");
            if !same(&covered, m) {
                continue;
            }
            for g in &middles {
                let after = tail.run(tail.initial(), g).expect("word over the alphabet");
                if tail.includes_from(tail.initial(), &tail, after) {
                    return Verdict::yes(Family::TwoCom).with_certificate(Certificate::Comet {
                        e: Regex::words(es.iter().copied()),
                        g: Regex::word(g),
                        h: tail.to_regex(),
                    });
                }
            }
        }
    }
    Verdict::unknown(
        Family::TwoCom,
        format!("no comet certificate within bound {bound}"),
    )
}

/// `{h : x·V*·h ⊆ L for every state x in reach}` where `reach` is closed under
/// transitions: the intersection of the residuals of those states.
fn max_last_tail(m: &Dfa, from: usize) -> Dfa {
    let mut seen = vec![false; m.num_states()];
    let mut stack = vec![from];
    seen[from] = true;
    let mut h = Dfa::universal(m.alphabet());
    while let Some(p) = stack.pop() {
        h = h
            .intersect(&m.residual(p).expect("state exists"))
            .expect("same alphabet");
        for a in 0..m.alphabet().len() {
            let t = m.next(p, a);
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    h
}

/// A nonempty `E·V*·H ⊆ L` needs a state whose reachable residuals share a
/// word.
pub(crate) fn admits_sydef_core(m: &Dfa) -> bool {
    (0..m.num_states()).any(|q| !max_last_tail(m, q).is_empty_language())
}

/// `{e : e·V*·H ⊆ L}`: words leading to states from which every reachable state
/// has a residual containing `H`.
fn max_first_tail(m: &Dfa, h: &Dfa) -> Dfa {
    let n = m.num_states();
    let contains: Vec<bool> = (0..n).map(|p| h.includes_from(h.initial(), m, p)).collect();
    let good: Vec<bool> = (0..n)
        .map(|q| {
            let mut seen = vec![false; n];
            let mut stack = vec![q];
            seen[q] = true;
            while let Some(p) = stack.pop() {
                if !contains[p] {
                    return false;
                }
                for a in 0..m.alphabet().len() {
                    let t = m.next(p, a);
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
            true
        })
        .collect();
    Dfa::new(
        m.alphabet().clone(),
        m.transitions().to_vec(),
        m.initial(),
        good,
    )
    .expect("same shape as m")
    .minimize()
}

/// Tries `E·V*·H = L` with `H` maximal for a single short first-tail word and
/// `E` maximal for that `H`. Returns the two languages.
fn sydef_from_prefixes(m: &Dfa, bound: usize) -> Option<(Dfa, Dfa)> {
    let universe = Dfa::universal(m.alphabet());
    for e in live_prefixes(m, bound) {
        let q = m.run(m.initial(), &e).expect("word over the alphabet");
        let h = max_last_tail(m, q);
        if h.is_empty_language() {
            continue;
        }
        let first = max_first_tail(m, &h);
        let rebuilt = first
            .concat(&universe)
            .and_then(|x| x.concat(&h))
            .expect("same alphabet");
        if same(&rebuilt, m) {
            return Some((first, h));
        }
    }
    None
}

pub(super) fn search_sydef(l: &LanguageHandle, bound: usize) -> Option<Certificate> {
    let m = l.dfa();
    if let Some((e, h)) = sydef_from_prefixes(m, bound) {
        return Some(Certificate::SymmetricDefinite {
            e: e.to_regex(),
            h: h.to_regex(),
        });
    }
    let rev = m.reverse();
    let (e, h) = sydef_from_prefixes(&rev, bound)?;
    Some(Certificate::SymmetricDefinite {
        e: h.reverse().to_regex(),
        h: e.reverse().to_regex(),
    })
}

fn single_union_free(r: &Regex, v: &Alphabet, target: &Dfa) -> Option<Regex> {
    let parts = union_normal_form(r);
    if parts.len() == 1 {
        return Some(parts.into_iter().next().unwrap());
    }
    // One component may already cover all the others.
    parts
        .iter()
        .find(|c| c.is_over(v) && same(&Dfa::from_regex(c, v), target))
        .cloned()
}

/// A union-free regex for `L`, from the source regex, its star when `L = L*`, or
/// the state-elimination regex.
pub(super) fn search_union_free(l: &LanguageHandle, is_star: bool) -> Option<Regex> {
    let v = l.alphabet();
    let m = l.dfa();
    if m.is_empty_language() {
        return Some(Regex::Empty);
    }
    let mut candidates = vec![l.regex().clone()];
    if is_star {
        candidates.push(Regex::star(l.regex().clone()));
    }
    let eliminated = m.to_regex();
    if is_star {
        candidates.push(Regex::star(eliminated.clone()));
    }
    candidates.push(eliminated);
    candidates
        .iter()
        .filter_map(|r| single_union_free(r, v, m))
        .find(|r| same(&Dfa::from_regex(r, v), m))
}
