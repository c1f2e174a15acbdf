use std::collections::BTreeMap;

use super::Dfa;
use crate::regex::Regex;

fn cat(x: Regex, y: Regex) -> Regex {
    if x.is_epsilon() {
        y
    } else if y.is_epsilon() {
        x
    } else {
        Regex::concat(x, y)
    }
}

fn star(x: Regex) -> Regex {
    match x {
        Regex::Empty => Regex::epsilon(),
        Regex::Star(_) => x,
        _ => Regex::star(x),
    }
}

fn alt(x: Option<Regex>, y: Regex) -> Regex {
    match x {
        None => y,
        Some(x) if x == y => x,
        Some(x) => Regex::union(x, y),
    }
}

/// Brzozowski–McCluskey state elimination on the trimmed automaton, removing the
/// state with the fewest in×out edge pairs first.
pub(super) fn dfa_to_regex(d: &Dfa) -> Regex {
    let reach = d.reachable();
    let co = d.coaccessible();
    let n = d.num_states();
    let useful: Vec<bool> = (0..n).map(|q| reach[q] && co[q]).collect();
    if !useful[d.initial()] {
        return Regex::Empty;
    }
    let start = n;
    let end = n + 1;
    let mut edges: BTreeMap<(usize, usize), Regex> = BTreeMap::new();
    let add = |edges: &mut BTreeMap<(usize, usize), Regex>, i: usize, j: usize, r: Regex| {
        let old = edges.remove(&(i, j));
        edges.insert((i, j), alt(old, r));
    };
    add(&mut edges, start, d.initial(), Regex::epsilon());
    for q in (0..n).filter(|&q| useful[q]) {
        if d.is_accepting(q) {
            add(&mut edges, q, end, Regex::epsilon());
        }
        for (a, &c) in d.alphabet().letters().iter().enumerate() {
            let t = d.next(q, a);
            if useful[t] {
                add(&mut edges, q, t, Regex::Symbol(c));
            }
        }
    }
    let mut remaining: Vec<usize> = (0..n).filter(|&q| useful[q]).collect();
    while !remaining.is_empty() {
        let (pos, &k) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &k)| {
                let ins = edges.keys().filter(|&&(i, j)| j == k && i != k).count();
                let outs = edges.keys().filter(|&&(i, j)| i == k && j != k).count();
                (ins * outs, k)
            })
            .unwrap();
        remaining.remove(pos);
        let lp = edges
            .remove(&(k, k))
            .map(star)
            .unwrap_or_else(Regex::epsilon);
        let ins: Vec<(usize, Regex)> = edges
            .iter()
            .filter(|(&(_, j), _)| j == k)
            .map(|(&(i, _), r)| (i, r.clone()))
            .collect();
        let outs: Vec<(usize, Regex)> = edges
            .iter()
            .filter(|(&(i, _), _)| i == k)
            .map(|(&(_, j), r)| (j, r.clone()))
            .collect();
        edges.retain(|&(i, j), _| i != k && j != k);
        for (i, a) in &ins {
            for (j, b) in &outs {
                let r = cat(cat(a.clone(), lp.clone()), b.clone());
                add(&mut edges, *i, *j, r);
            }
        }
    }
    edges.remove(&(start, end)).unwrap_or(Regex::Empty)
}

#[cfg(test)]
mod tests {
    use crate::alphabet::Alphabet;
    use crate::automata::Dfa;
    use crate::regex::parse_regex;

    #[test]
    fn state_elimination_preserves_language() {
        let v = Alphabet::parse("ab").unwrap();
        for src in [
            "0",
            "1",
            "(ab)*",
            "a*b",
            "(a|b)*ba(b|aa)*",
            "aa*|b(ab)*",
            "(aa)*",
        ] {
            let d = Dfa::from_regex(&parse_regex(src, &v).unwrap(), &v);
            let back = Dfa::from_regex(&d.to_regex(), &v);
            assert_eq!(back, d, "{src} -> {}", d.to_regex());
        }
    }

    #[test]
    fn empty_language_gives_empty_regex() {
        let v = Alphabet::parse("ab").unwrap();
        assert_eq!(Dfa::empty(&v).to_regex(), crate::regex::Regex::Empty);
        assert_eq!(Dfa::epsilon(&v).to_regex().to_string(), "1");
    }
}
