use std::collections::{BTreeSet, HashMap};

use super::certificate::Certificate;
use super::order::{find_ordered_automaton, OrderSearch};
use super::search::{admits_sydef_core, decide_2com_bounded, search_sydef, search_union_free};
use super::{ClassifierConfig, Family, LanguageHandle, Verdict};
use crate::automata::{AutomataError, Cardinality, Dfa, Nfa, TransitionMonoid};
use crate::regex::Regex;

/// One classification run over a fixed language; verdicts and the transition
/// monoid are computed once and reused across families.
pub(super) struct Session<'a> {
    l: &'a LanguageHandle,
    cfg: &'a ClassifierConfig,
    memo: HashMap<Family, Verdict>,
    monoid: Option<Result<TransitionMonoid, AutomataError>>,
}

fn same(x: &Dfa, y: &Dfa) -> bool {
    x.equivalent(y).expect("same alphabet")
}

fn verdict(f: Family, yes: bool) -> Verdict {
    if yes {
        Verdict::yes(f)
    } else {
        Verdict::no(f)
    }
}

impl<'a> Session<'a> {
    pub(super) fn new(l: &'a LanguageHandle, cfg: &'a ClassifierConfig) -> Self {
        Session {
            l,
            cfg,
            memo: HashMap::new(),
            monoid: None,
        }
    }

    pub(super) fn decide(&mut self, f: Family) -> Verdict {
        if let Some(v) = self.memo.get(&f) {
            return v.clone();
        }
        let v = self.compute(f);
        self.memo.insert(f, v.clone());
        v
    }

    fn holds(&mut self, f: Family) -> bool {
        self.decide(f).is_yes()
    }

    fn fails(&mut self, f: Family) -> bool {
        self.decide(f).is_no()
    }

    fn dfa(&self) -> &'a Dfa {
        self.l.dfa()
    }

    fn monoid(&mut self) -> Result<&TransitionMonoid, String> {
        let (dfa, cap) = (self.dfa(), self.cfg.monoid_cap);
        self.monoid
            .get_or_insert_with(|| TransitionMonoid::of(dfa, cap))
            .as_ref()
            .map_err(|e| e.to_string())
    }

    fn compute(&mut self, f: Family) -> Verdict {
        let m = self.dfa();
        match f {
            Family::Mon => verdict(f, m.is_universal()),
            Family::Fin => verdict(f, m.cardinality() != Cardinality::Infinite),
            Family::Nil => verdict(
                f,
                m.cardinality() != Cardinality::Infinite
                    || m.complement().cardinality() != Cardinality::Infinite,
            ),
            Family::Comb => self.comb(),
            Family::Def => self.definite(),
            Family::Suf => {
                let closure = Nfa::from_dfa(m).all_reachable_initial().determinize();
                verdict(f, closure.subset(m).expect("same alphabet"))
            }
            Family::Comm => verdict(f, commutes(m)),
            Family::Circ => verdict(f, rotation(m).subset(m).expect("same alphabet")),
            Family::Nc | Family::Sf => self.aperiodic(f),
            Family::Ps => self.power_separating(),
            Family::Ord => self.ordered(),
            Family::Star => {
                if same(&m.star(), m) {
                    Verdict::yes(f).with_certificate(Certificate::Star {
                        h: self.l.regex().clone(),
                    })
                } else {
                    Verdict::no(f)
                }
            }
            Family::Rcom => match stabilizing_word(m) {
                Some(g) => Verdict::yes(f).with_certificate(Certificate::Comet {
                    e: Regex::epsilon(),
                    g: Regex::word(&g),
                    h: self.l.regex().clone(),
                }),
                None => Verdict::no(f),
            },
            Family::Lcom => match stabilizing_word(&m.reverse()) {
                Some(g) => Verdict::yes(f).with_certificate(Certificate::Comet {
                    e: self.l.regex().clone(),
                    g: Regex::word(&crate::alphabet::reverse_word(&g)),
                    h: Regex::epsilon(),
                }),
                None => Verdict::no(f),
            },
            Family::TwoCom => self.two_sided(),
            Family::Sydef => self.symmetric_definite(),
            Family::Uf => {
                let is_star = self.holds(Family::Star);
                match search_union_free(self.l, is_star) {
                    Some(r) => {
                        Verdict::yes(f).with_certificate(Certificate::UnionFree { regex: r })
                    }
                    None => Verdict::unknown(f, "no union-free expression found"),
                }
            }
        }
    }

    fn comb(&self) -> Verdict {
        let m = self.dfa();
        let v = self.l.alphabet();
        let letters: Vec<char> = v
            .letters()
            .iter()
            .copied()
            .filter(|c| m.accepts(&c.to_string()))
            .collect();
        let x = Regex::union_all(letters.iter().map(|&c| Regex::sym(c)));
        let candidate = Dfa::universal(v)
            .concat(&Dfa::from_regex(&x, v))
            .expect("same alphabet");
        if same(&candidate, m) {
            Verdict::yes(Family::Comb).with_certificate(Certificate::Combinational { letters })
        } else {
            Verdict::no(Family::Comb)
        }
    }

    /// Pairs of distinct states reachable from any pair by words of length `j`;
    /// `L` is definite with window `K` once all pairs at step `K` agree on
    /// acceptance. The sets shrink, so a repeat without agreement means never.
    fn definite(&self) -> Verdict {
        let m = self.dfa();
        let n = m.num_states();
        let k = m.alphabet().len();
        let mut pairs: BTreeSet<(usize, usize)> = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .collect();
        let mut window = 0;
        loop {
            if pairs
                .iter()
                .all(|&(p, q)| m.is_accepting(p) == m.is_accepting(q))
            {
                break;
            }
            let next: BTreeSet<(usize, usize)> = pairs
                .iter()
                .flat_map(|&(p, q)| (0..k).map(move |a| (m.next(p, a), m.next(q, a))))
                .filter(|(p, q)| p != q)
                .map(|(p, q)| (p.min(q), p.max(q)))
                .collect();
            if next == pairs {
                return Verdict::no(Family::Def);
            }
            pairs = next;
            window += 1;
        }
        let words = m.enumerate_capped(window, usize::MAX).expect("uncapped");
        let (a, b): (Vec<String>, Vec<String>) =
            words.into_iter().partition(|w| w.chars().count() < window);
        Verdict::yes(Family::Def).with_certificate(Certificate::Definite { window, a, b })
    }

    fn aperiodic(&mut self, f: Family) -> Verdict {
        let monoid = match self.monoid() {
            Ok(t) => t,
            Err(e) => return Verdict::unknown(f, e),
        };
        let mut index = 1;
        for t in monoid.elements() {
            let (i, p) = t.index_and_period();
            if p != 1 {
                return Verdict::no(f).because(format!("the word {:?} has period {p}", t.word));
            }
            index = index.max(i);
        }
        Verdict::yes(f).with_certificate(Certificate::Aperiodic { index })
    }

    fn power_separating(&mut self) -> Verdict {
        let m = self.dfa();
        let monoid = match self.monoid() {
            Ok(t) => t,
            Err(e) => return Verdict::unknown(Family::Ps, e),
        };
        let mut preperiod_max = 0;
        for t in monoid.elements() {
            // orbit z₀, t(z₀), t²(z₀), … until it cycles
            let mut first_seen = vec![usize::MAX; m.num_states()];
            let mut q = m.initial();
            let mut n = 0;
            while first_seen[q] == usize::MAX {
                first_seen[q] = n;
                q = t.map[q];
                n += 1;
            }
            let preperiod = first_seen[q];
            let acc = m.is_accepting(q);
            let mut p = t.map[q];
            while p != q {
                if m.is_accepting(p) != acc {
                    return Verdict::no(Family::Ps)
                        .because(format!("powers of {:?} alternate", t.word));
                }
                p = t.map[p];
            }
            preperiod_max = preperiod_max.max(preperiod);
        }
        Verdict::yes(Family::Ps).with_certificate(Certificate::PowerSeparating {
            m: preperiod_max + 1,
        })
    }

    fn ordered(&mut self) -> Verdict {
        let m = self.dfa();
        if self.fails(Family::Nc) {
            return Verdict::no(Family::Ord).because("not non-counting");
        }
        let n = m.num_states();
        if n > self.cfg.ord_state_cap {
            return Verdict::unknown(
                Family::Ord,
                format!(
                    "minimal automaton exceeds {} states",
                    self.cfg.ord_state_cap
                ),
            );
        }
        let max_len = self.cfg.ord_length_factor * n;
        match find_ordered_automaton(m, max_len, self.cfg.ord_budget) {
            OrderSearch::Found(o) => {
                Verdict::yes(Family::Ord).with_certificate(Certificate::Ordered(o))
            }
            OrderSearch::NoneUpTo(k) => Verdict::unknown(
                Family::Ord,
                format!("no ordered automaton with at most {k} states"),
            ),
            OrderSearch::Exhausted => Verdict::unknown(Family::Ord, "search budget exhausted"),
        }
    }

    fn two_sided(&mut self) -> Verdict {
        if self.dfa().cardinality() != Cardinality::Infinite {
            return decide_2com_bounded(self.l, self.cfg.search_bound);
        }
        for f in [Family::Rcom, Family::Lcom] {
            let v = self.decide(f);
            if v.is_yes() {
                return Verdict {
                    family: Family::TwoCom,
                    ..v
                };
            }
        }
        decide_2com_bounded(self.l, self.cfg.search_bound)
    }

    fn symmetric_definite(&mut self) -> Verdict {
        let m = self.dfa();
        let f = Family::Sydef;
        match m.cardinality() {
            Cardinality::Empty => {
                return Verdict::yes(f).with_certificate(Certificate::SymmetricDefinite {
                    e: Regex::Empty,
                    h: Regex::Empty,
                })
            }
            Cardinality::FiniteNonempty => return Verdict::no(f).because("nonempty finite"),
            Cardinality::Infinite => {}
        }
        for (g, why) in [
            (Family::Ps, "not power-separating"),
            (Family::Rcom, "not a right-sided comet"),
            (Family::Lcom, "not a left-sided comet"),
        ] {
            if self.fails(g) {
                return Verdict::no(f).because(why);
            }
        }
        if !admits_sydef_core(m) {
            return Verdict::no(f).because("no word h with e·V*·h ⊆ L");
        }
        match search_sydef(self.l, self.cfg.search_bound) {
            Some(c) => Verdict::yes(f).with_certificate(c),
            None => Verdict::unknown(
                f,
                format!("no certificate within bound {}", self.cfg.search_bound),
            ),
        }
    }
}

/// On a minimal DFA, `L` is closed under swapping adjacent letters iff `ab` and
/// `ba` act identically on every state.
fn commutes(m: &Dfa) -> bool {
    let k = m.alphabet().len();
    (0..m.num_states()).all(|p| {
        (0..k).all(|a| (a + 1..k).all(|b| m.next(m.next(p, a), b) == m.next(m.next(p, b), a)))
    })
}

/// NFA for `{ w·a : a·w ∈ L }`: guess the first letter `a`, run from `δ(z₀, a)`,
/// and accept after reading a final `a` into an accepting state.
fn rotation(m: &Dfa) -> Dfa {
    let n = m.num_states();
    let k = m.alphabet().len();
    let mut nfa = Nfa::new(m.alphabet().clone());
    let start = nfa.add_state(false);
    nfa.set_initial(start);
    let fin = nfa.add_state(true);
    // state (a, q) at 2 + a·n + q
    for _ in 0..k * n {
        nfa.add_state(false);
    }
    let id = |a: usize, q: usize| 2 + a * n + q;
    for a in 0..k {
        nfa.add_eps(start, id(a, m.next(m.initial(), a)));
        for q in 0..n {
            for b in 0..k {
                nfa.add_transition(id(a, q), b, id(a, m.next(q, b)));
            }
            if m.is_accepting(q) {
                nfa.add_transition(id(a, q), a, fin);
            }
        }
    }
    // the empty word rotates to itself
    if m.is_accepting(m.initial()) {
        nfa.set_accepting(start, true);
    }
    nfa.determinize().minimize()
}

/// Shortest nonempty word `g` (shortlex) with `g·L ⊆ L`.
fn stabilizing_word(m: &Dfa) -> Option<String> {
    let stab = m.left_stabilizer();
    let k = stab.alphabet().len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; stab.num_states()];
    let mut seen = vec![false; stab.num_states()];
    let mut queue = std::collections::VecDeque::new();
    for a in 0..k {
        let t = stab.next(stab.initial(), a);
        if !seen[t] {
            seen[t] = true;
            parent[t] = Some((usize::MAX, a));
            queue.push_back(t);
        }
    }
    while let Some(q) = queue.pop_front() {
        if stab.is_accepting(q) {
            let mut letters = Vec::new();
            let mut cur = q;
            while let Some((prev, a)) = parent[cur] {
                letters.push(a);
                if prev == usize::MAX {
                    break;
                }
                cur = prev;
            }
            letters.reverse();
            return Some(stab.alphabet().decode(&letters));
        }
        for a in 0..k {
            let t = stab.next(q, a);
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, a));
                queue.push_back(t);
            }
        }
    }
    None
}
