//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.
//!
//! Runs as a plain binary so that every criterion reports even when an
//! earlier one fails. The process fails when the set of failing criteria
//! differs from `EXPECTED_FAILURES`.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subreg_core::classify::{
    classify, classify_all, verify_certificate, Certificate, Family, LanguageHandle, Outcome,
    VerdictMap,
};
use subreg_core::comet::{left_normal_form, CometDecomposition, Tail};
use subreg_core::grammar::{
    definite_to_sydef, eliminate_empty_word_selection, enumerate_language, fixture, fixtures,
    member, transform_to_lcom, transform_to_rcom, ContextualGrammar,
};
use subreg_core::hierarchy::{
    edge_consistency_check, small_dfa_corpus, verify_witnesses, ClaimStatus, HierarchyGraph,
    Registry,
};
use subreg_core::regex::union_normal_form;
use subreg_core::{parse_regex, Alphabet, Dfa, Regex};

/// The minimal complete DFA of {ab}* has three states (one shared sink); the
/// four-state automaton of the worked example keeps two sinks and is ordered
/// but not minimal. The literal "4 states" clause therefore cannot hold.
const EXPECTED_FAILURES: &[u32] = &[2];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alphabet(s: &str) -> Alphabet {
    Alphabet::parse(s).unwrap()
}

fn lang(regex: &str, v: &str) -> LanguageHandle {
    LanguageHandle::parse(regex, &alphabet(v)).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let g = fixture("ex1").unwrap().grammar;
    let got = enumerate_language(&g, 8);
    let elapsed = start.elapsed();
    let v = alphabet("abc");
    let closed = Dfa::from_regex(&parse_regex("(a|b)*|c(ab)*c", &v).unwrap(), &v);
    let want = closed.enumerate(8).unwrap();
    ensure(got == want, || {
        format!("{} words enumerated, {} expected", got.len(), want.len())
    })?;
    // direct description of the language, independent of the automata
    let direct = |w: &str| {
        !w.contains('c')
            || (w.len() >= 2
                && w.starts_with('c')
                && w.ends_with('c')
                && (w.len() - 2).is_multiple_of(2)
                && w.as_bytes()[1..w.len() - 1].chunks(2).all(|p| p == b"ab"))
    };
    let oracle: Vec<String> = v.words_up_to(8).into_iter().filter(|w| direct(w)).collect();
    ensure(got == oracle, || {
        "enumeration differs from the direct description".into()
    })?;
    ensure(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!("{} words, {:?}", got.len(), elapsed))
}

fn criterion_2() -> Check {
    let l = lang("(ab)*", "ab");
    let v = classify(&l, Family::Ord);
    let Some(Certificate::Ordered(m)) = &v.certificate else {
        return Err(format!("ORD = {} without an ordered automaton", v.outcome));
    };
    ensure(v.outcome == Outcome::Yes, || format!("ORD = {}", v.outcome))?;
    ensure(
        verify_certificate(&l, Family::Ord, v.certificate.as_ref().unwrap()) == Ok(true),
        || "certificate rejected".into(),
    )?;
    let n = m.transitions.len();
    for a in 0..2 {
        for z in 0..n {
            for z2 in z..n {
                ensure(m.transitions[z][a] <= m.transitions[z2][a], || {
                    format!("order not preserved by letter {a} at {z} ⪯ {z2}")
                })?;
            }
        }
    }
    let ordered = m.to_dfa(l.alphabet()).unwrap();
    for w in l.alphabet().words_up_to(8) {
        ensure(ordered.accepts(&w) == l.regex().matches(&w), || {
            format!("ordered automaton wrong on {w:?}")
        })?;
    }
    let minimal = l.dfa().num_states();
    ensure(minimal == 4, || {
        format!("minimal DFA has {minimal} states, not 4; ORD certified by a verified monotone {n}-state automaton")
    })?;
    Ok(format!("minimal DFA 4 states, ORD order on {n} states"))
}

type Witness = (&'static str, &'static str, &'static [(Family, Outcome)]);

fn criterion_3() -> Check {
    use Family::*;
    use Outcome::{No, Yes};
    let battery: &[Witness] = &[
        (
            "(aa)*",
            "a",
            &[(Star, Yes), (Lcom, Yes), (Rcom, Yes), (Ps, No), (Nc, No)],
        ),
        ("1", "a", &[(Star, Yes), (TwoCom, No)]),
        (
            "1|a",
            "a",
            &[
                (Fin, Yes),
                (Suf, Yes),
                (Comm, Yes),
                (Ps, Yes),
                (Star, No),
                (TwoCom, No),
            ],
        ),
        ("a*b", "ab", &[(Rcom, Yes), (Lcom, No)]),
        ("ba*", "ab", &[(Lcom, Yes), (Rcom, No)]),
        ("(ab)*", "ab", &[(Star, Yes), (Circ, No)]),
        ("(a|b|c)*(a|b)", "abc", &[(Comb, Yes)]),
        ("(a|b)*bab*(aab*)*", "ab", &[(Sydef, Yes), (Nc, No)]),
    ];
    let mut checked = 0;
    for (regex, v, claims) in battery {
        let l = lang(regex, v);
        for &(f, want) in *claims {
            let got = classify(&l, f);
            ensure(got.outcome == want, || {
                format!("{regex}: {f} = {}, expected {want}", got.outcome)
            })?;
            if let Some(c) = &got.certificate {
                ensure(verify_certificate(&l, f, c) == Ok(true), || {
                    format!("{regex}: {f} certificate rejected")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} verdicts"))
}

/// Random regex with exactly `size` nodes.
fn random_regex(rng: &mut ChaCha8Rng, size: usize, letters: &[char]) -> Regex {
    match size {
        0 | 1 => {
            if rng.gen_ratio(1, 8) {
                Regex::Empty
            } else {
                Regex::Symbol(letters[rng.gen_range(0..letters.len())])
            }
        }
        2 => Regex::Star(Box::new(random_regex(rng, 1, letters))),
        _ => match rng.gen_range(0..5) {
            0 => Regex::Star(Box::new(random_regex(rng, size - 1, letters))),
            op => {
                let left = rng.gen_range(1..size - 1);
                let (l, r) = (
                    random_regex(rng, left, letters),
                    random_regex(rng, size - 1 - left, letters),
                );
                if op <= 2 {
                    Regex::Concat(Box::new(l), Box::new(r))
                } else {
                    Regex::Union(Box::new(l), Box::new(r))
                }
            }
        },
    }
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let v = alphabet("ab");
    let words = v.words_up_to(7);
    let mut done = 0;
    let mut tries = 0;
    while done < 1000 {
        tries += 1;
        let mut part = || {
            let n = rng.gen_range(1..=6);
            random_regex(&mut rng, n, &['a', 'b'])
        };
        let (e, g, h) = (part(), part(), part());
        let Ok(d) = CometDecomposition::new(v.clone(), e, g, h) else {
            continue;
        };
        done += 1;
        let nf = left_normal_form(&d).map_err(|e| format!("{}: {e}", d.regex()))?;
        let input = d.regex();
        ensure(nf.verified, || format!("{input}: not verified"))?;
        let out = Dfa::from_regex(&nf.regex(), &v);
        ensure(out.equivalent(&d.dfa()).unwrap(), || {
            format!("{input}: language changed")
        })?;
        for w in &words {
            ensure(out.accepts(w) == input.matches(w), || {
                format!("{input}: differs on {w:?}")
            })?;
        }
        for c in &nf.components {
            ensure(matches!(c.e, Tail::Words(_)), || {
                format!("{input}: first tail not explicit")
            })?;
            let gd = Dfa::from_regex(&c.g, &v);
            ensure(!gd.is_empty_language() && !gd.is_epsilon_only(), || {
                format!("{input}: degenerate middle {}", c.g)
            })?;
        }
    }
    Ok(format!("{done} decompositions ({tries} drawn)"))
}

/// Every regex tree over {∅, a, b} with concatenation, union and star, by size.
fn all_regexes(max: usize) -> Vec<Vec<Regex>> {
    let mut by_size: Vec<Vec<Regex>> = vec![Vec::new(); max + 1];
    for n in 1..=max {
        let mut out = Vec::new();
        if n == 1 {
            out.extend([Regex::Empty, Regex::Symbol('a'), Regex::Symbol('b')]);
        } else {
            for r in &by_size[n - 1] {
                out.push(Regex::Star(Box::new(r.clone())));
            }
            for left in 1..n - 1 {
                for l in &by_size[left] {
                    for r in &by_size[n - 1 - left] {
                        out.push(Regex::Concat(Box::new(l.clone()), Box::new(r.clone())));
                        out.push(Regex::Union(Box::new(l.clone()), Box::new(r.clone())));
                    }
                }
            }
        }
        by_size[n] = out;
    }
    by_size
}

fn union_free_sound(r: &Regex, v: &Alphabet) -> Result<(), String> {
    let parts = union_normal_form(r);
    ensure(parts.iter().all(Regex::is_syntactically_union_free), || {
        format!("{r}: component with a union")
    })?;
    let joined = Dfa::from_regex(&Regex::union_all(parts), v);
    ensure(joined.equivalent(&Dfa::from_regex(r, v)).unwrap(), || {
        format!("{r}: language changed")
    })
}

fn criterion_5() -> Check {
    let v = alphabet("ab");
    let exhaustive: Vec<Regex> = all_regexes(8).into_iter().flatten().collect();
    for r in &exhaustive {
        union_free_sound(r, &v)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let n = rng.gen_range(9..=16);
        union_free_sound(&random_regex(&mut rng, n, &['a', 'b']), &v)?;
    }
    Ok(format!("{} exhaustive + 10000 random", exhaustive.len()))
}

fn same_words(a: &ContextualGrammar, b: &ContextualGrammar, n: usize) -> Result<(), String> {
    for k in 0..=n {
        ensure(enumerate_language(a, k) == enumerate_language(b, k), || {
            format!("languages differ at n = {k}")
        })?;
    }
    Ok(())
}

fn selections_in(g: &ContextualGrammar, f: Family) -> Result<(), String> {
    for (i, c) in g.components.iter().enumerate() {
        let v = classify(&c.selection, f);
        ensure(v.is_yes(), || {
            format!(
                "selection {i} ({}) {f} = {}",
                c.selection.regex(),
                v.outcome
            )
        })?;
        if let Some(cert) = &v.certificate {
            ensure(
                verify_certificate(&c.selection, f, cert) == Ok(true),
                || format!("selection {i}: certificate"),
            )?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut applied = 0;
    for (name, f) in fixtures() {
        let g = &f.grammar;
        let ctx = |e: String| format!("{name}: {e}");
        let r = transform_to_rcom(g).map_err(|e| ctx(e.to_string()))?;
        same_words(g, &r, 6).map_err(ctx)?;
        selections_in(&r, Family::Rcom).map_err(ctx)?;
        let l = transform_to_lcom(g).map_err(|e| ctx(e.to_string()))?;
        same_words(g, &l, 6).map_err(ctx)?;
        selections_in(&l, Family::Lcom).map_err(ctx)?;
        let e = eliminate_empty_word_selection(g);
        same_words(g, &e, 6).map_err(ctx)?;
        for c in &e.components {
            ensure(!c.selection.dfa().is_epsilon_only(), || {
                ctx("{λ} selection survived".into())
            })?;
            let m = classify_all(&c.selection).map_err(|e| ctx(e.to_string()))?;
            if m[&Family::Star].is_yes() {
                ensure(
                    m[&Family::Lcom].is_yes() && m[&Family::Rcom].is_yes(),
                    || {
                        ctx(format!(
                            "star selection {} is not a comet",
                            c.selection.regex()
                        ))
                    },
                )?;
            }
        }
        applied += 3;
        if g.components
            .iter()
            .all(|c| classify(&c.selection, Family::Def).is_yes())
        {
            let s = definite_to_sydef(g).map_err(|e| ctx(e.to_string()))?;
            same_words(g, &s, 6).map_err(ctx)?;
            selections_in(&s, Family::Sydef).map_err(ctx)?;
            applied += 1;
        }
    }
    Ok(format!("{applied} transformations"))
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for (name, f) in fixtures() {
        let g = &f.grammar;
        let lang: BTreeSet<String> = enumerate_language(g, 6).into_iter().collect();
        for w in g.alphabet.words_up_to(6) {
            ensure(member(g, &w) == lang.contains(&w), || {
                format!("{name}: {w:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} words"))
}

/// Every complete DFA over {a,b} with `n` states, initial state 0.
fn dfas(n: usize) -> impl Iterator<Item = (Vec<[usize; 2]>, Vec<bool>)> {
    let tables = n.pow(2 * n as u32);
    (0..tables).flat_map(move |t| {
        let delta: Vec<[usize; 2]> = (0..n)
            .map(|q| [t / n.pow(2 * q as u32) % n, t / n.pow(2 * q as u32 + 1) % n])
            .collect();
        (0..1usize << n)
            .map(move |acc| (delta.clone(), (0..n).map(|q| acc >> q & 1 == 1).collect()))
    })
}

/// Brute-force non-counting test: `x·y^k·z ∈ L ⇔ x·y^{k+1}·z ∈ L` for all
/// short `x, y, z`, with `k` the size of the transition monoid.
fn non_counting_brute(delta: &[[usize; 2]], acc: &[bool]) -> bool {
    let n = delta.len();
    let letter = |a: usize| -> Vec<usize> { (0..n).map(|q| delta[q][a]).collect() };
    let compose = |f: &[usize], g: &[usize]| -> Vec<usize> { f.iter().map(|&q| g[q]).collect() };
    let mut monoid: BTreeSet<Vec<usize>> = BTreeSet::from([(0..n).collect()]);
    let mut frontier: Vec<Vec<usize>> = monoid.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        for a in 0..2 {
            let h = compose(&f, &letter(a));
            if monoid.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    let k = monoid.len();
    let mut words: Vec<Vec<usize>> = vec![(0..n).collect()];
    for len in 1..=3 {
        for code in 0..1usize << len {
            let mut f: Vec<usize> = (0..n).collect();
            for i in 0..len {
                f = compose(&f, &letter(code >> i & 1));
            }
            words.push(f);
        }
    }
    let power = |y: &[usize], e: usize| {
        let mut f: Vec<usize> = (0..n).collect();
        for _ in 0..e {
            f = compose(&f, y);
        }
        f
    };
    for y in &words {
        let (yk, yk1) = (power(y, k), power(y, k + 1));
        for x in &words {
            for z in &words {
                let run = |m: &[usize]| acc[z[m[x[0]]]];
                if run(&yk) != run(&yk1) {
                    return false;
                }
            }
        }
    }
    true
}

fn criterion_8() -> Check {
    let v = alphabet("ab");
    let mut count = 0;
    for n in 1..=3 {
        for (delta, acc) in dfas(n) {
            let table: Vec<Vec<usize>> = delta.iter().map(|r| r.to_vec()).collect();
            let d = Dfa::new(v.clone(), table, 0, acc.clone()).unwrap();
            let got = classify(&LanguageHandle::from_dfa(&d), Family::Nc);
            let want = non_counting_brute(&delta, &acc);
            ensure(
                got.outcome == if want { Outcome::Yes } else { Outcome::No },
                || {
                    format!(
                        "{delta:?} {acc:?}: NC = {}, brute force {want}",
                        got.outcome
                    )
                },
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} automata"))
}

fn criterion_9() -> Check {
    let report = verify_witnesses(&Registry::shipped());
    ensure(report.failed == 0, || {
        let first = report
            .results
            .iter()
            .find(|r| matches!(r.status, ClaimStatus::Fail { .. }))
            .unwrap();
        format!("{} claim(s) failed, first {first:?}", report.failed)
    })?;
    for r in &report.results {
        if let ClaimStatus::Skipped { reason } = &r.status {
            ensure(reason.starts_with("provenance only"), || {
                format!("{}: skipped without reason", r.witness)
            })?;
        }
    }
    let v = alphabet("ab");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seen = BTreeSet::new();
    let mut corpus: Vec<VerdictMap> = Vec::new();
    while corpus.len() < 1000 {
        let n = rng.gen_range(1..=12);
        let r = random_regex(&mut rng, n, &['a', 'b']);
        let l = LanguageHandle::new(v.clone(), r).unwrap();
        if !seen.insert(format!("{:?}", l.dfa())) {
            continue;
        }
        corpus.push(classify_all(&l).map_err(|e| e.to_string())?);
    }
    let random = corpus.len();
    for d in small_dfa_corpus(&v, 3) {
        if seen.insert(format!("{d:?}")) {
            corpus.push(classify_all(&LanguageHandle::from_dfa(&d)).map_err(|e| e.to_string())?);
        }
    }
    let edges = edge_consistency_check(&HierarchyGraph::fig1(), &corpus);
    ensure(edges.is_ok(), || {
        format!("{} implication violations", edges.violation_count())
    })?;
    Ok(format!(
        "{} claims passed, {} provenance-only; {} random + {} small-automaton languages, 0 violations",
        report.passed,
        report.skipped,
        random,
        corpus.len() - random
    ))
}

type Criterion = (u32, &'static str, fn() -> Check);

fn main() {
    // `cargo test` passes harness flags such as `--quiet`; a name filter that
    // does not mention this target skips it.
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    if !filters.is_empty()
        && !filters
            .iter()
            .any(|f| "acceptance criterion".contains(f.as_str()))
    {
        return;
    }
    let criteria: [Criterion; 9] = [
        (1, "ex1 fixture enumeration", criterion_1),
        (2, "ordered automaton for (ab)*", criterion_2),
        (3, "witness battery", criterion_3),
        (4, "normal-form soundness", criterion_4),
        (5, "union-free decomposition soundness", criterion_5),
        (6, "grammar transformation preservation", criterion_6),
        (7, "membership/enumeration cross-oracle", criterion_7),
        (8, "NC decider vs brute force", criterion_8),
        (9, "hierarchy verification", criterion_9),
    ];
    let mut failing = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({name}): {detail} [{took:.2?}]"),
            Err(why) => {
                let note = if EXPECTED_FAILURES.contains(&id) {
                    " (expected)"
                } else {
                    ""
                };
                println!("FAIL criterion {id} ({name}){note}: {why} [{took:.2?}]");
                failing.push(id);
            }
        }
    }
    if failing != EXPECTED_FAILURES {
        eprintln!("failing criteria {failing:?}, expected exactly {EXPECTED_FAILURES:?}");
        std::process::exit(1);
    }
}
