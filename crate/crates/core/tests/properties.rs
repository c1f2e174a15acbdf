use proptest::prelude::*;

use subreg_core::automata::Cardinality;
use subreg_core::classify::{
    classify_all, verify_certificate, Family, LanguageHandle, Outcome, VerdictMap,
};
use subreg_core::comet::{left_normal_form, right_normal_form, CometDecomposition, Tail};
use subreg_core::grammar::{
    enumerate_language, member, transform_to_lcom, transform_to_rcom, Context, ContextualGrammar,
    SelectionComponent,
};
use subreg_core::regex::union_normal_form;
use subreg_core::{parse_regex, Alphabet, Dfa, FiniteWordSet, Regex};

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

fn regex_over(letters: &'static [char], depth: u32) -> impl Strategy<Value = Regex> {
    let leaf = prop_oneof![
        1 => Just(Regex::Empty),
        1 => Just(Regex::Star(Box::new(Regex::Empty))),
        6 => proptest::sample::select(letters).prop_map(Regex::Symbol),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(l, r)| Regex::Concat(Box::new(l), Box::new(r))),
            2 => (inner.clone(), inner.clone()).prop_map(|(l, r)| Regex::Union(Box::new(l), Box::new(r))),
            2 => inner.prop_map(|r| Regex::Star(Box::new(r))),
        ]
    })
}

fn regex_ab() -> impl Strategy<Value = Regex> {
    regex_over(&['a', 'b'], 4)
}

fn handle(r: &Regex) -> LanguageHandle {
    LanguageHandle::new(ab(), r.clone()).unwrap()
}

fn outcome(m: &VerdictMap, f: Family) -> Outcome {
    m[&f].outcome
}

fn power(x: &str, n: usize) -> String {
    x.repeat(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_regex_parses_back(r in regex_ab()) {
        let text = r.to_string();
        let back = parse_regex(&text, &ab()).unwrap();
        prop_assert_eq!(back, r.canonical());
    }

    #[test]
    fn automaton_agrees_with_the_syntax_tree(r in regex_ab()) {
        let d = Dfa::from_regex(&r, &ab());
        for w in ab().words_up_to(6) {
            prop_assert_eq!(d.accepts(&w), r.matches(&w), "word {:?}", w);
        }
    }

    #[test]
    fn equal_languages_have_equal_minimal_automata(r in regex_ab()) {
        let d = Dfa::from_regex(&r, &ab());
        let again = Dfa::from_regex(&Regex::Union(Box::new(r.clone()), Box::new(r.clone())), &ab());
        prop_assert_eq!(d, again);
    }

    #[test]
    fn union_free_components_cover_the_language(r in regex_ab()) {
        let parts = union_normal_form(&r);
        prop_assert!(parts.iter().all(Regex::is_syntactically_union_free));
        let joined = Regex::union_all(parts);
        prop_assert!(Dfa::from_regex(&joined, &ab()).equivalent(&Dfa::from_regex(&r, &ab())).unwrap());
    }

    #[test]
    fn verdicts_respect_the_inclusions(r in regex_ab()) {
        prop_assert!(classify_all(&handle(&r)).is_ok());
    }

    #[test]
    fn every_certificate_verifies(r in regex_ab()) {
        let l = handle(&r);
        for v in classify_all(&l).unwrap().values() {
            if let Some(c) = &v.certificate {
                prop_assert_eq!(verify_certificate(&l, v.family, c), Ok(true), "{} {}", v.family, r);
            }
        }
    }

    #[test]
    fn right_comets_reverse_to_left_comets(r in regex_ab()) {
        let l = handle(&r);
        let m = classify_all(&l).unwrap();
        let rev = classify_all(&l.reversed()).unwrap();
        prop_assert_eq!(outcome(&m, Family::Rcom), outcome(&rev, Family::Lcom));
        prop_assert_eq!(outcome(&m, Family::Lcom), outcome(&rev, Family::Rcom));
        for f in [Family::Sydef, Family::Ps, Family::Nc, Family::Star, Family::Comm] {
            let (a, b) = (outcome(&m, f), outcome(&rev, f));
            if a != Outcome::Unknown && b != Outcome::Unknown {
                prop_assert_eq!(a, b, "{} under reversal", f);
            }
        }
    }

    #[test]
    fn comets_and_stars_are_never_small(r in regex_ab()) {
        let l = handle(&r);
        let m = classify_all(&l).unwrap();
        let card = l.dfa().cardinality();
        if outcome(&m, Family::TwoCom) == Outcome::Yes {
            prop_assert!(card != Cardinality::FiniteNonempty);
        }
        if outcome(&m, Family::Star) == Outcome::Yes {
            prop_assert!(card == Cardinality::Infinite || l.dfa().is_epsilon_only());
        }
    }

    #[test]
    fn power_tails_are_constant(r in regex_ab()) {
        let l = handle(&r);
        let m = classify_all(&l).unwrap();
        if let Some(subreg_core::classify::Certificate::PowerSeparating { m: start }) = &m[&Family::Ps].certificate {
            for x in ab().words_up_to(3).into_iter().skip(1) {
                let first = r.matches(&power(&x, *start));
                for n in *start..*start + 4 {
                    prop_assert_eq!(r.matches(&power(&x, n)), first);
                }
            }
        }
    }

    #[test]
    fn left_normal_form_is_sound(
        e in regex_over(&['a', 'b'], 2),
        g in regex_over(&['a', 'b'], 2),
        h in regex_over(&['a', 'b'], 2),
    ) {
        let Ok(d) = CometDecomposition::new(ab(), e, g, h) else { return Ok(()) };
        for nf in [left_normal_form(&d).unwrap(), right_normal_form(&d).unwrap()] {
            prop_assert!(nf.verified);
            let got = Dfa::from_regex(&nf.regex(), &ab());
            for w in ab().words_up_to(6) {
                prop_assert_eq!(got.accepts(&w), d.regex().matches(&w));
            }
            for c in &nf.components {
                let finite = match nf.side {
                    subreg_core::comet::Side::Left => &c.e,
                    subreg_core::comet::Side::Right => &c.h,
                };
                prop_assert!(matches!(finite, Tail::Words(_)));
                let gd = Dfa::from_regex(&c.g, &ab());
                prop_assert!(!gd.is_empty_language() && !gd.is_epsilon_only());
            }
        }
    }
}

fn word(max: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(proptest::sample::select(vec!['a', 'b']), 0..=max)
        .prop_map(|v| v.into_iter().collect())
}

fn context() -> impl Strategy<Value = Context> {
    (word(2), word(2))
        .prop_filter("uv ≠ λ", |(u, v)| !(u.is_empty() && v.is_empty()))
        .prop_map(|(u, v)| Context::new(u, v))
}

fn grammar() -> impl Strategy<Value = ContextualGrammar> {
    let component = (
        regex_over(&['a', 'b'], 3),
        proptest::collection::vec(context(), 1..=2),
    )
        .prop_map(|(r, ctxs)| SelectionComponent::new(LanguageHandle::new(ab(), r).unwrap(), ctxs));
    (
        proptest::collection::vec(component, 1..=2),
        proptest::collection::vec(word(2), 1..=2),
    )
        .prop_map(|(comps, axioms)| ContextualGrammar::new(ab(), comps, FiniteWordSet::new(axioms)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn membership_matches_enumeration(g in grammar()) {
        let lang = enumerate_language(&g, 6);
        for w in ab().words_up_to(6) {
            prop_assert_eq!(member(&g, &w), lang.binary_search_by(|x| subreg_core::alphabet::shortlex(x, &w)).is_ok(), "{:?}", w);
        }
    }

    #[test]
    fn comet_transforms_preserve_the_language(g in grammar()) {
        let lang = enumerate_language(&g, 6);
        let r = transform_to_rcom(&g).unwrap();
        let l = transform_to_lcom(&g).unwrap();
        prop_assert_eq!(&enumerate_language(&r, 6), &lang);
        prop_assert_eq!(&enumerate_language(&l, 6), &lang);
        for c in &r.components {
            prop_assert_eq!(subreg_core::classify(&c.selection, Family::Rcom).outcome, Outcome::Yes);
        }
    }
}
