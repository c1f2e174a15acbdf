use std::collections::BTreeMap;

use serde::Deserialize;

use super::ContextualGrammar;
use crate::regex::{parse_regex, Regex};

/// A grammar from the fixture corpus with the language it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub description: String,
    pub grammar: ContextualGrammar,
    /// The generated language, or for a non-regular language its words up to
    /// length 8.
    pub closed_form: Regex,
    pub closed_form_exact: bool,
}

#[derive(Deserialize)]
struct FixtureFile {
    description: String,
    closed_form: String,
    closed_form_exact: bool,
    grammar: serde_json::Value,
}

const SOURCES: &[(&str, &str)] = &[
    ("ex1", include_str!("../../data/grammars/ex1.json")),
    (
        "nil_o_star",
        include_str!("../../data/grammars/nil_o_star.json"),
    ),
    (
        "comb_o_pre_star",
        include_str!("../../data/grammars/comb_o_pre_star.json"),
    ),
    (
        "suf_o_star",
        include_str!("../../data/grammars/suf_o_star.json"),
    ),
    (
        "star_o_ps",
        include_str!("../../data/grammars/star_o_ps.json"),
    ),
    (
        "star_o_circ",
        include_str!("../../data/grammars/star_o_circ.json"),
    ),
    (
        "suf_o_sydef",
        include_str!("../../data/grammars/suf_o_sydef.json"),
    ),
    (
        "sydef_o_nc",
        include_str!("../../data/grammars/sydef_o_nc.json"),
    ),
];

/// The example grammar doubles as the witness that ORD selection reaches a
/// language outside EC(SYDEF).
const ALIASES: &[(&str, &str)] = &[("ord_o_sydef", "ex1")];

fn load(name: &'static str, text: &str) -> Fixture {
    let file: FixtureFile = serde_json::from_str(text).expect("fixture file parses");
    let grammar =
        ContextualGrammar::from_json(&file.grammar.to_string()).expect("fixture grammar parses");
    let closed_form =
        parse_regex(&file.closed_form, &grammar.alphabet).expect("closed form parses");
    Fixture {
        name,
        description: file.description,
        grammar,
        closed_form,
        closed_form_exact: file.closed_form_exact,
    }
}

pub fn fixtures() -> BTreeMap<&'static str, Fixture> {
    let mut out: BTreeMap<&'static str, Fixture> =
        SOURCES.iter().map(|&(n, t)| (n, load(n, t))).collect();
    for &(alias, target) in ALIASES {
        let mut f = out[target].clone();
        f.name = alias;
        out.insert(alias, f);
    }
    out
}

pub fn fixture(name: &str) -> Option<Fixture> {
    let target = ALIASES
        .iter()
        .find(|(a, _)| *a == name)
        .map_or(name, |(_, t)| t);
    let &(n, t) = SOURCES.iter().find(|(n, _)| *n == target)?;
    let mut f = load(n, t);
    if target != name {
        f.name = ALIASES
            .iter()
            .find(|(a, _)| *a == name)
            .map(|(a, _)| *a)
            .unwrap();
    }
    Some(f)
}
