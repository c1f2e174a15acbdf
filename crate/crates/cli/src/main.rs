//! `subreg`: batch front end for subregular classification, comet normal
//! forms, contextual grammars and the inclusion diagrams.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subreg_core::alphabet::{show_word, RESERVED};
use subreg_core::automata::{dfa_to_dot, DEFAULT_ENUM_CAP};
use subreg_core::classify::{Certificate, ClassifierConfig, VerdictReport};
use subreg_core::comet::{
    left_normal_form, right_normal_form, CometDecomposition, NormalFormResult, Tail,
};
use subreg_core::grammar::{self, ContextualGrammar};
use subreg_core::hierarchy::{
    self, edge_consistency_check, small_dfa_corpus, verify_witnesses, ClaimStatus, HierarchyGraph,
    Registry,
};
use subreg_core::{parse_regex, Alphabet, LanguageHandle};

#[derive(Parser)]
#[command(
    name = "subreg",
    version,
    about = "Subregular families, comet normal forms and contextual grammars"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Alphabet as a letter list, e.g. `ab` or `a,b`; inferred from the input when absent.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    /// Enumeration length bound.
    #[arg(short = 'n', long = "max-length", global = true, default_value_t = 6)]
    max_length: usize,
    /// Word-length bound of the SYDEF and 2COM certificate searches.
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest transition monoid that is built.
    #[arg(long = "cap-monoid", global = true)]
    cap_monoid: Option<usize>,
    /// Largest admissible enumeration length.
    #[arg(long = "cap-enum", global = true, default_value_t = DEFAULT_ENUM_CAP)]
    cap_enum: usize,
    /// Record per-family decision times.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a regular language against every family.
    Classify {
        /// Regex literal, or a path to a file holding one.
        input: String,
    },
    /// Normal form of the comet E·G*·H.
    Nf2com {
        e: String,
        g: String,
        h: String,
        /// Which tail becomes an explicit finite set.
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Work with an external contextual grammar.
    Grammar {
        #[command(subcommand)]
        command: GrammarCommand,
    },
    /// Inclusion diagrams and the witness registry.
    Hierarchy {
        #[command(subcommand)]
        command: HierarchyCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum GrammarCommand {
    /// Check the well-formedness conditions.
    Validate { file: String },
    /// Words of length at most n, in shortlex order.
    Enum { file: String },
    /// Membership of a word (`ε` or `""` for the empty word).
    Member { file: String, word: String },
    /// Classify every selection language.
    Classify { file: String },
    /// Apply a language-preserving transformation.
    Transform { kind: TransformKind, file: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    Rcom,
    Lcom,
    Elimlambda,
    Def2sydef,
}

#[derive(Subcommand)]
enum HierarchyCommand {
    /// Check every witness claim and the diagram edges against a corpus.
    Verify {
        /// States of the exhaustively enumerated DFA corpus over {a,b}.
        #[arg(long = "corpus-states", default_value_t = 3)]
        corpus_states: usize,
    },
    /// Relation between two families of one diagram.
    Query { x: String, y: String },
    /// Graphviz text of a diagram.
    Dot {
        #[arg(default_value = "fig1")]
        graph: String,
    },
}

/// Failure with its exit code: 1 verification, 2 input, 3 domain precondition.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(e: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn domain_error(e: impl ToString) -> Failure {
    Failure {
        code: 3,
        message: e.to_string(),
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let o = &cli.opts;
    match &cli.command {
        Command::Classify { input } => cmd_classify(o, input),
        Command::Nf2com { e, g, h, side } => cmd_nf2com(o, [e, g, h], *side),
        Command::Grammar { command } => cmd_grammar(o, command),
        Command::Hierarchy { command } => cmd_hierarchy(o, command),
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn config(o: &Opts) -> ClassifierConfig {
    let mut cfg = ClassifierConfig::default();
    if let Some(b) = o.bound {
        cfg.search_bound = b;
    }
    if let Some(c) = o.cap_monoid {
        cfg.monoid_cap = c;
    }
    cfg
}

/// The explicit alphabet, or the letters occurring in `texts`.
fn alphabet(o: &Opts, texts: &[&str]) -> Result<Alphabet, Failure> {
    match &o.alphabet {
        Some(a) => Alphabet::parse(a).map_err(input_error),
        None => {
            let letters = texts
                .iter()
                .flat_map(|t| t.chars())
                .filter(|c| !c.is_whitespace() && !RESERVED.contains(c));
            Alphabet::new(letters).map_err(|e| input_error(format!("{e}; pass --alphabet")))
        }
    }
}

fn regex_input(input: &str) -> Result<String, Failure> {
    let p = Path::new(input);
    if p.is_file() {
        std::fs::read_to_string(p)
            .map(|s| s.trim().to_string())
            .map_err(input_error)
    } else {
        Ok(input.to_string())
    }
}

fn words_text(ws: &[String]) -> String {
    let shown: Vec<&str> = ws.iter().map(|w| show_word(w)).collect();
    format!("{{{}}}", shown.join(", "))
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::Comet { e, g, h } => format!("E = {e}, G = {g}, H = {h}"),
        Certificate::SymmetricDefinite { e, h } => format!("E = {e}, H = {h}"),
        Certificate::Combinational { letters } => {
            format!(
                "X = {{{}}}",
                letters
                    .iter()
                    .map(char::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        }
        Certificate::Definite { window, a, b } => format!(
            "window {window}, A = {}, B = {}",
            words_text(a),
            words_text(b)
        ),
        Certificate::Ordered(m) => format!(
            "{} states, initial {}, accepting {:?}, order {:?}",
            m.transitions.len(),
            m.initial,
            m.accepting,
            m.labels
        ),
        Certificate::Aperiodic { index } => format!("index {index}"),
        Certificate::PowerSeparating { m } => format!("m = {m}"),
        Certificate::Star { h } => format!("H = {h}"),
        Certificate::UnionFree { regex } => format!("{regex}"),
    }
}

fn cmd_classify(o: &Opts, input: &str) -> Outcome {
    let text = regex_input(input)?;
    let v = alphabet(o, &[&text])?;
    let l = LanguageHandle::parse(&text, &v).map_err(input_error)?;
    let report = VerdictReport::build(&l, &config(o), o.timing).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    match o.format.unwrap_or(Format::Text) {
        Format::Json => Ok((
            json_text(&serde_json::to_value(&report).expect("serializable")),
            0,
        )),
        Format::Dot => Ok((dfa_to_dot(l.dfa(), "minimal"), 0)),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "language {} over {}", report.regex, report.alphabet).unwrap();
            writeln!(out, "minimal DFA: {} states", report.minimal_states).unwrap();
            for e in &report.verdicts {
                let v = &e.verdict;
                write!(out, "{:<6} {:<7}", v.family.name(), v.outcome.to_string()).unwrap();
                if let Some(c) = &v.certificate {
                    write!(out, " {}", certificate_text(c)).unwrap();
                }
                if let Some(r) = &v.reason {
                    write!(out, " ({r})").unwrap();
                }
                if let Some(t) = e.elapsed_us {
                    write!(out, " [{t} µs]").unwrap();
                }
                out.push('\n');
            }
            Ok((out, 0))
        }
    }
}

fn tail_text(t: &Tail) -> String {
    match t {
        Tail::Words(w) => words_text(w.words()),
        Tail::Regex(r) => r.to_string(),
    }
}

fn cmd_nf2com(o: &Opts, parts: [&String; 3], side: SideArg) -> Outcome {
    let v = alphabet(o, &[parts[0], parts[1], parts[2]])?;
    let [e, g, h] = parts.map(|p| parse_regex(p, &v));
    let d = CometDecomposition::new(
        v,
        e.map_err(input_error)?,
        g.map_err(input_error)?,
        h.map_err(input_error)?,
    )
    .map_err(domain_error)?;
    let nf: NormalFormResult = match side {
        SideArg::Left => left_normal_form(&d),
        SideArg::Right => right_normal_form(&d),
    }
    .map_err(domain_error)?;
    let code = if nf.verified { 0 } else { 1 };
    match o.format.unwrap_or(Format::Json) {
        Format::Text => {
            let mut out = String::new();
            for c in &nf.components {
                writeln!(
                    out,
                    "E = {}, G = {}, H = {}",
                    tail_text(&c.e),
                    c.g,
                    tail_text(&c.h)
                )
                .unwrap();
            }
            writeln!(
                out,
                "single comet: {}, verified: {}",
                nf.single_comet, nf.verified
            )
            .unwrap();
            Ok((out, code))
        }
        _ => Ok((
            json_text(&serde_json::to_value(&nf).expect("serializable")),
            code,
        )),
    }
}

/// Reads a grammar file: either the plain grammar schema or a fixture file
/// wrapping it under `grammar`. A missing path naming a shipped fixture, such
/// as `ex1.json`, loads that fixture.
fn load_grammar(file: &str) -> Result<ContextualGrammar, Failure> {
    let p = Path::new(file);
    if !p.exists() {
        let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or(file);
        return grammar::fixture(stem)
            .map(|f| f.grammar)
            .ok_or_else(|| input_error(format!("{file}: no such file or shipped fixture")));
    }
    let text = std::fs::read_to_string(p).map_err(|e| input_error(format!("{file}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| input_error(format!("{file}: {e}")))?;
    let inner = value.get("grammar").cloned().unwrap_or(value);
    ContextualGrammar::from_json(&inner.to_string()).map_err(input_error)
}

fn cmd_grammar(o: &Opts, c: &GrammarCommand) -> Outcome {
    let json = o.format == Some(Format::Json);
    match c {
        GrammarCommand::Validate { file } => {
            let g = load_grammar(file)?;
            match grammar::validate(&g) {
                Ok(()) => {
                    let m = grammar::measures(&g).map_err(input_error)?;
                    if json {
                        Ok((json_text(&json!({ "valid": true, "measures": m })), 0))
                    } else {
                        Ok((
                            format!("valid (l_A = {}, l_C = {}, l = {})\n", m.l_a, m.l_c, m.l),
                            0,
                        ))
                    }
                }
                Err(e) if json => Ok((
                    json_text(&json!({ "valid": false, "error": e.to_string() })),
                    1,
                )),
                Err(e) => Ok((format!("invalid: {e}\n"), 1)),
            }
        }
        GrammarCommand::Enum { file } => {
            if o.max_length > o.cap_enum {
                return Err(input_error(format!(
                    "length {} exceeds --cap-enum {}",
                    o.max_length, o.cap_enum
                )));
            }
            let g = load_grammar(file)?;
            grammar::validate(&g).map_err(input_error)?;
            let words = grammar::enumerate_language(&g, o.max_length);
            if json {
                Ok((
                    json_text(&json!({ "max_length": o.max_length, "words": words })),
                    0,
                ))
            } else {
                Ok((
                    words
                        .iter()
                        .map(|w| format!("{}\n", show_word(w)))
                        .collect(),
                    0,
                ))
            }
        }
        GrammarCommand::Member { file, word } => {
            let g = load_grammar(file)?;
            grammar::validate(&g).map_err(input_error)?;
            let w = if word == "ε" { "" } else { word.as_str() };
            if !g.alphabet.is_word(w) {
                return Err(input_error(format!(
                    "{word:?} is not a word over {}",
                    g.alphabet
                )));
            }
            let m = grammar::member(&g, w);
            if json {
                Ok((json_text(&json!({ "word": w, "member": m })), 0))
            } else {
                Ok((format!("{m}\n"), 0))
            }
        }
        GrammarCommand::Classify { file } => {
            let g = load_grammar(file)?;
            grammar::validate(&g).map_err(input_error)?;
            let maps = grammar::classify_selections(&g).map_err(|e| Failure {
                code: 1,
                message: e.to_string(),
            })?;
            if json {
                let comps: Vec<Value> = maps
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        json!({
                            "selection": g.components[i].selection.regex(),
                            "verdicts": m.values().collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                return Ok((json_text(&json!({ "components": comps })), 0));
            }
            let mut out = String::new();
            for (i, m) in maps.iter().enumerate() {
                writeln!(out, "component {i}: {}", g.components[i].selection.regex()).unwrap();
                let by = |want: subreg_core::Outcome| {
                    m.values()
                        .filter(|v| v.outcome == want)
                        .map(|v| v.family.name())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                writeln!(out, "  yes: {}", by(subreg_core::Outcome::Yes)).unwrap();
                writeln!(out, "  no: {}", by(subreg_core::Outcome::No)).unwrap();
                let unknown = by(subreg_core::Outcome::Unknown);
                if !unknown.is_empty() {
                    writeln!(out, "  unknown: {unknown}").unwrap();
                }
            }
            Ok((out, 0))
        }
        GrammarCommand::Transform { kind, file } => {
            let g = load_grammar(file)?;
            grammar::validate(&g).map_err(input_error)?;
            let t = match kind {
                TransformKind::Rcom => grammar::transform_to_rcom(&g),
                TransformKind::Lcom => grammar::transform_to_lcom(&g),
                TransformKind::Elimlambda => Ok(grammar::eliminate_empty_word_selection(&g)),
                TransformKind::Def2sydef => grammar::definite_to_sydef(&g),
            }
            .map_err(domain_error)?;
            Ok((t.to_json() + "\n", 0))
        }
    }
}

fn cmd_hierarchy(o: &Opts, c: &HierarchyCommand) -> Outcome {
    let json = o.format == Some(Format::Json);
    match c {
        HierarchyCommand::Query { x, y } => {
            let r = hierarchy::query(x, y).map_err(input_error)?;
            if json {
                Ok((json_text(&json!({ "x": x, "y": y, "relation": r })), 0))
            } else {
                Ok((format!("{r}\n"), 0))
            }
        }
        HierarchyCommand::Dot { graph } => {
            let g = HierarchyGraph::by_name(graph).map_err(input_error)?;
            if json {
                Ok((
                    json_text(&serde_json::to_value(&g).expect("serializable")),
                    0,
                ))
            } else {
                Ok((g.to_dot(), 0))
            }
        }
        HierarchyCommand::Verify { corpus_states } => {
            let witnesses = verify_witnesses(&Registry::shipped());
            let v = Alphabet::parse("ab").expect("valid alphabet");
            let cfg = config(o);
            let mut corpus = Vec::new();
            for d in small_dfa_corpus(&v, *corpus_states) {
                let l = LanguageHandle::from_dfa(&d);
                let map =
                    subreg_core::classify::classify_all_with(&l, &cfg).map_err(|e| Failure {
                        code: 1,
                        message: e.to_string(),
                    })?;
                corpus.push(map);
            }
            let edges: Vec<_> = HierarchyGraph::shipped()
                .iter()
                .map(|g| edge_consistency_check(g, &corpus))
                .collect();
            let ok = witnesses.is_ok() && edges.iter().all(|e| e.is_ok());
            let code = if ok { 0 } else { 1 };
            if json {
                return Ok((
                    json_text(&json!({ "witnesses": witnesses, "edges": edges })),
                    code,
                ));
            }
            let mut out = String::new();
            for r in &witnesses.results {
                let status = match &r.status {
                    ClaimStatus::Pass => "PASS".to_string(),
                    ClaimStatus::Fail { detail } => format!("FAIL {detail}"),
                    ClaimStatus::Skipped { reason } => format!("SKIP {reason}"),
                };
                writeln!(
                    out,
                    "{:<16} {:<10} {:<4} {status}",
                    r.witness,
                    r.family,
                    r.expected.to_string()
                )
                .unwrap();
            }
            writeln!(
                out,
                "claims: {} passed, {} failed, {} skipped",
                witnesses.passed, witnesses.failed, witnesses.skipped
            )
            .unwrap();
            for e in &edges {
                let witnessed = e
                    .edges
                    .iter()
                    .filter(|c| matches!(c.properness, hierarchy::Properness::Witnessed { .. }))
                    .count();
                write!(
                    out,
                    "{}: {} edges, {} with a registered properness witness",
                    e.graph,
                    e.edges.len(),
                    witnessed
                )
                .unwrap();
                if e.corpus_size > 0 {
                    write!(
                        out,
                        ", {} violations over {} languages",
                        e.violation_count(),
                        e.corpus_size
                    )
                    .unwrap();
                }
                out.push('\n');
            }
            Ok((out, code))
        }
    }
}
