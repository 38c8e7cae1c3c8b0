use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lspw_core::automaton::{recognize, Tail, Violation};
use lspw_core::blsp::{enumerate, format_directive, parse_directive_in};
use lspw_core::desub::{desubstitute, directive_prefix, generate};
use lspw_core::fragility::fragilities;
use lspw_core::lsp::{is_lsp, non_prefix_left_special};
use lspw_core::suffix_automaton::{is_lsp_via_sa, SuffixAutomaton};
use lspw_core::word::MAX_LETTERS;
use lspw_core::{suite, BlspMorphism, Error, Letter, LetterSet, Word};

/// Finite LSP words, bLSP morphisms and the fragility automaton.
#[derive(Parser)]
#[command(name = "lspw", version)]
struct Cli {
    /// Letters allowed in every input, e.g. "abc" or "{a,b,c}".
    #[arg(long, global = true)]
    alphabet: Option<String>,
    /// Emit one JSON document instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exit 0 when every left special factor is a prefix.
    CheckLsp {
        word: String,
        /// Print the shortest non-prefix left special factor.
        #[arg(long)]
        witness: bool,
    },
    /// Split a word as f(w′) followed by an incomplete block.
    Desub {
        word: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// List every bLSP morphism on the first n letters.
    Enumerate { n: usize },
    /// Triples (a,b,c) for which a morphism is breaking.
    Breaking { morphism: String },
    /// Fragility witnesses of a word.
    Fragilities {
        word: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Apply the first k morphisms of a directive to a branch letter.
    Generate {
        directive: String,
        #[arg(long)]
        branch: char,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Run a directive prefix through the automaton.
    Recognize {
        directive: String,
        /// Seed the last state with this alphabet and no tuples.
        #[arg(long, conflicts_with = "words")]
        tail_alph: Option<String>,
        /// File with one word prefix per state, one more than morphisms.
        #[arg(long)]
        words: Option<String>,
    },
    /// Dump the suffix automaton of a word.
    SuffixAutomaton { word: String },
    /// Run a bundle of self-checks: all, 1 to 11, or a named group.
    Verify { suite: String },
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// A command result: exit code plus ordered fields rendered as JSON or text.
struct Report {
    code: u8,
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    fn new(code: u8) -> Self {
        Report { code, fields: Vec::new() }
    }

    fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let map: serde_json::Map<String, Value> =
                self.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            return Value::Object(map).to_string();
        }
        let mut lines = Vec::new();
        for (key, value) in &self.fields {
            match value {
                Value::Array(items) => lines.extend(items.iter().map(|v| format!("{key}: {}", plain(v)))),
                v => lines.push(format!("{key}: {}", plain(v))),
            }
        }
        lines.join("\n")
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) if s.is_empty() => "-".into(),
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

struct Ctx {
    alphabet: Option<LetterSet>,
}

impl Ctx {
    fn check(&self, letters: LetterSet, what: &str) -> Result<(), Failure> {
        match self.alphabet {
            Some(a) if !letters.is_subset(a) => {
                Err(Failure::Input(format!("{what} uses letters outside the alphabet {a}")))
            }
            _ => Ok(()),
        }
    }

    fn word(&self, s: &str) -> Result<Word, Failure> {
        let w: Word = if s == "-" { Word::empty() } else { s.parse()? };
        self.check(w.alph(), &format!("word {s:?}"))?;
        Ok(w)
    }

    fn default_domain(&self) -> LetterSet {
        self.alphabet.unwrap_or_else(|| LetterSet::first_n(MAX_LETTERS).expect("full alphabet"))
    }

    fn morphism(&self, s: &str) -> Result<BlspMorphism, Failure> {
        let f = BlspMorphism::parse_in(s, self.default_domain())?;
        self.check(f.domain(), &format!("morphism {s:?}"))?;
        Ok(f)
    }

    fn directive(&self, s: &str) -> Result<Vec<BlspMorphism>, Failure> {
        let text = match s.strip_prefix('@') {
            Some(path) => fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?,
            None => s.to_string(),
        };
        let d = parse_directive_in(&text, self.default_domain())?;
        if d.is_empty() {
            return Err(Error::EmptyDirective.into());
        }
        for f in &d {
            self.check(f.domain(), "directive")?;
        }
        Ok(d)
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(|x| Value::String(x.to_string())).collect())
}

fn check_lsp(ctx: &Ctx, word: &str, witness: bool) -> Result<Report, Failure> {
    let w = ctx.word(word)?;
    let lsp = is_lsp(&w);
    if !w.is_empty() && is_lsp_via_sa(&w)? != lsp {
        return Err(Failure::Invariant(format!("LSP oracles disagree on {w}")));
    }
    let mut r = Report::new(if lsp { 0 } else { 1 }).field("word", w.to_string()).field("lsp", lsp);
    if witness {
        r = r.field("witness", non_prefix_left_special(&w).map(|x| x.to_string()));
    }
    Ok(r)
}

fn desub(ctx: &Ctx, word: &str, depth: usize) -> Result<Report, Failure> {
    let w = ctx.word(word)?;
    let result = if depth <= 1 {
        desubstitute(&w).map(|r| {
            Report::new(0)
                .field("morphism", r.morphism.to_string())
                .field("quotient", r.quotient.to_string())
                .field("remainder", r.remainder.to_string())
        })
    } else {
        directive_prefix(&w, depth).map(|p| {
            Report::new(0)
                .field("directive", format_directive(&p.morphisms))
                .field("residual", p.residual.to_string())
                .field("remainder_lens", p.remainder_lens.clone())
                .field("degenerate", p.degenerate)
        })
    };
    match result {
        Ok(r) => Ok(r),
        Err(Error::NotDesubstitutable { reason, witness, depth }) => Ok(Report::new(1)
            .field("desubstitutable", false)
            .field("reason", reason.to_string())
            .field("witness", witness.to_string())
            .field("depth", depth)),
        Err(e) => Err(e.into()),
    }
}

fn enumerate_cmd(ctx: &Ctx, n: usize) -> Result<Report, Failure> {
    let letters: LetterSet = match ctx.alphabet {
        Some(a) if a.len() < n => return Err(Error::AlphabetTooLarge(n).into()),
        Some(a) => a.iter().take(n).collect(),
        None => LetterSet::first_n(n)?,
    };
    let all: Vec<BlspMorphism> = enumerate(letters)?.collect();
    Ok(Report::new(0).field("count", all.len()).field("morphism", strings(&all)))
}

fn breaking(ctx: &Ctx, morphism: &str) -> Result<Report, Failure> {
    let f = ctx.morphism(morphism)?;
    let triples = f.breaking_triples();
    let shown = triples.iter().map(|(a, b, c)| format!("({a},{b},{c})"));
    Ok(Report::new(0).field("count", triples.len()).field("triple", strings(shown)))
}

fn fragilities_cmd(ctx: &Ctx, word: &str, max_len: Option<usize>) -> Result<Report, Failure> {
    let w = ctx.word(word)?;
    let found = fragilities(&w, max_len.unwrap_or(w.len()));
    Ok(Report::new(0).field("count", found.len()).field("fragility", strings(&found)))
}

fn generate_cmd(ctx: &Ctx, directive: &str, branch: char, depth: Option<usize>) -> Result<Report, Failure> {
    let d = ctx.directive(directive)?;
    let branch = Letter::from_char(branch)?;
    let w = generate(&d, branch, depth.unwrap_or(d.len()))?;
    Ok(Report::new(0).field("length", w.len()).field("word", w.to_string()))
}

fn recognize_cmd(ctx: &Ctx, directive: &str, tail_alph: Option<&str>, words: Option<&str>) -> Result<Report, Failure> {
    let d = ctx.directive(directive)?;
    let tail = match (tail_alph, words) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            let ws = text.lines().map(str::trim).filter(|l| !l.is_empty()).map(|l| ctx.word(l));
            Tail::Words(ws.collect::<Result<_, _>>()?)
        }
        (Some(set), None) => {
            let set: LetterSet = set.parse()?;
            ctx.check(set, "tail alphabet")?;
            Tail::Empty(set)
        }
        (None, None) => Tail::Empty(ctx.alphabet.unwrap_or_else(|| d.last().expect("non-empty").domain())),
    };
    let r = recognize(&d, &tail)?;
    let mut report = Report::new(if r.accepted() { 0 } else { 1 })
        .field("accepted", r.accepted())
        .field("state", strings(&r.states));
    if let Some((step, violation)) = &r.rejection {
        report = report
            .field("step", *step)
            .field("condition", violation.condition())
            .field("violation", violation.to_string());
        if let Violation::Breaking(t) = violation {
            report = report.field("tuple", t.to_string());
        }
    }
    Ok(report)
}

fn suffix_automaton(ctx: &Ctx, word: &str) -> Result<Report, Failure> {
    let w = ctx.word(word)?;
    let sa = SuffixAutomaton::build(&w);
    let minimal = sa.state_count() == w.len() + 1;
    if !w.is_empty() && minimal != is_lsp(&w) {
        return Err(Failure::Invariant(format!("state count disagrees with the LSP test on {w}")));
    }
    Ok(Report::new(0)
        .field("states", sa.state_count())
        .field("transitions", sa.transition_count())
        .field("minimal", minimal)
        .field("edge", strings(sa.edge_list().lines())))
}

fn verify(name: &str) -> Result<Report, Failure> {
    let outcomes = suite::run_bundle(name)?;
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let failed = outcomes.len() - passed;
    Ok(Report::new(if failed == 0 { 0 } else { 3 })
        .field("criterion", strings(&outcomes))
        .field("passed", passed)
        .field("failed", failed))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let alphabet = cli.alphabet.as_deref().map(str::parse::<LetterSet>).transpose()?;
    if alphabet.is_some_and(|a| a.is_empty()) {
        return Err(Failure::Input("alphabet is empty".into()));
    }
    let ctx = Ctx { alphabet };
    match &cli.command {
        Command::CheckLsp { word, witness } => check_lsp(&ctx, word, *witness),
        Command::Desub { word, depth } => desub(&ctx, word, *depth),
        Command::Enumerate { n } => enumerate_cmd(&ctx, *n),
        Command::Breaking { morphism } => breaking(&ctx, morphism),
        Command::Fragilities { word, max_len } => fragilities_cmd(&ctx, word, *max_len),
        Command::Generate { directive, branch, depth } => generate_cmd(&ctx, directive, *branch, *depth),
        Command::Recognize { directive, tail_alph, words } => {
            recognize_cmd(&ctx, directive, tail_alph.as_deref(), words.as_deref())
        }
        Command::SuffixAutomaton { word } => suffix_automaton(&ctx, word),
        Command::Verify { suite } => verify(suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.render(cli.json));
            ExitCode::from(report.code)
        }
        Err(failure) => {
            let (code, kind, msg) = match failure {
                Failure::Input(m) => (2, "input", m),
                Failure::Invariant(m) => (3, "invariant", m),
            };
            if cli.json {
                println!("{}", json!({ "error": kind, "message": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
