use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hurwitz::backends::{BackendError, BackendSpec, GroupBackend};
use hurwitz::braid::BraidWord;
use hurwitz::completion::{complete, complete_hurwitz, CompletionBudget, CompletionResult, HurwitzOptions};
use hurwitz::embedding::{closure_er, monoid_embeds, ClosureBudget, ClosureResult};
use hurwitz::hurwitz::{hurwitz_orbit, verify_braid, GSystem, GeneratorSystem, Orbit};
use hurwitz::parse::{parse_document, parse_positive_word, Document};
use hurwitz::reversing::{left_reverse_all, reverse_all, Budget, ReversalOutcome, ReversalTrace};
use hurwitz::solver::{hc_search, hurwitz_test, hurwitz_test_naive, HcVerdict, SolverBudget, SolverError, Verdict};
use hurwitz::{Alphabet, Presentation, Relation, Truth};

const EXIT_USAGE: u8 = 10;
const EXIT_IO: u8 = 11;
const EXIT_PARSE: u8 = 12;
const EXIT_BACKEND: u8 = 13;

#[derive(Parser)]
#[command(name = "hurwitz-cli", version, about = "Word reversing, completion and Hurwitz equivalence of G-systems")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ReversalArgs {
    /// Maximum number of words expanded by one reversal search.
    #[arg(long = "budget-steps", default_value_t = 100_000)]
    steps: usize,
    /// Words longer than this are not explored.
    #[arg(long = "budget-word-len", default_value_t = 256)]
    word_length: usize,
    /// Maximum number of alternative branches opened.
    #[arg(long = "budget-branches", default_value_t = 10_000)]
    branches: usize,
}

impl ReversalArgs {
    fn budget(&self) -> Budget {
        Budget { max_steps: self.steps, max_word_length: self.word_length, max_branches: self.branches }
    }
}

#[derive(Args)]
struct PairArgs {
    /// Label of the source system.
    #[arg(long)]
    lhs: String,
    /// Label of the target system.
    #[arg(long)]
    rhs: String,
    /// `free`, `perm:<file>` or `braid:<n>:<map>`.
    #[arg(long)]
    backend: String,
}

#[derive(Subcommand)]
enum Command {
    /// Reverse `neg⁻¹·pos` and print the trace.
    Reverse {
        file: PathBuf,
        #[arg(long)]
        neg: String,
        #[arg(long)]
        pos: String,
        /// Left reversing of `pos·neg⁻¹` instead.
        #[arg(long)]
        left: bool,
        /// Print every distinct outcome, not only the first.
        #[arg(long)]
        all: bool,
        /// Print every elementary step instead of merged glue steps.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        budget: ReversalArgs,
    },
    /// Standard completion by the strong cube condition.
    Complete {
        file: PathBuf,
        /// Total words expanded across the whole run.
        #[arg(long = "budget-steps", default_value_t = 2_000_000)]
        steps: usize,
        #[arg(long = "max-rounds", default_value_t = 500)]
        rounds: usize,
    },
    /// Completion keeping every relation Hurwitz-compatible.
    CompleteHurwitz {
        file: PathBuf,
        #[arg(long = "budget-steps", default_value_t = 2_000_000)]
        steps: usize,
        #[arg(long = "max-rounds", default_value_t = 500)]
        rounds: usize,
        /// Relations longer than this are never added.
        #[arg(long = "budget-relation-len")]
        relation_len: Option<usize>,
        /// Verify each witness under this backend.
        #[arg(long)]
        backend: Option<String>,
    },
    /// Decide Hurwitz equivalence of two systems of the file.
    TestEquiv {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        /// Reverse without completing the expanded presentation.
        #[arg(long)]
        naive: bool,
        /// Total completion steps.
        #[arg(long = "budget-steps")]
        steps: Option<usize>,
        /// Relation length cap for completion; defaults to the system length.
        #[arg(long = "budget-relation-len")]
        relation_len: Option<usize>,
        /// Length bound for conjugator searches.
        #[arg(long = "conjugator-bound")]
        conjugator_bound: Option<usize>,
        /// Print the rewriting sequence behind the witness.
        #[arg(long = "emit-trace")]
        emit_trace: bool,
    },
    /// Search for a braid and a simultaneous conjugator.
    HcSearch {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "budget-steps")]
        steps: Option<usize>,
        #[arg(long = "conjugator-bound")]
        conjugator_bound: Option<usize>,
    },
    /// Enumerate the Hurwitz orbit of a system.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long)]
        backend: String,
        /// Stop after this many distinct systems.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Sufficient test for the positive monoid to embed in the group.
    EmbedTest {
        file: PathBuf,
        #[arg(long = "max-words", default_value_t = 256)]
        max_words: usize,
        #[command(flatten)]
        budget: ReversalArgs,
    },
    /// Check that a braid carries one system to another.
    VerifyWitness {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        /// Braid word such as `s2 s3 s1^-1 s3`.
        #[arg(long)]
        braid: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("backend: {0}")]
    Backend(#[from] BackendError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Backend(_) => EXIT_BACKEND,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Backend(b) => CliError::Backend(b),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// A finished report: text lines, the same content as JSON, and the exit code.
struct Report {
    lines: Vec<String>,
    json: Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Text => {
                    for line in &report.lines {
                        println!("{line}");
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({ "error": e.to_string(), "code": e.code() })),
            }
            ExitCode::from(e.code())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load(path: &Path) -> Result<Document, CliError> {
    parse_document(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn backend(spec: &str, alphabet: &Alphabet, base: &Path) -> Result<Box<dyn GroupBackend>, CliError> {
    let spec = BackendSpec::parse(spec)?;
    let dir = base.parent().unwrap_or(Path::new("."));
    let io_error = std::cell::Cell::new(None);
    let built = spec.build(alphabet, |p| {
        let path = if Path::new(p).is_absolute() || Path::new(p).exists() { PathBuf::from(p) } else { dir.join(p) };
        std::fs::read_to_string(&path).map_err(|e| {
            let message = format!("{}: {e}", path.display());
            io_error.set(Some(CliError::Io { path: path.display().to_string(), source: e }));
            BackendError::Spec(message)
        })
    });
    match (built, io_error.into_inner()) {
        (Ok(b), _) => Ok(b),
        (Err(_), Some(io)) => Err(io),
        (Err(e), None) => Err(e.into()),
    }
}

fn system<'a>(doc: &'a Document, label: &str) -> Result<&'a GSystem, CliError> {
    doc.system(label).ok_or_else(|| CliError::Usage(format!("no system labelled `{label}`")))
}

fn generator_system(doc: &Document, label: &str) -> Result<GeneratorSystem, CliError> {
    system(doc, label)?
        .as_generators()
        .ok_or_else(|| CliError::Usage(format!("system `{label}` is not a tuple of generators")))
}

fn show_system(a: &Alphabet, g: &GSystem) -> String {
    let entries: Vec<String> = g.entries.iter().map(|e| a.show_signed(e)).collect();
    format!("({})", entries.join(", "))
}

fn show_relation(a: &Alphabet, r: &Relation) -> String {
    let text = format!("{} = {}", a.show_positive(&r.lhs), a.show_positive(&r.rhs));
    match &r.witness {
        Some(w) => format!("{text} [{w}]"),
        None => text,
    }
}

fn relation_json(a: &Alphabet, r: &Relation) -> Value {
    json!({
        "lhs": a.show_positive(&r.lhs),
        "rhs": a.show_positive(&r.rhs),
        "witness": r.witness.as_ref().map(|w| w.to_string()),
    })
}

fn trace_json(a: &Alphabet, t: &ReversalTrace) -> Value {
    json!({
        "start": a.show_signed(&t.start),
        "steps": t.steps.iter().map(|s| s.export_line()).collect::<Vec<_>>(),
        "end": a.show_signed(&t.end),
    })
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Reverse { file, neg, pos, left, all, full, budget } => {
            let doc = load(file)?;
            cmd_reverse(&doc.presentation, neg, pos, *left, *all, *full, &budget.budget())
        }
        Command::Complete { file, steps, rounds } => {
            let doc = load(file)?;
            let budget = CompletionBudget { total_steps: *steps, max_rounds: *rounds, ..CompletionBudget::default() };
            Ok(completion_report(&doc.presentation, complete(&doc.presentation, &budget)))
        }
        Command::CompleteHurwitz { file, steps, rounds, relation_len, backend: spec } => {
            let doc = load(file)?;
            let p = &doc.presentation;
            let budget = CompletionBudget { total_steps: *steps, max_rounds: *rounds, ..CompletionBudget::default() };
            let b = spec.as_deref().map(|s| backend(s, p.alphabet(), file)).transpose()?;
            let interp = hurwitz::hurwitz::Interpretation::identity(p.generator_count());
            let opts =
                HurwitzOptions { max_relation_length: *relation_len, verify: b.as_deref().map(|b| (b, &interp)) };
            Ok(completion_report(p, complete_hurwitz(p, &budget, opts)))
        }
        Command::TestEquiv { file, pair, naive, steps, relation_len, conjugator_bound, emit_trace } => {
            let doc = load(file)?;
            let p = &doc.presentation;
            let b = backend(&pair.backend, p.alphabet(), file)?;
            let g = generator_system(&doc, &pair.lhs)?;
            let h = system(&doc, &pair.rhs)?;
            let budget = solver_budget(*steps, *relation_len, *conjugator_bound);
            let verdict = if *naive {
                hurwitz_test_naive(p, &g, h, b.as_ref(), &budget)?
            } else {
                hurwitz_test(p, &g, h, b.as_ref(), &budget)?
            };
            Ok(verdict_report(&verdict, *emit_trace))
        }
        Command::HcSearch { file, pair, steps, conjugator_bound } => {
            let doc = load(file)?;
            let p = &doc.presentation;
            let b = backend(&pair.backend, p.alphabet(), file)?;
            let g = generator_system(&doc, &pair.lhs)?;
            let h = system(&doc, &pair.rhs)?;
            let mut budget = solver_budget(*steps, None, None);
            if let Some(c) = conjugator_bound {
                budget.hc_conjugator_bound = *c;
            }
            Ok(hc_report(p.alphabet(), &hc_search(p, &g, h, b.as_ref(), &budget)?))
        }
        Command::Orbit { file, system: label, backend: spec, limit } => {
            let doc = load(file)?;
            let a = doc.presentation.alphabet();
            let b = backend(spec, a, file)?;
            let g = system(&doc, label)?;
            for e in &g.entries {
                b.check(e)?;
            }
            let orbit = hurwitz_orbit(b.as_ref(), g, *limit)?;
            let systems: Vec<String> = orbit.systems().iter().map(|s| show_system(a, s)).collect();
            let (status, code) = match orbit {
                Orbit::Complete(_) => ("complete", 0),
                Orbit::Truncated(_) => ("truncated", 3),
            };
            let mut lines = systems.clone();
            lines.push(format!("orbit: {status} ({} systems)", systems.len()));
            Ok(Report { lines, json: json!({ "systems": systems, "orbit": status, "size": systems.len() }), code })
        }
        Command::EmbedTest { file, max_words, budget } => {
            let doc = load(file)?;
            let p = &doc.presentation;
            let cb = ClosureBudget { reversal: budget.budget(), max_words: *max_words, ..ClosureBudget::default() };
            Ok(embed_report(p, &cb))
        }
        Command::VerifyWitness { file, pair, braid } => {
            let doc = load(file)?;
            let a = doc.presentation.alphabet();
            let b = backend(&pair.backend, a, file)?;
            let g = system(&doc, &pair.lhs)?;
            let h = system(&doc, &pair.rhs)?;
            let beta = BraidWord::parse(braid, g.len().max(1)).map_err(|e| CliError::Parse(format!("braid: {e}")))?;
            if g.len() != h.len() {
                return Err(CliError::Usage(format!("systems have lengths {} and {}", g.len(), h.len())));
            }
            let truth = verify_braid(b.as_ref(), g, &beta, h)?;
            let (word, code) = match truth {
                Truth::Yes => ("pass", 0),
                Truth::No => ("fail", 1),
                Truth::Unknown => ("unknown", 3),
            };
            Ok(Report { lines: vec![word.to_string()], json: json!({ "verify": word }), code })
        }
    }
}

fn solver_budget(steps: Option<usize>, relation_len: Option<usize>, conjugator_bound: Option<usize>) -> SolverBudget {
    let mut budget = SolverBudget::default();
    if let Some(s) = steps {
        budget.completion.total_steps = s;
    }
    budget.max_relation_length = relation_len;
    if let Some(c) = conjugator_bound {
        budget.conjugator_bound = c;
    }
    budget
}

fn cmd_reverse(
    p: &Presentation,
    neg: &str,
    pos: &str,
    left: bool,
    all: bool,
    full: bool,
    budget: &Budget,
) -> Result<Report, CliError> {
    let a = p.alphabet();
    let parse = |s: &str| parse_positive_word(s, a).map_err(|e| CliError::Parse(e.to_string()));
    let (u, v) = (parse(neg)?, parse(pos)?);
    let outcomes = if left {
        left_reverse_all(p, &v.to_signed().concat(&u.inverse()), budget)
    } else {
        reverse_all(p, &u.inverse().concat(&v.to_signed()), budget)
    };
    let chosen: Vec<&ReversalOutcome> = if all {
        outcomes.iter().collect()
    } else {
        let first = outcomes.iter().find(|o| matches!(o, ReversalOutcome::Empty(_))).or(outcomes.first());
        first.into_iter().collect()
    };
    let empty = outcomes.iter().any(|o| matches!(o, ReversalOutcome::Empty(_)));
    let exceeded = outcomes.iter().any(|o| matches!(o, ReversalOutcome::BudgetExceeded));
    let (verdict, code) = match (empty, exceeded) {
        (true, _) => ("empty", 0),
        (false, true) => ("unknown", 3),
        (false, false) => ("not empty", 1),
    };
    let mut lines = Vec::new();
    let mut records = Vec::new();
    for o in chosen {
        let kind = match o {
            ReversalOutcome::Empty(_) => "empty",
            ReversalOutcome::Terminal { .. } => "terminal",
            ReversalOutcome::Stuck { .. } => "stuck",
            ReversalOutcome::BudgetExceeded => "budget exceeded",
        };
        match o.trace() {
            Some(t) => {
                let t = if full { t.clone() } else { t.compact() };
                if all {
                    lines.push(format!("outcome: {kind}"));
                }
                lines.extend(t.export(a).lines().map(str::to_string));
                let mut rec = trace_json(a, &t);
                rec["outcome"] = json!(kind);
                records.push(rec);
            }
            None => {
                lines.push(format!("outcome: {kind}"));
                records.push(json!({ "outcome": kind }));
            }
        }
    }
    lines.push(format!("verdict: {verdict}"));
    Ok(Report { lines, json: json!({ "outcomes": records, "verdict": verdict }), code })
}

fn completion_report(p: &Presentation, result: CompletionResult) -> Report {
    let a = result.presentation().alphabet();
    let mut lines: Vec<String> = result.added().iter().map(|r| format!("added: {}", show_relation(a, r))).collect();
    let added: Vec<Value> = result.added().iter().map(|r| relation_json(a, r)).collect();
    let (verdict, reason, code) = match &result {
        CompletionResult::Completed { .. } => ("completed".to_string(), None, 0),
        CompletionResult::Diverged { reason, .. } => ("diverged".to_string(), Some(reason.describe()), 2),
    };
    match &reason {
        Some(r) => lines.push(format!("verdict: {verdict} ({r})")),
        None => lines.push(format!("verdict: {verdict}")),
    }
    let json = json!({
        "added": added,
        "verdict": verdict,
        "reason": reason,
        "relations": result.presentation().relations().len(),
        "input_relations": p.relations().len(),
    });
    Report { lines, json, code }
}

fn verdict_report(verdict: &Verdict, emit_trace: bool) -> Report {
    match verdict {
        Verdict::Equivalent { beta, rewriting, alphabet } => {
            let mut lines = vec!["equivalent".to_string(), beta.to_string()];
            let steps: Vec<String> = rewriting.iter().enumerate().map(|(k, s)| s.export(k + 1, alphabet)).collect();
            if emit_trace {
                lines.extend(steps.iter().cloned());
            }
            let json = json!({ "verdict": "equivalent", "witness": beta.to_string(), "rewriting": steps });
            Report { lines, json, code: 0 }
        }
        Verdict::NotEquivalent(reason) => Report {
            lines: vec![format!("not equivalent: {}", reason.describe())],
            json: json!({ "verdict": "not equivalent", "reason": reason.describe() }),
            code: 1,
        },
        Verdict::Undecidable(d) => Report {
            lines: vec![format!("undecidable: {d}")],
            json: json!({ "verdict": "undecidable", "reason": d }),
            code: 3,
        },
    }
}

fn hc_report(a: &Alphabet, v: &HcVerdict) -> Report {
    match v {
        HcVerdict::HcEquivalent { beta, conjugator } => Report {
            lines: vec!["hc-equivalent".into(), beta.to_string(), format!("conjugator: {}", a.show_signed(conjugator))],
            json: json!({
                "verdict": "hc-equivalent",
                "witness": beta.to_string(),
                "conjugator": a.show_signed(conjugator),
            }),
            code: 0,
        },
        HcVerdict::NotHcEquivalent(r) => Report {
            lines: vec![format!("not hc-equivalent: {r}")],
            json: json!({ "verdict": "not hc-equivalent", "reason": r }),
            code: 1,
        },
        HcVerdict::Undecidable(r) => Report {
            lines: vec![format!("undecidable: {r}")],
            json: json!({ "verdict": "undecidable", "reason": r }),
            code: 3,
        },
    }
}

fn embed_report(p: &Presentation, budget: &ClosureBudget) -> Report {
    let a = p.alphabet();
    let closure = closure_er(p, budget);
    let (status, words) = match &closure {
        ClosureResult::Closed(w) => ("closed", Some(w)),
        ClosureResult::Diverged(w) => ("diverged", Some(w)),
        ClosureResult::NotApplicable { .. } => ("not applicable", None),
    };
    let shown: Vec<String> = words.map(|w| w.iter().map(|x| a.show_positive(x)).collect()).unwrap_or_default();
    let verdict = monoid_embeds(p, budget);
    let mut lines = shown.clone();
    match &closure {
        ClosureResult::NotApplicable { u, v } => {
            lines.push(format!("closure: {status} (stuck at {} / {})", a.show_positive(u), a.show_positive(v)))
        }
        _ => lines.push(format!("closure: {status} ({} words)", shown.len())),
    }
    lines.push(format!("embeds: {}", verdict.as_str()));
    let code = if verdict == Truth::Yes { 0 } else { 3 };
    Report { lines, json: json!({ "closure": status, "words": shown, "embeds": verdict.as_str() }), code }
}
