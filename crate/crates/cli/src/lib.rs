//! Command-line front end: build operator stores, query entailment, inspect
//! composed sentences, run experiments and check pregroup reductions.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use densent::experiments::{run_experiment, sentence_operator, ExperimentConfig, ExperimentError};
use densent::hyponymy::score;
use densent::lexicon::{build_store, load_hyponyms, load_store, load_vectors, save_store, LoadOptions, OperatorStore};
use densent::pregroup::{check_sentence, parse_type, reduces_to, PregroupLexicon, PregroupType};
use densent::{ComposeOp, Measure, NormalizationMode, Operator};

#[derive(Debug, Parser)]
#[command(name = "densent", version, about = "Word meanings as positive operators: composition, negation and graded entailment")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build word operators from vectors and hyponym lists and save them.
    Build(BuildArgs),
    /// Graded entailment between two words.
    Entail(EntailArgs),
    /// Compose a noun and a verb and summarise the sentence operator.
    Sentence(SentenceArgs),
    /// Run an experiment grid from a TOML config.
    Eval(EvalArgs),
    /// Pregroup grammar tools.
    #[command(subcommand)]
    Pregroup(PregroupCommand),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Word vectors, one `word v1 … vd` per line.
    #[arg(long)]
    pub vectors: PathBuf,
    /// Hyponym lists: `hypernym<TAB>hyponym` lines or JSON lines.
    #[arg(long)]
    pub hyponyms: PathBuf,
    /// Take the transitive closure of the hyponym lists (default).
    #[arg(long, overrides_with = "no_close")]
    pub close: bool,
    #[arg(long, overrides_with = "close")]
    pub no_close: bool,
    /// Required vector dimension.
    #[arg(long)]
    pub dim: Option<usize>,
    /// max-eig-one, trace-one or none.
    #[arg(long, default_value = "max-eig-one")]
    pub norm: NormalizationMode,
    /// Add each word's own vector to its operator (default).
    #[arg(long, overrides_with = "no_include_self")]
    pub include_self: bool,
    #[arg(long, overrides_with = "include_self")]
    pub no_include_self: bool,
    /// Lowercase all words.
    #[arg(long)]
    pub lowercase: bool,
    /// Build only these words (one per line) instead of every word in the
    /// hyponym file.
    #[arg(long)]
    pub words: Option<PathBuf>,
    /// Output store file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EntailArgs {
    #[arg(long)]
    pub store: PathBuf,
    /// Candidate hyponym.
    pub a: String,
    /// Candidate hypernym.
    pub b: String,
    /// kba, ke, kexp or crisp.
    #[arg(long, default_value = "kba")]
    pub measure: String,
    /// Use 𝕀 − a in place of a.
    #[arg(long)]
    pub neg_a: bool,
    /// Use 𝕀 − b in place of b.
    #[arg(long)]
    pub neg_b: bool,
}

#[derive(Debug, Args)]
pub struct SentenceArgs {
    #[arg(long)]
    pub store: PathBuf,
    pub noun: String,
    pub verb: String,
    /// Composition: mult, bmult, bmult-switched, kmult, kmult-switched,
    /// average, noun-only, verb-only.
    #[arg(long, default_value = "mult")]
    pub op: String,
    #[arg(long)]
    pub neg_noun: bool,
    #[arg(long)]
    pub neg_verb: bool,
    /// Number of eigenvalues to show.
    #[arg(long, default_value_t = 5)]
    pub top: usize,
    /// Print the full matrix, one row per line.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub resamples: Option<usize>,
    /// JSON report path (overrides `report` in the config).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Text table path (overrides `table` in the config).
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PregroupCommand {
    /// Check that a sentence, or a raw type string, reduces to `s`.
    Check(PregroupCheckArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["sentence", "types"]))]
pub struct PregroupCheckArgs {
    /// Lexicon of `word<TAB>type` lines; required with --sentence.
    #[arg(long, requires = "sentence")]
    pub lexicon: Option<PathBuf>,
    /// Space-separated words.
    #[arg(long)]
    pub sentence: Option<String>,
    /// Type string such as `n n^r s n^l n`.
    #[arg(long = "type")]
    pub types: Option<String>,
}

/// Failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// I/O or validation problem: exit 1.
    Input(String),
    /// Unknown word, op or measure: exit 2.
    Lookup(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Lookup(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Lookup(m) => f.write_str(m),
        }
    }
}

fn input<E: fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(input)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Build(a) => cmd_build(a, out),
        Command::Entail(a) => cmd_entail(a, out),
        Command::Sentence(a) => cmd_sentence(a, out),
        Command::Eval(a) => cmd_eval(a, out),
        Command::Pregroup(PregroupCommand::Check(a)) => cmd_pregroup_check(a, out),
    }
}

fn read_word_list(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

pub fn cmd_build(a: BuildArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.dim == Some(0) {
        return Err(CliError::Input("--dim must be positive".into()));
    }
    let options = LoadOptions {
        expected_dim: a.dim,
        lowercase: a.lowercase,
    };
    let vectors = load_vectors(&a.vectors, &options).map_err(input)?;
    let hyponyms = load_hyponyms(&a.hyponyms, !a.no_close).map_err(input)?;
    let words: Vec<String> = match &a.words {
        Some(p) => read_word_list(p)?,
        None => hyponyms.all_words().into_iter().collect(),
    };
    let store = build_store(&vectors, &hyponyms, &words, a.norm, !a.no_include_self);
    save_store(&store, &a.out).map_err(input)?;
    write_out(
        out,
        &format!(
            "built {} operators, {} failures, OOV rate {:.4}\n",
            store.len(),
            store.failures.len(),
            store.oov_rate()
        ),
    )
}

fn open_store(path: &Path) -> Result<OperatorStore, CliError> {
    load_store(path).map_err(input)
}

fn word<'s>(store: &'s OperatorStore, w: &str) -> Result<&'s Operator, CliError> {
    store.get(w).ok_or_else(|| match store.failures.get(w) {
        Some(reason) => CliError::Lookup(format!("word `{w}` has no operator: {reason}")),
        None => CliError::Lookup(format!("word `{w}` not in store")),
    })
}

fn shown(w: &str, negated: bool) -> String {
    if negated {
        format!("¬{w}")
    } else {
        w.to_string()
    }
}

pub fn cmd_entail(a: EntailArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let measure: Measure = a.measure.parse().map_err(CliError::Lookup)?;
    let store = open_store(&a.store)?;
    let mut left = word(&store, &a.a)?.clone();
    let mut right = word(&store, &a.b)?.clone();
    if a.neg_a {
        left = left.negate().map_err(input)?;
    }
    if a.neg_b {
        right = right.negate().map_err(input)?;
    }
    let s = score(measure, &left, &right).map_err(input)?;
    let note = if s.degenerate { " (operators equal)" } else { "" };
    write_out(
        out,
        &format!(
            "{}({},{}) = {}{note}\n",
            measure.label(),
            shown(&a.a, a.neg_a),
            shown(&a.b, a.neg_b),
            s.value
        ),
    )
}

pub fn cmd_sentence(a: SentenceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let op: ComposeOp = a.op.parse().map_err(CliError::Lookup)?;
    let store = open_store(&a.store)?;
    word(&store, &a.noun)?;
    word(&store, &a.verb)?;
    let s = sentence_operator(&store, &a.noun, &a.verb, op, a.neg_noun, a.neg_verb).map_err(|e| match e {
        ExperimentError::MissingWord(w) => CliError::Lookup(format!("word `{w}` not in store")),
        other => input(other),
    })?;
    let m = s.matrix();
    let mut text = String::new();
    if a.dump {
        for i in 0..m.dim() {
            let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
            text.push_str(&row.join(" "));
            text.push('\n');
        }
    } else {
        let values = m.eigenvalues().map_err(input)?;
        let top: Vec<String> = values.iter().take(a.top).map(|x| format!("{x:.6}")).collect();
        text.push_str(&format!(
            "{}({}, {}): dim {}, trace {:.6}\ntop eigenvalues: {}\n",
            op,
            shown(&a.noun, a.neg_noun),
            shown(&a.verb, a.neg_verb),
            m.dim(),
            m.trace(),
            top.join(" ")
        ));
    }
    write_out(out, &text)
}

pub fn cmd_eval(a: EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut config = ExperimentConfig::load(&a.config).map_err(input)?;
    if let Some(seed) = a.seed {
        config.seed = seed;
    }
    if let Some(r) = a.resamples {
        config.resamples = r;
    }
    if a.out.is_some() {
        config.report = a.out.clone();
    }
    if a.table.is_some() {
        config.table = a.table.clone();
    }
    let report = run_experiment(&config).map_err(input)?;
    let json = report.to_json();
    let table = report.render_table();
    let write_file = |path: &Path, text: &str| {
        std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    };
    match &config.report {
        Some(p) => write_file(p, &json)?,
        None => write_out(out, &json)?,
    }
    match &config.table {
        Some(p) => write_file(p, &table)?,
        None if config.report.is_some() => write_out(out, &table)?,
        None => {}
    }
    let failed = report.failed_cells().count();
    if failed > 0 {
        eprintln!("{failed} of {} cells failed; see the report for details", report.cells.len());
    }
    Ok(())
}

pub fn cmd_pregroup_check(a: PregroupCheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (input_type, reduction) = match (&a.sentence, &a.types) {
        (Some(sentence), _) => {
            let path = a
                .lexicon
                .as_ref()
                .ok_or_else(|| CliError::Input("--sentence needs --lexicon".into()))?;
            let lexicon = PregroupLexicon::load(path).map_err(input)?;
            let words: Vec<&str> = sentence.split_whitespace().collect();
            let reduction = check_sentence(&lexicon, &words).map_err(|e| match e {
                densent::pregroup::PregroupError::UnknownWord(_) => CliError::Lookup(e.to_string()),
                other => input(other),
            })?;
            let mut ty = PregroupType::unit();
            for w in &words {
                ty = ty.concat(lexicon.get(w).expect("checked above"));
            }
            (ty, reduction)
        }
        (None, Some(types)) => {
            let ty = parse_type(types).map_err(input)?;
            let reduction = reduces_to(&ty, &PregroupType::simple("s"));
            (ty, reduction)
        }
        (None, None) => return Err(CliError::Input("give --sentence or --type".into())),
    };
    let mut text = format!("type: {input_type}\n");
    match reduction {
        Some(r) => {
            let mut current = input_type.0.clone();
            for step in &r.steps {
                let p = step.position;
                text.push_str(&format!(
                    "contract {} {} at {}\n",
                    current[p],
                    current[p + 1],
                    p
                ));
                current.drain(p..p + 2);
            }
            text.push_str(&format!("reduces to {} in {} steps\n", r.result, r.steps.len()));
        }
        None => text.push_str("does not reduce to s\n"),
    }
    write_out(out, &text)
}

