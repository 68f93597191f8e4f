use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::{base_pairs_from_legacy, generate_datasets, parse_base_pairs, parse_legacy_dataset};
use super::metrics::{bootstrap_indices, compare_models, resampled_auc, auc};
use super::report::{Cell, Diagnostics, DualityGap, EvalReport};
use super::{ExperimentError, NegationMode, SentencePair};
use crate::compose::{compose, ComposeOp};
use crate::hyponymy::{k_ba_from_parts, k_e_from_parts, score, EntailmentScore, Measure};
use crate::lexicon::{build_store, load_hyponyms, load_store, load_vectors, LoadOptions, OperatorStore};
use crate::operators::NormalizationMode;
use crate::Operator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DatasetFormat {
    /// `hypo_noun,hypo_verb,hyper_noun,hyper_verb`
    #[default]
    Base,
    /// `noun1 verb1,noun2 verb2,T|F`; base pairs are taken from the T rows.
    Legacy,
}

/// Bonferroni divisor: `auto` counts the comparisons made within one table
/// column, i.e. every op against Average and against noun-only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ComparisonCount {
    #[default]
    Auto,
    Fixed(usize),
}

impl ComparisonCount {
    pub fn resolve(self, ops: &[ComposeOp]) -> usize {
        match self {
            ComparisonCount::Fixed(n) => n.max(1),
            ComparisonCount::Auto => {
                let against = |base: ComposeOp| {
                    if ops.contains(&base) {
                        ops.iter().filter(|&&op| op != base).count()
                    } else {
                        0
                    }
                };
                (against(ComposeOp::Average) + against(ComposeOp::NounOnly)).max(1)
            }
        }
    }
}

impl Serialize for ComparisonCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ComparisonCount::Auto => s.serialize_str("auto"),
            ComparisonCount::Fixed(n) => s.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for ComparisonCount {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(0) => Err(serde::de::Error::custom("n_comparisons must be positive")),
            Raw::Count(n) => Ok(ComparisonCount::Fixed(n as usize)),
            Raw::Text(t) if t == "auto" => Ok(ComparisonCount::Auto),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "n_comparisons must be \"auto\" or a positive integer, got `{t}`"
            ))),
        }
    }
}

fn default_true() -> bool {
    true
}
fn default_ops() -> Vec<String> {
    ComposeOp::ALL.iter().map(|op| op.name().to_string()).collect()
}
fn default_measures() -> Vec<String> {
    vec!["kba".into(), "ke".into()]
}
fn default_modes() -> Vec<String> {
    NegationMode::ALL.iter().map(|m| m.name().to_string()).collect()
}
fn default_resamples() -> usize {
    100
}
fn default_seed() -> u64 {
    2020
}
fn default_alpha() -> f64 {
    0.05
}

/// Experiment manifest, read from TOML. Relative paths are resolved against
/// the directory holding the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub vectors: Option<PathBuf>,
    pub hyponyms: Option<PathBuf>,
    /// Prebuilt operator store; replaces `vectors` and `hyponyms`.
    pub store: Option<PathBuf>,
    pub dataset: PathBuf,
    #[serde(default)]
    pub dataset_format: DatasetFormat,
    /// Take the transitive closure of the hyponym lists.
    #[serde(default = "default_true")]
    pub close: bool,
    #[serde(default)]
    pub lowercase: bool,
    pub dim: Option<usize>,
    #[serde(default)]
    pub normalization: NormalizationMode,
    #[serde(default = "default_true")]
    pub include_self: bool,
    #[serde(default = "default_ops")]
    pub ops: Vec<String>,
    #[serde(default = "default_measures")]
    pub measures: Vec<String>,
    #[serde(default = "default_modes")]
    pub modes: Vec<String>,
    #[serde(default = "default_resamples")]
    pub resamples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub n_comparisons: ComparisonCount,
    /// Where to write the JSON report.
    pub report: Option<PathBuf>,
    /// Where to write the text tables.
    pub table: Option<PathBuf>,
}

/// The validated, path-free part of a config.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalSettings {
    pub ops: Vec<ComposeOp>,
    pub measures: Vec<Measure>,
    pub modes: Vec<NegationMode>,
    pub resamples: usize,
    pub seed: u64,
    pub alpha: f64,
    pub n_comparisons: ComparisonCount,
}

impl Default for EvalSettings {
    fn default() -> Self {
        EvalSettings {
            ops: ComposeOp::ALL.to_vec(),
            measures: vec![Measure::KBA, Measure::KE],
            modes: NegationMode::ALL.to_vec(),
            resamples: 100,
            seed: 2020,
            alpha: 0.05,
            n_comparisons: ComparisonCount::Auto,
        }
    }
}

fn parse_list<T: std::str::FromStr<Err = String> + PartialEq>(
    key: &str,
    items: &[String],
) -> Result<Vec<T>, ExperimentError> {
    if items.is_empty() {
        return Err(ExperimentError::Config(format!("`{key}` is empty")));
    }
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for s in items {
        let v = s.parse::<T>().map_err(|e| ExperimentError::Config(format!("{key}: {e}")))?;
        if out.contains(&v) {
            return Err(ExperimentError::Config(format!("{key}: `{s}` listed twice")));
        }
        out.push(v);
    }
    Ok(out)
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self, ExperimentError> {
        let mut cfg: ExperimentConfig = toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base_dir.join(&*p);
            }
        };
        for p in [&mut cfg.vectors, &mut cfg.hyponyms, &mut cfg.store, &mut cfg.report, &mut cfg.table]
            .into_iter()
            .flatten()
        {
            resolve(p);
        }
        resolve(&mut cfg.dataset);
        cfg.settings()?;
        if cfg.store.is_none() && (cfg.vectors.is_none() || cfg.hyponyms.is_none()) {
            return Err(ExperimentError::Config(
                "either `store` or both `vectors` and `hyponyms` must be given".into(),
            ));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path).map_err(|e| ExperimentError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let dir = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_toml_str(&text, dir)
    }

    pub fn settings(&self) -> Result<EvalSettings, ExperimentError> {
        if self.resamples == 0 {
            return Err(ExperimentError::Config("`resamples` must be positive".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ExperimentError::Config("`alpha` must lie in (0, 1)".into()));
        }
        if self.dim == Some(0) {
            return Err(ExperimentError::Config("`dim` must be positive".into()));
        }
        Ok(EvalSettings {
            ops: parse_list("ops", &self.ops)?,
            measures: parse_list("measures", &self.measures)?,
            modes: parse_list("modes", &self.modes)?,
            resamples: self.resamples,
            seed: self.seed,
            alpha: self.alpha,
            n_comparisons: self.n_comparisons,
        })
    }
}

fn read_text(path: &Path) -> Result<String, ExperimentError> {
    std::fs::read_to_string(path).map_err(|e| ExperimentError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Loads inputs, builds (or loads) the operators for the dataset's words and
/// evaluates the full grid.
pub fn run_experiment(config: &ExperimentConfig) -> Result<EvalReport, ExperimentError> {
    let settings = config.settings()?;
    let text = read_text(&config.dataset)?;
    let base = match config.dataset_format {
        DatasetFormat::Base => parse_base_pairs(&text)?,
        DatasetFormat::Legacy => base_pairs_from_legacy(&parse_legacy_dataset(&text)?),
    };
    if base.is_empty() {
        return Err(ExperimentError::Dataset {
            line: 0,
            message: "no base pairs".into(),
        });
    }
    let datasets = generate_datasets(&base);

    let store = match &config.store {
        Some(path) => {
            let store = load_store(path)?;
            if let Some(d) = config.dim.filter(|&d| d != store.dim) {
                return Err(ExperimentError::Config(format!(
                    "store has dimension {}, config says {d}",
                    store.dim
                )));
            }
            store
        }
        None => {
            let (vpath, hpath) = match (&config.vectors, &config.hyponyms) {
                (Some(v), Some(h)) => (v, h),
                _ => return Err(ExperimentError::Config("missing `vectors` or `hyponyms`".into())),
            };
            let opts = LoadOptions {
                expected_dim: config.dim,
                lowercase: config.lowercase,
            };
            let vectors = load_vectors(vpath, &opts)?;
            let hyponyms = load_hyponyms(hpath, config.close)?;
            let words: Vec<String> = base
                .iter()
                .flat_map(|b| [&b.hypo_noun, &b.hypo_verb, &b.hyper_noun, &b.hyper_verb])
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            build_store(&vectors, &hyponyms, &words, config.normalization, config.include_self)
        }
    };
    evaluate(&store, &datasets, &settings)
}

/// `𝕀 − op` if `negated`, else `op` unchanged.
fn maybe_negate(op: &Operator, negated: bool) -> Result<Operator, ExperimentError> {
    Ok(if negated { op.negate()? } else { op.clone() })
}

fn lookup<'s>(store: &'s OperatorStore, word: &str) -> Result<&'s Operator, ExperimentError> {
    store.get(word).ok_or_else(|| ExperimentError::MissingWord(word.to_string()))
}

/// Operator of "noun verb", with either word negated before composition.
pub fn sentence_operator(
    store: &OperatorStore,
    noun: &str,
    verb: &str,
    op: ComposeOp,
    neg_noun: bool,
    neg_verb: bool,
) -> Result<Operator, ExperimentError> {
    let n = maybe_negate(lookup(store, noun)?, neg_noun)?;
    let v = maybe_negate(lookup(store, verb)?, neg_verb)?;
    Ok(compose(op, &n, &v)?)
}

/// Graded entailment of the pair's premise by its hypothesis.
pub fn score_pair(
    pair: &SentencePair,
    store: &OperatorStore,
    op: ComposeOp,
    measure: Measure,
) -> Result<EntailmentScore<f64>, ExperimentError> {
    let (nn, nv) = (pair.mode.negates_noun(), pair.mode.negates_verb());
    let premise = sentence_operator(store, &pair.premise_noun, &pair.premise_verb, op, nn, nv)?;
    let hypothesis = sentence_operator(store, &pair.hypothesis_noun, &pair.hypothesis_verb, op, nn, nv)?;
    score(measure, &premise, &hypothesis).map_err(|source| ExperimentError::Scoring { op, measure, source })
}

/// Word operators, plain and negated, for every word the datasets use.
struct WordTable {
    plain: HashMap<String, Operator>,
    negated: HashMap<String, Operator>,
}

impl WordTable {
    fn build(store: &OperatorStore, words: &BTreeSet<&str>) -> Result<Self, ExperimentError> {
        let present: Vec<&str> = words.iter().copied().filter(|w| store.get(w).is_some()).collect();
        let negated: Vec<(String, Operator)> = present
            .par_iter()
            .map(|&w| Ok((w.to_string(), store.get(w).expect("present").negate()?)))
            .collect::<Result<_, ExperimentError>>()?;
        Ok(WordTable {
            plain: present.iter().map(|&w| (w.to_string(), store.get(w).expect("present").clone())).collect(),
            negated: negated.into_iter().collect(),
        })
    }

    fn get(&self, word: &str, negated: bool) -> Option<&Operator> {
        if negated {
            self.negated.get(word)
        } else {
            self.plain.get(word)
        }
    }
}

/// Scores of one (mode, op) over the resolvable records, per measure.
/// `None` marks a pair whose score is undefined under that measure.
struct OpScores {
    by_measure: Vec<Vec<Option<f64>>>,
    degenerate: Vec<usize>,
    /// k_BA of every resolvable record, used by the duality diagnostic.
    kba: Vec<f64>,
}

fn score_mode_op(
    words: &WordTable,
    records: &[&SentencePair],
    mode: NegationMode,
    op: ComposeOp,
    measures: &[Measure],
) -> Result<OpScores, ExperimentError> {
    let (nn, nv) = (mode.negates_noun(), mode.negates_verb());
    let mut sentences: BTreeMap<(&str, &str), Operator> = BTreeMap::new();
    for r in records {
        for (n, v) in [
            (r.premise_noun.as_str(), r.premise_verb.as_str()),
            (r.hypothesis_noun.as_str(), r.hypothesis_verb.as_str()),
        ] {
            if sentences.contains_key(&(n, v)) {
                continue;
            }
            let noun = words.get(n, nn).expect("resolvable");
            let verb = words.get(v, nv).expect("resolvable");
            sentences.insert((n, v), compose(op, noun, verb)?);
        }
    }

    let mut by_measure = vec![Vec::with_capacity(records.len()); measures.len()];
    let mut degenerate = vec![0; measures.len()];
    let mut kba = Vec::with_capacity(records.len());
    for r in records {
        let a = &sentences[&(r.premise_noun.as_str(), r.premise_verb.as_str())];
        let b = &sentences[&(r.hypothesis_noun.as_str(), r.hypothesis_verb.as_str())];
        let parts = b.matrix().sub(a.matrix())?.jordan()?;
        kba.push(k_ba_from_parts(&parts).value);
        for (m_idx, &measure) in measures.iter().enumerate() {
            let s = match measure {
                Measure::KBA => Ok(k_ba_from_parts(&parts)),
                Measure::KE => k_e_from_parts(a, &parts),
                other => score(other, a, b),
            };
            match s {
                Ok(s) => {
                    if s.degenerate {
                        degenerate[m_idx] += 1;
                    }
                    by_measure[m_idx].push(Some(s.value));
                }
                Err(_) => by_measure[m_idx].push(None),
            }
        }
    }
    Ok(OpScores {
        by_measure,
        degenerate,
        kba,
    })
}

struct ModeData<'a> {
    mode: NegationMode,
    n_pairs: usize,
    /// Records whose four words are all in the store.
    records: Vec<&'a SentencePair>,
    indices: Result<Vec<Vec<usize>>, String>,
}

/// Position of the mode in the fixed mode list; names its random stream so a
/// config listing only some modes draws the same resamples for them.
fn stream_of(mode: NegationMode) -> u64 {
    NegationMode::ALL.iter().position(|&m| m == mode).expect("listed") as u64
}

/// Evaluates every (mode, op, measure) cell on pre-generated datasets.
///
/// Within a mode all cells share one set of bootstrap resamples, so model
/// comparisons are paired. Results do not depend on thread scheduling.
pub fn evaluate(
    store: &OperatorStore,
    datasets: &BTreeMap<NegationMode, Vec<SentencePair>>,
    settings: &EvalSettings,
) -> Result<EvalReport, ExperimentError> {
    if settings.resamples == 0 {
        return Err(ExperimentError::NoResamples);
    }
    let n_comparisons = settings.n_comparisons.resolve(&settings.ops);
    let empty = Vec::new();

    let mut all_words = BTreeSet::new();
    for mode in &settings.modes {
        for r in datasets.get(mode).unwrap_or(&empty) {
            all_words.extend(r.words());
        }
    }
    let missing: Vec<String> = all_words
        .iter()
        .filter(|w| store.get(w).is_none())
        .map(|w| w.to_string())
        .collect();
    let words = WordTable::build(store, &all_words)?;

    let modes: Vec<ModeData> = settings
        .modes
        .iter()
        .map(|&mode| {
            let all = datasets.get(&mode).unwrap_or(&empty);
            let records: Vec<&SentencePair> = all
                .iter()
                .filter(|r| r.words().iter().all(|w| store.get(w).is_some()))
                .collect();
            let labels: Vec<bool> = records.iter().map(|r| r.label).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
            rng.set_stream(stream_of(mode));
            let indices = bootstrap_indices(&labels, settings.resamples, &mut rng).map_err(|e| e.to_string());
            ModeData {
                mode,
                n_pairs: all.len(),
                records,
                indices,
            }
        })
        .collect();

    let jobs: Vec<(usize, ComposeOp)> = (0..modes.len())
        .flat_map(|m| settings.ops.iter().map(move |&op| (m, op)))
        .collect();
    let scored: Vec<Result<OpScores, String>> = jobs
        .par_iter()
        .map(|&(m, op)| {
            score_mode_op(&words, &modes[m].records, modes[m].mode, op, &settings.measures).map_err(|e| e.to_string())
        })
        .collect();

    let mut cells = Vec::new();
    let mut bootstraps: HashMap<(NegationMode, ComposeOp, Measure), Vec<f64>> = HashMap::new();
    for ((m, op), result) in jobs.iter().zip(&scored) {
        let md = &modes[*m];
        for (m_idx, &measure) in settings.measures.iter().enumerate() {
            let mut cell = Cell::new(*op, md.mode, measure, md.n_pairs);
            cell.skipped = md.n_pairs - md.records.len();
            let outcome = match (result, &md.indices) {
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                (Ok(s), Ok(indices)) => cell_statistics(&md.records, &s.by_measure[m_idx], indices),
            };
            if let Ok(s) = result {
                cell.degenerate = s.degenerate[m_idx];
                cell.undefined = s.by_measure[m_idx].iter().filter(|x| x.is_none()).count();
                cell.n_scored = md.records.len() - cell.undefined;
            }
            match outcome {
                Ok((full, boot)) => {
                    cell.full_auc = Some(full);
                    cell.mean_auc = Some(boot.iter().sum::<f64>() / boot.len() as f64);
                    bootstraps.insert((md.mode, *op, measure), boot.clone());
                    cell.bootstrap = boot;
                }
                Err(e) => cell.error = Some(e),
            }
            cells.push(cell);
        }
    }

    for cell in &mut cells {
        let key = |op| (cell.mode, op, cell.measure);
        let Some(mine) = bootstraps.get(&key(cell.op)) else { continue };
        let versus = |base: ComposeOp| -> Option<super::Verdict> {
            if cell.op == base {
                return None;
            }
            let theirs = bootstraps.get(&key(base))?;
            compare_models(mine, theirs, n_comparisons, settings.alpha).ok()
        };
        cell.vs_average = versus(ComposeOp::Average);
        cell.vs_noun_only = versus(ComposeOp::NounOnly);
        cell.marks = format!(
            "{}{}",
            if cell.vs_average.is_some_and(|v| v.better) { "*" } else { "" },
            if cell.vs_noun_only.is_some_and(|v| v.better) { "+" } else { "" }
        );
    }

    let duality = duality_gaps(&jobs, &scored, &modes);

    Ok(EvalReport::new(
        settings,
        n_comparisons,
        cells,
        Diagnostics {
            store_operators: store.len(),
            store_failures: store.failures.clone(),
            oov_rate: store.oov_rate(),
            missing_words: missing,
            duality,
        },
    ))
}

/// Full-data AUC and bootstrap AUCs over the resamples, with pairs whose
/// score is undefined dropped from every resample.
fn cell_statistics(
    records: &[&SentencePair],
    scores: &[Option<f64>],
    indices: &[Vec<usize>],
) -> Result<(f64, Vec<f64>), String> {
    let full: Vec<(f64, bool)> = records
        .iter()
        .zip(scores)
        .filter_map(|(r, s)| s.map(|s| (s, r.label)))
        .collect();
    let full_auc = auc(&full).map_err(|e| e.to_string())?;
    if scores.iter().all(Option::is_some) {
        let scored: Vec<(f64, bool)> = records.iter().zip(scores).map(|(r, s)| (s.expect("some"), r.label)).collect();
        let boot = resampled_auc(&scored, indices).map_err(|e| e.to_string())?;
        return Ok((full_auc, boot));
    }
    let mut boot = Vec::with_capacity(indices.len());
    let mut buf = Vec::new();
    for idx in indices {
        buf.clear();
        buf.extend(idx.iter().filter_map(|&i| scores[i].map(|s| (s, records[i].label))));
        boot.push(auc(&buf).map_err(|e| format!("resample without both classes after dropping undefined scores: {e}"))?);
    }
    Ok((full_auc, boot))
}

/// Compares k_BA of each NegBoth T record with that of the Plain T record
/// built from the same base pair.
fn duality_gaps(
    jobs: &[(usize, ComposeOp)],
    scored: &[Result<OpScores, String>],
    modes: &[ModeData],
) -> Vec<DualityGap> {
    let find = |mode: NegationMode, op: ComposeOp| {
        jobs.iter()
            .zip(scored)
            .find(|((m, o), _)| *o == op && modes[*m].mode == mode)
            .and_then(|((m, _), s)| s.as_ref().ok().map(|s| (*m, s)))
    };
    let mut ops: Vec<ComposeOp> = Vec::new();
    for (_, op) in jobs {
        if !ops.contains(op) {
            ops.push(*op);
        }
    }
    ops.into_iter()
        .filter_map(|op| {
            let (pm, plain) = find(NegationMode::Plain, op)?;
            let (nm, neg) = find(NegationMode::NegBoth, op)?;
            // Base pair key: the plain T record's words. A NegBoth T record of
            // base (n1, v1, n2, v2) reads (n2 v2 ⊨ n1 v1).
            let mut plain_by_base: HashMap<[&str; 4], f64> = HashMap::new();
            for (r, &k) in modes[pm].records.iter().zip(&plain.kba) {
                if r.label {
                    plain_by_base.insert(r.words(), k);
                }
            }
            let mut diffs = Vec::new();
            for (r, &k) in modes[nm].records.iter().zip(&neg.kba) {
                if !r.label {
                    continue;
                }
                let key = [
                    r.hypothesis_noun.as_str(),
                    r.hypothesis_verb.as_str(),
                    r.premise_noun.as_str(),
                    r.premise_verb.as_str(),
                ];
                if let Some(&p) = plain_by_base.get(&key) {
                    diffs.push((k - p).abs());
                }
            }
            if diffs.is_empty() {
                return None;
            }
            Some(DualityGap {
                op: op.name().to_string(),
                pairs: diffs.len(),
                mean_abs: diffs.iter().sum::<f64>() / diffs.len() as f64,
                max_abs: diffs.iter().copied().fold(0.0, f64::max),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;

    fn fixture_config() -> ExperimentConfig {
        ExperimentConfig::from_toml_str(fixture::EVAL_CONFIG, &fixture::dir()).unwrap()
    }

    #[test]
    fn fixture_config_parses_and_resolves_paths() {
        let cfg = fixture_config();
        assert!(cfg.vectors.as_ref().unwrap().is_absolute());
        assert!(cfg.dataset.ends_with("base_pairs.csv"));
        let s = cfg.settings().unwrap();
        assert_eq!(s.ops.len(), 8);
        assert_eq!(s.measures, vec![Measure::KBA, Measure::KE]);
        assert_eq!(s.modes, NegationMode::ALL.to_vec());
        assert_eq!(s.n_comparisons.resolve(&s.ops), 14);
    }

    #[test]
    fn config_rejections() {
        let dir = Path::new("/tmp");
        let base = "store = \"s.bin\"\ndataset = \"d.csv\"\n";
        assert!(ExperimentConfig::from_toml_str(base, dir).is_ok());
        for extra in [
            "colour = \"blue\"\n",
            "ops = [\"mult\", \"tensor\"]\n",
            "ops = [\"mult\", \"mult\"]\n",
            "measures = []\n",
            "resamples = 0\n",
            "alpha = 1.5\n",
            "n_comparisons = 0\n",
            "n_comparisons = \"many\"\n",
        ] {
            let text = format!("{base}{extra}");
            assert!(
                matches!(ExperimentConfig::from_toml_str(&text, dir), Err(ExperimentError::Config(_))),
                "accepted {extra}"
            );
        }
        assert!(ExperimentConfig::from_toml_str("dataset = \"d.csv\"\n", dir).is_err());
        let fixed = ExperimentConfig::from_toml_str(&format!("{base}n_comparisons = 5\n"), dir).unwrap();
        assert_eq!(fixed.n_comparisons, ComparisonCount::Fixed(5));
    }

    #[test]
    fn auto_comparison_count_ignores_absent_baselines() {
        assert_eq!(ComparisonCount::Auto.resolve(&[ComposeOp::Mult, ComposeOp::KMult]), 1);
        assert_eq!(
            ComparisonCount::Auto.resolve(&[ComposeOp::Mult, ComposeOp::Average, ComposeOp::KMult]),
            2
        );
    }

    #[test]
    fn scoring_a_plain_pair() {
        let store = fixture::store();
        let pair = super::super::entailing_pair(&fixture::base_pairs()[0], NegationMode::Plain);
        for op in ComposeOp::ALL {
            let t = score_pair(&pair, &store, op, Measure::KBA).unwrap();
            let f = score_pair(&pair.mirrored(), &store, op, Measure::KBA).unwrap();
            assert!((t.value - 1.0).abs() < 1e-9, "{op}: {}", t.value);
            assert!((f.value + t.value).abs() < 1e-9);
        }
        let mut missing = pair.clone();
        missing.premise_noun = "unicorn".into();
        assert!(matches!(
            score_pair(&missing, &store, ComposeOp::Mult, Measure::KBA),
            Err(ExperimentError::MissingWord(w)) if w == "unicorn"
        ));
    }

    #[test]
    fn missing_words_are_skipped_not_fatal() {
        let store = fixture::store();
        let mut base = fixture::base_pairs();
        base.push(super::super::BasePair::new("unicorn", "run", "animal", "move"));
        let datasets = generate_datasets(&base);
        let settings = EvalSettings {
            resamples: 20,
            ..EvalSettings::default()
        };
        let report = evaluate(&store, &datasets, &settings).unwrap();
        assert_eq!(report.diagnostics.missing_words, vec!["unicorn".to_string()]);
        for cell in &report.cells {
            assert_eq!(cell.skipped, 2);
            assert_eq!(cell.n_pairs, 2 * base.len());
        }
    }
}
