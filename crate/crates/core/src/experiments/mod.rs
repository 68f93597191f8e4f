//! Intransitive-sentence entailment experiments with negation: dataset
//! generation, scoring, AUC with bootstrap, and paired model comparison.

mod dataset;
mod metrics;
mod report;
mod run;

use thiserror::Error;

use crate::compose::ComposeOp;
use crate::hyponymy::{EntailmentError, Measure};
use crate::lexicon::LexiconError;
use crate::operators::OperatorError;
use crate::symmat::LinalgError;

pub use dataset::{
    base_pairs_from_legacy, entailing_pair, generate_datasets, parse_base_pairs, parse_legacy_dataset,
    BasePair, NegationMode, SentencePair,
};
pub use metrics::{auc, bootstrap_auc, bootstrap_indices, compare_models, resampled_auc, Verdict, MAX_REDRAWS};
pub use report::{Cell, Diagnostics, DualityGap, EvalReport, REFERENCE_AUC, REFERENCE_LABEL};
pub use run::{
    evaluate, run_experiment, score_pair, sentence_operator, ComparisonCount, DatasetFormat, EvalSettings,
    ExperimentConfig,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("AUC needs at least one positive and one negative example")]
    SingleClass,
    #[error("score is NaN")]
    NanScore,
    #[error("no resample with both classes after {attempts} draws")]
    DegenerateBootstrap { attempts: usize },
    #[error("bootstrap lists differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("paired comparison needs at least two resamples, got {0}")]
    TooFewResamples(usize),
    #[error("resample count must be positive")]
    NoResamples,
    #[error("word `{0}` not in operator store")]
    MissingWord(String),
    #[error("dataset line {line}: {message}")]
    Dataset { line: usize, message: String },
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{op} / {measure}: {source}")]
    Scoring {
        op: ComposeOp,
        measure: Measure,
        #[source]
        source: EntailmentError,
    },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
