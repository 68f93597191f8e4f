//! The bundled 16-word, 8-dimensional mini lexicon.
//!
//! Every word is a standard basis vector, so all operators built from it are
//! diagonal projectors and every hyponym/hypernym pair is crisply ordered.
//! Nouns: animal > {mammal > {dog, cat}, bird}, vehicle > {car, boat}.
//! Verbs: move > {run > sprint, fly}, consume > {eat > devour, drink}.

use crate::experiments::{parse_base_pairs, BasePair};
use crate::lexicon::{build_store, parse_hyponyms, read_vectors, LoadOptions, OperatorStore};
use crate::operators::NormalizationMode;
use crate::pregroup::{Generators, PregroupLexicon};

pub const VECTORS: &str = include_str!("../fixtures/mini/vectors.txt");
pub const HYPONYMS: &str = include_str!("../fixtures/mini/hyponyms.tsv");
pub const BASE_PAIRS: &str = include_str!("../fixtures/mini/base_pairs.csv");
pub const PREGROUP: &str = include_str!("../fixtures/mini/pregroup.tsv");
pub const EVAL_CONFIG: &str = include_str!("../fixtures/mini/eval.toml");

pub const DIM: usize = 8;

/// Path of the fixture directory inside the source tree.
pub fn dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("mini")
}

/// Operators for all 16 words (max-eigenvalue normalization, own vector
/// included).
pub fn store() -> OperatorStore {
    let vectors = read_vectors(VECTORS.as_bytes(), &LoadOptions::default()).expect("fixture vectors parse");
    let hyponyms = parse_hyponyms(HYPONYMS, true).expect("fixture hyponyms parse");
    let words: Vec<String> = hyponyms.all_words().into_iter().collect();
    build_store(&vectors, &hyponyms, &words, NormalizationMode::MaxEigOne, true)
}

pub fn base_pairs() -> Vec<BasePair> {
    parse_base_pairs(BASE_PAIRS).expect("fixture base pairs parse")
}

pub fn pregroup_lexicon() -> PregroupLexicon {
    PregroupLexicon::parse(PREGROUP, &Generators::default()).expect("fixture pregroup lexicon parses")
}
