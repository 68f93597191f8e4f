use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::LexiconError;

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    /// Reject the file unless every vector has this dimension.
    pub expected_dim: Option<usize>,
    /// Lowercase words on load and on lookup.
    pub lowercase: bool,
}

/// Unit-normalized word vectors sharing one dimension.
#[derive(Debug, Clone)]
pub struct VectorLexicon {
    dim: usize,
    lowercase: bool,
    vectors: HashMap<String, Vec<f64>>,
    /// Later lines repeating an earlier word (ignored).
    pub duplicates: usize,
    /// All-zero vectors (skipped).
    pub zero_vectors: usize,
}

impl VectorLexicon {
    pub fn new(dim: usize, lowercase: bool) -> Self {
        VectorLexicon {
            dim,
            lowercase,
            vectors: HashMap::new(),
            duplicates: 0,
            zero_vectors: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn key(&self, word: &str) -> String {
        if self.lowercase {
            word.to_lowercase()
        } else {
            word.to_string()
        }
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        if self.lowercase {
            self.vectors.get(&word.to_lowercase()).map(Vec::as_slice)
        } else {
            self.vectors.get(word).map(Vec::as_slice)
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.get(word).is_some()
    }

    /// Adds `vector` after L2 normalization. Returns false, and counts a
    /// warning, for duplicates and zero vectors.
    pub fn insert(&mut self, word: &str, mut vector: Vec<f64>) -> bool {
        assert_eq!(vector.len(), self.dim, "vector dimension");
        let key = self.key(word);
        if self.vectors.contains_key(&key) {
            self.duplicates += 1;
            return false;
        }
        let norm = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            self.zero_vectors += 1;
            return false;
        }
        vector.iter_mut().for_each(|x| *x /= norm);
        self.vectors.insert(key, vector);
        true
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.vectors.keys().map(String::as_str)
    }
}

/// Reads `word v1 … vd` lines (GloVe text format). A leading
/// `<count> <dim>` header line, as written by word2vec, is skipped.
pub fn read_vectors<R: BufRead>(reader: R, options: &LoadOptions) -> Result<VectorLexicon, LexiconError> {
    let mut lexicon: Option<VectorLexicon> = None;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|source| LexiconError::Io {
            path: format!("line {line_no}"),
            source,
        })?;
        let mut tokens = line.split_whitespace();
        let Some(word) = tokens.next() else {
            continue;
        };
        let rest: Vec<&str> = tokens.collect();
        if line_no == 1 && rest.len() == 1 && word.parse::<usize>().is_ok() && rest[0].parse::<usize>().is_ok() {
            continue;
        }
        if rest.is_empty() {
            return Err(LexiconError::MissingVector { line: line_no });
        }
        let mut vector = Vec::with_capacity(rest.len());
        for token in rest {
            let x: f64 = token.parse().map_err(|_| LexiconError::BadFloat {
                line: line_no,
                token: token.to_string(),
            })?;
            if !x.is_finite() {
                return Err(LexiconError::BadFloat {
                    line: line_no,
                    token: token.to_string(),
                });
            }
            vector.push(x);
        }
        let lex = lexicon.get_or_insert_with(|| VectorLexicon::new(vector.len(), options.lowercase));
        let expected = options.expected_dim.unwrap_or(lex.dim);
        if vector.len() != expected || vector.len() != lex.dim {
            return Err(LexiconError::InconsistentDim {
                line: line_no,
                expected,
                got: vector.len(),
            });
        }
        lex.insert(word, vector);
    }
    match lexicon {
        Some(lex) if !lex.is_empty() => Ok(lex),
        _ => Err(LexiconError::EmptyFile),
    }
}

pub fn load_vectors(path: &Path, options: &LoadOptions) -> Result<VectorLexicon, LexiconError> {
    let file = File::open(path).map_err(|e| LexiconError::io(path, e))?;
    read_vectors(BufReader::new(file), options).map_err(|e| match e {
        LexiconError::Io { source, .. } => LexiconError::io(path, source),
        other => other,
    })
}
