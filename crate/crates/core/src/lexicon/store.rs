//! Built operators keyed by word, with a bit-exact binary file format.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic        8 bytes  "CPEOPSTR"
//! version      u32      1
//! dim          u32
//! word_count   u32
//! norm_mode    u8       0 max-eig-one, 1 trace-one, 2 none
//! include_self u8
//! reserved     u16      0
//! word_count × { name_len u32, name utf-8, instances u32, oov u32,
//!                dim² × f64 row-major }
//! failure_count u32
//! failure_count × { name_len u32, name, reason_len u32, reason }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rayon::prelude::*;

use super::{HyponymLexicon, LexiconError, VectorLexicon};
use crate::operators::{build_operator, is_valid, NormalizationMode, PositiveOperator};
use crate::symmat::SymMatrix;
use crate::Operator;

pub const STORE_MAGIC: &[u8; 8] = b"CPEOPSTR";
pub const STORE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WordStats {
    /// Instance vectors summed into the operator.
    pub instances: u32,
    /// Hyponyms missing from the vector lexicon.
    pub oov: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorStore {
    pub dim: usize,
    pub normalization: NormalizationMode,
    pub include_self: bool,
    operators: BTreeMap<String, Operator>,
    stats: BTreeMap<String, WordStats>,
    /// Words that could not be built, with the reason.
    pub failures: BTreeMap<String, String>,
}

impl OperatorStore {
    pub fn new(dim: usize, normalization: NormalizationMode, include_self: bool) -> Self {
        OperatorStore {
            dim,
            normalization,
            include_self,
            operators: BTreeMap::new(),
            stats: BTreeMap::new(),
            failures: BTreeMap::new(),
        }
    }

    /// Adds an operator; it must have the store's dimension.
    pub fn insert(&mut self, word: impl Into<String>, op: Operator, stats: WordStats) {
        assert_eq!(op.dim(), self.dim, "operator dimension");
        let word = word.into();
        self.failures.remove(&word);
        self.stats.insert(word.clone(), stats);
        self.operators.insert(word, op);
    }

    pub fn get(&self, word: &str) -> Option<&Operator> {
        self.operators.get(word)
    }

    pub fn stats(&self, word: &str) -> Option<WordStats> {
        self.stats.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.operators.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Operator)> {
        self.operators.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Fraction of listed hyponyms that had no vector.
    pub fn oov_rate(&self) -> f64 {
        let (mut oov, mut total) = (0u64, 0u64);
        for s in self.stats.values() {
            oov += u64::from(s.oov);
            total += u64::from(s.oov) + u64::from(s.instances);
        }
        if total == 0 {
            0.0
        } else {
            oov as f64 / total as f64
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(32 + self.len() * (16 + self.dim * self.dim * 8));
        out.extend_from_slice(STORE_MAGIC);
        out.extend_from_slice(&STORE_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.dim as u32).to_le_bytes());
        out.extend_from_slice(&(self.len() as u32).to_le_bytes());
        out.push(self.normalization.code());
        out.push(u8::from(self.include_self));
        out.extend_from_slice(&0u16.to_le_bytes());
        for (word, op) in &self.operators {
            put_str(&mut out, word);
            let stats = self.stats.get(word).copied().unwrap_or_default();
            out.extend_from_slice(&stats.instances.to_le_bytes());
            out.extend_from_slice(&stats.oov.to_le_bytes());
            for x in op.matrix().as_slice() {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        out.extend_from_slice(&(self.failures.len() as u32).to_le_bytes());
        for (word, reason) in &self.failures {
            put_str(&mut out, word);
            put_str(&mut out, reason);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, LexiconError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(8)? != STORE_MAGIC {
            return Err(LexiconError::Corrupt("bad magic bytes".into()));
        }
        let version = r.u32()?;
        if version != STORE_VERSION {
            return Err(LexiconError::UnsupportedVersion {
                found: version,
                supported: STORE_VERSION,
            });
        }
        let dim = r.u32()? as usize;
        let count = r.u32()? as usize;
        let normalization = NormalizationMode::from_code(r.u8()?)
            .ok_or_else(|| LexiconError::Corrupt("unknown normalization code".into()))?;
        let include_self = match r.u8()? {
            0 => false,
            1 => true,
            other => return Err(LexiconError::Corrupt(format!("bad include-self flag {other}"))),
        };
        r.take(2)?;
        if dim == 0 {
            return Err(LexiconError::Corrupt("zero dimension".into()));
        }

        let mut store = OperatorStore::new(dim, normalization, include_self);
        for _ in 0..count {
            let word = r.string()?;
            let stats = WordStats {
                instances: r.u32()?,
                oov: r.u32()?,
            };
            let raw = r.take(dim * dim * 8)?;
            let data: Vec<f64> = raw
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            if let Some((i, j)) = first_asymmetry(dim, &data) {
                return Err(LexiconError::InvalidOperator {
                    word,
                    reason: format!("entries ({i},{j}) and ({j},{i}) differ"),
                });
            }
            let matrix = SymMatrix::from_row_major(dim, data).map_err(|e| LexiconError::InvalidOperator {
                word: word.clone(),
                reason: e.to_string(),
            })?;
            let check = is_valid(&matrix).map_err(|e| LexiconError::InvalidOperator {
                word: word.clone(),
                reason: e.to_string(),
            })?;
            if !check.valid {
                return Err(LexiconError::InvalidOperator {
                    word,
                    reason: check.reasons.join("; "),
                });
            }
            store.insert(word, PositiveOperator::trusted(matrix), stats);
        }
        let failures = r.u32()? as usize;
        for _ in 0..failures {
            let word = r.string()?;
            let reason = r.string()?;
            store.failures.insert(word, reason);
        }
        if r.pos != bytes.len() {
            return Err(LexiconError::Corrupt(format!(
                "{} trailing bytes",
                bytes.len() - r.pos
            )));
        }
        Ok(store)
    }
}

fn first_asymmetry(dim: usize, data: &[f64]) -> Option<(usize, usize)> {
    for i in 0..dim {
        for j in (i + 1)..dim {
            if data[i * dim + j].to_bits() != data[j * dim + i].to_bits() {
                return Some((i, j));
            }
        }
    }
    None
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    out.extend_from_slice(&(s.len() as u32).to_le_bytes());
    out.extend_from_slice(s.as_bytes());
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], LexiconError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&end| end <= self.bytes.len())
            .ok_or_else(|| LexiconError::Corrupt(format!("truncated at byte {}", self.pos)))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, LexiconError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, LexiconError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String, LexiconError> {
        let len = self.u32()? as usize;
        let raw = self.take(len)?;
        String::from_utf8(raw.to_vec()).map_err(|_| LexiconError::Corrupt("invalid utf-8 in word".into()))
    }
}

pub fn save_store(store: &OperatorStore, path: &Path) -> Result<(), LexiconError> {
    std::fs::write(path, store.to_bytes()).map_err(|e| LexiconError::io(path, e))
}

pub fn load_store(path: &Path) -> Result<OperatorStore, LexiconError> {
    let bytes = std::fs::read(path).map_err(|e| LexiconError::io(path, e))?;
    OperatorStore::from_bytes(&bytes)
}

enum Built {
    Ok(Operator, WordStats),
    Failed(String),
}

/// Builds one operator per word from its hyponyms' vectors (unit weights).
///
/// Instances are summed in lexicographic word order, so the result does not
/// depend on map iteration order or thread scheduling.
pub fn build_store(
    vectors: &VectorLexicon,
    hyponyms: &HyponymLexicon,
    words: &[String],
    norm: NormalizationMode,
    include_self: bool,
) -> OperatorStore {
    let words: Vec<&String> = words.iter().collect::<BTreeSet<_>>().into_iter().collect();
    let built: Vec<(&String, Built)> = words
        .par_iter()
        .map(|&word| {
            let empty = BTreeSet::new();
            let hypos = hyponyms.hyponyms(word).unwrap_or(&empty);
            let oov = hypos.iter().filter(|h| !vectors.contains(h)).count();
            let mut candidates: BTreeSet<&str> = hypos.iter().map(String::as_str).collect();
            if include_self {
                candidates.insert(word.as_str());
            }
            let instances: Vec<Vec<f64>> = candidates
                .iter()
                .filter_map(|w| vectors.get(w).map(<[f64]>::to_vec))
                .collect();
            if instances.is_empty() {
                let reason = format!(
                    "no instance vectors ({} hyponyms, {} out of vocabulary{})",
                    hypos.len(),
                    oov,
                    if include_self { ", word itself out of vocabulary" } else { "" }
                );
                return (word, Built::Failed(reason));
            }
            let stats = WordStats {
                instances: instances.len() as u32,
                oov: oov as u32,
            };
            match build_operator(&instances, None, norm) {
                Ok(op) => (word, Built::Ok(op, stats)),
                Err(e) => (word, Built::Failed(e.to_string())),
            }
        })
        .collect();

    let mut store = OperatorStore::new(vectors.dim(), norm, include_self);
    for (word, b) in built {
        match b {
            Built::Ok(op, stats) => store.insert(word.clone(), op, stats),
            Built::Failed(reason) => {
                store.failures.insert(word.clone(), reason);
            }
        }
    }
    store
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{parse_hyponyms, read_vectors, LoadOptions};

    fn vectors(text: &str) -> VectorLexicon {
        read_vectors(text.as_bytes(), &LoadOptions::default()).unwrap()
    }

    fn words(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn orthonormal_hyponyms_give_identity() {
        let vl = vectors("a 1 0\nb 0 1\n");
        let hl = parse_hyponyms("top\ta\ntop\tb\n", false).unwrap();
        let store = build_store(&vl, &hl, &words(&["top"]), NormalizationMode::MaxEigOne, false);
        assert_eq!(store.get("top").unwrap().matrix(), &SymMatrix::identity(2));
        assert_eq!(store.stats("top"), Some(WordStats { instances: 2, oov: 0 }));
    }

    #[test]
    fn single_hyponym_gives_projector() {
        let vl = vectors("a 0.6 0.8\n");
        let hl = parse_hyponyms("top\ta\ntop\tghost\n", false).unwrap();
        let store = build_store(&vl, &hl, &words(&["top"]), NormalizationMode::MaxEigOne, false);
        let m = store.get("top").unwrap().matrix();
        let expected = SymMatrix::outer(&[0.6, 0.8]);
        assert!(m.frobenius_distance(&expected).unwrap() < 1e-12);
        assert_eq!(store.stats("top").unwrap().oov, 1);
        assert!((store.oov_rate() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn all_oov_is_a_failure() {
        let vl = vectors("a 1 0\n");
        let hl = parse_hyponyms("top\tghost\n", false).unwrap();
        let store = build_store(&vl, &hl, &words(&["top"]), NormalizationMode::MaxEigOne, false);
        assert!(store.get("top").is_none());
        assert!(store.failures["top"].contains("no instance vectors"));
    }

    #[test]
    fn include_self_adds_own_vector() {
        let vl = vectors("a 1 0\ntop 0 1\n");
        let hl = parse_hyponyms("top\ta\n", false).unwrap();
        let with = build_store(&vl, &hl, &words(&["top", "a"]), NormalizationMode::MaxEigOne, true);
        assert_eq!(with.get("top").unwrap().matrix(), &SymMatrix::identity(2));
        assert_eq!(with.get("a").unwrap().matrix(), &SymMatrix::from_diagonal(&[1.0, 0.0]));
        let without = build_store(&vl, &hl, &words(&["top", "a"]), NormalizationMode::MaxEigOne, false);
        assert!(without.failures.contains_key("a"));
    }

    #[test]
    fn bytes_round_trip_exactly() {
        let vl = vectors("a 0.3 0.1 0.2\nb 0.1 0.9 0.4\nc 0.5 0.5 0.7\n");
        let hl = parse_hyponyms("top\ta\ntop\tb\ntop\tc\nmid\tb\nmid\tc\nmid\tghost\n", false).unwrap();
        let mut store = build_store(&vl, &hl, &words(&["top", "mid", "nothing"]), NormalizationMode::MaxEigOne, true);
        store.failures.insert("extra".into(), "reason".into());
        let back = OperatorStore::from_bytes(&store.to_bytes()).unwrap();
        assert_eq!(back, store);
        for (w, op) in store.iter() {
            assert_eq!(back.get(w).unwrap().matrix().as_slice(), op.matrix().as_slice());
        }
    }

    #[test]
    fn corrupt_inputs() {
        let vl = vectors("a 1 0\n");
        let hl = parse_hyponyms("top\ta\n", false).unwrap();
        let store = build_store(&vl, &hl, &words(&["top"]), NormalizationMode::MaxEigOne, false);
        let bytes = store.to_bytes();

        let truncated = &bytes[..bytes.len() - 5];
        assert!(matches!(OperatorStore::from_bytes(truncated), Err(LexiconError::Corrupt(_))));

        let mut bad_magic = bytes.clone();
        bad_magic[0] = b'X';
        assert!(matches!(OperatorStore::from_bytes(&bad_magic), Err(LexiconError::Corrupt(_))));

        let mut future = bytes.clone();
        future[8..12].copy_from_slice(&7u32.to_le_bytes());
        assert!(matches!(
            OperatorStore::from_bytes(&future),
            Err(LexiconError::UnsupportedVersion { found: 7, supported: 1 })
        ));

        // overwrite the (0,0) entry with 2.0: max eigenvalue above one
        let mut invalid = bytes.clone();
        let first_entry = 24 + 4 + 3 + 8;
        invalid[first_entry..first_entry + 8].copy_from_slice(&2.0f64.to_le_bytes());
        match OperatorStore::from_bytes(&invalid) {
            Err(LexiconError::InvalidOperator { word, .. }) => assert_eq!(word, "top"),
            other => panic!("expected invalid operator, got {other:?}"),
        }
    }
}
