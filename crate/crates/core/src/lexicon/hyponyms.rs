use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;

use super::LexiconError;

/// Hypernym → set of hyponyms (surface strings, senses merged).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HyponymLexicon {
    map: BTreeMap<String, BTreeSet<String>>,
}

#[derive(Deserialize)]
struct JsonRecord {
    word: String,
    hyponyms: Vec<String>,
}

impl HyponymLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `hyponym` under `hypernym`; self-loops are dropped.
    pub fn add_edge(&mut self, hypernym: &str, hyponym: &str) {
        let set = self.map.entry(hypernym.to_string()).or_default();
        if hypernym != hyponym {
            set.insert(hyponym.to_string());
        }
    }

    pub fn hyponyms(&self, word: &str) -> Option<&BTreeSet<String>> {
        self.map.get(word)
    }

    pub fn hypernyms(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    /// Every word mentioned, as hypernym or hyponym.
    pub fn all_words(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (k, v) in &self.map {
            out.insert(k.clone());
            out.extend(v.iter().cloned());
        }
        out
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Replaces each set by everything reachable through the edge graph.
    /// A word never appears in its own set, even on cycles.
    pub fn transitive_closure(&self) -> HyponymLexicon {
        let mut map = BTreeMap::new();
        for root in self.map.keys() {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&str> = self.map[root].iter().map(String::as_str).collect();
            while let Some(w) = stack.pop() {
                if w == root || !seen.insert(w.to_string()) {
                    continue;
                }
                if let Some(children) = self.map.get(w) {
                    stack.extend(children.iter().map(String::as_str));
                }
            }
            map.insert(root.clone(), seen);
        }
        HyponymLexicon { map }
    }
}

/// Parses `hypernym<TAB>hyponym` edges or JSON lines
/// `{"word": …, "hyponyms": […]}`; the two may be mixed.
pub fn parse_hyponyms(text: &str, close: bool) -> Result<HyponymLexicon, LexiconError> {
    let mut lex = HyponymLexicon::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('{') {
            let rec: JsonRecord = serde_json::from_str(line).map_err(|e| LexiconError::MalformedHyponym {
                line: i + 1,
                message: e.to_string(),
            })?;
            lex.map.entry(rec.word.clone()).or_default();
            for h in &rec.hyponyms {
                lex.add_edge(&rec.word, h);
            }
            continue;
        }
        let mut fields = line.split('\t').map(str::trim);
        match (fields.next(), fields.next(), fields.next()) {
            (Some(hyper), Some(hypo), None) if !hyper.is_empty() && !hypo.is_empty() => {
                lex.add_edge(hyper, hypo)
            }
            _ => {
                return Err(LexiconError::MalformedHyponym {
                    line: i + 1,
                    message: "expected `hypernym<TAB>hyponym`".into(),
                })
            }
        }
    }
    Ok(if close { lex.transitive_closure() } else { lex })
}

pub fn load_hyponyms(path: &Path, close: bool) -> Result<HyponymLexicon, LexiconError> {
    let text = std::fs::read_to_string(path).map_err(|e| LexiconError::io(path, e))?;
    parse_hyponyms(&text, close)
}
