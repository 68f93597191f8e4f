//! Pregroup types and grammaticality by contraction to the sentence type.
//!
//! A simple type is a generator with an adjoint order `z`: `x^l = (x, -1)`,
//! `x^r = (x, +1)`, `x^ll = (x, -2)` and so on. Adjacent `(g, z)(g, z + 1)`
//! contract to the unit; this covers both `x · x^r ≤ 1` and `x^l · x ≤ 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PregroupError {
    #[error("unknown generator in `{token}`")]
    UnknownGenerator { token: String },
    #[error("malformed adjoint suffix in `{token}`")]
    MalformedSuffix { token: String },
    #[error("word `{0}` is not in the lexicon")]
    UnknownWord(String),
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub generator: String,
    pub adjoint: i32,
}

impl SimpleType {
    pub fn new(generator: impl Into<String>, adjoint: i32) -> Self {
        SimpleType {
            generator: generator.into(),
            adjoint,
        }
    }

    /// Whether `self · next ≤ 1`.
    pub fn contracts_with(&self, next: &SimpleType) -> bool {
        self.generator == next.generator && self.adjoint + 1 == next.adjoint
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.generator)?;
        if self.adjoint != 0 {
            let mark = if self.adjoint < 0 { "l" } else { "r" };
            write!(f, "^{}", mark.repeat(self.adjoint.unsigned_abs() as usize))?;
        }
        Ok(())
    }
}

/// A string of simple types; the empty string is the monoid unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PregroupType(pub Vec<SimpleType>);

impl PregroupType {
    pub fn unit() -> Self {
        PregroupType(Vec::new())
    }

    pub fn simple(generator: impl Into<String>) -> Self {
        PregroupType(vec![SimpleType::new(generator, 0)])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &PregroupType) -> PregroupType {
        let mut items = self.0.clone();
        items.extend(other.0.iter().cloned());
        PregroupType(items)
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The generators a grammar is built over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators(BTreeSet<String>);

impl Generators {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Generators(names.into_iter().map(Into::into).collect())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains(name)
    }
}

impl Default for Generators {
    /// Nouns and sentences.
    fn default() -> Self {
        Generators::new(["n", "s"])
    }
}

/// Parses `n^r s n^l` style text over the default generators `{n, s}`.
pub fn parse_type(text: &str) -> Result<PregroupType, PregroupError> {
    parse_type_with(text, &Generators::default())
}

pub fn parse_type_with(text: &str, generators: &Generators) -> Result<PregroupType, PregroupError> {
    let mut items = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (name, suffix) = match token.split_once('^') {
            Some((name, suffix)) => (name, Some(suffix)),
            None => (token, None),
        };
        if !generators.contains(name) {
            return Err(PregroupError::UnknownGenerator {
                token: token.to_string(),
            });
        }
        let adjoint = match suffix {
            None => 0,
            Some(s) if !s.is_empty() && s.chars().all(|c| c == 'l') => -(s.len() as i32),
            Some(s) if !s.is_empty() && s.chars().all(|c| c == 'r') => s.len() as i32,
            Some(_) => {
                return Err(PregroupError::MalformedSuffix {
                    token: token.to_string(),
                })
            }
        };
        items.push(SimpleType::new(name, adjoint));
    }
    Ok(PregroupType(items))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionKind {
    /// `x · x^r ≤ 1`
    EpsilonRight,
    /// `x^l · x ≤ 1`
    EpsilonLeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contraction {
    /// Index of the left element in the string as it stands before this step.
    pub position: usize,
    /// Indices of the contracted pair in the original input.
    pub left: usize,
    pub right: usize,
    pub kind: ContractionKind,
}

/// A sequence of contractions turning an input type into `result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub steps: Vec<Contraction>,
    pub result: PregroupType,
}

impl Reduction {
    /// Applies the steps to `input`, returning `None` if any step is not a
    /// legal contraction of adjacent elements.
    pub fn replay(&self, input: &PregroupType) -> Option<PregroupType> {
        let mut current = input.0.clone();
        for step in &self.steps {
            let p = step.position;
            if p + 1 >= current.len() || !current[p].contracts_with(&current[p + 1]) {
                return None;
            }
            current.drain(p..p + 2);
        }
        Some(PregroupType(current))
    }
}

struct SpanTable {
    n: usize,
    /// `split[i][j]`: for a contractible span `i..j`, the partner `k` of `i`.
    split: Vec<Option<usize>>,
}

impl SpanTable {
    fn build(items: &[SimpleType]) -> Self {
        let n = items.len();
        let idx = |i: usize, j: usize| i * (n + 1) + j;
        let mut ok = vec![false; (n + 1) * (n + 1)];
        let mut split = vec![None; (n + 1) * (n + 1)];
        for i in 0..=n {
            ok[idx(i, i)] = true;
        }
        for len in (2..=n).step_by(2) {
            for i in 0..=(n - len) {
                let j = i + len;
                // i pairs with k; the interior and the remainder contract.
                for k in ((i + 1)..j).step_by(2) {
                    if items[i].contracts_with(&items[k]) && ok[idx(i + 1, k)] && ok[idx(k + 1, j)] {
                        ok[idx(i, j)] = true;
                        split[idx(i, j)] = Some(k);
                        break;
                    }
                }
            }
        }
        SpanTable { n, split }
    }

    fn contractible(&self, i: usize, j: usize) -> bool {
        i == j || self.split[i * (self.n + 1) + j].is_some()
    }

    /// Pairs of the span `i..j`, innermost first.
    fn pairs(&self, i: usize, j: usize, out: &mut Vec<(usize, usize)>) {
        if i == j {
            return;
        }
        let k = self.split[i * (self.n + 1) + j].expect("span is contractible");
        self.pairs(i + 1, k, out);
        out.push((i, k));
        self.pairs(k + 1, j, out);
    }
}

/// Finds a reduction of `input` to `target` using contractions only.
///
/// Exhaustive: `input` reduces to `target` iff it splits into contractible
/// spans interleaved with the elements of `target` in order.
pub fn reduces_to(input: &PregroupType, target: &PregroupType) -> Option<Reduction> {
    let items = &input.0;
    let goal = &target.0;
    let (n, m) = (items.len(), goal.len());
    let spans = SpanTable::build(items);

    // reach[p][q]: items[p..] reduces to goal[q..]; next[p][q] the span end used.
    let at = |p: usize, q: usize| p * (m + 1) + q;
    let mut reach = vec![false; (n + 1) * (m + 1)];
    let mut next = vec![usize::MAX; (n + 1) * (m + 1)];
    reach[at(n, m)] = true;
    for p in (0..=n).rev() {
        for q in (0..=m).rev() {
            if p == n && q == m {
                continue;
            }
            for k in (p..=n).step_by(2) {
                if !spans.contractible(p, k) {
                    continue;
                }
                let hit = if q == m {
                    k == n
                } else {
                    k < n && items[k] == goal[q] && reach[at(k + 1, q + 1)]
                };
                if hit {
                    reach[at(p, q)] = true;
                    next[at(p, q)] = k;
                    break;
                }
            }
        }
    }
    if !reach[at(0, 0)] {
        return None;
    }

    let mut pairs = Vec::new();
    let (mut p, mut q) = (0, 0);
    while !(p == n && q == m) {
        let k = next[at(p, q)];
        spans.pairs(p, k, &mut pairs);
        if q == m {
            break;
        }
        p = k + 1;
        q += 1;
    }

    let mut alive: Vec<usize> = (0..n).collect();
    let steps = pairs
        .into_iter()
        .map(|(left, right)| {
            let position = alive.iter().position(|&x| x == left).expect("left alive");
            debug_assert_eq!(alive[position + 1], right);
            alive.drain(position..position + 2);
            let kind = if items[right].adjoint > 0 {
                ContractionKind::EpsilonRight
            } else {
                ContractionKind::EpsilonLeft
            };
            Contraction {
                position,
                left,
                right,
                kind,
            }
        })
        .collect();
    Some(Reduction {
        steps,
        result: target.clone(),
    })
}

/// Word-to-type assignments.
#[derive(Debug, Clone, Default)]
pub struct PregroupLexicon {
    words: BTreeMap<String, PregroupType>,
}

impl PregroupLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, word: impl Into<String>, ty: PregroupType) {
        self.words.insert(word.into(), ty);
    }

    pub fn get(&self, word: &str) -> Option<&PregroupType> {
        self.words.get(word)
    }

    /// Parses `word<TAB>type` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, generators: &Generators) -> Result<Self, PregroupError> {
        let mut lex = PregroupLexicon::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, ty) = raw.split_once('\t').ok_or_else(|| PregroupError::Lexicon {
                line: i + 1,
                message: "expected `word<TAB>type`".into(),
            })?;
            let ty = parse_type_with(ty, generators).map_err(|e| PregroupError::Lexicon {
                line: i + 1,
                message: e.to_string(),
            })?;
            lex.insert(word.trim(), ty);
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self, PregroupError> {
        let text = std::fs::read_to_string(path).map_err(|source| PregroupError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, &Generators::default())
    }
}

/// Types each word and checks the concatenation reduces to `s`.
pub fn check_sentence<S: AsRef<str>>(
    lexicon: &PregroupLexicon,
    words: &[S],
) -> Result<Option<Reduction>, PregroupError> {
    let mut ty = PregroupType::unit();
    for w in words {
        let w = w.as_ref();
        let t = lexicon
            .get(w)
            .ok_or_else(|| PregroupError::UnknownWord(w.to_string()))?;
        ty = ty.concat(t);
    }
    Ok(reduces_to(&ty, &PregroupType::simple("s")))
}
