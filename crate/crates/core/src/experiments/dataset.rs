use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ExperimentError;

/// Which words of both sentences are negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NegationMode {
    Plain,
    NegNoun,
    NegVerb,
    NegBoth,
}

impl NegationMode {
    pub const ALL: [NegationMode; 4] = [
        NegationMode::Plain,
        NegationMode::NegNoun,
        NegationMode::NegVerb,
        NegationMode::NegBoth,
    ];

    pub fn negates_noun(self) -> bool {
        matches!(self, NegationMode::NegNoun | NegationMode::NegBoth)
    }

    pub fn negates_verb(self) -> bool {
        matches!(self, NegationMode::NegVerb | NegationMode::NegBoth)
    }

    pub fn name(self) -> &'static str {
        match self {
            NegationMode::Plain => "plain",
            NegationMode::NegNoun => "neg-noun",
            NegationMode::NegVerb => "neg-verb",
            NegationMode::NegBoth => "neg-both",
        }
    }

    /// Column heading in rendered tables.
    pub fn title(self) -> &'static str {
        match self {
            NegationMode::Plain => "noun-verb",
            NegationMode::NegNoun => "¬noun-verb",
            NegationMode::NegVerb => "noun-¬verb",
            NegationMode::NegBoth => "¬noun-¬verb",
        }
    }
}

impl fmt::Display for NegationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NegationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .iter()
            .copied()
            .find(|m| m.name() == key)
            .ok_or_else(|| format!("unknown mode `{s}` (expected plain, neg-noun, neg-verb or neg-both)"))
    }
}

/// An entailing quadruple: `hypo_noun hypo_verb ⊨ hyper_noun hyper_verb`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePair {
    pub hypo_noun: String,
    pub hypo_verb: String,
    pub hyper_noun: String,
    pub hyper_verb: String,
}

impl BasePair {
    pub fn new(hypo_noun: &str, hypo_verb: &str, hyper_noun: &str, hyper_verb: &str) -> Self {
        BasePair {
            hypo_noun: hypo_noun.into(),
            hypo_verb: hypo_verb.into(),
            hyper_noun: hyper_noun.into(),
            hyper_verb: hyper_verb.into(),
        }
    }
}

/// Premise and hypothesis sentences; in the given mode the nouns and/or verbs
/// of both sentences stand negated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentencePair {
    pub premise_noun: String,
    pub premise_verb: String,
    pub hypothesis_noun: String,
    pub hypothesis_verb: String,
    /// True when the premise entails the hypothesis.
    pub label: bool,
    pub mode: NegationMode,
}

fn render(noun: &str, verb: &str, mode: NegationMode) -> String {
    let noun = if mode.negates_noun() { format!("non-{noun}") } else { noun.to_string() };
    let verb = if mode.negates_verb() { format!("do not {verb}") } else { verb.to_string() };
    format!("some {noun} {verb}")
}

impl SentencePair {
    pub fn premise_text(&self) -> String {
        render(&self.premise_noun, &self.premise_verb, self.mode)
    }

    pub fn hypothesis_text(&self) -> String {
        render(&self.hypothesis_noun, &self.hypothesis_verb, self.mode)
    }

    /// The same pair with premise and hypothesis exchanged and the label flipped.
    pub fn mirrored(&self) -> SentencePair {
        SentencePair {
            premise_noun: self.hypothesis_noun.clone(),
            premise_verb: self.hypothesis_verb.clone(),
            hypothesis_noun: self.premise_noun.clone(),
            hypothesis_verb: self.premise_verb.clone(),
            label: !self.label,
            mode: self.mode,
        }
    }

    pub fn words(&self) -> [&str; 4] {
        [
            &self.premise_noun,
            &self.premise_verb,
            &self.hypothesis_noun,
            &self.hypothesis_verb,
        ]
    }
}

/// The entailing (T) record of `base` in `mode`.
///
/// Negation reverses the order on the negated word class, so the hypernym's
/// negation moves into the premise:
/// `dogs run ⊨ mammals move`, `non-mammals run ⊨ non-dogs move`,
/// `dogs do not move ⊨ mammals do not run`,
/// `non-mammals do not move ⊨ non-dogs do not run`.
pub fn entailing_pair(base: &BasePair, mode: NegationMode) -> SentencePair {
    let (premise_noun, hypothesis_noun) = if mode.negates_noun() {
        (&base.hyper_noun, &base.hypo_noun)
    } else {
        (&base.hypo_noun, &base.hyper_noun)
    };
    let (premise_verb, hypothesis_verb) = if mode.negates_verb() {
        (&base.hyper_verb, &base.hypo_verb)
    } else {
        (&base.hypo_verb, &base.hyper_verb)
    };
    SentencePair {
        premise_noun: premise_noun.clone(),
        premise_verb: premise_verb.clone(),
        hypothesis_noun: hypothesis_noun.clone(),
        hypothesis_verb: hypothesis_verb.clone(),
        label: true,
        mode,
    }
}

/// For every mode, each base pair's T record followed by its reversed F mirror.
pub fn generate_datasets(base: &[BasePair]) -> BTreeMap<NegationMode, Vec<SentencePair>> {
    NegationMode::ALL
        .iter()
        .map(|&mode| {
            let records = base
                .iter()
                .flat_map(|b| {
                    let t = entailing_pair(b, mode);
                    let f = t.mirrored();
                    [t, f]
                })
                .collect();
            (mode, records)
        })
        .collect()
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// `hypo_noun,hypo_verb,hyper_noun,hyper_verb` per line.
pub fn parse_base_pairs(text: &str) -> Result<Vec<BasePair>, ExperimentError> {
    data_lines(text)
        .map(|(line, l)| {
            let fields: Vec<&str> = l.split(',').map(str::trim).collect();
            match fields.as_slice() {
                [a, b, c, d] if fields.iter().all(|f| !f.is_empty()) => Ok(BasePair::new(a, b, c, d)),
                _ => Err(ExperimentError::Dataset {
                    line,
                    message: "expected `hypo_noun,hypo_verb,hyper_noun,hyper_verb`".into(),
                }),
            }
        })
        .collect()
}

/// `noun1 verb1,noun2 verb2,T|F` per line; all records are plain mode.
pub fn parse_legacy_dataset(text: &str) -> Result<Vec<SentencePair>, ExperimentError> {
    let err = |line: usize| ExperimentError::Dataset {
        line,
        message: "expected `noun1 verb1,noun2 verb2,T|F`".into(),
    };
    data_lines(text)
        .map(|(line, l)| {
            let fields: Vec<&str> = l.split(',').map(str::trim).collect();
            let [first, second, label] = fields.as_slice() else {
                return Err(err(line));
            };
            let split = |s: &str| -> Option<(String, String)> {
                let parts: Vec<&str> = s.split_whitespace().collect();
                match parts.as_slice() {
                    [n, v] => Some((n.to_string(), v.to_string())),
                    _ => None,
                }
            };
            let (pn, pv) = split(first).ok_or_else(|| err(line))?;
            let (hn, hv) = split(second).ok_or_else(|| err(line))?;
            let label = match *label {
                "T" | "t" => true,
                "F" | "f" => false,
                _ => return Err(err(line)),
            };
            Ok(SentencePair {
                premise_noun: pn,
                premise_verb: pv,
                hypothesis_noun: hn,
                hypothesis_verb: hv,
                label,
                mode: NegationMode::Plain,
            })
        })
        .collect()
}

/// Base quadruples recovered from the T records of a legacy dataset.
pub fn base_pairs_from_legacy(records: &[SentencePair]) -> Vec<BasePair> {
    records
        .iter()
        .filter(|r| r.label)
        .map(|r| BasePair::new(&r.premise_noun, &r.premise_verb, &r.hypothesis_noun, &r.hypothesis_verb))
        .collect()
}
