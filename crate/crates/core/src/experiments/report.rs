use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::metrics::Verdict;
use super::run::EvalSettings;
use super::NegationMode;
use crate::compose::ComposeOp;
use crate::hyponymy::Measure;

/// Annotation row carried over from the earlier non-negated benchmark.
pub const REFERENCE_LABEL: &str = "KS2016 best";
pub const REFERENCE_AUC: f64 = 0.84;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    /// Row label, e.g. "BMult switched".
    pub model: String,
    pub op: ComposeOp,
    pub mode: NegationMode,
    pub measure: Measure,
    /// Mean of the bootstrap AUCs; the figure shown in tables.
    pub mean_auc: Option<f64>,
    /// AUC on the unresampled data.
    pub full_auc: Option<f64>,
    pub bootstrap: Vec<f64>,
    /// Records generated for this mode.
    pub n_pairs: usize,
    pub n_scored: usize,
    /// Records with a word missing from the store.
    pub skipped: usize,
    /// Records whose score is undefined for this measure (zero premise).
    pub undefined: usize,
    /// Scores taken from the equal-operator convention.
    pub degenerate: usize,
    /// `t` is serialized as null when infinite.
    pub vs_average: Option<Verdict>,
    pub vs_noun_only: Option<Verdict>,
    /// `*` beats Average, `+` beats noun-only.
    pub marks: String,
    pub error: Option<String>,
}

impl Cell {
    pub(crate) fn new(op: ComposeOp, mode: NegationMode, measure: Measure, n_pairs: usize) -> Self {
        Cell {
            model: op.title().to_string(),
            op,
            mode,
            measure,
            mean_auc: None,
            full_auc: None,
            bootstrap: Vec::new(),
            n_pairs,
            n_scored: 0,
            skipped: 0,
            undefined: 0,
            degenerate: 0,
            vs_average: None,
            vs_noun_only: None,
            marks: String::new(),
            error: None,
        }
    }
}

/// How far k_BA on a doubly negated T record is from k_BA on the plain T
/// record of the same base pair, for one op.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityGap {
    pub op: String,
    pub pairs: usize,
    pub mean_abs: f64,
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub store_operators: usize,
    pub store_failures: BTreeMap<String, String>,
    pub oov_rate: f64,
    pub missing_words: Vec<String>,
    pub duality: Vec<DualityGap>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reference {
    pub label: String,
    pub mode: NegationMode,
    pub auc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub seed: u64,
    pub resamples: usize,
    pub alpha: f64,
    pub n_comparisons: usize,
    pub ops: Vec<ComposeOp>,
    pub modes: Vec<NegationMode>,
    pub measures: Vec<Measure>,
    pub reference: Reference,
    pub cells: Vec<Cell>,
    pub diagnostics: Diagnostics,
}

impl EvalReport {
    pub(crate) fn new(settings: &EvalSettings, n_comparisons: usize, cells: Vec<Cell>, diagnostics: Diagnostics) -> Self {
        EvalReport {
            seed: settings.seed,
            resamples: settings.resamples,
            alpha: settings.alpha,
            n_comparisons,
            ops: settings.ops.clone(),
            modes: settings.modes.clone(),
            measures: settings.measures.clone(),
            reference: Reference {
                label: REFERENCE_LABEL.to_string(),
                mode: NegationMode::Plain,
                auc: REFERENCE_AUC,
            },
            cells,
            diagnostics,
        }
    }

    pub fn cell(&self, op: ComposeOp, mode: NegationMode, measure: Measure) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.op == op && c.mode == mode && c.measure == measure)
    }

    pub fn failed_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.error.is_some())
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One table per measure: ops as rows, negation modes as columns.
    pub fn render_table(&self) -> String {
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        let mut out = String::new();
        for (i, &measure) in self.measures.iter().enumerate() {
            rows.clear();
            rows.push((
                REFERENCE_LABEL.to_string(),
                self.modes
                    .iter()
                    .map(|&m| {
                        if m == self.reference.mode {
                            format!("{:.2}", self.reference.auc)
                        } else {
                            "-".to_string()
                        }
                    })
                    .collect(),
            ));
            for &op in &self.ops {
                let cols = self
                    .modes
                    .iter()
                    .map(|&mode| match self.cell(op, mode, measure) {
                        Some(Cell {
                            mean_auc: Some(v),
                            marks,
                            ..
                        }) => format!("{v:.3}{marks}"),
                        _ => "n/a".to_string(),
                    })
                    .collect();
                rows.push((op.title().to_string(), cols));
            }

            let label_w = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0).max(5);
            let col_w: Vec<usize> = self
                .modes
                .iter()
                .enumerate()
                .map(|(j, m)| {
                    rows.iter()
                        .map(|(_, c)| c[j].chars().count())
                        .chain([m.title().chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));

            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "AUC, {} ({} resamples, seed {}; * beats Average, + beats noun only, alpha {} / {})",
                measure.label(),
                self.resamples,
                self.seed,
                self.alpha,
                self.n_comparisons
            );
            let mut line = pad("Model", label_w);
            for (m, w) in self.modes.iter().zip(&col_w) {
                line.push_str("  ");
                line.push_str(&pad(m.title(), *w));
            }
            let width = line.chars().count();
            out.push_str(line.trim_end());
            out.push('\n');
            out.push_str(&"-".repeat(width));
            out.push('\n');
            for (k, (label, cols)) in rows.iter().enumerate() {
                let mut line = pad(label, label_w);
                for (c, w) in cols.iter().zip(&col_w) {
                    line.push_str("  ");
                    line.push_str(&pad(c, *w));
                }
                out.push_str(line.trim_end());
                out.push('\n');
                if k == 0 {
                    out.push_str(&"-".repeat(width));
                    out.push('\n');
                }
            }
        }
        out
    }
}
