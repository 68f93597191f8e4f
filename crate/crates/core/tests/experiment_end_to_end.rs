use std::time::Instant;

use densent::experiments::{
    auc, evaluate, generate_datasets, run_experiment, score_pair, sentence_operator, EvalSettings,
    ExperimentConfig, NegationMode,
};
use densent::hyponymy::k_ba;
use densent::{fixture, ComposeOp, Measure, SymMatrix};
use nalgebra::DMatrix;

fn min_eigenvalue(m: &SymMatrix) -> f64 {
    let na = DMatrix::from_row_slice(m.dim(), m.dim(), m.as_slice());
    na.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

fn config() -> ExperimentConfig {
    ExperimentConfig::from_toml_str(fixture::EVAL_CONFIG, &fixture::dir()).unwrap()
}

#[test]
fn fixture_separates_perfectly_under_k_ba() {
    let store = fixture::store();
    assert_eq!(store.len(), 16);
    let datasets = generate_datasets(&fixture::base_pairs());
    for mode in [NegationMode::Plain, NegationMode::NegBoth] {
        for op in ComposeOp::ALL {
            let mut scored = Vec::new();
            for pair in &datasets[&mode] {
                let (nn, nv) = (mode.negates_noun(), mode.negates_verb());
                let a = sentence_operator(&store, &pair.premise_noun, &pair.premise_verb, op, nn, nv).unwrap();
                let b = sentence_operator(&store, &pair.hypothesis_noun, &pair.hypothesis_verb, op, nn, nv).unwrap();
                let gap = min_eigenvalue(&b.matrix().sub(a.matrix()).unwrap());
                // T: premise below hypothesis; F: strictly not.
                assert_eq!(gap >= -1e-9, pair.label, "{op} {mode}: {}", pair.premise_text());
                let s = score_pair(pair, &store, op, Measure::KBA).unwrap();
                scored.push((s.value, pair.label));
            }
            assert_eq!(auc(&scored).unwrap(), 1.0, "{op} {mode}");
        }
    }
}

#[test]
fn grid_shape_and_bootstrap_lengths() {
    let report = run_experiment(&config()).unwrap();
    assert_eq!(report.cells.len(), 4 * 8 * 2);
    assert_eq!(report.reference.auc, 0.84);
    for cell in &report.cells {
        if cell.error.is_none() {
            assert_eq!(cell.bootstrap.len(), 100);
            let m = cell.mean_auc.unwrap();
            assert!((0.0..=1.0).contains(&m));
        }
        assert_eq!(cell.n_pairs, 16);
    }
    for mode in [NegationMode::Plain, NegationMode::NegBoth] {
        for op in ComposeOp::ALL {
            let c = report.cell(op, mode, Measure::KBA).unwrap();
            assert_eq!(c.mean_auc, Some(1.0));
            assert!(c.bootstrap.iter().all(|&x| x == 1.0));
        }
    }
    let table = report.render_table();
    assert!(table.contains("KS2016 best"));
    assert!(table.contains("¬noun-¬verb"));
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let first = run_experiment(&config()).unwrap().to_json();
    let second = run_experiment(&config()).unwrap().to_json();
    assert_eq!(first, second);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let single = pool.install(|| run_experiment(&config()).unwrap().to_json());
    assert_eq!(first, single);

    let mut other = config();
    other.seed += 1;
    assert_ne!(first, run_experiment(&other).unwrap().to_json());
}

#[test]
fn word_level_duality_holds_on_every_base_pair() {
    let store = fixture::store();
    for b in fixture::base_pairs() {
        for (hypo, hyper) in [(&b.hypo_noun, &b.hyper_noun), (&b.hypo_verb, &b.hyper_verb)] {
            let a = store.get(hypo).unwrap();
            let h = store.get(hyper).unwrap();
            let direct = k_ba(a, h).unwrap().value;
            let dual = k_ba(&h.negate().unwrap(), &a.negate().unwrap()).unwrap().value;
            assert!((direct - dual).abs() < 1e-9);
        }
    }
}

#[test]
fn k_ba_mirror_records_score_opposite() {
    let store = fixture::store();
    let datasets = generate_datasets(&fixture::base_pairs());
    for (mode, records) in &datasets {
        for op in ComposeOp::ALL {
            for chunk in records.chunks(2) {
                let t = score_pair(&chunk[0], &store, op, Measure::KBA).unwrap();
                let f = score_pair(&chunk[1], &store, op, Measure::KBA).unwrap();
                if !t.degenerate {
                    assert!((t.value + f.value).abs() < 1e-9, "{op} {mode}");
                }
            }
        }
    }
}

#[test]
fn noun_only_ignores_verbs() {
    let store = fixture::store();
    let a = sentence_operator(&store, "dog", "run", ComposeOp::NounOnly, false, false).unwrap();
    let b = sentence_operator(&store, "dog", "fly", ComposeOp::NounOnly, false, false).unwrap();
    assert_eq!(a.matrix(), b.matrix());
}

#[test]
fn legacy_dataset_runs_like_the_base_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let mut legacy = String::new();
    for b in fixture::base_pairs() {
        legacy.push_str(&format!("{} {},{} {},T\n", b.hypo_noun, b.hypo_verb, b.hyper_noun, b.hyper_verb));
        legacy.push_str(&format!("{} {},{} {},F\n", b.hyper_noun, b.hyper_verb, b.hypo_noun, b.hypo_verb));
    }
    let path = dir.path().join("legacy.csv");
    std::fs::write(&path, legacy).unwrap();
    let mut cfg = config();
    cfg.dataset = path;
    cfg.dataset_format = densent::experiments::DatasetFormat::Legacy;
    let from_legacy = run_experiment(&cfg).unwrap();
    let from_base = run_experiment(&config()).unwrap();
    assert_eq!(from_legacy.to_json(), from_base.to_json());
}

#[test]
fn perfect_scorer_bootstrap_and_runtime() {
    let store = fixture::store();
    let datasets = generate_datasets(&fixture::base_pairs());
    let start = Instant::now();
    let report = evaluate(&store, &datasets, &EvalSettings::default()).unwrap();
    assert!(start.elapsed().as_secs_f64() < 10.0);
    let c = report.cell(ComposeOp::Mult, NegationMode::Plain, Measure::KBA).unwrap();
    assert_eq!(c.bootstrap, vec![1.0; 100]);
}
