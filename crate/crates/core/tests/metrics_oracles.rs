use densent::experiments::{auc, bootstrap_auc, compare_models};
use proptest::prelude::*;

/// Fraction of (T, F) pairs ranked correctly, ties counting half.
fn pairwise_auc(scored: &[(f64, bool)]) -> f64 {
    let (mut wins, mut total) = (0.0, 0.0);
    for &(t, lt) in scored {
        if !lt {
            continue;
        }
        for &(f, lf) in scored {
            if lf {
                continue;
            }
            total += 1.0;
            wins += if t > f {
                1.0
            } else if t == f {
                0.5
            } else {
                0.0
            };
        }
    }
    wins / total
}

fn labelled() -> impl Strategy<Value = Vec<(f64, bool)>> {
    // Scores on a coarse grid so ties are common.
    prop::collection::vec(((0u8..8).prop_map(|x| x as f64 / 8.0), any::<bool>()), 2..40)
        .prop_filter("both classes", |v| v.iter().any(|x| x.1) && v.iter().any(|x| !x.1))
}

proptest! {
    #[test]
    fn rank_auc_equals_pair_counting(scored in labelled()) {
        prop_assert!((auc(&scored).unwrap() - pairwise_auc(&scored)).abs() < 1e-12);
    }

    #[test]
    fn swapping_labels_and_negating_scores_keeps_auc(scored in labelled()) {
        let flipped: Vec<(f64, bool)> = scored.iter().map(|&(s, l)| (-s, !l)).collect();
        prop_assert!((auc(&scored).unwrap() - auc(&flipped).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn bootstrap_values_are_aucs(scored in labelled(), seed in any::<u64>()) {
        let boot = bootstrap_auc(&scored, 20, seed).unwrap();
        prop_assert_eq!(boot.len(), 20);
        prop_assert!(boot.iter().all(|x| (0.0..=1.0).contains(x)));
        prop_assert_eq!(boot, bootstrap_auc(&scored, 20, seed).unwrap());
    }
}

#[test]
fn matches_reference_implementations() {
    // sklearn.metrics.roc_auc_score on the same data gives 0.75.
    let labels = [true, true, false, true, false, false, true];
    let scores = [0.3, 0.7, 0.3, 0.9, 0.1, 0.7, 0.5];
    let scored: Vec<(f64, bool)> = scores.iter().copied().zip(labels).collect();
    assert!((auc(&scored).unwrap() - 0.75).abs() < 1e-12);

    // scipy.stats.ttest_rel(a, b): statistic 3.24037034920393,
    // p = 0.014245753043853029; alternative="greater": 0.007122876521926514.
    let a = [0.81, 0.84, 0.79, 0.88, 0.86, 0.83, 0.80, 0.85];
    let b = [0.80, 0.82, 0.80, 0.85, 0.83, 0.82, 0.79, 0.83];
    let v = compare_models(&a, &b, 1, 0.05).unwrap();
    assert!((v.t - 3.24037034920393).abs() < 1e-9);
    assert!((v.p_two_sided - 0.014245753043853029).abs() < 1e-9);
    assert!((v.p_one_sided - 0.007122876521926514).abs() < 1e-9);
    assert!(v.significant && v.better);
    // With five comparisons the threshold is 0.01: two-sided fails, one-sided holds.
    let v = compare_models(&a, &b, 5, 0.05).unwrap();
    assert!(!v.significant && v.better);
}
