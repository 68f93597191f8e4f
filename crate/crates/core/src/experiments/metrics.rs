use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::ExperimentError;

/// Draws per resample before a single-class dataset is declared degenerate.
pub const MAX_REDRAWS: usize = 1000;

/// Rank (Mann–Whitney) AUC; tied scores share their average rank.
pub fn auc(scored: &[(f64, bool)]) -> Result<f64, ExperimentError> {
    if scored.iter().any(|(s, _)| s.is_nan()) {
        return Err(ExperimentError::NanScore);
    }
    let n_pos = scored.iter().filter(|(_, l)| *l).count();
    let n_neg = scored.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(ExperimentError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| scored[a].0.total_cmp(&scored[b].0));
    let mut pos_rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && scored[order[j]].0 == scored[order[i]].0 {
            j += 1;
        }
        // ranks i+1 ..= j
        let rank = (i + 1 + j) as f64 / 2.0;
        let pos_in_run = order[i..j].iter().filter(|&&k| scored[k].1).count();
        pos_rank_sum += rank * pos_in_run as f64;
        i = j;
    }
    let (p, n) = (n_pos as f64, n_neg as f64);
    Ok((pos_rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}

/// `resamples` index lists, each `labels.len()` draws with replacement and
/// each containing both classes.
pub fn bootstrap_indices<R: Rng + ?Sized>(
    labels: &[bool],
    resamples: usize,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>, ExperimentError> {
    if resamples == 0 {
        return Err(ExperimentError::NoResamples);
    }
    let n = labels.len();
    if n == 0 || labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
        return Err(ExperimentError::SingleClass);
    }
    let mut out = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        let mut attempts = 0;
        loop {
            attempts += 1;
            let idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            let pos = idx.iter().filter(|&&i| labels[i]).count();
            if pos > 0 && pos < n {
                out.push(idx);
                break;
            }
            if attempts >= MAX_REDRAWS {
                return Err(ExperimentError::DegenerateBootstrap { attempts });
            }
        }
    }
    Ok(out)
}

/// AUC of each resample of `scored` given by `indices`.
pub fn resampled_auc(scored: &[(f64, bool)], indices: &[Vec<usize>]) -> Result<Vec<f64>, ExperimentError> {
    let mut buf = Vec::with_capacity(scored.len());
    indices
        .iter()
        .map(|idx| {
            buf.clear();
            buf.extend(idx.iter().map(|&i| scored[i]));
            auc(&buf)
        })
        .collect()
}

/// `resamples` bootstrap AUC values from a ChaCha8 stream seeded by `seed`.
pub fn bootstrap_auc(scored: &[(f64, bool)], resamples: usize, seed: u64) -> Result<Vec<f64>, ExperimentError> {
    let labels: Vec<bool> = scored.iter().map(|(_, l)| *l).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let indices = bootstrap_indices(&labels, resamples, &mut rng)?;
    resampled_auc(scored, &indices)
}

/// Paired t-test of `a − b` over matched bootstrap resamples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub mean_diff: f64,
    /// `±inf` when the differences are constant and nonzero, 0 when all zero.
    pub t: f64,
    pub p_two_sided: f64,
    /// p-value for "a is better than b".
    pub p_one_sided: f64,
    /// Bonferroni-corrected level `alpha / n_comparisons`.
    pub threshold: f64,
    /// Two-sided p below the threshold.
    pub significant: bool,
    /// One-sided p below the threshold with `a` ahead.
    pub better: bool,
}

pub fn compare_models(a: &[f64], b: &[f64], n_comparisons: usize, alpha: f64) -> Result<Verdict, ExperimentError> {
    if a.len() != b.len() {
        return Err(ExperimentError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let r = a.len();
    if r < 2 {
        return Err(ExperimentError::TooFewResamples(r));
    }
    let threshold = alpha / n_comparisons.max(1) as f64;
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = r as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let sd = var.sqrt();

    // Constant differences: floating point noise in the variance is not
    // evidence either way.
    let constant = sd <= 1e-12 * mean.abs().max(1.0);
    let (t, p_two, p_one) = if constant {
        if mean == 0.0 || mean.abs() <= 1e-15 {
            (0.0, 1.0, 0.5)
        } else {
            let t = mean.signum() * f64::INFINITY;
            (t, 0.0, if mean > 0.0 { 0.0 } else { 1.0 })
        }
    } else {
        let t = mean / (sd / n.sqrt());
        let dist = StudentsT::new(0.0, 1.0, n - 1.0).expect("positive degrees of freedom");
        let p_two = 2.0 * dist.sf(t.abs());
        (t, p_two.min(1.0), dist.sf(t))
    };
    Ok(Verdict {
        mean_diff: mean,
        t,
        p_two_sided: p_two,
        p_one_sided: p_one,
        threshold,
        significant: p_two < threshold,
        better: mean > 0.0 && p_one < threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn scored(t: &[f64], f: &[f64]) -> Vec<(f64, bool)> {
        t.iter().map(|&s| (s, true)).chain(f.iter().map(|&s| (s, false))).collect()
    }

    #[test]
    fn auc_examples() {
        assert_eq!(auc(&scored(&[0.9, 0.8], &[0.1, 0.2])).unwrap(), 1.0);
        assert_eq!(auc(&scored(&[0.5, 0.5], &[0.5, 0.5, 0.5])).unwrap(), 0.5);
        assert_eq!(auc(&scored(&[0.8], &[0.9])).unwrap(), 0.0);
        // one tie between classes counts half
        assert_abs_diff_eq!(auc(&scored(&[0.3, 0.7], &[0.3])).unwrap(), 0.75);
        assert!(matches!(auc(&scored(&[0.1], &[])), Err(ExperimentError::SingleClass)));
        assert!(matches!(auc(&scored(&[f64::NAN], &[0.0])), Err(ExperimentError::NanScore)));
    }

    #[test]
    fn bootstrap_is_deterministic_and_perfect_scorer_stays_perfect() {
        let data = scored(&[0.9, 0.8, 0.7, 0.95], &[0.1, 0.2, 0.3]);
        let a = bootstrap_auc(&data, 100, 7).unwrap();
        let b = bootstrap_auc(&data, 100, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        assert!(a.iter().all(|&x| x == 1.0));

        let tiny = scored(&[0.9], &[0.1]);
        assert_eq!(bootstrap_auc(&tiny, 1, 3).unwrap(), vec![1.0]);
    }

    #[test]
    fn bootstrap_rejects_single_class_and_zero_resamples() {
        let data = scored(&[0.9, 0.8], &[]);
        assert!(matches!(bootstrap_auc(&data, 10, 0), Err(ExperimentError::SingleClass)));
        let data = scored(&[0.9], &[0.1]);
        assert!(matches!(bootstrap_auc(&data, 0, 0), Err(ExperimentError::NoResamples)));
    }

    #[test]
    fn comparison_edge_cases() {
        let a = vec![0.7, 0.8, 0.75, 0.9];
        let same = compare_models(&a, &a, 1, 0.05).unwrap();
        assert_eq!(same.t, 0.0);
        assert!(!same.significant && !same.better);

        let shifted: Vec<f64> = a.iter().map(|x| x + 0.1).collect();
        let v = compare_models(&shifted, &a, 5, 0.05).unwrap();
        assert_abs_diff_eq!(v.threshold, 0.01);
        assert!(v.t.is_infinite() && v.t > 0.0);
        assert!(v.significant && v.better);
        let v = compare_models(&a, &shifted, 5, 0.05).unwrap();
        assert!(v.significant && !v.better);

        assert!(compare_models(&a, &a[..3], 1, 0.05).is_err());
        assert!(compare_models(&a[..1], &a[..1], 1, 0.05).is_err());
    }

    #[test]
    fn t_statistic_matches_hand_computation() {
        // diffs 0.1, 0.2, 0.3: mean 0.2, sd 0.1, t = 0.2 / (0.1/√3)
        let a = [1.1, 1.2, 1.3];
        let b = [1.0, 1.0, 1.0];
        let v = compare_models(&a, &b, 1, 0.05).unwrap();
        assert_abs_diff_eq!(v.t, 2.0 * 3f64.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(v.p_two_sided, 2.0 * v.p_one_sided, epsilon = 1e-12);
    }
}
