use densent::hyponymy::{crisp_entails, k_ba, k_e, k_expansion};
use densent::sampling::{ordered_pair, random_operator};
use densent::{Operator, PositiveOperator, SymMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn case() -> impl Strategy<Value = (usize, u64)> {
    (2usize..=16, any::<u64>())
}

fn diag(d: &[f64]) -> Operator {
    PositiveOperator::new(SymMatrix::from_diagonal(d)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn negation_is_an_exact_involution_inside_the_cone((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_operator(&mut rng, dim);
        let not_a = a.negate().unwrap();
        let back = not_a.negate().unwrap();
        prop_assert_eq!(back.matrix().as_slice(), a.matrix().as_slice());
        let (min, max) = not_a.matrix().extreme_eigenvalues().unwrap();
        prop_assert!(min >= -1e-9 && max <= 1.0 + 1e-8, "spectrum [{min}, {max}]");
    }

    #[test]
    fn negation_reverses_crisp_order((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = ordered_pair(&mut rng, dim);
        prop_assert!(crisp_entails(&a, &b).unwrap());
        prop_assert!(crisp_entails(&b.negate().unwrap(), &a.negate().unwrap()).unwrap());
    }

    #[test]
    fn negation_preserves_k_ba((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_operator(&mut rng, dim);
        let b = random_operator(&mut rng, dim);
        let direct = k_ba(&a, &b).unwrap().value;
        let reversed = k_ba(&b.negate().unwrap(), &a.negate().unwrap()).unwrap().value;
        prop_assert!((direct - reversed).abs() <= 1e-9, "{direct} vs {reversed}");
        // antisymmetry
        prop_assert!((k_ba(&b, &a).unwrap().value + direct).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graded_scores_stay_in_range((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_operator(&mut rng, dim);
        let b = random_operator(&mut rng, dim);
        let kba = k_ba(&a, &b).unwrap().value;
        let ke = k_e(&a, &b).unwrap().value;
        let kx = k_expansion(&a, &b).unwrap().value;
        prop_assert!((-1.0..=1.0).contains(&kba));
        prop_assert!((0.0..=1.0).contains(&ke));
        prop_assert!((0.0..=1.0).contains(&kx));
        // B − kA is PSD at the reported k
        prop_assert!(b.matrix().sub(&a.matrix().scale(kx)).unwrap().is_psd(1e-9).unwrap());
    }

    #[test]
    fn crisp_pairs_score_one_under_every_measure((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = ordered_pair(&mut rng, dim);
        prop_assert!((k_ba(&a, &b).unwrap().value - 1.0).abs() <= 1e-9);
        prop_assert!((k_e(&a, &b).unwrap().value - 1.0).abs() <= 1e-9);
        prop_assert_eq!(k_expansion(&a, &b).unwrap().value, 1.0);
    }
}

#[test]
fn boundary_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let dim = rng.random_range(2..=10);
        let a = random_operator(&mut rng, dim);
        let zero = PositiveOperator::zero(dim);
        assert!((k_ba(&a, &zero).unwrap().value + 1.0).abs() <= 1e-9);
        assert!(k_e(&a, &zero).unwrap().value.abs() <= 1e-9);
    }
    // E = A when the supports are orthogonal
    assert!(k_e(&diag(&[0.6, 0.0]), &diag(&[0.0, 0.4])).unwrap().value.abs() <= 1e-12);
    assert!((k_e(&diag(&[0.4, 0.2]), &diag(&[0.4, 0.1])).unwrap().value - (1.0 - 0.1 / 0.6)).abs() < 1e-12);
    assert!((k_expansion(&diag(&[1.0, 0.0]), &diag(&[0.5, 0.5])).unwrap().value - 0.5).abs() < 1e-6);
}

#[test]
fn k_e_grading_is_not_preserved_by_negation() {
    // The error term keeps its trace under negation, but the normalizer
    // changes from Tr(A) to Tr(I − B).
    let a = diag(&[0.6, 0.2]);
    let b = diag(&[0.3, 0.5]);
    let (na, nb) = (a.negate().unwrap(), b.negate().unwrap());
    let e_direct = b.matrix().sub(a.matrix()).unwrap().jordan().unwrap().negative.trace();
    let e_negated = na.matrix().sub(nb.matrix()).unwrap().jordan().unwrap().negative.trace();
    assert!((e_direct - e_negated).abs() < 1e-12);
    let direct = k_e(&a, &b).unwrap().value;
    let negated = k_e(&nb, &na).unwrap().value;
    assert!((direct - 0.625).abs() < 1e-12);
    assert!((negated - 0.75).abs() < 1e-12);
}
