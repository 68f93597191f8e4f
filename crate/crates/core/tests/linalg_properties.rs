use densent::sampling::{random_psd, random_symmetric};
use densent::SymMatrix;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn to_na(m: &SymMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), m.as_slice())
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn frob(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn case() -> impl Strategy<Value = (usize, u64)> {
    (2usize..=16, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jordan_parts_recombine_with_orthogonal_supports((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_symmetric(&mut rng, dim);
        let parts = m.jordan().unwrap();
        let back = parts.positive.sub(&parts.negative).unwrap();
        prop_assert!(back.frobenius_distance(&m).unwrap() <= 1e-9 * dim as f64);
        let de = to_na(&parts.positive) * to_na(&parts.negative);
        prop_assert!(frob(&de) <= 1e-8);
        prop_assert!(parts.positive.is_psd(1e-12).unwrap());
        prop_assert!(parts.negative.is_psd(1e-12).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn eigenvalues_match_nalgebra((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_symmetric(&mut rng, dim);
        let ours = m.eigenvalues().unwrap();
        let theirs = sorted_desc(to_na(&m).symmetric_eigenvalues().iter().copied().collect());
        for (a, b) in ours.iter().zip(&theirs) {
            prop_assert!((a - b).abs() <= 1e-8 * dim as f64, "{a} vs {b}");
        }
    }

    #[test]
    fn spectral_decomposition_invariants((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_symmetric(&mut rng, dim);
        let eig = m.eig().unwrap();
        prop_assert!(eig.reconstruct().frobenius_distance(&m).unwrap() <= 1e-8 * dim as f64);
        let ps: Vec<DMatrix<f64>> = eig.projectors().iter().map(to_na).collect();
        let mut sum = DMatrix::zeros(dim, dim);
        for (i, p) in ps.iter().enumerate() {
            prop_assert!(frob(&(p * p - p)) <= 1e-9);
            for q in &ps[i + 1..] {
                prop_assert!(frob(&(p * q)) <= 1e-9);
            }
            sum += p;
        }
        prop_assert!(frob(&(sum - DMatrix::identity(dim, dim))) <= 1e-9);
        prop_assert_eq!(eig.multiplicities().iter().sum::<usize>(), dim);
        prop_assert!(eig.eigenvalues().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn sqrt_squares_back((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rank = 1 + (seed as usize % dim);
        let m = random_psd(&mut rng, dim, rank);
        let r = m.sqrt_psd().unwrap();
        prop_assert!(r.is_psd(1e-12).unwrap());
        let sq = to_na(&r) * to_na(&r);
        prop_assert!(frob(&(sq - to_na(&m))) <= 1e-7 * dim as f64);
    }

    #[test]
    fn schur_product_of_psd_is_psd((dim, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_psd(&mut rng, dim, 1 + seed as usize % dim);
        let b = random_psd(&mut rng, dim, 1 + (seed >> 8) as usize % dim);
        prop_assert!(a.hadamard(&b).unwrap().is_psd(1e-9).unwrap());
    }
}

#[test]
fn degenerate_spectra_group() {
    let m = SymMatrix::from_diagonal(&[0.3, 0.7, 0.3, 0.7 + 1e-12, 0.1]);
    let eig = m.eig().unwrap();
    assert_eq!(eig.multiplicities(), &[2, 2, 1]);
    assert!((eig.eigenvalues()[0] - 0.7).abs() < 1e-11);
}

#[test]
fn symmetry_is_exact_after_construction() {
    let m = SymMatrix::from_row_major(2, vec![1.0, 0.3, 0.1, 2.0]).unwrap();
    assert_eq!(m.get(0, 1), m.get(1, 0));
    assert!((m.get(0, 1) - 0.2).abs() < 1e-15);
}
