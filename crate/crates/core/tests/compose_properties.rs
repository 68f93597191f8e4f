use densent::compose::{average, bmult, bmult_switched, diag_in_basis, kmult, kmult_switched, mult};
use densent::sampling::{distinct_spectrum, operator_with_spectrum, random_operator};
use densent::{compose, ComposeOp, Operator, PositiveOperator, SymMatrix};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn to_na(m: &SymMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), m.as_slice())
}

fn dist(a: &SymMatrix, b: &SymMatrix) -> f64 {
    a.frobenius_distance(b).unwrap()
}

/// Noun with any spectrum, verb with eigenvalues at least 0.01 apart.
fn pair(dim: usize, seed: u64) -> (Operator, Operator) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noun = random_operator(&mut rng, dim);
    let spectrum = distinct_spectrum(&mut rng, dim, 0.01);
    let verb = operator_with_spectrum(&mut rng, &spectrum);
    (noun, verb)
}

fn case() -> impl Strategy<Value = (usize, u64)> {
    (2usize..=16, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn negating_the_noun((dim, seed) in case()) {
        let (n, v) = pair(dim, seed);
        let not_n = n.negate().unwrap();

        let lhs = mult(&not_n, &v).unwrap();
        let rhs = v.matrix().diag_part().sub(mult(&n, &v).unwrap().matrix()).unwrap();
        prop_assert!(dist(lhs.matrix(), &rhs) <= 1e-8);

        let lhs = bmult(&not_n, &v).unwrap();
        let rhs = v.matrix().sub(bmult(&n, &v).unwrap().matrix()).unwrap();
        prop_assert!(dist(lhs.matrix(), &rhs) <= 1e-8);

        let lhs = kmult(&not_n, &v).unwrap();
        let rhs = v.matrix().sub(kmult(&n, &v).unwrap().matrix()).unwrap();
        prop_assert!(dist(lhs.matrix(), &rhs) <= 1e-8);
    }

    #[test]
    fn negating_the_verb((dim, seed) in case()) {
        let (n, v) = pair(dim, seed);
        let not_v = v.negate().unwrap();

        let lhs = mult(&n, &not_v).unwrap();
        let rhs = n.matrix().diag_part().sub(mult(&n, &v).unwrap().matrix()).unwrap();
        prop_assert!(dist(lhs.matrix(), &rhs) <= 1e-8);

        let lhs = kmult(&n, &not_v).unwrap();
        let pinched = diag_in_basis(n.matrix(), v.matrix()).unwrap();
        let rhs = pinched.sub(kmult(&n, &v).unwrap().matrix()).unwrap();
        prop_assert!(dist(lhs.matrix(), &rhs) <= 1e-8);
    }

    #[test]
    fn bmult_spectrum_is_that_of_the_product((dim, seed) in case()) {
        let (n, v) = pair(dim, seed);
        let ours = bmult(&n, &v).unwrap().matrix().eigenvalues().unwrap();
        let product = to_na(n.matrix()) * to_na(v.matrix());
        let mut theirs: Vec<f64> = product.complex_eigenvalues().iter().map(|z| {
            assert!(z.im.abs() < 1e-7, "product of PSD matrices has real spectrum");
            z.re
        }).collect();
        theirs.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in ours.iter().zip(&theirs) {
            prop_assert!((a - b).abs() <= 1e-7, "{a} vs {b}");
        }
    }

    #[test]
    fn every_op_stays_in_the_unit_cone((dim, seed) in case()) {
        let (n, v) = pair(dim, seed);
        for op in ComposeOp::ALL {
            let s = compose(op, &n, &v).unwrap();
            let (min, max) = s.matrix().extreme_eigenvalues().unwrap();
            prop_assert!(max <= 1.0 + 1e-8, "{op}: max {max}");
            prop_assert!(min >= -1e-9, "{op}: min {min}");
        }
    }

    #[test]
    fn kmult_is_pointwise_in_the_verb_eigenbasis((dim, seed) in case()) {
        let (n, v) = pair(dim, seed);
        // Eigenbasis from an independent solver.
        let se = to_na(v.matrix()).symmetric_eigen();
        let q = &se.eigenvectors;
        let k = q.transpose() * to_na(kmult(&n, &v).unwrap().matrix()) * q;
        let a = q.transpose() * to_na(n.matrix()) * q;
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i == j { se.eigenvalues[i] * a[(i, i)] } else { 0.0 };
                prop_assert!((k[(i, j)] - expected).abs() <= 1e-8, "({i},{j}): {} vs {expected}", k[(i, j)]);
            }
        }
    }

    #[test]
    fn mult_commutes_and_switched_ops_swap((dim, seed) in case()) {
        let (n, v) = pair(dim, seed);
        prop_assert_eq!(mult(&n, &v).unwrap().matrix().clone(), mult(&v, &n).unwrap().matrix().clone());
        prop_assert_eq!(bmult_switched(&n, &v).unwrap().matrix().clone(), bmult(&v, &n).unwrap().matrix().clone());
        prop_assert_eq!(kmult_switched(&n, &v).unwrap().matrix().clone(), kmult(&v, &n).unwrap().matrix().clone());
        prop_assert_eq!(average(&n, &v).unwrap().matrix().clone(), average(&v, &n).unwrap().matrix().clone());
    }
}

fn op(rows: &[Vec<f64>]) -> Operator {
    PositiveOperator::new(SymMatrix::from_rows(rows).unwrap()).unwrap()
}

#[test]
fn bmult_and_kmult_are_not_associative() {
    let a = op(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
    let b = op(&[vec![0.5, 0.5], vec![0.5, 0.5]]);
    let c = op(&[vec![0.8, 0.1], vec![0.1, 0.3]]);
    let left = bmult(&bmult(&a, &b).unwrap(), &c).unwrap();
    let right = bmult(&a, &bmult(&b, &c).unwrap()).unwrap();
    assert!(dist(left.matrix(), right.matrix()) > 1e-3);
    let left = kmult(&kmult(&a, &b).unwrap(), &c).unwrap();
    let right = kmult(&a, &kmult(&b, &c).unwrap()).unwrap();
    assert!(dist(left.matrix(), right.matrix()) > 1e-3);
}

#[test]
fn bmult_and_kmult_are_not_commutative() {
    let a = op(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
    let b = op(&[vec![0.5, 0.5], vec![0.5, 0.5]]);
    // bmult(a, b) = b^½ a b^½ = b a b = 0.5 b; bmult(b, a) = a b a = 0.5 a
    assert!(dist(bmult(&a, &b).unwrap().matrix(), &b.matrix().scale(0.5)) < 1e-12);
    assert!(dist(bmult(&b, &a).unwrap().matrix(), &a.matrix().scale(0.5)) < 1e-12);
    assert!(dist(kmult(&a, &b).unwrap().matrix(), kmult(&b, &a).unwrap().matrix()) > 0.1);
}

#[test]
fn f32_operators_satisfy_the_noun_identity() {
    let (n, v) = pair(6, 11);
    let (n, v): (densent::OperatorF32, densent::OperatorF32) = (n.cast(), v.cast());
    let lhs = bmult(&n.negate().unwrap(), &v).unwrap();
    let rhs = v.matrix().sub(bmult(&n, &v).unwrap().matrix()).unwrap();
    assert!(lhs.matrix().frobenius_distance(&rhs).unwrap() < 1e-4);
}
