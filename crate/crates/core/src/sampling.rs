//! Random matrices and operators for property checks and synthetic data.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::operators::PositiveOperator;
use crate::{Operator, SquareMatrix, SymMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Symmetric matrix with independent standard normal entries on and above
/// the diagonal.
pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> SymMatrix {
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let x = gaussian(rng);
            data[i * dim + j] = x;
            data[j * dim + i] = x;
        }
    }
    SymMatrix::from_row_major(dim, data).expect("finite square data")
}

/// Orthogonal matrix from Gram–Schmidt (applied twice) on Gaussian columns.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> SquareMatrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let dot: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(a, b)| *a -= dot * b);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    let mut data = vec![0.0; dim * dim];
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            data[i * dim + j] = x;
        }
    }
    SquareMatrix::from_row_major(dim, data).expect("square data")
}

/// `Q diag(spectrum) Qᵀ` for a random orthogonal `Q`.
pub fn with_spectrum<R: Rng + ?Sized>(rng: &mut R, spectrum: &[f64]) -> SymMatrix {
    let q = random_orthogonal(rng, spectrum.len());
    SymMatrix::from_diagonal(spectrum).change_basis(&q.transpose())
}

/// Spectrum in `[0, 1]` whose sorted values are at least `min_gap` apart.
pub fn distinct_spectrum<R: Rng + ?Sized>(rng: &mut R, dim: usize, min_gap: f64) -> Vec<f64> {
    assert!(min_gap * (dim as f64) < 1.0, "gap too large for dimension");
    let slack = 1.0 - min_gap * (dim.saturating_sub(1)) as f64;
    let mut cuts: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() * slack).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.iter().enumerate().map(|(i, c)| c + min_gap * i as f64).collect()
}

/// Valid operator with eigenvalues drawn uniformly from `[0, 1]`.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let spectrum: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    operator_with_spectrum(rng, &spectrum)
}

/// Valid operator with the given eigenvalues (each in `[0, 1]`).
pub fn operator_with_spectrum<R: Rng + ?Sized>(rng: &mut R, spectrum: &[f64]) -> Operator {
    let m = with_spectrum(rng, spectrum);
    PositiveOperator::trusted(clamp_into_cpe(m))
}

/// Rank-`rank` orthogonal projector onto a random subspace.
pub fn random_projector<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Operator {
    let mut spectrum = vec![0.0; dim];
    spectrum[..rank].iter_mut().for_each(|x| *x = 1.0);
    operator_with_spectrum(rng, &spectrum)
}

/// Random PSD matrix of rank `rank` with entries of order one (not normalized).
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> SymMatrix {
    let mut m = SymMatrix::zeros(dim);
    for _ in 0..rank {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        m.add_outer(1.0 / dim as f64, &v);
    }
    m
}

/// Crisply ordered pair `A ⊑ B`: `B = A + D` for random PSD `A`, `D`, both
/// rescaled by the same factor so that `B` has spectrum in `[0, 1]`.
pub fn ordered_pair<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> (Operator, Operator) {
    let rank_a = rng.random_range(1..=dim);
    let rank_d = rng.random_range(1..=dim);
    let a = random_psd(rng, dim, rank_a);
    let d = random_psd(rng, dim, rank_d);
    let b = a.add(&d).expect("same dimension");
    let (_, max) = b.extreme_eigenvalues().expect("eigensolver converges");
    let s = rng.random_range(0.5..1.0) / max;
    (
        PositiveOperator::trusted(a.scale(s)),
        PositiveOperator::trusted(b.scale(s)),
    )
}

/// Removes floating point spill outside `[0, 1]` introduced by the rotation.
fn clamp_into_cpe(m: SymMatrix) -> SymMatrix {
    let eig = m.eigen().expect("eigensolver converges");
    if eig.values[0] <= 1.0 && eig.values[eig.dim() - 1] >= 0.0 {
        return m;
    }
    eig.map_spectrum(|l| l.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orthogonal_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_orthogonal(&mut rng, 7);
        let qtq = q.transpose().matmul(&q).unwrap();
        let id = SquareMatrix::identity(7);
        let err: f64 = qtq.as_slice().iter().zip(id.as_slice()).map(|(a, b)| (a - b).abs()).sum();
        assert!(err < 1e-12);
    }

    #[test]
    fn generated_operators_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for dim in 2..8 {
            let op = random_operator(&mut rng, dim);
            assert!(op.validity().unwrap().valid);
            let (a, b) = ordered_pair(&mut rng, dim);
            assert!(a.validity().unwrap().valid && b.validity().unwrap().valid);
            let spectrum = distinct_spectrum(&mut rng, dim, 0.01);
            assert!(spectrum.windows(2).all(|w| w[1] - w[0] >= 0.01 - 1e-15));
            assert!(spectrum.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
    }
}
