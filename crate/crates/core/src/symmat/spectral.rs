use super::eigen::EigenDecomposition;
use super::{LinalgError, SquareMatrix, SymMatrix};
use crate::scalar::Scalar;

/// `m = Σᵢ λᵢ Pᵢ` with one orthogonal projector per distinct eigenvalue.
///
/// Eigenvalues whose gap is below `eig_group_rtol · max(1, |λ|max)` are merged
/// into a single group, so degenerate spectra yield one projector per
/// eigenspace rather than an arbitrary choice of eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T> {
    eigenvalues: Vec<T>,
    multiplicities: Vec<usize>,
    /// Orthonormal eigenbasis, columns ordered group by group.
    basis: SquareMatrix<T>,
    /// Group index of each basis column.
    group_of: Vec<usize>,
}

impl<T: Scalar> SpectralDecomposition<T> {
    pub(crate) fn from_eigen(eig: EigenDecomposition<T>) -> Self {
        let n = eig.dim();
        let scale = eig
            .values
            .iter()
            .fold(T::one(), |acc, v| acc.max(v.abs()));
        let tol = T::eig_group_rtol() * scale;

        let mut eigenvalues = Vec::new();
        let mut multiplicities = Vec::new();
        let mut group_of = Vec::with_capacity(n);
        let mut sum = T::zero();
        for (k, &value) in eig.values.iter().enumerate() {
            let starts_group = k == 0 || eig.values[k - 1] - value > tol;
            if starts_group {
                if k > 0 {
                    let count = *multiplicities.last().unwrap();
                    eigenvalues.push(sum / T::from_usize(count).unwrap());
                }
                multiplicities.push(0);
                sum = T::zero();
            }
            *multiplicities.last_mut().unwrap() += 1;
            sum += value;
            group_of.push(multiplicities.len() - 1);
        }
        if let Some(&count) = multiplicities.last() {
            eigenvalues.push(sum / T::from_usize(count).unwrap());
        }

        SpectralDecomposition {
            eigenvalues,
            multiplicities,
            basis: eig.vectors,
            group_of,
        }
    }

    pub fn dim(&self) -> usize {
        self.group_of.len()
    }

    /// Distinct eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn num_groups(&self) -> usize {
        self.eigenvalues.len()
    }

    /// The orthonormal eigenbasis; column `k` belongs to group `group_of(k)`.
    pub fn basis(&self) -> &SquareMatrix<T> {
        &self.basis
    }

    pub fn group_of(&self, column: usize) -> usize {
        self.group_of[column]
    }

    /// Projector onto the eigenspace of group `g`.
    pub fn projector(&self, g: usize) -> SymMatrix<T> {
        let n = self.dim();
        let q = self.basis.as_slice();
        let mut out = vec![T::zero(); n * n];
        for k in (0..n).filter(|&k| self.group_of[k] == g) {
            for i in 0..n {
                let qik = q[i * n + k];
                for j in i..n {
                    out[i * n + j] += qik * q[j * n + k];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                out[i * n + j] = out[j * n + i];
            }
        }
        SymMatrix::from_symmetric_unchecked(n, out)
    }

    pub fn projectors(&self) -> Vec<SymMatrix<T>> {
        (0..self.num_groups()).map(|g| self.projector(g)).collect()
    }

    /// `Σᵢ λᵢ Pᵢ`.
    pub fn reconstruct(&self) -> SymMatrix<T> {
        self.sandwich(&SymMatrix::identity(self.dim()), &self.eigenvalues)
            .expect("dimensions agree by construction")
    }

    /// `Σᵢ wᵢ Pᵢ m Pᵢ` for one weight per eigenvalue group.
    ///
    /// Evaluated in the eigenbasis: conjugate `m` into it, drop the blocks
    /// coupling different groups, scale each diagonal block and rotate back.
    pub fn sandwich(&self, m: &SymMatrix<T>, weights: &[T]) -> Result<SymMatrix<T>, LinalgError> {
        let n = self.dim();
        if m.dim() != n {
            return Err(LinalgError::DimensionMismatch {
                left: n,
                right: m.dim(),
            });
        }
        assert_eq!(weights.len(), self.num_groups(), "one weight per eigenvalue group");

        let mut inner = m.change_basis(&self.basis).into_vec();
        for i in 0..n {
            for j in 0..n {
                let (gi, gj) = (self.group_of[i], self.group_of[j]);
                inner[i * n + j] = if gi == gj {
                    inner[i * n + j] * weights[gi]
                } else {
                    T::zero()
                };
            }
        }
        let inner = SymMatrix::from_symmetric_unchecked(n, inner);
        Ok(inner.change_basis(&self.basis.transpose()))
    }

    /// `Σᵢ Pᵢ m Pᵢ`: the part of `m` that is block diagonal in this eigenbasis.
    pub fn pinch(&self, m: &SymMatrix<T>) -> Result<SymMatrix<T>, LinalgError> {
        let ones = vec![T::one(); self.num_groups()];
        self.sandwich(m, &ones)
    }
}

/// Positive and negative parts of a symmetric matrix, `m = positive − negative`,
/// with orthogonal supports.
#[derive(Debug, Clone)]
pub struct JordanParts<T> {
    pub positive: SymMatrix<T>,
    pub negative: SymMatrix<T>,
}

pub(crate) fn jordan_from_eigen<T: Scalar>(eig: &EigenDecomposition<T>) -> JordanParts<T> {
    let zero = T::zero();
    JordanParts {
        positive: eig.map_spectrum(|l| if l > zero { l } else { zero }),
        negative: eig.map_spectrum(|l| if l < zero { -l } else { zero }),
    }
}
