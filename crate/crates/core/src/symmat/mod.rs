//! Dense symmetric matrices and the spectral toolkit built on them.
//!
//! Every [`SymMatrix`] is exactly symmetric: constructors average `(M + Mᵀ)/2`
//! and every binary operation re-symmetrizes its output.

mod eigen;
mod spectral;

use thiserror::Error;

use crate::scalar::Scalar;

pub use eigen::EigenDecomposition;
pub use spectral::{JordanParts, SpectralDecomposition};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    BadLength { dim: usize, expected: usize, got: usize },
    #[error("matrix dimension must be at least 1")]
    Empty,
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error(
        "eigensolver did not converge after {iterations} QL iterations \
         ({dim}x{dim} matrix, Frobenius norm {frobenius_norm:e})"
    )]
    NotConverged {
        dim: usize,
        iterations: usize,
        frobenius_norm: f64,
    },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
}

/// Dense symmetric `dim × dim` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

/// Dense square matrix with no symmetry guarantee (products, eigenbases).
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

fn check_dims(left: usize, right: usize) -> Result<(), LinalgError> {
    if left == right {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { left, right })
    }
}

fn multiply<T: Scalar>(n: usize, a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == T::zero() {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            for (o, &bkj) in row.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    out
}

impl<T: Scalar> SymMatrix<T> {
    /// Builds from row-major entries, replacing `M` by `(M + Mᵀ)/2`.
    pub fn from_row_major(dim: usize, mut data: Vec<T>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != dim * dim {
            return Err(LinalgError::BadLength {
                dim,
                expected: dim * dim,
                got: data.len(),
            });
        }
        for (idx, x) in data.iter().enumerate() {
            if !x.is_finite() {
                return Err(LinalgError::NonFinite {
                    row: idx / dim,
                    col: idx % dim,
                });
            }
        }
        let half = T::lit(0.5);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let (a, b) = (data[i * dim + j], data[j * dim + i]);
                let avg = if a == b { a } else { (a + b) * half };
                data[i * dim + j] = avg;
                data[j * dim + i] = avg;
            }
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(dim, data)
    }

    /// Caller guarantees `data` is exactly symmetric and finite.
    pub(crate) fn from_symmetric_unchecked(dim: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        SymMatrix { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be at least 1");
        SymMatrix {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = T::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    /// The rank-one matrix `v vᵀ`.
    pub fn outer(v: &[T]) -> Self {
        let mut m = Self::zeros(v.len());
        m.add_outer(T::one(), v);
        m
    }

    /// `self += w · v vᵀ`.
    pub(crate) fn add_outer(&mut self, w: T, v: &[T]) {
        let n = self.dim;
        debug_assert_eq!(v.len(), n);
        for i in 0..n {
            let wi = w * v[i];
            for j in i..n {
                self.data[i * n + j] += wi * v[j];
            }
        }
        for i in 0..n {
            for j in 0..i {
                self.data[i * n + j] = self.data[j * n + i];
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// The matrix with every off-diagonal entry zeroed.
    pub fn diag_part(&self) -> Self {
        Self::from_diagonal(&self.diagonal())
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> Result<T, LinalgError> {
        check_dims(self.dim, other.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<T>()
            .sqrt())
    }

    pub fn scale(&self, s: T) -> Self {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self, LinalgError> {
        check_dims(self.dim, other.dim)?;
        Ok(SymMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Entrywise (Schur) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a * b)
    }

    /// `𝕀 − self`.
    pub fn identity_minus(&self) -> Self {
        let n = self.dim;
        let mut data: Vec<T> = self.data.iter().map(|&x| -x).collect();
        for i in 0..n {
            data[i * n + i] = T::one() - self.data[i * n + i];
        }
        SymMatrix { dim: n, data }
    }

    pub fn matmul(&self, other: &Self) -> Result<SquareMatrix<T>, LinalgError> {
        check_dims(self.dim, other.dim)?;
        Ok(SquareMatrix {
            dim: self.dim,
            data: multiply(self.dim, &self.data, &other.data),
        })
    }

    /// `a · self · a`, re-symmetrized, for symmetric `a`.
    pub fn sandwiched_by(&self, a: &Self) -> Result<Self, LinalgError> {
        check_dims(self.dim, a.dim)?;
        let left = multiply(self.dim, &a.data, &self.data);
        let full = multiply(self.dim, &left, &a.data);
        Ok(SquareMatrix {
            dim: self.dim,
            data: full,
        }
        .symmetrized())
    }

    /// `Qᵀ · self · Q`: the matrix expressed in the basis given by the columns
    /// of `q`.
    pub fn change_basis(&self, q: &SquareMatrix<T>) -> Self {
        assert_eq!(self.dim, q.dim, "basis dimension");
        let n = self.dim;
        let mq = multiply(n, &self.data, &q.data);
        let qt = q.transpose();
        SquareMatrix {
            dim: n,
            data: multiply(n, &qt.data, &mq),
        }
        .symmetrized()
    }

    /// Eigenvalues (descending) with orthonormal eigenvectors.
    pub fn eigen(&self) -> Result<EigenDecomposition<T>, LinalgError> {
        eigen::decompose(self)
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>, LinalgError> {
        Ok(self.eigen()?.values)
    }

    /// Spectral decomposition with degenerate eigenvalues grouped.
    pub fn eig(&self) -> Result<SpectralDecomposition<T>, LinalgError> {
        Ok(SpectralDecomposition::from_eigen(self.eigen()?))
    }

    /// `(λmin, λmax)`.
    pub fn extreme_eigenvalues(&self) -> Result<(T, T), LinalgError> {
        let values = self.eigenvalues()?;
        Ok((values[values.len() - 1], values[0]))
    }

    /// True when the smallest eigenvalue is at least `-tol`.
    pub fn is_psd(&self, tol: T) -> Result<bool, LinalgError> {
        let (min, _) = self.extreme_eigenvalues()?;
        Ok(min >= -tol)
    }

    /// Principal square root of a positive semidefinite matrix.
    ///
    /// Eigenvalues in `[-psd_reject, 0)`, and positive ones at rounding level,
    /// are clamped to zero; anything more negative is an error.
    pub fn sqrt_psd(&self) -> Result<Self, LinalgError> {
        let eig = self.eigen()?;
        let min = eig.values[eig.dim() - 1];
        if min < -T::psd_reject() {
            return Err(LinalgError::NotPositive {
                min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
            });
        }
        // Eigenvalues at rounding level would otherwise turn into
        // square-root-sized noise.
        let floor = T::epsilon() * T::lit(eig.dim() as f64) * eig.values[0].abs();
        Ok(eig.map_spectrum(|l| if l > floor { l.sqrt() } else { T::zero() }))
    }

    /// Minimal decomposition `self = positive − negative` into PSD parts with
    /// orthogonal supports.
    pub fn jordan(&self) -> Result<JordanParts<T>, LinalgError> {
        Ok(spectral::jordan_from_eigen(&self.eigen()?))
    }

    pub fn cast<U: Scalar>(&self) -> SymMatrix<U> {
        SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|x| U::from_f64(x.to_f64().unwrap()).unwrap())
                .collect(),
        }
    }
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn from_row_major(dim: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != dim * dim {
            return Err(LinalgError::BadLength {
                dim,
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(SquareMatrix { dim, data })
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<T>) -> Self {
        SquareMatrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![T::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = T::one();
        }
        SquareMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn column(&self, col: usize) -> Vec<T> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        SquareMatrix { dim: n, data }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dims(self.dim, other.dim)?;
        Ok(SquareMatrix {
            dim: self.dim,
            data: multiply(self.dim, &self.data, &other.data),
        })
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// `(M + Mᵀ)/2`.
    pub fn symmetrized(&self) -> SymMatrix<T> {
        let n = self.dim;
        let half = T::lit(0.5);
        let mut data = self.data.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = (self.data[i * n + j] + self.data[j * n + i]) * half;
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        SymMatrix { dim: n, data }
    }
}

impl<T: Scalar> From<SymMatrix<T>> for SquareMatrix<T> {
    fn from(m: SymMatrix<T>) -> Self {
        SquareMatrix {
            dim: m.dim,
            data: m.data,
        }
    }
}

pub fn eig<T: Scalar>(m: &SymMatrix<T>) -> Result<SpectralDecomposition<T>, LinalgError> {
    m.eig()
}

pub fn sqrt_psd<T: Scalar>(m: &SymMatrix<T>) -> Result<SymMatrix<T>, LinalgError> {
    m.sqrt_psd()
}

pub fn jordan<T: Scalar>(m: &SymMatrix<T>) -> Result<JordanParts<T>, LinalgError> {
    m.jordan()
}

pub fn hadamard<T: Scalar>(a: &SymMatrix<T>, b: &SymMatrix<T>) -> Result<SymMatrix<T>, LinalgError> {
    a.hadamard(b)
}

pub fn matmul<T: Scalar>(a: &SymMatrix<T>, b: &SymMatrix<T>) -> Result<SquareMatrix<T>, LinalgError> {
    a.matmul(b)
}

pub fn trace<T: Scalar>(m: &SymMatrix<T>) -> T {
    m.trace()
}

pub fn frobenius_norm<T: Scalar>(m: &SymMatrix<T>) -> T {
    m.frobenius_norm()
}
