//! Word and sentence meanings as positive operators with spectrum in `[0, 1]`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::symmat::{LinalgError, SymMatrix};

/// Instance vectors further than this from unit norm are rejected.
const UNIT_NORM_SLACK: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("cannot build an operator from an empty instance list")]
    EmptyConcept,
    #[error("instance {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("{weights} weights supplied for {instances} instances")]
    WeightCount { instances: usize, weights: usize },
    #[error("weight {index} is negative or not finite")]
    BadWeight { index: usize },
    #[error("instance {index} has norm {norm}, not a unit vector")]
    NotUnit { index: usize, norm: f64 },
    #[error("max eigenvalue {max_eigenvalue} exceeds 1; operator is outside the unit-bounded cone")]
    NotInCpe { max_eigenvalue: f64 },
    #[error("invalid operator: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How a freshly summed operator is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizationMode {
    /// Divide by the largest eigenvalue, so it becomes exactly 1.
    #[default]
    MaxEigOne,
    /// Divide by the trace.
    TraceOne,
    /// Leave the sum as is; fails if the spectrum exceeds 1.
    None,
}

impl NormalizationMode {
    pub fn code(self) -> u8 {
        match self {
            NormalizationMode::MaxEigOne => 0,
            NormalizationMode::TraceOne => 1,
            NormalizationMode::None => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(NormalizationMode::MaxEigOne),
            1 => Some(NormalizationMode::TraceOne),
            2 => Some(NormalizationMode::None),
            _ => None,
        }
    }
}

impl fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalizationMode::MaxEigOne => "max-eig-one",
            NormalizationMode::TraceOne => "trace-one",
            NormalizationMode::None => "none",
        })
    }
}

impl FromStr for NormalizationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "max-eig-one" | "maxeig" | "max-eig" => Ok(NormalizationMode::MaxEigOne),
            "trace-one" | "trace" => Ok(NormalizationMode::TraceOne),
            "none" => Ok(NormalizationMode::None),
            other => Err(format!(
                "unknown normalization `{other}` (expected max-eig-one, trace-one or none)"
            )),
        }
    }
}

/// A symmetric PSD matrix with largest eigenvalue at most 1.
///
/// Negation keeps a handle on the operator it came from, so that negating
/// twice returns the original entries bit for bit.
#[derive(Debug, Clone)]
pub struct PositiveOperator<T> {
    matrix: Arc<SymMatrix<T>>,
    complement: Option<Arc<SymMatrix<T>>>,
}

impl<T: Scalar> PartialEq for PositiveOperator<T> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

/// Outcome of [`is_valid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Validity<T> {
    pub valid: bool,
    pub min_eigenvalue: T,
    pub max_eigenvalue: T,
    pub symmetry_defect: T,
    pub reasons: Vec<String>,
}

/// Checks both operator invariants, reporting the extreme eigenvalues.
pub fn is_valid<T: Scalar>(m: &SymMatrix<T>) -> Result<Validity<T>, LinalgError> {
    let n = m.dim();
    let mut defect = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            defect = defect.max((m.get(i, j) - m.get(j, i)).abs());
        }
    }
    let (min, max) = m.extreme_eigenvalues()?;
    let mut reasons = Vec::new();
    if min < -T::psd_clamp() {
        reasons.push(format!("negative eigenvalue {min}"));
    }
    if max > T::one() + T::psd_clamp() {
        reasons.push(format!("max eigenvalue {max} > 1"));
    }
    if defect > T::zero() {
        reasons.push(format!("symmetry defect {defect}"));
    }
    Ok(Validity {
        valid: reasons.is_empty(),
        min_eigenvalue: min,
        max_eigenvalue: max,
        symmetry_defect: defect,
        reasons,
    })
}

impl<T: Scalar> PositiveOperator<T> {
    /// Wraps `matrix` after checking positivity and the unit spectral bound.
    pub fn new(matrix: SymMatrix<T>) -> Result<Self, OperatorError> {
        let v = is_valid(&matrix)?;
        if !v.valid {
            return Err(OperatorError::Invalid(v.reasons.join("; ")));
        }
        Ok(Self::trusted(matrix))
    }

    /// Wraps a matrix known to satisfy the invariants (composition outputs).
    pub(crate) fn trusted(matrix: SymMatrix<T>) -> Self {
        PositiveOperator {
            matrix: Arc::new(matrix),
            complement: None,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::trusted(SymMatrix::identity(dim))
    }

    pub fn zero(dim: usize) -> Self {
        Self::trusted(SymMatrix::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &SymMatrix<T> {
        &self.matrix
    }

    pub fn trace(&self) -> T {
        self.matrix.trace()
    }

    pub fn validity(&self) -> Result<Validity<T>, LinalgError> {
        is_valid(&self.matrix)
    }

    /// `𝕀 − self`, the operator for the negated word.
    ///
    /// Fails when the largest eigenvalue exceeds `1 + psd_reject`, since the
    /// result would leave the positive cone.
    pub fn negate(&self) -> Result<Self, OperatorError> {
        if let Some(original) = &self.complement {
            return Ok(PositiveOperator {
                matrix: original.clone(),
                complement: Some(self.matrix.clone()),
            });
        }
        let (_, max) = self.matrix.extreme_eigenvalues()?;
        if max > T::one() + T::psd_reject() {
            return Err(OperatorError::NotInCpe {
                max_eigenvalue: max.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(PositiveOperator {
            matrix: Arc::new(self.matrix.identity_minus()),
            complement: Some(self.matrix.clone()),
        })
    }

    pub fn cast<U: Scalar>(&self) -> PositiveOperator<U> {
        PositiveOperator::trusted(self.matrix.cast())
    }
}

pub fn identity_operator<T: Scalar>(dim: usize) -> PositiveOperator<T> {
    PositiveOperator::identity(dim)
}

pub fn negate<T: Scalar>(a: &PositiveOperator<T>) -> Result<PositiveOperator<T>, OperatorError> {
    a.negate()
}

/// `normalize(Σᵢ pᵢ vᵢvᵢᵀ)` over unit instance vectors.
///
/// Vectors within `1e-3` of unit norm are renormalized; others are rejected.
/// `weights` defaults to all ones.
pub fn build_operator<T: Scalar>(
    instances: &[Vec<T>],
    weights: Option<&[T]>,
    norm: NormalizationMode,
) -> Result<PositiveOperator<T>, OperatorError> {
    let first = instances.first().ok_or(OperatorError::EmptyConcept)?;
    let dim = first.len();
    if dim == 0 {
        return Err(OperatorError::Linalg(LinalgError::Empty));
    }
    if let Some(w) = weights {
        if w.len() != instances.len() {
            return Err(OperatorError::WeightCount {
                instances: instances.len(),
                weights: w.len(),
            });
        }
    }

    let mut sum = SymMatrix::zeros(dim);
    let mut unit = vec![T::zero(); dim];
    for (index, v) in instances.iter().enumerate() {
        if v.len() != dim {
            return Err(OperatorError::DimensionMismatch {
                index,
                expected: dim,
                got: v.len(),
            });
        }
        let w = weights.map_or(T::one(), |w| w[index]);
        if !(w.is_finite() && w >= T::zero()) {
            return Err(OperatorError::BadWeight { index });
        }
        let len = v.iter().map(|&x| x * x).sum::<T>().sqrt();
        if !len.is_finite() || (len - T::one()).abs() > T::lit(UNIT_NORM_SLACK) {
            return Err(OperatorError::NotUnit {
                index,
                norm: len.to_f64().unwrap_or(f64::NAN),
            });
        }
        for (u, &x) in unit.iter_mut().zip(v) {
            *u = x / len;
        }
        sum.add_outer(w, &unit);
    }

    let matrix = match norm {
        NormalizationMode::MaxEigOne => {
            let (_, max) = sum.extreme_eigenvalues()?;
            if max > T::tiny() {
                sum.scale(T::one() / max)
            } else {
                SymMatrix::zeros(dim)
            }
        }
        NormalizationMode::TraceOne => {
            let tr = sum.trace();
            if tr > T::tiny() {
                sum.scale(T::one() / tr)
            } else {
                SymMatrix::zeros(dim)
            }
        }
        NormalizationMode::None => {
            let (_, max) = sum.extreme_eigenvalues()?;
            if max > T::one() + T::psd_clamp() {
                return Err(OperatorError::NotInCpe {
                    max_eigenvalue: max.to_f64().unwrap_or(f64::NAN),
                });
            }
            sum
        }
    };
    Ok(PositiveOperator::trusted(matrix))
}
