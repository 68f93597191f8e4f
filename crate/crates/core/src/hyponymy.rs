//! Crisp and graded Löwner entailment between operators.
//!
//! Throughout, `A ⊑ B` ("A is a hyponym of B") holds when `B − A` is positive
//! semidefinite. The graded measures split `B − A = D − E` into its positive
//! part `D` and error part `E`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::operators::PositiveOperator;
use crate::scalar::Scalar;
use crate::symmat::{JordanParts, LinalgError};

const BISECTION_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntailmentError {
    #[error("score undefined: hyponym operator is zero")]
    ZeroHyponym,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    Crisp,
    #[serde(rename = "kBA")]
    KBA,
    #[serde(rename = "kE")]
    KE,
    KExpansion,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Crisp, Measure::KBA, Measure::KE, Measure::KExpansion];

    pub fn label(self) -> &'static str {
        match self {
            Measure::Crisp => "crisp",
            Measure::KBA => "k_BA",
            Measure::KE => "k_E",
            Measure::KExpansion => "k_exp",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "crisp" => Ok(Measure::Crisp),
            "kba" => Ok(Measure::KBA),
            "ke" => Ok(Measure::KE),
            "kexp" | "kexpansion" => Ok(Measure::KExpansion),
            other => Err(format!("unknown measure `{other}` (expected crisp, kba, ke or kexp)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntailmentScore<T> {
    pub value: T,
    pub measure: Measure,
    /// Set when the score was defined by convention (e.g. `A == B` for k_BA).
    pub degenerate: bool,
}

impl<T: Scalar> EntailmentScore<T> {
    fn new(value: T, measure: Measure) -> Self {
        EntailmentScore {
            value,
            measure,
            degenerate: false,
        }
    }
}

fn difference_parts<T: Scalar>(
    a: &PositiveOperator<T>,
    b: &PositiveOperator<T>,
) -> Result<JordanParts<T>, LinalgError> {
    b.matrix().sub(a.matrix())?.jordan()
}

/// `A ⊑ B`: the smallest eigenvalue of `B − A` is at least `-psd_clamp`.
pub fn crisp_entails<T: Scalar>(
    a: &PositiveOperator<T>,
    b: &PositiveOperator<T>,
) -> Result<bool, LinalgError> {
    b.matrix().sub(a.matrix())?.is_psd(T::psd_clamp())
}

/// `Tr(D − E) / Tr(D + E)`, in `[-1, 1]`.
///
/// When `A == B` the ratio is `0/0`; the score is then 1 and flagged degenerate.
pub fn k_ba<T: Scalar>(
    a: &PositiveOperator<T>,
    b: &PositiveOperator<T>,
) -> Result<EntailmentScore<T>, LinalgError> {
    let parts = difference_parts(a, b)?;
    Ok(k_ba_from_parts(&parts))
}

pub fn k_ba_from_parts<T: Scalar>(parts: &JordanParts<T>) -> EntailmentScore<T> {
    let d = parts.positive.trace();
    let e = parts.negative.trace();
    let total = d + e;
    if total < T::tiny() {
        return EntailmentScore {
            value: T::one(),
            measure: Measure::KBA,
            degenerate: true,
        };
    }
    let value = ((d - e) / total).max(-T::one()).min(T::one());
    EntailmentScore::new(value, Measure::KBA)
}

/// `1 − ‖E‖ / ‖A‖` with the trace norm, clamped to `[0, 1]`.
pub fn k_e<T: Scalar>(
    a: &PositiveOperator<T>,
    b: &PositiveOperator<T>,
) -> Result<EntailmentScore<T>, EntailmentError> {
    let parts = difference_parts(a, b)?;
    k_e_from_parts(a, &parts)
}

pub fn k_e_from_parts<T: Scalar>(
    a: &PositiveOperator<T>,
    parts: &JordanParts<T>,
) -> Result<EntailmentScore<T>, EntailmentError> {
    let norm_a = a.trace();
    if norm_a < T::tiny() {
        return Err(EntailmentError::ZeroHyponym);
    }
    let value = T::one() - parts.negative.trace() / norm_a;
    Ok(EntailmentScore::new(value.max(T::zero()).min(T::one()), Measure::KE))
}

/// Largest `k ∈ [0, 1]` with `B − kA` positive semidefinite, by bisection.
pub fn k_expansion<T: Scalar>(
    a: &PositiveOperator<T>,
    b: &PositiveOperator<T>,
) -> Result<EntailmentScore<T>, EntailmentError> {
    if a.trace() < T::tiny() {
        return Err(EntailmentError::ZeroHyponym);
    }
    let feasible = |k: T| -> Result<bool, LinalgError> {
        b.matrix().sub(&a.matrix().scale(k))?.is_psd(T::psd_clamp())
    };
    if feasible(T::one())? {
        return Ok(EntailmentScore::new(T::one(), Measure::KExpansion));
    }
    let (mut lo, mut hi) = (T::zero(), T::one());
    let half = T::lit(0.5);
    while hi - lo > T::lit(BISECTION_TOL) {
        let mid = (lo + hi) * half;
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(EntailmentScore::new(lo, Measure::KExpansion))
}

/// Dispatches on `measure`; crisp maps to 1 or 0.
pub fn score<T: Scalar>(
    measure: Measure,
    a: &PositiveOperator<T>,
    b: &PositiveOperator<T>,
) -> Result<EntailmentScore<T>, EntailmentError> {
    match measure {
        Measure::Crisp => {
            let holds = crisp_entails(a, b)?;
            Ok(EntailmentScore::new(
                if holds { T::one() } else { T::zero() },
                Measure::Crisp,
            ))
        }
        Measure::KBA => Ok(k_ba(a, b)?),
        Measure::KE => k_e(a, b),
        Measure::KExpansion => k_expansion(a, b),
    }
}
