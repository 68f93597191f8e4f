//! Noun–verb composition of operators for intransitive sentences.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::operators::PositiveOperator;
use crate::scalar::Scalar;
use crate::symmat::{LinalgError, SymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComposeOp {
    #[serde(rename = "mult")]
    Mult,
    #[serde(rename = "bmult")]
    BMult,
    #[serde(rename = "bmult-switched")]
    BMultSwitched,
    #[serde(rename = "kmult")]
    KMult,
    #[serde(rename = "kmult-switched")]
    KMultSwitched,
    #[serde(rename = "average")]
    Average,
    #[serde(rename = "noun-only")]
    NounOnly,
    #[serde(rename = "verb-only")]
    VerbOnly,
}

impl ComposeOp {
    pub const ALL: [ComposeOp; 8] = [
        ComposeOp::VerbOnly,
        ComposeOp::NounOnly,
        ComposeOp::Average,
        ComposeOp::Mult,
        ComposeOp::BMult,
        ComposeOp::BMultSwitched,
        ComposeOp::KMult,
        ComposeOp::KMultSwitched,
    ];

    /// Name used on the command line and in config files.
    pub fn name(self) -> &'static str {
        match self {
            ComposeOp::Mult => "mult",
            ComposeOp::BMult => "bmult",
            ComposeOp::BMultSwitched => "bmult-switched",
            ComposeOp::KMult => "kmult",
            ComposeOp::KMultSwitched => "kmult-switched",
            ComposeOp::Average => "average",
            ComposeOp::NounOnly => "noun-only",
            ComposeOp::VerbOnly => "verb-only",
        }
    }

    /// Row label in rendered result tables.
    pub fn title(self) -> &'static str {
        match self {
            ComposeOp::Mult => "Mult",
            ComposeOp::BMult => "BMult",
            ComposeOp::BMultSwitched => "BMult switched",
            ComposeOp::KMult => "KMult",
            ComposeOp::KMultSwitched => "KMult switched",
            ComposeOp::Average => "Average",
            ComposeOp::NounOnly => "Noun only",
            ComposeOp::VerbOnly => "Verb only",
        }
    }

    pub fn is_baseline(self) -> bool {
        matches!(self, ComposeOp::Average | ComposeOp::NounOnly | ComposeOp::VerbOnly)
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|op| op.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for ComposeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComposeOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        Self::ALL
            .iter()
            .copied()
            .find(|op| op.name() == key)
            .ok_or_else(|| format!("unknown op `{s}`; valid ops: {}", Self::valid_names()))
    }
}

/// Hadamard product `noun ⊙ verb`.
pub fn mult<T: Scalar>(
    noun: &PositiveOperator<T>,
    verb: &PositiveOperator<T>,
) -> Result<PositiveOperator<T>, LinalgError> {
    Ok(PositiveOperator::trusted(noun.matrix().hadamard(verb.matrix())?))
}

/// `verb^½ · noun · verb^½`.
pub fn bmult<T: Scalar>(
    noun: &PositiveOperator<T>,
    verb: &PositiveOperator<T>,
) -> Result<PositiveOperator<T>, LinalgError> {
    if noun.dim() != verb.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: noun.dim(),
            right: verb.dim(),
        });
    }
    let root = verb.matrix().sqrt_psd()?;
    Ok(PositiveOperator::trusted(noun.matrix().sandwiched_by(&root)?))
}

/// `Σᵢ pᵢ Pᵢ · noun · Pᵢ` where `verb = Σᵢ pᵢ Pᵢ` groups equal eigenvalues.
pub fn kmult<T: Scalar>(
    noun: &PositiveOperator<T>,
    verb: &PositiveOperator<T>,
) -> Result<PositiveOperator<T>, LinalgError> {
    if noun.dim() != verb.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: noun.dim(),
            right: verb.dim(),
        });
    }
    let spectral = verb.matrix().eig()?;
    let weights = spectral.eigenvalues().to_vec();
    Ok(PositiveOperator::trusted(spectral.sandwich(noun.matrix(), &weights)?))
}

pub fn bmult_switched<T: Scalar>(
    noun: &PositiveOperator<T>,
    verb: &PositiveOperator<T>,
) -> Result<PositiveOperator<T>, LinalgError> {
    bmult(verb, noun)
}

pub fn kmult_switched<T: Scalar>(
    noun: &PositiveOperator<T>,
    verb: &PositiveOperator<T>,
) -> Result<PositiveOperator<T>, LinalgError> {
    kmult(verb, noun)
}

/// `(noun + verb) / 2`.
pub fn average<T: Scalar>(
    noun: &PositiveOperator<T>,
    verb: &PositiveOperator<T>,
) -> Result<PositiveOperator<T>, LinalgError> {
    let sum = noun.matrix().add(verb.matrix())?;
    Ok(PositiveOperator::trusted(sum.scale(T::lit(0.5))))
}

pub fn compose<T: Scalar>(
    op: ComposeOp,
    noun: &PositiveOperator<T>,
    verb: &PositiveOperator<T>,
) -> Result<PositiveOperator<T>, LinalgError> {
    match op {
        ComposeOp::Mult => mult(noun, verb),
        ComposeOp::BMult => bmult(noun, verb),
        ComposeOp::BMultSwitched => bmult_switched(noun, verb),
        ComposeOp::KMult => kmult(noun, verb),
        ComposeOp::KMultSwitched => kmult_switched(noun, verb),
        ComposeOp::Average => average(noun, verb),
        ComposeOp::NounOnly | ComposeOp::VerbOnly => {
            if noun.dim() != verb.dim() {
                return Err(LinalgError::DimensionMismatch {
                    left: noun.dim(),
                    right: verb.dim(),
                });
            }
            Ok(if op == ComposeOp::NounOnly {
                noun.clone()
            } else {
                verb.clone()
            })
        }
    }
}

/// `Σᵢ Pᵢ · m · Pᵢ` over the eigenspaces of `basis_of`: the block-diagonal
/// part of `m` in a basis diagonalising `basis_of`.
pub fn diag_in_basis<T: Scalar>(
    m: &SymMatrix<T>,
    basis_of: &SymMatrix<T>,
) -> Result<SymMatrix<T>, LinalgError> {
    basis_of.eig()?.pinch(m)
}
