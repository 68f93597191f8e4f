//! Word meanings as positive operators with spectrum in `[0, 1]`.
//!
//! Words are built from the vectors of their hyponyms, composed into
//! intransitive sentences (`Mult`, `BMult`, `KMult` and baselines), negated by
//! `𝕀 − A`, and compared with crisp and graded Löwner entailment. The
//! [`experiments`] module runs the sentence entailment evaluation with
//! negated nouns and verbs.
//!
//! The numeric core ([`symmat`], [`operators`], [`hyponymy`], [`compose`]) is
//! generic over [`Scalar`]; the aliases below fix it to `f64`, which file
//! formats and the experiment harness use.

pub mod compose;
pub mod experiments;
pub mod fixture;
pub mod hyponymy;
pub mod lexicon;
pub mod operators;
pub mod pregroup;
pub mod sampling;
pub mod scalar;
pub mod symmat;

pub use compose::{compose, ComposeOp};
pub use hyponymy::{EntailmentScore, Measure};
pub use operators::{NormalizationMode, PositiveOperator};
pub use scalar::Scalar;

pub type SymMatrix = symmat::SymMatrix<f64>;
pub type SquareMatrix = symmat::SquareMatrix<f64>;
pub type SpectralDecomposition = symmat::SpectralDecomposition<f64>;
pub type JordanParts = symmat::JordanParts<f64>;
pub type Operator = operators::PositiveOperator<f64>;
pub type Score = hyponymy::EntailmentScore<f64>;

pub type SymMatrixF32 = symmat::SymMatrix<f32>;
pub type OperatorF32 = operators::PositiveOperator<f32>;
