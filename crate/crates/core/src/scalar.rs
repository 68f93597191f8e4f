//! Floating point scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// A real floating point type the operator algebra can run on.
///
/// Besides the arithmetic bounds, each implementation pins the numeric
/// tolerances used throughout the crate. The `f64` values are the reference
/// ones; the `f32` values are scaled to what single precision can resolve
/// for small matrices (dimension in the tens).
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Eigenvalues in `[-psd_clamp, 0)` are treated as zero.
    fn psd_clamp() -> Self;
    /// Eigenvalues below `-psd_reject` make an operator non-positive.
    fn psd_reject() -> Self;
    /// Relative gap under which two eigenvalues fall in the same group.
    fn eig_group_rtol() -> Self;
    /// Denominators smaller than this are treated as zero.
    fn tiny() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Scalar for f64 {
    fn psd_clamp() -> Self {
        1e-9
    }
    fn psd_reject() -> Self {
        1e-6
    }
    fn eig_group_rtol() -> Self {
        1e-8
    }
    fn tiny() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn psd_clamp() -> Self {
        1e-5
    }
    fn psd_reject() -> Self {
        1e-3
    }
    fn eig_group_rtol() -> Self {
        1e-5
    }
    fn tiny() -> Self {
        1e-6
    }
}
