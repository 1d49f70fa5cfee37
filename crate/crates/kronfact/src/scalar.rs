//! Floating point abstraction for the real-valued half of the crate.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, NumAssign};

/// Floating point scalar: `f32` or `f64`.
///
/// Everything real-valued (dense matrices, the nearest-Kronecker-product
/// approximation, graph layouts) is generic over this trait; the binary
/// pattern machinery is pure index arithmetic and stays on integers.
pub trait Scalar:
    Float + NumAssign + Sum + fmt::Debug + fmt::Display + fmt::LowerExp + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for constants such as tolerances
    /// and default radii.
    fn from_f64(v: f64) -> Self {
        Self::from(v).expect("constant representable in every float type")
    }
}

impl<T> Scalar for T where
    T: Float + NumAssign + Sum + fmt::Debug + fmt::Display + fmt::LowerExp + Send + Sync + 'static
{
}
