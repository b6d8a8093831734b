//! Dense row-major linear algebra, activation functions with derivatives,
//! and a seeded splittable generator. Everything downstream builds on this;
//! evaluation order is fixed so reruns are bit-identical.

mod activation;
mod matrix;
mod rng;

pub use activation::{activate, ActivationKind};
pub use matrix::{affine, Matrix};
pub use rng::Rng;

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Scalar type the math kernel is generic over: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssignOps + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, for config constants entering generic code.
    fn from_config(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to any Real")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Errors from the math kernel.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MathError {
    #[error("dimension mismatch: {op} with left {left_rows}x{left_cols}, right {right_rows}x{right_cols}")]
    DimMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix data length {len} does not equal rows*cols = {rows}x{cols}")]
    BadShape { len: usize, rows: usize, cols: usize },
    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },
    #[error("empty uniform range: lo {lo} >= hi {hi}")]
    EmptyRange { lo: f64, hi: f64 },
}
