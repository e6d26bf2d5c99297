use std::fmt;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the analytic models are generic over: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + NumAssign + fmt::Debug + fmt::Display {
    /// Lossless conversion from a small unsigned integer (hop/frame counts).
    fn from_u32_exact(v: u32) -> Self {
        Self::from_u32(v).expect("u32 fits in any supported scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
