use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar the solvers are generic over: `f64` or `f32`.
///
/// `f64` is the working type; the stated tolerances of the solvers and of
/// the verification oracle assume it. `f32` satisfies the same algebraic
/// identities at proportionally coarser accuracy.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for embedding an `f64` literal into the scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// Embeds a small integer (level indices, grid counts).
    fn of_usize(v: usize) -> Self {
        Self::from_usize(v).expect("integer fits in scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}
