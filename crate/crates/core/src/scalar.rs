//! Scalar abstraction: every numerical routine in this crate is generic over a
//! real floating-point type implementing [`Real`].

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar (f32 or f64).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Convert an `f64` constant, panicking if it is not representable.
    fn cst(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in this scalar type")
    }

    /// Convert a `usize`, panicking on overflow.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize not representable in this scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Compensated (Neumaier) summation; keeps row sums of differentiation
/// matrices at the noise floor instead of accumulating cancellation error.
pub fn neumaier_sum<R: Real>(values: impl IntoIterator<Item = R>) -> R {
    let mut sum = R::zero();
    let mut comp = R::zero();
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cst_roundtrip() {
        assert_eq!(f64::cst(1.5), 1.5);
        assert_eq!(f32::cst(0.25), 0.25_f32);
        assert_eq!(f64::of_usize(7), 7.0);
    }

    #[test]
    fn neumaier_cancels() {
        let xs = [1e16, 1.0, -1e16];
        assert_eq!(neumaier_sum(xs.iter().copied()), 1.0);
    }
}
