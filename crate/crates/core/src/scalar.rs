//! Scalar abstractions.
//!
//! Everything numeric in this crate is written against [`Real`], implemented
//! for `f32` and `f64`. The exact polynomial calculus only needs field
//! arithmetic and is written against [`Coeff`], which additionally admits
//! rationals such as `num_rational::Ratio<i64>`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only if `Self` cannot represent
    /// finite `f64` values at all, which no implementor does.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn two() -> Self {
        Self::lit(2.0)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Coefficient field for exact polynomial arithmetic.
pub trait Coeff:
    Clone + Debug + Num + Neg<Output = Self> + PartialOrd + FromPrimitive + ToPrimitive
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable")
    }

    fn neg_half() -> Self {
        Self::from_int(-1) / Self::from_int(2)
    }
}

impl<C> Coeff for C where
    C: Clone + Debug + Num + Neg<Output = C> + PartialOrd + FromPrimitive + ToPrimitive
{
}

/// Pairwise (cascade) summation; deterministic for a fixed input order.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        let mut s = T::zero();
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}
