//! Field-generic helpers so the same formula can run over `f64` and over
//! exact rationals.

use num_traits::{FromPrimitive, Num};

pub trait Scalar: Clone + Num + FromPrimitive {}

impl<T: Clone + Num + FromPrimitive> Scalar for T {}

/// `n / d` in the scalar field.
pub fn frac<T: Scalar>(n: i32, d: i32) -> T {
    T::from_i32(n).expect("small integer") / T::from_i32(d).expect("small integer")
}
