//! Scalar abstraction for the closed-form bound formulas.

use num_traits::{FromPrimitive, Num};

/// Field-like scalar the bound formulas can be evaluated in.
///
/// Exact rationals are used for every accept/reject decision; `f64` is
/// handy for plotting and quick estimates.
pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + std::fmt::Debug {
    fn from_count(x: usize) -> Self {
        Self::from_usize(x).expect("count representable in scalar")
    }
}

impl<T: Num + Copy + PartialOrd + FromPrimitive + std::fmt::Debug> Scalar for T {}
