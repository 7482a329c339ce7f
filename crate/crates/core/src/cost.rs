//! Scalar abstraction for arc costs.
//!
//! Every algorithm in this crate compares costs exactly, so the cost type is
//! any primitive signed integer. Signedness is needed for the dual potentials
//! of the assignment solver; inputs are still validated to be nonnegative.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;

use num_traits::{NumAssign, PrimInt, Signed};

pub trait Cost:
    PrimInt + Signed + NumAssign + Sum + Debug + Display + Hash + Default + Send + Sync + 'static
{
    /// `self * multiplicity`, panicking if the multiplicity does not fit `Self`.
    fn times(self, multiplicity: u64) -> Self {
        let m = Self::from(multiplicity).expect("multiplicity does not fit the cost type");
        self * m
    }

    fn from_usize(value: usize) -> Self {
        Self::from(value).expect("value does not fit the cost type")
    }
}

impl<T> Cost for T where
    T: PrimInt + Signed + NumAssign + Sum + Debug + Display + Hash + Default + Send + Sync + 'static
{
}

/// `floor(log2 n)` for `n >= 1`.
pub fn floor_log2(n: usize) -> u32 {
    assert!(n >= 1, "log of zero");
    n.ilog2()
}
