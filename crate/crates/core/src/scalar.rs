use std::fmt::Debug;

use num_traits::{Num, Signed};

/// Exact ordered ring/field element used for coordinates.
///
/// Every predicate in this crate only needs `+ - *` and comparison, so any
/// exact signed number type qualifies: `i64`, `Ratio<i64>`, `BigRational`.
/// Floating point types are deliberately excluded since they are not `Ord`.
pub trait Scalar: Num + Signed + Clone + Ord + Debug {}

impl<T> Scalar for T where T: Num + Signed + Clone + Ord + Debug {}
