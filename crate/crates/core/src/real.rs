//! Scalar abstraction for the core math.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real scalar the profile math is written against.
///
/// Implemented for `f32` and `f64` via the blanket impl; all default
/// tolerances in the crate are chosen for `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// Shorthand for lifting an `f64` literal into the generic scalar.
#[inline]
pub fn lit<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("literal must be representable in the scalar type")
}
