//! Small numeric casting helpers shared across modules.

use crate::Real;

/// Cast an `f64` constant into the working scalar. Infallible for the
/// supported scalars (`f32`, `f64`).
pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from(x).expect("finite f64 constant converts into Real scalar")
}

/// Cast a count into the working scalar.
pub(crate) fn cast_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("sample count converts into Real scalar")
}

/// Widen the working scalar to `f64` (exact for `f32`/`f64`).
pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().expect("Real scalar widens to f64")
}
