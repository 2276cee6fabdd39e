//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the toolkit is generic over (`f32` or `f64`).
///
/// Tolerances throughout the crate are written for `f64`; with `f32` the
/// iterative routines stop at their iteration caps instead of the requested
/// accuracy.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
    fn erf(self) -> Self;
    fn erfc(self) -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn erf(self) -> Self {
        libm::erf(self)
    }
    #[inline]
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
}

impl Real for f32 {
    #[inline]
    fn erf(self) -> Self {
        libm::erff(self)
    }
    #[inline]
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
}

/// `∫_lo^hi exp(-c y²) dy` for `c > 0`, evaluated without cancellation in the tails.
pub fn gaussian_interval<T: Real>(c: T, lo: T, hi: T) -> T {
    if hi <= lo {
        return T::zero();
    }
    let s = c.sqrt();
    let half = T::lit(0.5) * (T::PI() / c).sqrt();
    let (a, b) = (s * lo, s * hi);
    if a >= T::zero() {
        half * (a.erfc() - b.erfc())
    } else if b <= T::zero() {
        half * ((-b).erfc() - (-a).erfc())
    } else {
        half * (b.erf() - a.erf())
    }
}

/// `∫_t^∞ exp(-c s²) ds`.
pub fn gaussian_tail<T: Real>(c: T, t: T) -> T {
    let s = c.sqrt();
    T::lit(0.5) * (T::PI() / c).sqrt() * (s * t).erfc()
}
