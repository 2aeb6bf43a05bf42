//! Boundary conversions between user-facing ν = ω/2π values and the
//! angular units (rad/ns) used internally.

use crate::real::Real;

/// GHz (ν = ω/2π) to rad/ns.
#[inline]
pub fn ghz<T: Real>(nu: T) -> T {
    nu * T::two_pi()
}

/// MHz (ν = ω/2π) to rad/ns.
#[inline]
pub fn mhz<T: Real>(nu: T) -> T {
    nu * T::two_pi() * T::lit(1e-3)
}

/// rad/ns to GHz.
#[inline]
pub fn to_ghz<T: Real>(omega: T) -> T {
    omega / T::two_pi()
}

/// rad/ns to MHz.
#[inline]
pub fn to_mhz<T: Real>(omega: T) -> T {
    omega / T::two_pi() * T::lit(1e3)
}
