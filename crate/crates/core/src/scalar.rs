//! Scalar abstraction for the floating-point parts of the crate.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::ToPrimitive;

/// Real scalar used by the numeric matrices and state vectors: `f32` or `f64`.
///
/// Tolerances scale with the precision of the type; the values quoted in the
/// crate documentation are the `f64` ones.
pub trait Real: RealField + Copy + ToPrimitive {
    /// Converts an `f64` literal into this scalar.
    fn lit(x: f64) -> Self {
        nalgebra::convert(x)
    }

    /// Tolerance used when validating unitarity and normalization of inputs.
    fn validation_tol() -> Self;

    /// Tolerance for algebraic checks that should hold to near machine precision.
    fn strict_tol() -> Self;

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn validation_tol() -> Self {
        1e-9
    }

    fn strict_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn validation_tol() -> Self {
        1e-4
    }

    fn strict_tol() -> Self {
        1e-5
    }
}

/// `e^{i theta}`.
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Squared modulus.
pub fn norm_sqr<T: Real>(z: Complex<T>) -> T {
    z.re * z.re + z.im * z.im
}

pub fn modulus<T: Real>(z: Complex<T>) -> T {
    norm_sqr(z).sqrt()
}

pub fn arg<T: Real>(z: Complex<T>) -> T {
    z.im.atan2(z.re)
}

/// Maps an angle onto the representative in `(-pi, pi]`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = T::two_pi();
    let mut r = theta % two_pi;
    if r > T::pi() {
        r -= two_pi;
    } else if r <= -T::pi() {
        r += two_pi;
    }
    r
}

/// Distance between two angles on the unit circle, in `[0, pi]`.
pub fn circle_distance<T: Real>(a: T, b: T) -> T {
    wrap_angle(a - b).abs()
}
