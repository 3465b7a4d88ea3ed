//! The cyclotomic integers `Z[zeta_8]` in the power basis.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// `a + b·ζ + c·ζ² + d·ζ³` with `ζ = e^{iπ/4}` and `ζ⁴ = −1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZOmega {
    pub coefs: [BigInt; 4],
}

impl ZOmega {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        ZOmega { coefs: [a.into(), b.into(), c.into(), d.into()] }
    }

    pub fn from_small(k: [i64; 4]) -> Self {
        ZOmega::new(k[0], k[1], k[2], k[3])
    }

    pub fn zero() -> Self {
        ZOmega::default()
    }

    pub fn one() -> Self {
        ZOmega::from_small([1, 0, 0, 0])
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        ZOmega::one().mul_zeta_pow(k)
    }

    /// `√2 = ζ − ζ³`.
    pub fn sqrt2() -> Self {
        ZOmega::from_small([0, 1, 0, -1])
    }

    pub fn is_zero(&self) -> bool {
        self.coefs.iter().all(Zero::is_zero)
    }

    /// Multiplication by `ζ^k`, a signed rotation of the coefficients.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut out: [BigInt; 4] = Default::default();
        for (i, x) in self.coefs.iter().enumerate() {
            let j = i + k;
            out[j % 4] = if (j / 4) % 2 == 1 { -x } else { x.clone() };
        }
        ZOmega { coefs: out }
    }

    /// Galois conjugation `ζ ↦ ζ⁻¹ = −ζ³`, which is complex conjugation.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.coefs;
        ZOmega { coefs: [a.clone(), -d, -c, -b] }
    }

    pub fn mul_sqrt2(&self) -> Self {
        let [a, b, c, d] = &self.coefs;
        ZOmega { coefs: [b - d, a + c, b + d, c - a] }
    }

    pub fn is_divisible_by_sqrt2(&self) -> bool {
        let [a, b, c, d] = &self.coefs;
        (a - c).is_even() && (b - d).is_even()
    }

    /// Exact quotient by `√2`, if it exists in the ring.
    pub fn div_sqrt2(&self) -> Option<Self> {
        if !self.is_divisible_by_sqrt2() {
            return None;
        }
        let two = BigInt::from(2);
        let s = self.mul_sqrt2();
        Some(ZOmega { coefs: s.coefs.map(|x| x / &two) })
    }

    /// Lies in `Z[i]`: no `ζ` or `ζ³` component.
    pub fn is_gaussian(&self) -> bool {
        self.coefs[1].is_zero() && self.coefs[3].is_zero()
    }

    /// Product with a ring element given by small integer coefficients.
    pub fn mul_small(&self, k: &[i64; 4]) -> Self {
        let mut acc = ZOmega::zero();
        for (p, &s) in k.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let rotated = self.mul_zeta_pow(p as i64);
            if s == 1 {
                acc += rotated;
            } else if s == -1 {
                acc = acc - rotated;
            } else {
                let s = BigInt::from(s);
                acc += ZOmega { coefs: rotated.coefs.map(|x| x * &s) };
            }
        }
        acc
    }

    /// Complex value scaled by `√2^{-denom_exp}`.
    pub fn to_complex(&self, denom_exp: u32) -> Complex<f64> {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        let [a, b, c, d] = &self.coefs;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        // Combine the ζ and ζ³ parts exactly before converting.
        let re = f(a) + f(&(b - d)) * r;
        let im = f(c) + f(&(b + d)) * r;
        let scale = 2f64.powi(-((denom_exp / 2) as i32)) * if denom_exp % 2 == 1 { r } else { 1.0 };
        Complex::new(re * scale, im * scale)
    }

    pub fn to_strings(&self) -> [String; 4] {
        self.coefs.clone().map(|x| x.to_string())
    }
}

impl fmt::Debug for ZOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ZOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coefs;
        write!(f, "({a} + {b}ζ + {c}ζ² + {d}ζ³)")
    }
}

impl Add for &ZOmega {
    type Output = ZOmega;
    fn add(self, rhs: &ZOmega) -> ZOmega {
        let [a, b, c, d] = &self.coefs;
        let [e, f, g, h] = &rhs.coefs;
        ZOmega { coefs: [a + e, b + f, c + g, d + h] }
    }
}

impl Add for ZOmega {
    type Output = ZOmega;
    fn add(mut self, rhs: ZOmega) -> ZOmega {
        self += rhs;
        self
    }
}

impl AddAssign for ZOmega {
    fn add_assign(&mut self, rhs: ZOmega) {
        for (x, y) in self.coefs.iter_mut().zip(rhs.coefs) {
            *x += y;
        }
    }
}

impl Sub for &ZOmega {
    type Output = ZOmega;
    fn sub(self, rhs: &ZOmega) -> ZOmega {
        self + &(-rhs)
    }
}

impl Sub for ZOmega {
    type Output = ZOmega;
    fn sub(self, rhs: ZOmega) -> ZOmega {
        self + (-rhs)
    }
}

impl Neg for &ZOmega {
    type Output = ZOmega;
    fn neg(self) -> ZOmega {
        ZOmega { coefs: self.coefs.clone().map(|x| -x) }
    }
}

impl Neg for ZOmega {
    type Output = ZOmega;
    fn neg(self) -> ZOmega {
        ZOmega { coefs: self.coefs.map(|x| -x) }
    }
}

impl Mul for &ZOmega {
    type Output = ZOmega;
    fn mul(self, rhs: &ZOmega) -> ZOmega {
        let mut out: [BigInt; 4] = Default::default();
        for (i, x) in self.coefs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coefs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                if i + j >= 4 {
                    out[i + j - 4] -= p;
                } else {
                    out[i + j] += p;
                }
            }
        }
        ZOmega { coefs: out }
    }
}

impl Mul for ZOmega {
    type Output = ZOmega;
    fn mul(self, rhs: ZOmega) -> ZOmega {
        &self * &rhs
    }
}

impl From<i64> for ZOmega {
    fn from(x: i64) -> Self {
        ZOmega::new(x, 0, 0, 0)
    }
}

impl One for ZOmega {
    fn one() -> Self {
        ZOmega::one()
    }
}

impl Zero for ZOmega {
    fn zero() -> Self {
        ZOmega::default()
    }

    fn is_zero(&self) -> bool {
        ZOmega::is_zero(self)
    }
}
