//! Cyclotomic polynomials and the rational-angle decision.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::poly::RationalPolynomial;
use crate::error::{invalid, validation, Result};

/// Euler's totient by trial division.
pub fn totient(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Memoized `Φ_n` computations.
#[derive(Debug, Default)]
pub struct CyclotomicTable {
    cache: BTreeMap<u64, RationalPolynomial>,
}

impl CyclotomicTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Φ_n = (x^n − 1) / ∏_{d | n, d < n} Φ_d`, by exact division.
    pub fn get(&mut self, n: u64) -> Result<RationalPolynomial> {
        if n == 0 {
            return Err(validation("cyclotomic order must be at least 1"));
        }
        if let Some(p) = self.cache.get(&n) {
            return Ok(p.clone());
        }
        let mut num = RationalPolynomial::monomial(n as usize);
        num = &num - &RationalPolynomial::from_integers(&[1]);
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let phi_d = self.get(d)?;
            let (q, r) = num.div_rem_monic(&phi_d)?;
            debug_assert!(r.is_zero(), "Φ_{d} does not divide x^{n} - 1");
            num = q;
        }
        self.cache.insert(n, num.clone());
        Ok(num)
    }
}

pub fn cyclotomic_poly(n: u64) -> Result<RationalPolynomial> {
    CyclotomicTable::new().get(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictReason {
    NonIntegerCoefficient,
    NoCyclotomicMatch,
    Matched,
}

/// Whether the angle `c` with `e^{i2πc}` a root of the polynomial is rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AngleVerdict {
    pub rational: bool,
    pub witness_order: Option<u64>,
    pub reason: VerdictReason,
}

impl AngleVerdict {
    fn rejected(reason: VerdictReason) -> Self {
        AngleVerdict { rational: false, witness_order: None, reason }
    }
}

/// Largest `n` with `φ(n) = deg`, from `φ(n) ≥ √(n/2)`.
pub fn order_search_bound(deg: usize) -> u64 {
    2 * (deg as u64) * (deg as u64) + 1
}

/// Decides whether a monic polynomial equals some `Φ_n`.
pub fn is_cyclotomic(p: &RationalPolynomial) -> Result<AngleVerdict> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(validation("polynomial must have degree at least 1")),
    };
    if !p.is_monic() {
        return Err(validation(format!("polynomial {p} is not monic")));
    }
    if !p.has_integer_coefficients() {
        return Ok(AngleVerdict::rejected(VerdictReason::NonIntegerCoefficient));
    }
    let mut table = CyclotomicTable::new();
    for n in 1..=order_search_bound(deg) {
        if totient(n) != deg as u64 {
            continue;
        }
        if table.get(n)? == *p {
            return Ok(AngleVerdict { rational: true, witness_order: Some(n), reason: VerdictReason::Matched });
        }
    }
    Ok(AngleVerdict::rejected(VerdictReason::NoCyclotomicMatch))
}

/// Distance from `approx` to the nearest root allowed by [`angle_of_trace`].
pub const ROOT_MATCH_TOL: f64 = 1e-6;

/// Decides rationality of `c` where `approx ≈ e^{i2πc}` is a root of the
/// supplied minimal polynomial.
pub fn angle_of_trace(min_poly: &RationalPolynomial, approx: Complex<f64>) -> Result<AngleVerdict> {
    if !min_poly.is_monic() || min_poly.degree().unwrap_or(0) == 0 {
        return Err(validation("minimal polynomial must be monic of degree at least 1"));
    }
    let roots = super::roots::complex_roots(&min_poly.to_f64())?;
    let nearest = roots.iter().map(|r| (r - approx).norm()).fold(f64::INFINITY, f64::min);
    if !(nearest <= ROOT_MATCH_TOL) {
        return Err(validation(format!(
            "approximation {approx} is {nearest:e} from the nearest root, beyond {ROOT_MATCH_TOL:e}"
        )));
    }
    is_cyclotomic(min_poly)
}

/// Parses a polynomial given as `"num/den"` strings, constant term first.
pub fn parse_polynomial(items: &[&str]) -> Result<RationalPolynomial> {
    if items.is_empty() {
        return Err(invalid("empty coefficient list"));
    }
    RationalPolynomial::from_strings(&items.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}
